#!/usr/bin/env python3
"""
Error types for the QLDPC mismatch toolkit
Every failure the library raises on purpose derives from QldpcError
"""


class QldpcError(Exception):
    """Base class for all toolkit errors"""
    pass


class RejectedInputError(QldpcError, ValueError):
    """Exception raised for out-of-range or mis-sized inputs"""
    pass


class ParseError(QldpcError, ValueError):
    """Exception raised for malformed Pauli strings, alist files or syndromes"""
    pass


class CommutationError(QldpcError):
    """Exception raised when a stabilizer set does not commute"""

    def __init__(self, row_a: int, row_b: int):
        self.row_a = row_a
        self.row_b = row_b
        super().__init__(f"Stabilizer rows {row_a} and {row_b} anticommute")


class ConstructionError(QldpcError):
    """Exception raised for infeasible code construction parameters"""
    pass


class DivergenceError(QldpcError):
    """Exception raised when the Fisher information diverges"""
    pass


class SingularSupportError(QldpcError):
    """Exception raised when the SLD equation has no solution on the support of rho"""

    def __init__(self, message: str, f: float = None):
        self.f = f
        if f is not None:
            message = f"{message} (f={f})"
        super().__init__(message)


class PreconditionError(QldpcError):
    """Exception raised when an operation precondition is violated"""
    pass


class ConfigError(QldpcError):
    """Exception raised for invalid experiment configuration"""
    pass
