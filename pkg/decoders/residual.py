"""
Residual classification
After a syndrome-matched decode the residual e_true * e_hat commutes with
every stabilizer; it is harmless only if it lies in the stabilizer group.
"""

from enum import Enum

from core.errors import PreconditionError
from codes.pauli import PauliVector
from codes.stabilizer import StabilizerCode, syndrome


class Outcome(Enum):
    SUCCESS = "success"
    DEGENERATE_SUCCESS = "degenerate_success"
    LOGICAL_FAILURE = "logical_failure"


def classify_residual(code: StabilizerCode, e_true: PauliVector, e_hat: PauliVector) -> Outcome:
    if syndrome(code, e_true) != syndrome(code, e_hat):
        raise PreconditionError("classify_residual needs e_hat to reproduce the syndrome of e_true")
    residual = e_true * e_hat
    if residual.weight == 0:
        return Outcome.SUCCESS
    if code.in_stabilizer_group(residual):
        return Outcome.DEGENERATE_SUCCESS
    return Outcome.LOGICAL_FAILURE
