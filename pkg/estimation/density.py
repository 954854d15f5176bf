#!/usr/bin/env python3
"""
Density operators for one and two qubits
Just enough state algebra to push a probe through the depolarizing channel
and differentiate the output with respect to f.
"""

from dataclasses import dataclass

import numpy as np

from core.errors import RejectedInputError

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, unit-trace, positive semidefinite matrix of dimension 2 or 4"""
    matrix: np.ndarray

    def __post_init__(self):
        rho = np.array(self.matrix, dtype=complex)
        if rho.shape not in ((2, 2), (4, 4)):
            raise RejectedInputError(f"Density operators must be 2x2 or 4x4, got {rho.shape}")
        if np.abs(rho - rho.conj().T).max() > HERMITIAN_TOL:
            raise RejectedInputError("Density operator is not Hermitian")
        if abs(np.trace(rho) - 1.0) > TRACE_TOL:
            raise RejectedInputError(f"Density operator trace is {np.trace(rho).real}, expected 1")
        if np.linalg.eigvalsh(rho).min() < -PSD_TOL:
            raise RejectedInputError("Density operator has a negative eigenvalue")
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def pure(cls, state) -> "DensityOperator":
        psi = np.asarray(state, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int = 2) -> "DensityOperator":
        return cls(np.eye(dim, dtype=complex) / dim)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def bell_state() -> DensityOperator:
    """|Phi+> = (|00> + |11>)/sqrt(2)"""
    return DensityOperator.pure([1, 0, 0, 1])


def _embedded_paulis(dim: int, on_subsystem: int):
    if dim == 2:
        if on_subsystem != 0:
            raise RejectedInputError(f"A single qubit has no subsystem {on_subsystem}")
        return [PAULI_X, PAULI_Y, PAULI_Z]
    if on_subsystem == 0:
        return [np.kron(s, IDENTITY_2) for s in (PAULI_X, PAULI_Y, PAULI_Z)]
    if on_subsystem == 1:
        return [np.kron(IDENTITY_2, s) for s in (PAULI_X, PAULI_Y, PAULI_Z)]
    raise RejectedInputError(f"Two-qubit states have subsystems 0 and 1, got {on_subsystem}")


def _pauli_twirl(rho: np.ndarray, on_subsystem: int) -> np.ndarray:
    """(1/3) sum_j sigma_j rho sigma_j on the chosen qubit"""
    paulis = _embedded_paulis(rho.shape[0], on_subsystem)
    return sum(s @ rho @ s for s in paulis) / 3.0


def apply_depolarizing(rho: DensityOperator, f: float, on_subsystem: int = 0) -> DensityOperator:
    """(1 - f) rho + (f/3) sum_j sigma_j rho sigma_j on one qubit"""
    if not 0.0 <= f <= 0.75:
        raise RejectedInputError(f"Flip probability f={f} outside [0, 3/4]")
    twirled = _pauli_twirl(rho.matrix, on_subsystem)
    return DensityOperator((1.0 - f) * rho.matrix + f * twirled)


def depolarizing_derivative(rho: DensityOperator, on_subsystem: int = 0) -> np.ndarray:
    """d/df of apply_depolarizing(rho, f); independent of f since the channel is affine in f"""
    return _pauli_twirl(rho.matrix, on_subsystem) - rho.matrix
