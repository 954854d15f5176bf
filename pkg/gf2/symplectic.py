"""
Binary symplectic product
A Pauli operator is the pair (x | z); two operators commute iff
a_x . b_z + a_z . b_x = 0 (mod 2).
"""

import numpy as np

from core.errors import RejectedInputError
from gf2.matrix import BinaryMatrix, matmul_gf2


def symplectic_product(ax: np.ndarray, az: np.ndarray, bx: np.ndarray, bz: np.ndarray) -> int:
    """a_x . b_z + a_z . b_x mod 2 on raw bit arrays"""
    return int((np.dot(ax.astype(np.int64), bz) + np.dot(az.astype(np.int64), bx)) & 1)


def symplectic_commutes(a, b) -> bool:
    """True iff the Pauli vectors a and b commute (phases ignored)"""
    if len(a) != len(b):
        raise RejectedInputError(f"Pauli length mismatch: {len(a)} vs {len(b)}")
    return symplectic_product(a.x_part.bits, a.z_part.bits, b.x_part.bits, b.z_part.bits) == 0


def split_symplectic(a: BinaryMatrix):
    """Split an M x 2N matrix into its (A1 | A2) halves"""
    if a.cols % 2:
        raise RejectedInputError(f"Symplectic matrix needs an even column count, got {a.cols}")
    n = a.cols // 2
    return BinaryMatrix(a.dense[:, :n]), BinaryMatrix(a.dense[:, n:])


def commutation_matrix(a: BinaryMatrix) -> BinaryMatrix:
    """A1 A2^T + A2 A1^T; zero exactly when all rows of A commute"""
    a1, a2 = split_symplectic(a)
    return matmul_gf2(a1, a2.T) + matmul_gf2(a2, a1.T)
