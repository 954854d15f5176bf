from gf2.matrix import BinaryMatrix, BinaryVector, matmul_gf2, matvec_gf2, rank_gf2
from gf2.symplectic import commutation_matrix, symplectic_commutes, symplectic_product

__all__ = [
    "BinaryMatrix", "BinaryVector", "matmul_gf2", "matvec_gf2", "rank_gf2",
    "commutation_matrix", "symplectic_commutes", "symplectic_product",
]
