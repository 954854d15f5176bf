#!/usr/bin/env python3
"""
Stabilizer codes in binary symplectic form
A = (A1 | A2) holds the X-containing part in A1 and the Z-containing part in A2.
Every code object is validated on construction: all rows commute and are
independent, so M = N - K.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.errors import CommutationError, RejectedInputError
from codes.pauli import PauliVector
from gf2.matrix import BinaryMatrix, BinaryVector, matmul_gf2, matvec_gf2
from gf2.symplectic import commutation_matrix


@dataclass(frozen=True, eq=False)
class StabilizerCode:
    """Validated [[N, K]] stabilizer code"""
    a: BinaryMatrix
    is_css: bool = False
    h: Optional[BinaryMatrix] = None
    g: Optional[BinaryMatrix] = None
    name: str = "stabilizer"

    def __post_init__(self):
        if self.a.cols % 2:
            raise RejectedInputError(f"Stabilizer matrix needs 2N columns, got {self.a.cols}")
        clash = commutation_matrix(self.a).dense
        if clash.any():
            i, j = (int(v) for v in np.argwhere(np.triu(clash))[0])
            raise CommutationError(i, j)
        if self.a.rank() != self.a.rows:
            raise RejectedInputError(
                f"Stabilizer rows are dependent: rank {self.a.rank()} < {self.a.rows} rows")
        if self.is_css and (self.h is None or self.g is None):
            raise RejectedInputError("CSS codes need both H and G blocks")

    @property
    def n(self) -> int:
        return self.a.cols // 2

    @property
    def m(self) -> int:
        return self.a.rows

    @property
    def k(self) -> int:
        return self.n - self.m

    @property
    def rate(self) -> float:
        return self.k / self.n

    @cached_property
    def a1(self) -> BinaryMatrix:
        return BinaryMatrix(self.a.dense[:, :self.n])

    @cached_property
    def a2(self) -> BinaryMatrix:
        return BinaryMatrix(self.a.dense[:, self.n:])

    @cached_property
    def check_edges(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(check, qubit, letter) per Tanner edge, letter in 1..3 for X, Y, Z"""
        x = self.a1.dense.astype(np.int64)
        z = self.a2.dense.astype(np.int64)
        checks, qubits = np.nonzero(x | z)
        xs, zs = x[checks, qubits], z[checks, qubits]
        letters = xs + zs + 2 * (zs & (1 - xs))
        return checks.astype(np.int64), qubits.astype(np.int64), letters

    def stabilizer(self, row: int) -> PauliVector:
        return PauliVector(self.a1.row(row), self.a2.row(row))

    def in_stabilizer_group(self, pauli: PauliVector) -> bool:
        """True when pauli is a product of stabilizer generators (up to phase)"""
        return self.a.row_space_contains(pauli.symplectic)

    def describe(self) -> str:
        kind = "CSS" if self.is_css else "stabilizer"
        return f"{self.name}: [[{self.n},{self.k}]] {kind} code, M={self.m}, R={self.rate:.4f}"


def pauli_to_binary(ops: Sequence[str], name: str = "stabilizer") -> StabilizerCode:
    """Convert Pauli generator strings into a validated stabilizer code"""
    if not ops:
        raise RejectedInputError("At least one stabilizer generator is required")
    paulis = [PauliVector.from_string(op) for op in ops]
    lengths = {len(p) for p in paulis}
    if len(lengths) != 1:
        raise RejectedInputError(f"Generators differ in length: {sorted(lengths)}")
    a = BinaryMatrix(np.vstack([p.symplectic for p in paulis]))
    return StabilizerCode(a=a, name=name)


def css_code(h: BinaryMatrix, g: BinaryMatrix, name: str = "css") -> StabilizerCode:
    """CSS code A = (H 0 ; 0 G); requires H G^T = 0"""
    if h.cols != g.cols:
        raise RejectedInputError(f"H and G differ in length: {h.cols} vs {g.cols}")
    clash = matmul_gf2(h, g.T).dense
    if clash.any():
        i, j = (int(v) for v in np.argwhere(clash)[0])
        raise CommutationError(i, h.rows + j)
    n = h.cols
    top = np.hstack([h.dense, np.zeros((h.rows, n), dtype=np.uint8)])
    bottom = np.hstack([np.zeros((g.rows, n), dtype=np.uint8), g.dense])
    a = BinaryMatrix(np.vstack([top, bottom]))
    return StabilizerCode(a=a, is_css=True, h=h, g=g, name=name)


def detect_css(a: BinaryMatrix, name: str = "stabilizer") -> StabilizerCode:
    """Wrap A as a code, recognising the CSS block form when every row is pure X or pure Z"""
    n = a.cols // 2
    x, z = a.dense[:, :n], a.dense[:, n:]
    pure_x = ~z.any(axis=1)
    pure_z = ~x.any(axis=1)
    if a.rows and (pure_x | pure_z).all():
        h = BinaryMatrix(x[pure_x]) if pure_x.any() else BinaryMatrix.zeros(0, n)
        g = BinaryMatrix(z[~pure_x]) if (~pure_x).any() else BinaryMatrix.zeros(0, n)
        return css_code(h, g, name=name)
    return StabilizerCode(a=a, name=name)


def syndrome(code: StabilizerCode, error: PauliVector) -> BinaryVector:
    """Bit j is 1 iff the error anticommutes with stabilizer row j"""
    if len(error) != code.n:
        raise RejectedInputError(f"Error length {len(error)} does not match N={code.n}")
    return BinaryVector(matvec_gf2(code.a1, error.z_part).bits ^ matvec_gf2(code.a2, error.x_part).bits)


def logical_operators(code: StabilizerCode) -> List[PauliVector]:
    """Operators commuting with every stabilizer but outside the stabilizer group"""
    # v = (x | z) commutes with row j iff A1_j . z + A2_j . x = 0
    kernel = BinaryMatrix(np.hstack([code.a2.dense, code.a1.dense])).nullspace()
    basis = code.a.dense
    rank = code.a.rank()
    found = []
    for v in kernel.dense:
        extended = BinaryMatrix(np.vstack([basis, v]))
        if extended.rank() > rank:
            basis, rank = extended.dense, rank + 1
            found.append(PauliVector.from_symplectic(v))
    return found
