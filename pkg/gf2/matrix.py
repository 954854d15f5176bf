#!/usr/bin/env python3
"""
Binary matrices and vectors over GF(2)
Dense rows are kept bit-packed for elimination; adjacency lists give the
sparse Tanner-graph view used by the decoders.
"""

from functools import cached_property
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from core.errors import ParseError, RejectedInputError


def _as_bits(entries, ndim: int) -> np.ndarray:
    """Validate entries are 0/1 and return a read-only uint8 array"""
    arr = np.array(entries)
    if arr.dtype == bool:
        arr = arr.astype(np.uint8)
    if arr.ndim != ndim:
        raise RejectedInputError(f"Expected a {ndim}-dimensional bit array, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise RejectedInputError("Binary entries must be 0 or 1")
    bits = arr.astype(np.uint8)
    bits.setflags(write=False)
    return bits


def _row_reduce(bits: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over GF(2) of a private copy; returns (rref, pivot columns)"""
    rows, cols = bits.shape
    if rows == 0 or cols == 0:
        return np.zeros((rows, cols), dtype=np.uint8), []

    words = np.packbits(bits, axis=1)
    pivots: List[int] = []
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        byte, mask = col >> 3, np.uint8(0x80 >> (col & 7))
        candidates = np.nonzero(words[rank:, byte] & mask)[0]
        if candidates.size == 0:
            continue
        pivot = rank + int(candidates[0])
        if pivot != rank:
            words[[rank, pivot]] = words[[pivot, rank]]
        hits = np.nonzero(words[:, byte] & mask)[0]
        hits = hits[hits != rank]
        if hits.size:
            words[hits] ^= words[rank]
        pivots.append(col)
        rank += 1

    reduced = np.unpackbits(words, axis=1, count=cols)
    return reduced, pivots


class BinaryVector:
    """Immutable bit vector (syndromes, classical error patterns)"""

    __hash__ = None

    def __init__(self, bits: Union[Sequence[int], np.ndarray]):
        self._bits = _as_bits(bits, 1)

    @classmethod
    def zeros(cls, length: int) -> "BinaryVector":
        return cls(np.zeros(length, dtype=np.uint8))

    @classmethod
    def from_text(cls, text: str, length: int = None) -> "BinaryVector":
        """Parse a binary string ("0110") or a hex string ("0x1f", needs length)"""
        text = text.strip().replace(" ", "").replace("_", "")
        if text.lower().startswith("0x"):
            if length is None:
                raise ParseError("Hex syndromes need an explicit length")
            try:
                value = int(text[2:], 16)
            except ValueError:
                raise ParseError(f"Invalid hex string: {text}")
            if value >> length:
                raise ParseError(f"Hex value {text} does not fit in {length} bits")
            return cls([(value >> (length - 1 - i)) & 1 for i in range(length)])
        if text and set(text) - {"0", "1"}:
            raise ParseError(f"Invalid binary string: {text}")
        bits = cls([int(ch) for ch in text]) if text else cls.zeros(0)
        if length is not None and len(bits) != length:
            raise ParseError(f"Expected {length} bits, got {len(bits)}")
        return bits

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def weight(self) -> int:
        return int(self._bits.sum())

    def to_string(self) -> str:
        return "".join(str(int(b)) for b in self._bits)

    def to_hex(self) -> str:
        value = 0
        for b in self._bits:
            value = (value << 1) | int(b)
        return hex(value)

    def __len__(self) -> int:
        return int(self._bits.shape[0])

    def __getitem__(self, index):
        return int(self._bits[index])

    def __iter__(self):
        return (int(b) for b in self._bits)

    def __xor__(self, other: "BinaryVector") -> "BinaryVector":
        if len(self) != len(other):
            raise RejectedInputError(f"Vector length mismatch: {len(self)} vs {len(other)}")
        return BinaryVector(self._bits ^ other.bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryVector):
            return NotImplemented
        return len(self) == len(other) and bool(np.array_equal(self._bits, other.bits))

    def __repr__(self) -> str:
        return f"BinaryVector('{self.to_string()}')"


class BinaryMatrix:
    """Immutable matrix over GF(2)"""

    __hash__ = None

    def __init__(self, entries: Union[Sequence[Sequence[int]], np.ndarray]):
        self._bits = _as_bits(entries, 2)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_rows(cls, rows: Iterable[Union[str, Sequence[int]]], cols: int = None) -> "BinaryMatrix":
        """Build from "0101" strings or int sequences"""
        parsed = []
        for row in rows:
            if isinstance(row, str):
                if set(row) - {"0", "1"}:
                    raise ParseError(f"Invalid binary row: {row}")
                parsed.append([int(ch) for ch in row])
            else:
                parsed.append(list(row))
        if not parsed:
            return cls.zeros(0, cols or 0)
        return cls(parsed)

    @classmethod
    def hstack(cls, blocks: Sequence["BinaryMatrix"]) -> "BinaryMatrix":
        return cls(np.hstack([b.dense for b in blocks]))

    @classmethod
    def vstack(cls, blocks: Sequence["BinaryMatrix"]) -> "BinaryMatrix":
        return cls(np.vstack([b.dense for b in blocks]))

    @property
    def dense(self) -> np.ndarray:
        return self._bits

    @property
    def rows(self) -> int:
        return int(self._bits.shape[0])

    @property
    def cols(self) -> int:
        return int(self._bits.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @cached_property
    def packed(self) -> np.ndarray:
        """Rows packed eight bits per byte (big-endian within a byte)"""
        return np.packbits(self._bits, axis=1)

    @cached_property
    def row_supports(self) -> List[np.ndarray]:
        return [np.flatnonzero(row) for row in self._bits]

    @cached_property
    def col_supports(self) -> List[np.ndarray]:
        return [np.flatnonzero(col) for col in self._bits.T]

    @cached_property
    def edges(self) -> Tuple[np.ndarray, np.ndarray]:
        """(row, col) index arrays of the nonzero entries, row-major"""
        r, c = np.nonzero(self._bits)
        return r.astype(np.int64), c.astype(np.int64)

    @cached_property
    def _rref(self) -> Tuple[np.ndarray, List[int]]:
        return _row_reduce(self._bits)

    @property
    def T(self) -> "BinaryMatrix":
        return self.transpose()

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(self._bits.T)

    def row(self, index: int) -> BinaryVector:
        return BinaryVector(self._bits[index])

    def rank(self) -> int:
        return len(self._rref[1])

    def is_zero(self) -> bool:
        return not self._bits.any()

    def row_space_contains(self, vector: Union[BinaryVector, np.ndarray]) -> bool:
        """True when vector is a GF(2) combination of the rows"""
        bits = vector.bits if isinstance(vector, BinaryVector) else np.asarray(vector, dtype=np.uint8)
        if bits.shape != (self.cols,):
            raise RejectedInputError(f"Vector length {bits.shape} does not match {self.cols} columns")
        reduced, pivots = self._rref
        if not pivots:
            return not bits.any()
        # RREF pivot columns are unit vectors, so the coefficients are the pivot bits
        coeffs = bits[pivots].astype(np.float64)
        combo = (coeffs @ reduced[:len(pivots)].astype(np.float64)) % 2
        return bool(np.array_equal(combo.astype(np.uint8), bits))

    def independent_rows(self) -> List[int]:
        """Indices of the first maximal independent subset of rows, in order"""
        _, pivots = _row_reduce(np.ascontiguousarray(self._bits.T))
        return pivots

    def nullspace(self) -> "BinaryMatrix":
        """Basis of {v : M v = 0}, one basis vector per row"""
        reduced, pivots = self._rref
        free = [c for c in range(self.cols) if c not in set(pivots)]
        basis = np.zeros((len(free), self.cols), dtype=np.uint8)
        for i, f in enumerate(free):
            basis[i, f] = 1
            for k, p in enumerate(pivots):
                basis[i, p] = reduced[k, f]
        return BinaryMatrix(basis)

    def __matmul__(self, other):
        if isinstance(other, BinaryVector):
            return matvec_gf2(self, other)
        return matmul_gf2(self, other)

    def __add__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.shape != other.shape:
            raise RejectedInputError(f"Shape mismatch: {self.shape} vs {other.shape}")
        return BinaryMatrix(self._bits ^ other.dense)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._bits, other.dense))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows}x{self.cols}, nnz={int(self._bits.sum())})"


def matmul_gf2(a: BinaryMatrix, b: BinaryMatrix) -> BinaryMatrix:
    """Matrix product mod 2"""
    if a.cols != b.rows:
        raise RejectedInputError(f"Cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    # float BLAS is exact here: every partial sum is an integer below 2**53
    product = a.dense.astype(np.float64) @ b.dense.astype(np.float64)
    return BinaryMatrix((product % 2).astype(np.uint8))


def matvec_gf2(a: BinaryMatrix, v: BinaryVector) -> BinaryVector:
    """Matrix-vector product mod 2"""
    if a.cols != len(v):
        raise RejectedInputError(f"Cannot multiply {a.rows}x{a.cols} by vector of length {len(v)}")
    product = a.dense.astype(np.float64) @ v.bits.astype(np.float64)
    return BinaryVector((product % 2).astype(np.uint8))


def rank_gf2(m: BinaryMatrix) -> int:
    """Row rank over GF(2)"""
    return m.rank()
