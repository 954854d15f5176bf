"""
Pauli error patterns in binary symplectic form
Letters are indexed I=0, X=1, Y=2, Z=3 everywhere in the toolkit; phases are dropped.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from core.errors import ParseError, RejectedInputError
from gf2.matrix import BinaryVector

LETTERS = "IXYZ"
I, X, Y, Z = 0, 1, 2, 3

# letter -> (x bit, z bit)
X_BIT = np.array([0, 1, 1, 0], dtype=np.uint8)
Z_BIT = np.array([0, 0, 1, 1], dtype=np.uint8)


@dataclass(frozen=True, eq=False)
class PauliVector:
    """Length-N Pauli operator as the pair (x_part | z_part)"""
    x_part: BinaryVector
    z_part: BinaryVector

    def __post_init__(self):
        if len(self.x_part) != len(self.z_part):
            raise RejectedInputError(
                f"x and z parts differ in length: {len(self.x_part)} vs {len(self.z_part)}")

    @classmethod
    def identity(cls, n: int) -> "PauliVector":
        return cls(BinaryVector.zeros(n), BinaryVector.zeros(n))

    @classmethod
    def from_string(cls, text: str) -> "PauliVector":
        """Parse "XIZY"-style text"""
        letters = []
        for pos, ch in enumerate(text.strip().upper()):
            if ch not in LETTERS:
                raise ParseError(f"Invalid Pauli character {ch!r} at position {pos}")
            letters.append(LETTERS.index(ch))
        return cls.from_letters(np.array(letters, dtype=np.int64))

    @classmethod
    def from_letters(cls, letters: Union[np.ndarray, list]) -> "PauliVector":
        letters = np.asarray(letters, dtype=np.int64)
        if letters.size and (letters.min() < 0 or letters.max() > 3):
            raise RejectedInputError("Pauli letters must be in 0..3")
        return cls(BinaryVector(X_BIT[letters]), BinaryVector(Z_BIT[letters]))

    @classmethod
    def from_symplectic(cls, bits: np.ndarray) -> "PauliVector":
        """Build from a length-2N (x | z) bit array"""
        bits = np.asarray(bits, dtype=np.uint8)
        n = bits.shape[0] // 2
        return cls(BinaryVector(bits[:n]), BinaryVector(bits[n:]))

    @property
    def letters(self) -> np.ndarray:
        x = self.x_part.bits.astype(np.int64)
        z = self.z_part.bits.astype(np.int64)
        # (0,0)->I, (1,0)->X, (1,1)->Y, (0,1)->Z
        return x + z + 2 * (z & (1 - x))

    @property
    def symplectic(self) -> np.ndarray:
        return np.concatenate([self.x_part.bits, self.z_part.bits])

    @property
    def weight(self) -> int:
        return int((self.x_part.bits | self.z_part.bits).sum())

    def to_string(self) -> str:
        return "".join(LETTERS[t] for t in self.letters)

    def __len__(self) -> int:
        return len(self.x_part)

    def __mul__(self, other: "PauliVector") -> "PauliVector":
        """Operator product up to phase (bitwise XOR of both parts)"""
        if len(self) != len(other):
            raise RejectedInputError(f"Pauli length mismatch: {len(self)} vs {len(other)}")
        return PauliVector(self.x_part ^ other.x_part, self.z_part ^ other.z_part)

    __xor__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliVector):
            return NotImplemented
        return self.x_part == other.x_part and self.z_part == other.z_part

    __hash__ = None

    def __repr__(self) -> str:
        return f"PauliVector('{self.to_string()}')"
