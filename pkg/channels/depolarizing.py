#!/usr/bin/env python3
"""
Depolarizing channel
Each qubit is left alone with probability 1 - f and hit by X, Y or Z with
probability f/3 each. f = (3/4) f_d, where f_d = 1 is complete depolarization.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from core.errors import RejectedInputError
from core.rng import SeedLike, make_rng
from codes.pauli import PauliVector

F_MAX = 0.75
FD_TOL = 1e-9


@dataclass(frozen=True)
class DepolarizingChannel:
    """Depolarizing channel holding both the flip probability f and f_d"""
    f: float
    f_d: float = field(default=None)

    def __post_init__(self):
        if not 0.0 <= self.f <= F_MAX:
            raise RejectedInputError(f"Flip probability f={self.f} outside [0, 3/4]")
        if self.f_d is None:
            object.__setattr__(self, "f_d", 4.0 * self.f / 3.0)
        elif not 0.0 <= self.f_d <= 1.0:
            raise RejectedInputError(f"Depolarization f_d={self.f_d} outside [0, 1]")
        elif abs(self.f_d - 4.0 * self.f / 3.0) > FD_TOL:
            raise RejectedInputError(f"f={self.f} and f_d={self.f_d} disagree: f_d must equal 4f/3")

    @classmethod
    def from_fd(cls, f_d: float) -> "DepolarizingChannel":
        if not 0.0 <= f_d <= 1.0:
            raise RejectedInputError(f"Depolarization f_d={f_d} outside [0, 1]")
        return cls(f=0.75 * f_d, f_d=f_d)

    @property
    def letter_probabilities(self) -> np.ndarray:
        """(p_I, p_X, p_Y, p_Z)"""
        third = self.f / 3.0
        return np.array([1.0 - self.f, third, third, third])


def fixed_weight(rate: float, n: int) -> int:
    """Nearest integer to rate * n, ties rounded up"""
    return int(math.floor(rate * n + 0.5))


def _check_length(n: int):
    if n < 1:
        raise RejectedInputError(f"Block length must be at least 1, got {n}")


def sample_depolarizing_iid(ch: DepolarizingChannel, n: int, seed: SeedLike = None) -> PauliVector:
    """Independent depolarizing error on each of n qubits"""
    _check_length(n)
    rng = make_rng(seed)
    letters = rng.choice(4, size=n, p=ch.letter_probabilities)
    return PauliVector.from_letters(letters)


def sample_depolarizing_fixed_weight(ch: DepolarizingChannel, n: int, seed: SeedLike = None) -> PauliVector:
    """Error of weight exactly round(f n): uniform support, uniform X/Y/Z letters"""
    _check_length(n)
    rng = make_rng(seed)
    weight = fixed_weight(ch.f, n)
    letters = np.zeros(n, dtype=np.int64)
    support = rng.choice(n, size=weight, replace=False)
    letters[support] = rng.integers(1, 4, size=weight)
    return PauliVector.from_letters(letters)


def sample_depolarizing(ch: DepolarizingChannel, n: int, seed: SeedLike = None,
                        mode: str = "fixed_weight") -> PauliVector:
    if mode == "fixed_weight":
        return sample_depolarizing_fixed_weight(ch, n, seed)
    if mode == "iid":
        return sample_depolarizing_iid(ch, n, seed)
    raise RejectedInputError(f"Unknown noise mode: {mode}")
