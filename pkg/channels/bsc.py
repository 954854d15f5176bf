"""
Binary symmetric channel
"""

from dataclasses import dataclass

import numpy as np

from core.errors import RejectedInputError
from core.rng import SeedLike, make_rng
from channels.depolarizing import fixed_weight
from gf2.matrix import BinaryVector


@dataclass(frozen=True)
class BscChannel:
    """BSC with crossover probability p in [0, 1/2]"""
    p: float

    def __post_init__(self):
        # p = 1/2 is admitted as a sampling endpoint; decoders clamp below it
        if not 0.0 <= self.p <= 0.5:
            raise RejectedInputError(f"Crossover probability p={self.p} outside [0, 1/2]")


def sample_bsc(ch: BscChannel, n: int, seed: SeedLike = None, mode: str = "iid") -> BinaryVector:
    """Bit-flip pattern: i.i.d. Bernoulli(p), or exactly round(p n) flips in fixed_weight mode"""
    if n < 1:
        raise RejectedInputError(f"Block length must be at least 1, got {n}")
    rng = make_rng(seed)
    if mode == "iid":
        return BinaryVector((rng.random(n) < ch.p).astype(np.uint8))
    if mode == "fixed_weight":
        bits = np.zeros(n, dtype=np.uint8)
        bits[rng.choice(n, size=fixed_weight(ch.p, n), replace=False)] = 1
        return BinaryVector(bits)
    raise RejectedInputError(f"Unknown noise mode: {mode}")
