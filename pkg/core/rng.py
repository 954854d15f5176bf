"""
Reproducible random streams
Philox is counter based, so a trial's stream is fixed by its key alone and
does not depend on which worker thread runs it.
"""

from typing import Union

import numpy as np

SeedLike = Union[int, np.random.Generator, None]


def make_rng(seed: SeedLike = None) -> np.random.Generator:
    """Return a Philox generator for an int seed, or pass a Generator through"""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def stream_rng(master_seed: int, *keys: int) -> np.random.Generator:
    """Generator for the stream identified by (master_seed, *keys)"""
    entropy = [int(master_seed)] + [int(k) for k in keys]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def derive_seed(master_seed: int, *keys: int) -> int:
    """64-bit integer seed derived from (master_seed, *keys)"""
    entropy = [int(master_seed)] + [int(k) for k in keys]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0])


def attempt_rng(seed: SeedLike, attempt: int) -> np.random.Generator:
    """Attempt 0 uses the seed itself, retries use seeds derived from it"""
    if attempt == 0 or isinstance(seed, np.random.Generator):
        return make_rng(seed)
    base = int(seed) if isinstance(seed, (int, np.integer)) else 0
    return make_rng(derive_seed(base, attempt))
