#!/usr/bin/env python3
"""
Bicycle codes
Dual-containing CSS codes from a random circulant pair H = [C | C^T].
Since C C^T = C^T C for circulants, H H^T = 2 C C^T = 0 over GF(2).
"""

import math
from typing import Set, Tuple

import numpy as np

from core.errors import ConstructionError
from core.logging_setup import create_component_logger, log_function_calls
from core.rng import SeedLike, attempt_rng
from codes.stabilizer import StabilizerCode, css_code
from gf2.matrix import BinaryMatrix

MAX_ATTEMPTS = 16


def random_circulant(size: int, weight: int, rng: np.random.Generator) -> np.ndarray:
    """size x size circulant whose first row has `weight` ones at distinct random offsets"""
    first = np.zeros(size, dtype=np.uint8)
    first[rng.choice(size, size=weight, replace=False)] = 1
    return np.stack([np.roll(first, shift) for shift in range(size)])


def column_defects(h: np.ndarray) -> Tuple[int, int]:
    """(zero-weight columns, columns sharing their support with an earlier column)"""
    h = np.asarray(h, dtype=np.uint8)
    zero = int((h.sum(axis=0) == 0).sum())
    distinct = np.unique(h.T, axis=0).shape[0]
    return zero, h.shape[1] - distinct


def _keeps_columns_apart(work: np.ndarray, row: int, keys: Set[bytes]) -> bool:
    """Whether zeroing `row` leaves every column nonzero and distinct from the rest"""
    for col in np.flatnonzero(work[row]):
        reduced = work[:, col].copy()
        reduced[row] = 0
        if not reduced.any() or reduced.tobytes() in keys:
            return False
    return True


def delete_rows(h: np.ndarray, keep: int) -> np.ndarray:
    """Greedily drop rows until `keep` remain, keeping column weights as even as possible
    and never merging two columns or emptying one"""
    work = h.copy()
    rows = list(range(h.shape[0]))
    col_weights = h.sum(axis=0).astype(np.int64)
    keys = {work[:, col].tobytes() for col in range(work.shape[1])}
    while len(rows) > keep:
        # every row has equal weight, so minimizing the column-weight variance
        # means removing the row that overlaps the heaviest columns most
        overlap = h[rows].astype(np.int64) @ col_weights
        victim = next((rows[i] for i in np.argsort(-overlap, kind="stable")
                       if _keeps_columns_apart(work, rows[i], keys)), None)
        if victim is None:
            raise ConstructionError(f"No row of {len(rows)} can go without emptying or merging a column")
        for col in np.flatnonzero(work[victim]):
            keys.discard(work[:, col].tobytes())
            work[victim, col] = 0
            keys.add(work[:, col].tobytes())
        col_weights -= h[victim]
        rows.remove(victim)
    return h[rows]


def _attempt(n: int, row_weight: int, k_target: int, rng: np.random.Generator) -> np.ndarray:
    half = n // 2
    c = random_circulant(half, row_weight // 2, rng)
    h = np.hstack([c, c.T])
    zero, repeated = column_defects(h)
    if zero or repeated:
        raise ConstructionError(f"Circulant pair has {zero} zero and {repeated} repeated columns")
    keep = min(half, math.ceil((n - k_target) / 2))
    return delete_rows(h, keep)


@log_function_calls("codes.bicycle")
def build_bicycle_code(n: int, row_weight: int, k_target: int, seed: SeedLike = None) -> StabilizerCode:
    """Seeded dual-containing bicycle code of length n and target dimension k_target.

    Every column of the kept H is nonzero and distinct, so each single-qubit
    error has its own nonzero syndrome. A draw that cannot meet this is
    redrawn from a seed derived from `seed`.
    """
    logger = create_component_logger("codes.bicycle")
    if n < 2 or n % 2:
        raise ConstructionError(f"Bicycle length must be even and positive, got N={n}")
    if row_weight < 2 or row_weight % 2:
        raise ConstructionError(f"Bicycle row weight must be even and at least 2, got {row_weight}")
    if row_weight // 2 > n // 2:
        raise ConstructionError(f"Row weight {row_weight} too large for circulant size {n // 2}")
    if not 0 <= k_target < n:
        raise ConstructionError(f"K_target must satisfy 0 <= K < N, got K={k_target}, N={n}")

    for attempt in range(MAX_ATTEMPTS):
        try:
            h = _attempt(n, row_weight, k_target, attempt_rng(seed, attempt))
        except ConstructionError as e:
            logger.debug(f"Bicycle attempt {attempt}: {e}")
            continue
        independent = BinaryMatrix(h).independent_rows()
        h = BinaryMatrix(h[independent])

        code = css_code(h, h, name=f"bicycle-{n}")
        if code.k != k_target:
            logger.info(f"Bicycle N={n}: achieved K={code.k} (target {k_target}), {h.rows} independent rows")
        logger.debug(code.describe())
        return code
    raise ConstructionError(
        f"Bicycle N={n} with row weight {row_weight} and K_target={k_target} left a zero or repeated "
        f"column in each of {MAX_ATTEMPTS} attempts")
