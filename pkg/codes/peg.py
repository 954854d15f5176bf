#!/usr/bin/env python3
"""
Progressive edge growth
Builds a (col_weight, row_weight)-regular Tanner graph one edge at a time,
each new edge going to a check as far as possible from its variable node.
"""

from typing import Optional, Tuple

import numpy as np

from core.errors import ConstructionError
from core.logging_setup import create_component_logger, log_function_calls
from core.rng import SeedLike, attempt_rng
from codes.classical import ClassicalCode
from gf2.matrix import BinaryMatrix

MAX_ATTEMPTS = 16


class _DeadEnd(Exception):
    pass


def _pick_lowest_degree(candidates: np.ndarray, degrees: np.ndarray, rng: np.random.Generator) -> int:
    lowest = degrees[candidates].min()
    pool = candidates[degrees[candidates] == lowest]
    return int(pool[rng.integers(pool.size)])


def _expand(h: np.ndarray, var: int, open_checks: np.ndarray) -> Tuple[np.ndarray, int]:
    """BFS from `var`; returns (candidate checks, cycle length closed by using one, 0 for none)"""
    m, n = h.shape
    reached = h[:, var] > 0
    level = np.where(reached, 1, 0)
    seen_vars = np.zeros(n, dtype=bool)
    seen_vars[var] = True
    frontier = reached.astype(np.float32)
    depth = 1
    while True:
        unreached_open = open_checks & ~reached
        if not unreached_open.any():
            # every open check is reachable: take those found on the last level
            return np.flatnonzero(open_checks & (level == depth)), 2 * depth
        next_vars = (frontier @ h > 0) & ~seen_vars
        if not next_vars.any():
            return np.flatnonzero(unreached_open), 0
        seen_vars |= next_vars
        new_checks = (h @ next_vars.astype(np.float32) > 0) & ~reached
        if not new_checks.any():
            return np.flatnonzero(unreached_open), 0
        depth += 1
        level[new_checks] = depth
        reached |= new_checks
        frontier = new_checks.astype(np.float32)


def _grow(n: int, m: int, col_weight: int, row_weight: int,
          rng: np.random.Generator) -> Tuple[np.ndarray, Optional[int]]:
    h = np.zeros((m, n), dtype=np.float32)
    degrees = np.zeros(m, dtype=np.int64)
    girth = None
    for var in range(n):
        for k in range(col_weight):
            open_checks = (degrees < row_weight) & (h[:, var] == 0)
            if not open_checks.any():
                raise _DeadEnd(var)
            if k == 0:
                candidates, cycle = np.flatnonzero(open_checks), 0
            else:
                candidates, cycle = _expand(h, var, open_checks)
                if candidates.size == 0:
                    raise _DeadEnd(var)
            check = _pick_lowest_degree(candidates, degrees, rng)
            h[check, var] = 1
            degrees[check] += 1
            if cycle and (girth is None or cycle < girth):
                girth = cycle
    return h.astype(np.uint8), girth


@log_function_calls("codes.peg")
def build_peg_regular(n: int, col_weight: int, row_weight: int, seed: SeedLike = None) -> ClassicalCode:
    """(col_weight, row_weight)-regular LDPC code with greedily maximized local girth"""
    logger = create_component_logger("codes.peg")
    if n < 1 or col_weight < 1 or row_weight < 1:
        raise ConstructionError(f"PEG needs positive N and degrees, got N={n}, ({col_weight},{row_weight})")
    if (n * col_weight) % row_weight:
        raise ConstructionError(f"N*col_weight = {n * col_weight} is not divisible by row_weight {row_weight}")
    m = n * col_weight // row_weight
    if col_weight > m or row_weight > n:
        raise ConstructionError(f"Degrees ({col_weight},{row_weight}) infeasible with N={n}, M={m}")

    for attempt in range(MAX_ATTEMPTS):
        rng = attempt_rng(seed, attempt)
        try:
            h, girth = _grow(n, m, col_weight, row_weight, rng)
        except _DeadEnd as stuck:
            logger.debug(f"PEG attempt {attempt} dead-ended at variable {stuck.args[0]}")
            continue
        code = ClassicalCode(BinaryMatrix(h), name=f"peg-{n}-({col_weight},{row_weight})", girth=girth)
        logger.debug(code.describe())
        return code
    raise ConstructionError(
        f"PEG could not place a ({col_weight},{row_weight})-regular graph with N={n} in {MAX_ATTEMPTS} attempts")
