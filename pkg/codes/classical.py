#!/usr/bin/env python3
"""
Classical LDPC codes
Parity-check matrix wrapper plus Tanner-graph diagnostics (girth, connectivity).
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np
from scipy.sparse import bmat, csr_matrix
from scipy.sparse.csgraph import connected_components

from core.errors import RejectedInputError
from gf2.matrix import BinaryMatrix


@dataclass(frozen=True, eq=False)
class ClassicalCode:
    """Binary linear code given by its parity-check matrix H (M x N)"""
    h: BinaryMatrix
    name: str = "classical"
    girth: Optional[int] = None

    def __post_init__(self):
        if self.h.is_zero():
            raise RejectedInputError("Parity-check matrix must be nonzero")

    @property
    def n(self) -> int:
        return self.h.cols

    @property
    def m(self) -> int:
        return self.h.rows

    @property
    def k(self) -> int:
        return self.n - self.h.rank()

    @property
    def rate(self) -> float:
        return self.k / self.n

    @cached_property
    def connected(self) -> bool:
        """True when the Tanner graph (variables plus checks) is one component"""
        return tanner_components(self.h) == 1

    @property
    def column_degrees(self) -> np.ndarray:
        return self.h.dense.sum(axis=0).astype(np.int64)

    @property
    def row_degrees(self) -> np.ndarray:
        return self.h.dense.sum(axis=1).astype(np.int64)

    def describe(self) -> str:
        girth = "inf" if self.girth is None else str(self.girth)
        return f"{self.name}: N={self.n}, M={self.m}, K={self.k}, R={self.rate:.4f}, girth={girth}"


def tanner_components(h: BinaryMatrix) -> int:
    """Number of connected components of the bipartite Tanner graph"""
    block = csr_matrix(h.dense.astype(np.int8))
    graph = bmat([[None, block], [block.T, None]], format="csr")
    count, _ = connected_components(graph, directed=False)
    return int(count)


def tanner_girth(h: BinaryMatrix) -> Optional[int]:
    """Length of the shortest cycle in the Tanner graph, None for a forest"""
    m, n = h.shape
    # variables are nodes 0..n-1, checks n..n+m-1
    adjacency = [list(int(c) + n for c in s) for s in h.col_supports]
    adjacency += [list(int(v) for v in s) for s in h.row_supports]

    best = None
    for root in range(n):
        if not adjacency[root]:
            continue
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for v in adjacency[u]:
                if v == parent[u]:
                    continue
                if v in dist:
                    length = dist[u] + dist[v] + 1
                    if best is None or length < best:
                        best = length
                else:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
    return best
