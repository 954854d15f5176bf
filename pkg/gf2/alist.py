#!/usr/bin/env python3
"""
Alist parity-check file format
Header "cols rows", then "max_col_degree max_row_degree", the column degrees,
the row degrees, one line of 1-based row indices per column and one line of
1-based column indices per row. Lines are zero-padded to the maximum degree
(at least one entry) so empty columns survive a round trip.
"""

import os
from typing import List, Tuple

import numpy as np

from core.errors import ParseError
from gf2.matrix import BinaryMatrix


def format_alist(h: BinaryMatrix) -> str:
    """Render H as alist text"""
    m, n = h.shape
    col_deg = [len(s) for s in h.col_supports]
    row_deg = [len(s) for s in h.row_supports]
    max_col = max(col_deg, default=0)
    max_row = max(row_deg, default=0)

    def padded(indices, width: int) -> str:
        entries = [int(i) + 1 for i in indices] + [0] * (max(width, 1) - len(indices))
        return " ".join(str(e) for e in entries)

    lines = [f"{n} {m}", f"{max_col} {max_row}",
             " ".join(str(d) for d in col_deg),
             " ".join(str(d) for d in row_deg)]
    lines += [padded(s, max_col) for s in h.col_supports]
    lines += [padded(s, max_row) for s in h.row_supports]
    return "\n".join(lines) + "\n"


def parse_alist_lines(lines: List[str], start: int = 0) -> Tuple[BinaryMatrix, int]:
    """Parse one alist block from non-empty lines; returns (H, next line index)"""
    # Degree lines are blank for empty dimensions and were dropped with the other blanks
    cursor = start + 2
    try:
        n, m = (int(t) for t in lines[start].split()[:2])
        col_deg, row_deg = [], []
        if n:
            col_deg = [int(t) for t in lines[cursor].split()]
            cursor += 1
        if m:
            row_deg = [int(t) for t in lines[cursor].split()]
            cursor += 1
    except (IndexError, ValueError) as e:
        raise ParseError(f"Malformed alist header near line {start + 1}: {e}")

    if len(col_deg) != n or len(row_deg) != m:
        raise ParseError(f"Alist degree lists do not match dimensions {n}x{m}")

    h = np.zeros((m, n), dtype=np.uint8)
    try:
        for j in range(n):
            entries = [int(t) for t in lines[cursor + j].split() if int(t) > 0]
            if len(entries) != col_deg[j]:
                raise ParseError(f"Column {j + 1} lists {len(entries)} entries, degree says {col_deg[j]}")
            for i in entries:
                h[i - 1, j] = 1
        cursor += n
        for i in range(m):
            entries = [int(t) for t in lines[cursor + i].split() if int(t) > 0]
            if sorted(entries) != [j + 1 for j in np.flatnonzero(h[i])]:
                raise ParseError(f"Row {i + 1} disagrees with the column lists")
        cursor += m
    except (IndexError, ValueError) as e:
        raise ParseError(f"Truncated or malformed alist body: {e}")
    return BinaryMatrix(h), cursor


def parse_alist(text: str) -> BinaryMatrix:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    h, _ = parse_alist_lines(lines)
    return h


def read_alist(path: str) -> BinaryMatrix:
    """Read a parity-check matrix from an alist file"""
    with open(path, "r") as f:
        return parse_alist(f.read())


def write_alist(h: BinaryMatrix, path: str) -> None:
    """Write H to an alist file"""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w") as f:
        f.write(format_alist(h))
