#!/usr/bin/env python3
"""
Code file storage
Classical codes are written as a plain alist file. Stabilizer codes use a
paired-alist container: a "N K" header line, the alist of A1, then the alist
of A2. Stabilizer files carry the .qalist extension.
"""

import os
from typing import Union

import numpy as np

from core.errors import ParseError
from codes.classical import ClassicalCode, tanner_girth
from codes.stabilizer import StabilizerCode, detect_css
from gf2.alist import format_alist, parse_alist, parse_alist_lines
from gf2.matrix import BinaryMatrix

STABILIZER_SUFFIX = ".qalist"

Code = Union[ClassicalCode, StabilizerCode]


def format_stabilizer_code(code: StabilizerCode) -> str:
    return f"{code.n} {code.k}\n" + format_alist(code.a1) + format_alist(code.a2)


def parse_stabilizer_code(text: str, name: str = "stabilizer") -> StabilizerCode:
    """Parse the paired-alist container and re-validate the code"""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    try:
        n, k = (int(t) for t in lines[0].split()[:2])
    except (IndexError, ValueError) as e:
        raise ParseError(f"Malformed paired-alist header: {e}")
    a1, cursor = parse_alist_lines(lines, 1)
    a2, cursor = parse_alist_lines(lines, cursor)
    if cursor != len(lines):
        raise ParseError(f"Trailing content after the A2 block ({len(lines) - cursor} lines)")
    if a1.shape != a2.shape or a1.cols != n:
        raise ParseError(f"A1 {a1.shape} and A2 {a2.shape} blocks do not match N={n}")
    code = detect_css(BinaryMatrix(np.hstack([a1.dense, a2.dense])), name=name)
    if code.k != k:
        raise ParseError(f"Header says K={k} but the stabilizers give K={code.k}")
    return code


def save_code(code: Code, path: str) -> str:
    """Write a code to disk; returns the file text"""
    if isinstance(code, StabilizerCode):
        text = format_stabilizer_code(code)
    else:
        text = format_alist(code.h)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w") as f:
        f.write(text)
    return text


def load_code(path: str) -> Code:
    """Read a .qalist stabilizer code or an alist classical code"""
    with open(path, "r") as f:
        text = f.read()
    name = os.path.splitext(os.path.basename(path))[0]
    if path.endswith(STABILIZER_SUFFIX):
        return parse_stabilizer_code(text, name=name)
    h = parse_alist(text)
    return ClassicalCode(h, name=name, girth=tanner_girth(h))
