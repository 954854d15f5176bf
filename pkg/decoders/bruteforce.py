#!/usr/bin/env python3
"""
Exhaustive decoding oracles for small codes
Maximum-likelihood syndrome decoding, exact bitwise/qubitwise posteriors and
direct evaluation of one check update. Exponential by nature, so every entry
point is size guarded.
"""

import itertools
from typing import List, Tuple

import numpy as np

from core.errors import PreconditionError, RejectedInputError
from codes.classical import ClassicalCode
from codes.pauli import PauliVector
from codes.stabilizer import StabilizerCode
from decoders.quaternary_bp import ANTICOMMUTES, letter_prior
from gf2.matrix import BinaryVector

MAX_ML_QUBITS = 16
MAX_POSTERIOR_QUBITS = 8
MAX_POSTERIOR_BITS = 16
MAX_CHECK_DEGREE = 8


def _single_qubit_syndromes(code: StabilizerCode) -> List[List[int]]:
    """table[i][t] = syndrome of letter t on qubit i, packed into a Python int"""
    checks, qubits, letters = code.check_edges
    table = [[0] * 4 for _ in range(code.n)]
    for j, i, p in zip(checks.tolist(), qubits.tolist(), letters.tolist()):
        for t in range(1, 4):
            if ANTICOMMUTES[p, t]:
                table[i][t] |= 1 << j
    return table


def _pack(bits: np.ndarray) -> int:
    value = 0
    for j, b in enumerate(bits):
        if b:
            value |= 1 << j
    return value


def _symplectic_key(n: int, support: Tuple[int, ...], letters: Tuple[int, ...]) -> Tuple[int, ...]:
    pauli = np.zeros(n, dtype=np.int64)
    pauli[list(support)] = letters
    return tuple(PauliVector.from_letters(pauli).symplectic.tolist())


def decode_ml_bruteforce(code: StabilizerCode, s: BinaryVector, f_assumed: float) -> PauliVector:
    """Most probable error with syndrome s; ties go to the lexicographically smallest (x | z)"""
    if code.n > MAX_ML_QUBITS:
        raise PreconditionError(f"Brute-force ML decoding is limited to N <= {MAX_ML_QUBITS}, got {code.n}")
    if len(s) != code.m:
        raise RejectedInputError(f"Syndrome length {len(s)} does not match M={code.m}")
    if not 0.0 < f_assumed < 0.75:
        raise RejectedInputError(f"Assumed flip probability {f_assumed} outside (0, 3/4)")

    # with f < 3/4 each non-identity letter is less likely than I, so the
    # prior falls strictly with weight and the first weight that hits s wins
    table = _single_qubit_syndromes(code)
    target = _pack(s.bits)
    n = code.n
    for weight in range(n + 1):
        best = None
        for support in itertools.combinations(range(n), weight):
            for letters in itertools.product((1, 2, 3), repeat=weight):
                value = 0
                for i, t in zip(support, letters):
                    value ^= table[i][t]
                if value != target:
                    continue
                key = _symplectic_key(n, support, letters)
                if best is None or key < best:
                    best = key
        if best is not None:
            return PauliVector.from_symplectic(np.array(best, dtype=np.uint8))
    raise PreconditionError("Syndrome is not reachable by any Pauli error")


def _all_assignments(n: int, alphabet: int) -> np.ndarray:
    """Every length-n word over range(alphabet), one per row"""
    count = alphabet ** n
    index = np.arange(count, dtype=np.int64)
    powers = alphabet ** np.arange(n, dtype=np.int64)
    return ((index[:, None] // powers[None, :]) % alphabet).astype(np.int64)


def depolarizing_posterior_bruteforce(code: StabilizerCode, s: BinaryVector, f: float) -> np.ndarray:
    """Exact P(t_i = letter | syndrome s), shape (N, 4)"""
    if code.n > MAX_POSTERIOR_QUBITS:
        raise PreconditionError(f"Exact posteriors are limited to N <= {MAX_POSTERIOR_QUBITS}, got {code.n}")
    words = _all_assignments(code.n, 4)
    checks, qubits, letters = code.check_edges
    parity = np.zeros((words.shape[0], code.m), dtype=np.int64)
    for j, i, p in zip(checks, qubits, letters):
        parity[:, j] ^= ANTICOMMUTES[p, words[:, i]]
    consistent = (parity == s.bits[None, :]).all(axis=1)
    if not consistent.any():
        raise PreconditionError("Syndrome is not reachable by any Pauli error")
    log_prior = np.log(letter_prior(f))
    weights = np.exp(log_prior[words[consistent]].sum(axis=1))
    weights /= weights.sum()
    posterior = np.zeros((code.n, 4))
    for letter in range(4):
        posterior[:, letter] = weights @ (words[consistent] == letter)
    return posterior


def bsc_posterior_bruteforce(code: ClassicalCode, s: BinaryVector, p: float) -> np.ndarray:
    """Exact P(e_i = 1 | H e = s), shape (N,)"""
    if code.n > MAX_POSTERIOR_BITS:
        raise PreconditionError(f"Exact posteriors are limited to N <= {MAX_POSTERIOR_BITS}, got {code.n}")
    words = _all_assignments(code.n, 2)
    parity = (words @ code.h.dense.T.astype(np.int64)) % 2
    consistent = words[(parity == s.bits[None, :]).all(axis=1)]
    if consistent.shape[0] == 0:
        raise PreconditionError("Syndrome is not in the column space of H")
    weight = consistent.sum(axis=1)
    likelihood = np.exp(weight * np.log(p) + (code.n - weight) * np.log1p(-p))
    likelihood /= likelihood.sum()
    return likelihood @ consistent


def check_messages_exhaustive(letters, incoming, s_j: int) -> np.ndarray:
    """One check's outgoing messages by summing over every joint assignment of the other qubits"""
    letters = np.asarray(letters, dtype=np.int64)
    incoming = np.asarray(incoming, dtype=np.float64)
    degree = letters.shape[0]
    if degree > MAX_CHECK_DEGREE:
        raise PreconditionError(f"Exhaustive check update is limited to degree <= {MAX_CHECK_DEGREE}")
    outgoing = np.zeros((degree, 4))
    for edge in range(degree):
        others = [k for k in range(degree) if k != edge]
        for t in range(4):
            total = 0.0
            for assignment in itertools.product(range(4), repeat=len(others)):
                parity = ANTICOMMUTES[letters[edge], t]
                weight = 1.0
                for k, a in zip(others, assignment):
                    parity ^= ANTICOMMUTES[letters[k], a]
                    weight *= incoming[k, a]
                if parity == s_j:
                    total += weight
            outgoing[edge, t] = total
        outgoing[edge] /= outgoing[edge].sum()
    return outgoing
