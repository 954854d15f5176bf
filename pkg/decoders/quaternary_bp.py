#!/usr/bin/env python3
"""
Quaternary syndrome belief propagation for the depolarizing channel
Messages are 4-vectors over (I, X, Y, Z). A check only cares whether each
neighbouring error letter commutes with its own Pauli at that position, so
the incoming message collapses to a (commute, anticommute) pair, the pairs
are combined with the tanh parity rule against the syndrome bit, and the
result is lifted back to the four letters.
"""

from typing import Tuple

import numpy as np

from core.errors import RejectedInputError
from codes.pauli import PauliVector
from codes.stabilizer import StabilizerCode
from decoders.result import DecodeResult
from decoders.tanner import exclusive_products, group_parity
from gf2.matrix import BinaryVector

# ANTICOMMUTES[a, b] = 1 iff single-qubit Paulis a and b anticommute
ANTICOMMUTES = np.array([
    [0, 0, 0, 0],
    [0, 0, 1, 1],
    [0, 1, 0, 1],
    [0, 1, 1, 0],
], dtype=np.uint8)

F_DOMAIN = (0.0, 0.75)


def letter_prior(f: float) -> np.ndarray:
    """(1 - f, f/3, f/3, f/3)"""
    third = f / 3.0
    return np.array([1.0 - f, third, third, third])


def _normalize_rows(messages: np.ndarray) -> np.ndarray:
    totals = messages.sum(axis=1, keepdims=True)
    safe = np.where(totals > 0.0, totals, 1.0)
    return np.where(totals > 0.0, messages / safe, 0.25)


def check_to_qubit(incoming: np.ndarray, letters: np.ndarray, checks: np.ndarray,
                   syndrome_bits: np.ndarray) -> np.ndarray:
    """Check-to-qubit messages for every edge from the qubit-to-check messages"""
    n_checks = syndrome_bits.shape[0]
    edge_index = np.arange(letters.shape[0])
    commute = incoming[:, 0] + incoming[edge_index, letters]
    _, others = exclusive_products(2.0 * commute - 1.0, checks, n_checks)
    sign = np.where(syndrome_bits[checks] == 1, -1.0, 1.0)
    r_comm = 0.5 * (1.0 + sign * others)
    r_anti = 0.5 * (1.0 - sign * others)

    anti = ANTICOMMUTES[letters].astype(bool)
    outgoing = np.where(anti, r_anti[:, None], r_comm[:, None])
    # two commuting and two anticommuting letters, so each row sums to 2
    return 0.5 * outgoing


def check_update(letters, incoming, s_j: int) -> np.ndarray:
    """Outgoing messages of a single check with the given Paulis, incoming messages and syndrome bit"""
    letters = np.asarray(letters, dtype=np.int64)
    incoming = np.asarray(incoming, dtype=np.float64)
    incoming = incoming / incoming.sum(axis=1, keepdims=True)
    checks = np.zeros(letters.shape[0], dtype=np.int64)
    return check_to_qubit(incoming, letters, checks, np.array([s_j], dtype=np.uint8))


def qubit_to_check(prior: np.ndarray, from_checks: np.ndarray, qubits: np.ndarray,
                   n_qubits: int) -> Tuple[np.ndarray, np.ndarray]:
    """Returns (normalized per-qubit beliefs, normalized qubit-to-check messages)"""
    beliefs = np.empty((n_qubits, 4))
    outgoing = np.empty_like(from_checks)
    for letter in range(4):
        totals, others = exclusive_products(from_checks[:, letter], qubits, n_qubits)
        beliefs[:, letter] = prior[letter] * totals
        outgoing[:, letter] = prior[letter] * others
    return _normalize_rows(beliefs), _normalize_rows(outgoing)


def decision_syndrome(decision: np.ndarray, letters: np.ndarray, checks: np.ndarray,
                      qubits: np.ndarray, n_checks: int) -> np.ndarray:
    return group_parity(ANTICOMMUTES[letters, decision[qubits]], checks, n_checks)


def decode_depolarizing(code: StabilizerCode, s: BinaryVector, f_assumed: float, max_iters: int = 200,
                        stop_on_syndrome: bool = True, damping: float = 0.0) -> DecodeResult:
    """Estimate a Pauli error consistent with syndrome s under the assumed flip probability"""
    if len(s) != code.m:
        raise RejectedInputError(f"Syndrome length {len(s)} does not match M={code.m}")
    if not F_DOMAIN[0] < f_assumed < F_DOMAIN[1]:
        raise RejectedInputError(f"Assumed flip probability {f_assumed} outside (0, 3/4)")
    if not 0.0 <= damping < 1.0:
        raise RejectedInputError(f"Damping must lie in [0, 1), got {damping}")

    checks, qubits, letters = code.check_edges
    n, m = code.n, code.m
    target = s.bits
    prior = letter_prior(f_assumed)

    to_checks = np.tile(prior, (checks.shape[0], 1))
    from_checks = None
    beliefs = np.tile(prior, (n, 1))
    decision = np.zeros(n, dtype=np.int64)
    matched = bool(np.array_equal(decision_syndrome(decision, letters, checks, qubits, m), target))
    iterations = 0

    while iterations < max_iters and not (matched and stop_on_syndrome):
        iterations += 1
        update = check_to_qubit(to_checks, letters, checks, target)
        if from_checks is not None and damping > 0.0:
            update = (1.0 - damping) * update + damping * from_checks
        from_checks = update
        beliefs, to_checks = qubit_to_check(prior, from_checks, qubits, n)
        # argmax keeps the first maximum: ties resolve I, X, Y, Z
        decision = np.argmax(beliefs, axis=1)
        matched = bool(np.array_equal(decision_syndrome(decision, letters, checks, qubits, m), target))

    return DecodeResult(
        converged=matched,
        iterations_used=iterations,
        error_estimate=PauliVector.from_letters(decision),
        syndrome_matched=matched,
        posteriors=beliefs,
    )
