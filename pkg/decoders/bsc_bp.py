#!/usr/bin/env python3
"""
Sum-product decoding for the binary symmetric channel
Log-likelihood ratios with the tanh rule at the checks. The decoder works
on the syndrome, so the transmitted codeword never has to be known.
"""

import numpy as np
from scipy.special import expit

from core.errors import RejectedInputError
from codes.classical import ClassicalCode
from decoders.result import DecodeResult
from decoders.tanner import exclusive_products, group_parity
from gf2.matrix import BinaryVector, matvec_gf2

TANH_CLIP = 1.0 - 1e-15


def decode_bsc_syndrome(code: ClassicalCode, s: BinaryVector, p_assumed: float, max_iters: int = 200,
                        stop_on_syndrome: bool = True, damping: float = 0.0) -> DecodeResult:
    """Estimate the flip pattern e with H e = s under crossover probability p_assumed"""
    if len(s) != code.m:
        raise RejectedInputError(f"Syndrome length {len(s)} does not match M={code.m}")
    if not 0.0 < p_assumed < 1.0:
        raise RejectedInputError(f"Assumed crossover probability {p_assumed} outside (0, 1)")
    if not 0.0 <= damping < 1.0:
        raise RejectedInputError(f"Damping must lie in [0, 1), got {damping}")

    checks, bits = code.h.edges
    n, m = code.n, code.m
    target = s.bits
    sign = np.where(target[checks] == 1, -1.0, 1.0)
    channel_llr = np.log((1.0 - p_assumed) / p_assumed)

    to_checks = np.full(checks.shape[0], channel_llr)
    from_checks = None
    total = np.full(n, channel_llr)
    decision = np.zeros(n, dtype=np.uint8)
    matched = bool(np.array_equal(group_parity(decision[bits], checks, m), target))
    iterations = 0

    while iterations < max_iters and not (matched and stop_on_syndrome):
        iterations += 1
        _, others = exclusive_products(np.tanh(0.5 * to_checks), checks, m)
        update = sign * 2.0 * np.arctanh(np.clip(others, -TANH_CLIP, TANH_CLIP))
        if from_checks is not None and damping > 0.0:
            update = (1.0 - damping) * update + damping * from_checks
        from_checks = update
        total = channel_llr + np.bincount(bits, weights=from_checks, minlength=n)
        to_checks = total[bits] - from_checks
        decision = (total < 0.0).astype(np.uint8)
        matched = bool(np.array_equal(group_parity(decision[bits], checks, m), target))

    return DecodeResult(
        converged=matched,
        iterations_used=iterations,
        error_estimate=BinaryVector(decision),
        syndrome_matched=matched,
        posteriors=expit(-total),
    )


def decode_bsc(code: ClassicalCode, received: BinaryVector, p_assumed: float, max_iters: int = 200,
               stop_on_syndrome: bool = True, damping: float = 0.0) -> DecodeResult:
    """Decode a received word; the codeword estimate is received XOR the estimated flips"""
    if len(received) != code.n:
        raise RejectedInputError(f"Received length {len(received)} does not match N={code.n}")
    result = decode_bsc_syndrome(code, matvec_gf2(code.h, received), p_assumed, max_iters,
                                 stop_on_syndrome=stop_on_syndrome, damping=damping)
    result.codeword_estimate = received ^ result.error_estimate
    return result
