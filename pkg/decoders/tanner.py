"""
Edge-indexed helpers shared by the BP decoders
Messages live on Tanner-graph edges; a group is the set of edges meeting
at one check (or one variable).
"""

from typing import Tuple

import numpy as np


def exclusive_products(values: np.ndarray, groups: np.ndarray,
                       n_groups: int) -> Tuple[np.ndarray, np.ndarray]:
    """Per-group products and, per edge, the product over the other edges of its group

    Works in log-magnitude form with separate sign and zero counts, so exact
    zeros and negative factors are handled without division.
    """
    values = np.asarray(values, dtype=np.float64)
    magnitude = np.abs(values)
    zero = magnitude == 0.0
    logs = np.log(np.where(zero, 1.0, magnitude))
    negative = (values < 0.0).astype(np.float64)
    zero_f = zero.astype(np.float64)

    log_sum = np.bincount(groups, weights=logs, minlength=n_groups)
    neg_count = np.bincount(groups, weights=negative, minlength=n_groups)
    zero_count = np.bincount(groups, weights=zero_f, minlength=n_groups)

    totals = np.exp(log_sum) * np.where(neg_count % 2 == 1, -1.0, 1.0)
    totals[zero_count > 0] = 0.0

    ex_log = log_sum[groups] - logs
    ex_sign = np.where((neg_count[groups] - negative) % 2 == 1, -1.0, 1.0)
    ex_zero = (zero_count[groups] - zero_f) > 0
    exclusive = np.where(ex_zero, 0.0, np.exp(ex_log) * ex_sign)
    return totals, exclusive


def group_parity(bits: np.ndarray, groups: np.ndarray, n_groups: int) -> np.ndarray:
    """XOR of edge bits within each group"""
    counts = np.bincount(groups, weights=np.asarray(bits, dtype=np.float64), minlength=n_groups)
    return (counts.astype(np.int64) % 2).astype(np.uint8)
