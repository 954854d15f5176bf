"""
Shannon limits for the BSC
"""

import numpy as np
from scipy.optimize import brentq

from core.errors import RejectedInputError

TOLERANCE = 1e-12


def binary_entropy(p: float) -> float:
    """H2(p) in bits, with H2(0) = H2(1) = 0"""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float(-p * np.log2(p) - (1.0 - p) * np.log2(1.0 - p))


def shannon_limit_bsc(rate: float) -> float:
    """Largest crossover probability p* <= 1/2 a rate-R code can tolerate: 1 - H2(p*) = R"""
    if not 0.0 < rate < 1.0:
        raise RejectedInputError(f"Rate must lie in (0, 1), got {rate}")
    # 1 - H2(p) falls from 1 at p=0 to 0 at p=1/2, so the root is bracketed
    return float(brentq(lambda p: 1.0 - binary_entropy(p) - rate, 0.0, 0.5, xtol=TOLERANCE))
