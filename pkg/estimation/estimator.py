"""
Channel estimation model
An optimal estimator of f is taken to meet the Cramer-Rao bound with equality;
its output is a normal draw around f truncated to [0, 1].
"""

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.stats import truncnorm

from core.errors import RejectedInputError
from core.rng import SeedLike, make_rng
from estimation.fisher import Scheme, qfi_closed_form


@dataclass(frozen=True)
class EstimatorModel:
    """Estimate of f from n_probes independent probings under the given scheme"""
    scheme: Scheme
    f_true: float
    n_probes: float

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme.parse(self.scheme))
        if not 0.0 <= self.f_true <= 0.75:
            raise RejectedInputError(f"True flip probability {self.f_true} outside [0, 3/4]")
        if not self.n_probes > 0:
            raise RejectedInputError(f"Probe count must be positive, got {self.n_probes}")

    @property
    def variance(self) -> float:
        """1 / (N_m J(f)); zero where J diverges or N_m is infinite"""
        if self.f_true <= 0.0 or self.f_true >= 0.75 or math.isinf(self.n_probes):
            return 0.0
        return 1.0 / (self.n_probes * qfi_closed_form(self.scheme, self.f_true))

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance)


def sample_estimate(model: EstimatorModel, seed: SeedLike = None,
                    size: Optional[int] = None) -> Union[float, np.ndarray]:
    """Draw f_hat from Normal(f_true, variance) truncated to [0, 1]"""
    sd = model.sd
    if sd == 0.0:
        if size is None:
            return model.f_true
        return np.full(size, model.f_true)
    rng = make_rng(seed)
    a, b = (0.0 - model.f_true) / sd, (1.0 - model.f_true) / sd
    draws = truncnorm.rvs(a, b, loc=model.f_true, scale=sd, size=size, random_state=rng)
    draws = np.clip(draws, 0.0, 1.0)
    return float(draws) if size is None else draws


@dataclass(frozen=True)
class MismatchPolicy:
    """Relative overestimate Delta f / f_hat added at the decoder, capped at f_cap"""
    delta_ratio: float = 0.5
    f_cap: float = 0.0417

    def __post_init__(self):
        if self.delta_ratio < 0.0:
            raise RejectedInputError(f"delta_ratio must be >= 0, got {self.delta_ratio}")
        if not 0.0 <= self.f_cap <= 0.75:
            raise RejectedInputError(f"f_cap {self.f_cap} outside [0, 3/4]")


def improved_estimate(f_hat: float, policy: MismatchPolicy) -> float:
    """min(f_hat (1 + delta_ratio), f_cap)"""
    if not 0.0 <= f_hat <= 1.0:
        raise RejectedInputError(f"Estimate {f_hat} outside [0, 1]")
    return min(f_hat * (1.0 + policy.delta_ratio), policy.f_cap)
