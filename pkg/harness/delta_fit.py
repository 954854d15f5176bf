#!/usr/bin/env python3
"""
Overestimate cost fit
Runs the improved decoder at one true f for a range of overestimate ratios
Delta f / f_hat, fits a quadratic to BLER(Delta) and reports its minimiser.
"""

import time
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from core.errors import ConfigError, RejectedInputError
from core.logging_setup import create_component_logger
from codes.stabilizer import StabilizerCode
from harness.engine import MonteCarloEngine
from harness.experiment_config import ExperimentConfig, ExperimentKind
from harness.experiments import ExperimentRunner, make_point
from harness.results import SweepResult

MIN_CURVATURE = 1e-12
MIN_FIT_POINTS = 3
MIN_GRID_POINTS = 5

logger = create_component_logger("harness.delta_fit")


@dataclass(frozen=True)
class QuadraticFit:
    delta_star: float
    interior: bool
    coefficients: Tuple[float, float, float]


@dataclass
class DeltaFitResult:
    cost_curve: SweepResult
    fit: QuadraticFit

    @property
    def delta_star(self) -> float:
        return self.fit.delta_star


def fit_quadratic_minimum(deltas: Sequence[float], blers: Sequence[float]) -> QuadraticFit:
    """Least-squares quadratic through (delta, bler); vertex clamped to the grid hull.

    A fit that is not strictly convex has no interior minimum, and the grid
    argmin is returned instead (ties go to the smallest delta).
    """
    x = np.asarray(deltas, dtype=np.float64)
    y = np.asarray(blers, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise RejectedInputError(f"deltas {x.shape} and blers {y.shape} must be matching 1-D sequences")
    if x.shape[0] < MIN_FIT_POINTS:
        raise RejectedInputError(f"A quadratic fit needs at least {MIN_FIT_POINTS} points, got {x.shape[0]}")

    a, b, c = (float(v) for v in np.polyfit(x, y, 2))
    if a <= MIN_CURVATURE:
        order = np.argsort(x, kind="stable")
        best = order[int(np.argmin(y[order]))]
        return QuadraticFit(float(x[best]), False, (a, b, c))
    vertex = -b / (2.0 * a)
    return QuadraticFit(float(np.clip(vertex, x.min(), x.max())), True, (a, b, c))


def fit_delta_cost(cfg: ExperimentConfig, delta_grid: Optional[Sequence[float]] = None,
                   code: Optional[StabilizerCode] = None,
                   engine: Optional[MonteCarloEngine] = None) -> DeltaFitResult:
    """BLER of the improved decoder against Delta f / f_hat, and the fitted optimum"""
    if cfg.kind is not ExperimentKind.DELTA_FIT:
        raise ConfigError(f"Expected a {ExperimentKind.DELTA_FIT.value} config, got {cfg.kind.value}")
    deltas = tuple(cfg.grid if delta_grid is None else delta_grid)
    if len(deltas) < MIN_GRID_POINTS:
        raise ConfigError(f"delta fit needs at least {MIN_GRID_POINTS} grid points, got {len(deltas)}")

    start_time = time.perf_counter()
    runner = ExperimentRunner(cfg, code=code, engine=engine)
    f_true = cfg.channel.true_value
    n_probes = runner.probe_count()
    curve = SweepResult(kind=cfg.kind.value, curves=["improved"])
    for delta in deltas:
        # one point key for every delta, so each ratio decodes the same noise and f_hat draws
        tallies = runner.comparison_point(f_true, 0, runner.policy_for(delta), n_probes,
                                          arms=("improved",), label=f"delta={delta}")
        curve.points.append(make_point(delta, "improved", tallies["improved"], runner.code.n))

    fit = fit_quadratic_minimum(deltas, [p.bler for p in curve.points])
    if not fit.interior:
        logger.warning(f"BLER(delta) fit has no interior minimum; using grid argmin {fit.delta_star}")
    logger.info(f"Delta fit at f={f_true}: delta*={fit.delta_star:.4f}")

    runner.finish(curve, start_time, f_true=f_true, delta_star=fit.delta_star, interior_minimum=fit.interior,
                  fit_coefficients=list(fit.coefficients), markers={"delta*": fit.delta_star})
    return DeltaFitResult(cost_curve=curve, fit=fit)
