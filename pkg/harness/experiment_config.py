#!/usr/bin/env python3
"""
Experiment configuration
Immutable description of one Monte Carlo run. Built by the ConfigManager from
the sectioned JSON file plus CLI overrides, and copied verbatim into the run
manifest.
"""

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from core.errors import ConfigError
from estimation.fisher import Scheme

NOISE_MODES = ("fixed_weight", "iid")
CODE_FAMILIES = ("peg", "bicycle", "file")
POLICY_MODES = ("true", "fixed", "estimated", "improved")


class ExperimentKind(Enum):
    CLASSICAL_MISMATCH = "classical_mismatch"
    QUANTUM_MISMATCH = "quantum_mismatch"
    IMPROVED = "improved"
    DELTA_FIT = "delta_fit"
    PROBE_TRADEOFF = "probe_tradeoff"

    @property
    def quantum(self) -> bool:
        return self is not ExperimentKind.CLASSICAL_MISMATCH


COMPARISON_KINDS = (ExperimentKind.IMPROVED, ExperimentKind.DELTA_FIT, ExperimentKind.PROBE_TRADEOFF)


@dataclass(frozen=True)
class CodeSpec:
    """How to obtain the code: construct it (peg, bicycle) or load it from a file"""
    family: str
    n: int
    k: Optional[int] = None
    col_weight: int = 3
    row_weight: int = 6
    seed: int = 1
    path: Optional[str] = None


@dataclass(frozen=True)
class ChannelSpec:
    """True noise parameter (p for the BSC, f for depolarizing) and sampling mode"""
    kind: str
    true_value: Optional[float]
    noise_mode: str = "fixed_weight"


@dataclass(frozen=True)
class DecoderPolicy:
    """How the decoder's assumed noise level is chosen.

    true uses the channel's f, fixed uses f_hat (or each grid value when f_hat
    is unset), estimated draws f_hat from the estimator model and improved
    inflates that draw by delta_ratio up to f_cap.
    """
    mode: str = "fixed"
    f_hat: Optional[float] = None
    scheme: Scheme = Scheme.CASE_B
    n_probes: Optional[float] = None
    delta_ratio: float = 0.5
    f_cap: float = 0.0417

    @property
    def assumed_from_grid(self) -> bool:
        """True when the grid itself holds the assumed values (plain fixed policy)"""
        return self.mode == "fixed" and self.f_hat is None


@dataclass(frozen=True)
class StopRule:
    target_block_errors: int = 100
    max_trials: int = 100000


@dataclass(frozen=True)
class ExperimentConfig:
    kind: ExperimentKind
    code: CodeSpec
    channel: ChannelSpec
    decoder: DecoderPolicy = field(default_factory=DecoderPolicy)
    stop: StopRule = field(default_factory=StopRule)
    grid: Tuple[float, ...] = ()
    max_iters: int = 200
    master_seed: int = 2024
    threads: int = 0
    batch_size: int = 64
    damping: float = 0.0
    out_dir: str = "results"
    svg: bool = False

    def validate(self) -> "ExperimentConfig":
        """Raise ConfigError naming the first invalid field"""
        if self.code.family not in CODE_FAMILIES:
            raise ConfigError(f"code.family must be one of {CODE_FAMILIES}, got {self.code.family!r}")
        if self.code.family == "file" and not self.code.path:
            raise ConfigError("code.path is required when code.family is 'file'")
        if self.code.family != "file" and self.code.n < 2:
            raise ConfigError(f"code.n must be at least 2, got {self.code.n}")
        if self.kind.quantum and self.code.family == "peg":
            raise ConfigError("Quantum experiments need a stabilizer code (bicycle or file)")
        if not self.kind.quantum and self.code.family == "bicycle":
            raise ConfigError("The classical sweep needs a classical code (peg or file)")

        expected = "depolarizing" if self.kind.quantum else "bsc"
        if self.channel.kind != expected:
            raise ConfigError(f"channel.kind must be {expected!r} for {self.kind.value}")
        if self.channel.noise_mode not in NOISE_MODES:
            raise ConfigError(f"channel.noise_mode must be one of {NOISE_MODES}")
        upper = 0.75 if self.kind.quantum else 0.5
        if self.kind is not ExperimentKind.IMPROVED:
            value = self.channel.true_value
            if value is None or not 0.0 <= value <= upper:
                raise ConfigError(f"channel.true_value must lie in [0, {upper}], got {value}")

        if not self.grid:
            raise ConfigError("grid must contain at least one point")
        # mismatch grids hold assumed probabilities, improved grids true ones,
        # delta grids overestimate ratios and probe grids probe counts
        grid_upper = {
            ExperimentKind.CLASSICAL_MISMATCH: 1.0,
            ExperimentKind.QUANTUM_MISMATCH: 1.0,
            ExperimentKind.IMPROVED: 0.75,
        }.get(self.kind, math.inf)
        lower_open = self.kind is ExperimentKind.PROBE_TRADEOFF
        for value in self.grid:
            if not (value > 0.0 if lower_open else value >= 0.0) or value > grid_upper:
                raise ConfigError(f"grid value {value} out of range for {self.kind.value}")
        if self.kind is ExperimentKind.DELTA_FIT and len(self.grid) < 5:
            raise ConfigError(f"delta fit needs at least 5 grid points, got {len(self.grid)}")

        policy = self.decoder
        if policy.mode not in POLICY_MODES:
            raise ConfigError(f"decoder.mode must be one of {POLICY_MODES}")
        if self.kind in COMPARISON_KINDS and policy.mode != "improved":
            raise ConfigError(f"decoder.mode must be 'improved' for {self.kind.value}, got {policy.mode!r}")
        if self.kind is ExperimentKind.CLASSICAL_MISMATCH and not policy.assumed_from_grid:
            raise ConfigError("The classical sweep takes its assumed p from the grid; decoder.mode must be 'fixed'")
        if policy.f_hat is not None:
            if policy.mode != "fixed":
                raise ConfigError(f"decoder.f_hat only applies to the fixed policy, got mode {policy.mode!r}")
            if not 0.0 <= policy.f_hat <= 0.75:
                raise ConfigError(f"decoder.f_hat must lie in [0, 3/4], got {policy.f_hat}")
        if self.kind is ExperimentKind.QUANTUM_MISMATCH and not policy.assumed_from_grid:
            for value in self.grid:
                if value > 0.75:
                    raise ConfigError(f"grid value {value} is a true flip probability here and must be <= 3/4")
        if policy.n_probes is not None and not policy.n_probes > 0:
            raise ConfigError(f"decoder.n_probes must be positive, got {policy.n_probes}")
        if policy.delta_ratio < 0.0:
            raise ConfigError(f"decoder.delta_ratio must be >= 0, got {policy.delta_ratio}")
        if not 0.0 <= policy.f_cap <= 0.75:
            raise ConfigError(f"decoder.f_cap must lie in [0, 3/4], got {policy.f_cap}")

        if self.stop.target_block_errors < 1:
            raise ConfigError(f"stop.target_block_errors must be positive, got {self.stop.target_block_errors}")
        if self.stop.max_trials < 1:
            raise ConfigError(f"stop.max_trials must be positive, got {self.stop.max_trials}")
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be positive, got {self.max_iters}")
        if self.threads < 0:
            raise ConfigError(f"threads must be >= 0 (0 picks the CPU count), got {self.threads}")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be positive, got {self.batch_size}")
        if not 0.0 <= self.damping < 1.0:
            raise ConfigError(f"damping must lie in [0, 1), got {self.damping}")
        return self

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["kind"] = self.kind.value
        data["decoder"]["scheme"] = self.decoder.scheme.value
        data["grid"] = list(self.grid)
        return data
