from harness.experiment_config import (ChannelSpec, CodeSpec, DecoderPolicy, ExperimentConfig,
                                       ExperimentKind, StopRule)
from harness.engine import ArmTally, MonteCarloEngine, TrialRecord
from harness.experiments import (build_code, run_classical_mismatch, run_improved_comparison,
                                 run_probe_tradeoff, run_quantum_mismatch)
from harness.delta_fit import fit_delta_cost, fit_quadratic_minimum
from harness.results import PointResult, SweepResult, emit_results, wilson_interval

__all__ = [
    "ChannelSpec", "CodeSpec", "DecoderPolicy", "ExperimentConfig", "ExperimentKind", "StopRule",
    "ArmTally", "MonteCarloEngine", "TrialRecord", "build_code",
    "run_classical_mismatch", "run_quantum_mismatch", "run_improved_comparison", "run_probe_tradeoff",
    "fit_delta_cost", "fit_quadratic_minimum",
    "PointResult", "SweepResult", "emit_results", "wilson_interval",
]
