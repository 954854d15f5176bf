#!/usr/bin/env python3
"""
Mismatch experiments
Classical and quantum sweeps over the decoder's assumed noise level, the
naive-versus-improved decoder comparison and the probe-count tradeoff. Every
trial draws its noise from a Philox stream keyed by (master seed, trial) or
(master seed, grid point, trial), so a sweep is a pure function of its config.
"""

import time
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

from core.errors import ConfigError
from core.hardware_monitor import get_hardware_monitor
from core.logging_setup import LoggingMixin
from core.rng import stream_rng
from channels.bsc import BscChannel, sample_bsc
from channels.depolarizing import DepolarizingChannel, sample_depolarizing
from channels.shannon import shannon_limit_bsc
from codes.bicycle import build_bicycle_code
from codes.classical import ClassicalCode
from codes.peg import build_peg_regular
from codes.serialization import format_stabilizer_code, load_code
from codes.stabilizer import StabilizerCode, syndrome
from decoders.bsc_bp import decode_bsc_syndrome
from decoders.quaternary_bp import decode_depolarizing
from decoders.residual import Outcome, classify_residual
from estimation.estimator import EstimatorModel, MismatchPolicy, improved_estimate, sample_estimate
from gf2.alist import format_alist
from gf2.matrix import matvec_gf2
from harness.engine import ArmTally, MonteCarloEngine, TrialRecord
from harness.experiment_config import ExperimentConfig, ExperimentKind
from harness.results import PointResult, SweepResult

Code = Union[ClassicalCode, StabilizerCode]

F_CLAMP = (1e-9, 0.75 - 1e-9)
P_CLAMP = (1e-9, 0.5)

IMPROVED_ARMS = ("baseline", "naive", "improved")

DECISIONS = {
    "qber": "non-identity positions of e_true * e_hat summed over block-failure and logical-failure trials, "
            "divided by N * trials; successes and degenerate successes add 0",
    "quantum_block_failure": "decoder timeout (syndrome never matched within max_iters)",
    "classical_block_failure": "decoder timeout, or convergence to an error pattern other than the true one",
    "logical_failures": "syndrome-matched decodes whose residual lies outside the stabilizer group; not counted in bler",
    "assumed_value_clamp": {"depolarizing": list(F_CLAMP), "bsc": list(P_CLAMP)},
    "n_probes": "independent probe measurements N_m behind each estimate; null means the block length N",
    "seeding": "Philox streams keyed by (master_seed, trial) in mismatch sweeps and probe tradeoffs, "
               "(master_seed, grid point, trial) in the improved comparison and in policy sweeps",
}


def clamp_f(f: float) -> float:
    return min(max(f, F_CLAMP[0]), F_CLAMP[1])


def clamp_p(p: float) -> float:
    return min(max(p, P_CLAMP[0]), P_CLAMP[1])


def build_code(cfg: ExperimentConfig) -> Code:
    """Construct or load the code named by the config and check it suits the experiment"""
    spec = cfg.code
    if spec.family == "peg":
        code = build_peg_regular(spec.n, spec.col_weight, spec.row_weight, seed=spec.seed)
    elif spec.family == "bicycle":
        k_target = spec.k if spec.k is not None else spec.n // 2
        code = build_bicycle_code(spec.n, spec.row_weight, k_target, seed=spec.seed)
    else:
        code = load_code(spec.path)

    expected = StabilizerCode if cfg.kind.quantum else ClassicalCode
    if not isinstance(code, expected):
        raise ConfigError(f"{cfg.kind.value} needs a {expected.__name__}, got {type(code).__name__}")
    return code


def code_text(code: Code) -> str:
    """The text save_code would write for this code"""
    if isinstance(code, StabilizerCode):
        return format_stabilizer_code(code)
    return format_alist(code.h)


def classical_trial_record(e, result) -> TrialRecord:
    """Tally entry for one BSC decode of the true flip pattern e"""
    wrong_word = result.error_estimate != e
    residual = e ^ result.error_estimate
    return TrialRecord(
        block_error=not result.converged or wrong_word,
        residual_weight=residual.weight,
        iterations=result.iterations_used,
        logical_failure=result.converged and wrong_word,
    )


def quantum_trial_record(code: StabilizerCode, e, result) -> TrialRecord:
    """Tally entry for one depolarizing decode of the true error e"""
    failed = not result.converged
    outcome = None if failed else classify_residual(code, e, result.error_estimate)
    # a degenerate success leaves a stabilizer behind, which acts trivially
    harmless = outcome in (Outcome.SUCCESS, Outcome.DEGENERATE_SUCCESS)
    return TrialRecord(
        block_error=failed,
        residual_weight=0 if harmless else (e * result.error_estimate).weight,
        iterations=result.iterations_used,
        logical_failure=outcome is Outcome.LOGICAL_FAILURE,
    )


def make_point(grid_value: float, curve: str, tally: ArmTally, n: int) -> PointResult:
    return PointResult(
        grid_value=grid_value,
        curve=curve,
        trials=tally.trials,
        block_errors=tally.block_errors,
        residual_weight=tally.residual_weight,
        iterations=tally.iterations,
        logical_failures=tally.logical_failures,
        n=n,
    )


class ExperimentRunner(LoggingMixin):
    """Runs one experiment kind against a fixed code"""

    def __init__(self, cfg: ExperimentConfig, code: Optional[Code] = None,
                 engine: Optional[MonteCarloEngine] = None):
        self.cfg = cfg.validate()
        self.code = code if code is not None else build_code(cfg)
        self.engine = engine or MonteCarloEngine(threads=cfg.threads, batch_size=cfg.batch_size)

    # ----- single trials -----

    def classical_trial(self, trial: int, p_assumed: float) -> TrialRecord:
        code = self.code
        rng = stream_rng(self.cfg.master_seed, trial)
        # the code is linear, so the all-zero codeword stands for any transmitted word
        e = sample_bsc(BscChannel(self.cfg.channel.true_value), code.n, rng, mode=self.cfg.channel.noise_mode)
        result = decode_bsc_syndrome(code, matvec_gf2(code.h, e), clamp_p(p_assumed),
                                     max_iters=self.cfg.max_iters, damping=self.cfg.damping)
        return classical_trial_record(e, result)

    def quantum_records(self, e, decoders: Dict[str, float], cache: Dict[float, TrialRecord]) -> Dict[str, TrialRecord]:
        """Decode one noise realisation once per distinct clamped assumed value"""
        code = self.code
        s = syndrome(code, e)
        records = {}
        for arm, f_assumed in decoders.items():
            f_used = clamp_f(f_assumed)
            if f_used not in cache:
                result = decode_depolarizing(code, s, f_used, max_iters=self.cfg.max_iters,
                                             damping=self.cfg.damping)
                cache[f_used] = quantum_trial_record(code, e, result)
            records[arm] = cache[f_used]
        return records

    def sample_quantum_noise(self, f_true: float, rng):
        return sample_depolarizing(DepolarizingChannel(f_true), self.code.n, rng,
                                   mode=self.cfg.channel.noise_mode)

    def draw_estimate(self, model: EstimatorModel, keys: Tuple[int, ...]) -> float:
        return sample_estimate(model, stream_rng(self.cfg.master_seed, *keys, 0))

    def keyed_noise(self, f_true: float, keys: Tuple[int, ...]):
        return self.sample_quantum_noise(f_true, stream_rng(self.cfg.master_seed, *keys, 1))

    def comparison_trial(self, f_true: float, model: EstimatorModel, policy: MismatchPolicy,
                         keys: Tuple[int, ...], arms: Sequence[str]) -> Dict[str, TrialRecord]:
        """Common random numbers: every arm sees the same noise and the same f_hat draw"""
        f_hat = self.draw_estimate(model, keys)
        assumed = {
            "baseline": f_true,
            "naive": f_hat,
            "improved": improved_estimate(f_hat, policy),
        }
        e = self.keyed_noise(f_true, keys)
        return self.quantum_records(e, {arm: assumed[arm] for arm in arms}, {})

    def policy_assumed(self, f_true: float, model: EstimatorModel, keys: Tuple[int, ...]) -> float:
        """The assumed f the configured policy hands the decoder on one trial"""
        decoder = self.cfg.decoder
        if decoder.mode == "true":
            return f_true
        if decoder.mode == "fixed":
            return decoder.f_hat
        f_hat = self.draw_estimate(model, keys)
        return f_hat if decoder.mode == "estimated" else improved_estimate(f_hat, self.policy_for())

    # ----- sweeps -----

    def finish(self, result: SweepResult, start_time: float, **extras) -> SweepResult:
        result.config = self.cfg.to_dict()
        result.master_seed = self.cfg.master_seed
        result.code_text = code_text(self.code)
        result.wall_time = time.perf_counter() - start_time
        result.host = get_hardware_monitor().get_comprehensive_info()
        result.decisions = dict(DECISIONS)
        result.extras.update(extras)
        self.logger.info(f"{result.kind} finished: {len(result.points)} points in {result.wall_time:.1f}s")
        return result

    def classical_mismatch(self) -> SweepResult:
        start_time = time.perf_counter()
        p_true = self.cfg.channel.true_value
        result = SweepResult(kind=self.cfg.kind.value, curves=["mismatch"])
        for p_hat in self.cfg.grid:
            tallies = self.engine.run_point(
                lambda trial: {"mismatch": self.classical_trial(trial, p_hat)},
                ["mismatch"], self.cfg.stop, label=f"p_hat={p_hat}")
            result.points.append(make_point(p_hat, "mismatch", tallies["mismatch"], self.code.n))

        markers = {"p_true": p_true}
        extras = {"p_true": p_true, "rate": self.code.rate}
        if 0.0 < self.code.rate < 1.0:
            limit = shannon_limit_bsc(self.code.rate)
            markers["Shannon limit"] = limit
            extras["shannon_limit"] = limit
        return self.finish(result, start_time, markers=markers, **extras)

    def classical_limit_markers(self, markers: Dict[str, float], extras: Dict[str, float]):
        # each half of a dual-containing code is a classical code of rate (1 + R) / 2
        classical_rate = (1.0 + self.code.rate) / 2.0
        if 0.0 < classical_rate < 1.0:
            limit = shannon_limit_bsc(classical_rate)
            markers["classical limit"] = limit
            extras["classical_limit"] = limit

    def quantum_mismatch(self) -> SweepResult:
        if not self.cfg.decoder.assumed_from_grid:
            return self.policy_sweep()
        start_time = time.perf_counter()
        f_true = self.cfg.channel.true_value
        result = SweepResult(kind=self.cfg.kind.value, curves=["mismatch"], grid_is_flip_probability=True)
        for f_hat in self.cfg.grid:
            def trial_fn(trial: int, f_hat=f_hat) -> Dict[str, TrialRecord]:
                e = self.sample_quantum_noise(f_true, stream_rng(self.cfg.master_seed, trial))
                return self.quantum_records(e, {"mismatch": f_hat}, {})

            tallies = self.engine.run_point(trial_fn, ["mismatch"], self.cfg.stop, label=f"f_hat={f_hat}")
            result.points.append(make_point(f_hat, "mismatch", tallies["mismatch"], self.code.n))

        markers = {"f_true": f_true}
        extras = {"f_true": f_true, "rate": self.code.rate, "policy": "fixed", "grid_label": "f_hat"}
        self.classical_limit_markers(markers, extras)
        return self.finish(result, start_time, markers=markers, **extras)

    def policy_sweep(self) -> SweepResult:
        """BLER over a grid of true f, each trial decoded at the value the policy picks"""
        start_time = time.perf_counter()
        decoder = self.cfg.decoder
        curve = decoder.mode
        n_probes = self.probe_count()
        result = SweepResult(kind=self.cfg.kind.value, curves=[curve], grid_is_flip_probability=True)
        for index, f_true in enumerate(self.cfg.grid):
            model = EstimatorModel(decoder.scheme, f_true, n_probes)

            def trial_fn(trial: int, f_true=f_true, model=model, index=index) -> Dict[str, TrialRecord]:
                # same streams as the comparison arms at grid point `index`
                keys = (index, trial)
                e = self.keyed_noise(f_true, keys)
                return self.quantum_records(e, {curve: self.policy_assumed(f_true, model, keys)}, {})

            tallies = self.engine.run_point(trial_fn, [curve], self.cfg.stop, label=f"f={f_true}")
            result.points.append(make_point(f_true, curve, tallies[curve], self.code.n))

        markers = {}
        extras = {"policy": decoder.mode, "rate": self.code.rate, "grid_label": "f"}
        if decoder.mode == "fixed":
            markers["f_hat"] = decoder.f_hat
            extras["f_hat"] = decoder.f_hat
        elif decoder.mode in ("estimated", "improved"):
            extras.update(scheme=decoder.scheme.value, n_probes=n_probes)
            if decoder.mode == "improved":
                extras.update(delta_ratio=decoder.delta_ratio, f_cap=decoder.f_cap)
        self.classical_limit_markers(markers, extras)
        return self.finish(result, start_time, markers=markers, **extras)

    def policy_for(self, delta_ratio: Optional[float] = None) -> MismatchPolicy:
        decoder = self.cfg.decoder
        return MismatchPolicy(delta_ratio=decoder.delta_ratio if delta_ratio is None else delta_ratio,
                              f_cap=decoder.f_cap)

    def probe_count(self) -> float:
        n_probes = self.cfg.decoder.n_probes
        return float(self.code.n) if n_probes is None else float(n_probes)

    def comparison_point(self, f_true: float, point_key: int, policy: MismatchPolicy,
                         n_probes: float, arms: Sequence[str] = IMPROVED_ARMS,
                         stop_arms: Optional[Sequence[str]] = None, label: str = "") -> Dict[str, ArmTally]:
        model = EstimatorModel(self.cfg.decoder.scheme, f_true, n_probes)
        return self.engine.run_point(
            lambda trial: self.comparison_trial(f_true, model, policy, (point_key, trial), arms),
            list(arms), self.cfg.stop, stop_arms=stop_arms, label=label)

    def improved_comparison(self) -> SweepResult:
        start_time = time.perf_counter()
        policy = self.policy_for()
        n_probes = self.probe_count()
        result = SweepResult(kind=self.cfg.kind.value, curves=list(IMPROVED_ARMS), grid_is_flip_probability=True)
        for index, f_true in enumerate(self.cfg.grid):
            tallies = self.comparison_point(f_true, index, policy, n_probes, label=f"f={f_true}")
            for arm in IMPROVED_ARMS:
                result.points.append(make_point(f_true, arm, tallies[arm], self.code.n))
        return self.finish(result, start_time, scheme=self.cfg.decoder.scheme.value, n_probes=n_probes,
                           delta_ratio=policy.delta_ratio, f_cap=policy.f_cap,
                           markers={"f_cap": policy.f_cap})

    def probe_tradeoff(self, probes_grid: Sequence[float]) -> SweepResult:
        start_time = time.perf_counter()
        f_true = self.cfg.channel.true_value
        policy = self.policy_for()
        model_scheme = self.cfg.decoder.scheme
        result = SweepResult(kind=self.cfg.kind.value, curves=list(IMPROVED_ARMS))
        for n_probes in probes_grid:
            if not n_probes > 0:
                raise ConfigError(f"probe counts must be positive, got {n_probes}")
            model = EstimatorModel(model_scheme, f_true, float(n_probes))
            # keyed by trial only: a probe count changes the f_hat spread, never the noise
            tallies = self.engine.run_point(
                lambda trial, model=model: self.comparison_trial(f_true, model, policy, (trial,), IMPROVED_ARMS),
                list(IMPROVED_ARMS), self.cfg.stop, label=f"n_probes={n_probes}")
            for arm in IMPROVED_ARMS:
                result.points.append(make_point(float(n_probes), arm, tallies[arm], self.code.n))
        return self.finish(result, start_time, f_true=f_true, scheme=model_scheme.value,
                           delta_ratio=policy.delta_ratio, f_cap=policy.f_cap)


def _runner(cfg: ExperimentConfig, expected: ExperimentKind, code, engine) -> ExperimentRunner:
    if cfg.kind is not expected:
        raise ConfigError(f"Expected a {expected.value} config, got {cfg.kind.value}")
    return ExperimentRunner(cfg, code=code, engine=engine)


def run_classical_mismatch(cfg: ExperimentConfig, code: Optional[ClassicalCode] = None,
                           engine: Optional[MonteCarloEngine] = None) -> SweepResult:
    """BLER against assumed crossover probability at a fixed true p"""
    return _runner(cfg, ExperimentKind.CLASSICAL_MISMATCH, code, engine).classical_mismatch()


def run_quantum_mismatch(cfg: ExperimentConfig, code: Optional[StabilizerCode] = None,
                         engine: Optional[MonteCarloEngine] = None) -> SweepResult:
    """BLER against assumed flip probability at a fixed true f, or against true f when the
    decoder policy (true, estimated, improved or a fixed f_hat) picks the assumed value"""
    return _runner(cfg, ExperimentKind.QUANTUM_MISMATCH, code, engine).quantum_mismatch()


def run_improved_comparison(cfg: ExperimentConfig, code: Optional[StabilizerCode] = None,
                            engine: Optional[MonteCarloEngine] = None) -> SweepResult:
    """Perfect-knowledge, naive-estimate and improved curves over a grid of true f"""
    return _runner(cfg, ExperimentKind.IMPROVED, code, engine).improved_comparison()


def run_probe_tradeoff(cfg: ExperimentConfig, probes_grid: Optional[Sequence[float]] = None,
                       code: Optional[StabilizerCode] = None,
                       engine: Optional[MonteCarloEngine] = None) -> SweepResult:
    """The three comparison arms as the number of probe measurements grows"""
    runner = _runner(cfg, ExperimentKind.PROBE_TRADEOFF, code, engine)
    return runner.probe_tradeoff(cfg.grid if probes_grid is None else probes_grid)


EXPERIMENTS: Dict[ExperimentKind, Callable[..., SweepResult]] = {
    ExperimentKind.CLASSICAL_MISMATCH: run_classical_mismatch,
    ExperimentKind.QUANTUM_MISMATCH: run_quantum_mismatch,
    ExperimentKind.IMPROVED: run_improved_comparison,
    ExperimentKind.PROBE_TRADEOFF: run_probe_tradeoff,
}
