import csv
import json
import os
import tempfile
import unittest
from dataclasses import replace

import numpy as np

from codes.bicycle import build_bicycle_code
from codes.pauli import PauliVector
from codes.peg import build_peg_regular
from codes.stabilizer import logical_operators, pauli_to_binary
from core import logging_setup
from core.errors import ConfigError, RejectedInputError
from decoders.result import DecodeResult
from gf2.matrix import BinaryVector
from harness.delta_fit import fit_delta_cost, fit_quadratic_minimum
from harness.engine import MonteCarloEngine, TrialRecord
from harness.experiment_config import (ChannelSpec, CodeSpec, DecoderPolicy, ExperimentConfig,
                                       ExperimentKind, StopRule)
from harness.experiments import (IMPROVED_ARMS, classical_trial_record, quantum_trial_record,
                                 run_classical_mismatch, run_improved_comparison, run_probe_tradeoff,
                                 run_quantum_mismatch)
from harness.results import (CSV_COLUMNS, SweepResult, emit_results, format_csv, git_blob_hash,
                             wilson_interval)
import run


def quantum_config(kind, grid, f_true=0.03, **decoder):
    decoder.setdefault("mode", "fixed" if kind is ExperimentKind.QUANTUM_MISMATCH else "improved")
    return ExperimentConfig(
        kind=kind,
        code=CodeSpec(family="bicycle", n=40, k=2, row_weight=6, seed=1),
        channel=ChannelSpec(kind="depolarizing", true_value=f_true),
        decoder=DecoderPolicy(**decoder),
        stop=StopRule(target_block_errors=3, max_trials=24),
        grid=tuple(grid),
        max_iters=30,
        master_seed=11,
        threads=1,
        batch_size=8,
    )


def signature(result):
    return [(p.curve, p.grid_value, p.trials, p.block_errors, p.residual_weight, p.iterations,
             p.logical_failures) for p in result.ordered_points()]


class TestEngine(unittest.TestCase):

    @staticmethod
    def every_third(trial):
        return {"a": TrialRecord(trial % 3 == 0, 1, 2), "b": TrialRecord(False, 0, 1)}

    def test_stops_at_first_index_meeting_target(self):
        for threads, batch in ((1, 64), (4, 5), (3, 1)):
            engine = MonteCarloEngine(threads=threads, batch_size=batch)
            tallies = engine.run_point(self.every_third, ["a", "b"], StopRule(4, 1000), stop_arms=["a"])
            # errors at trials 0, 3, 6 and 9
            self.assertEqual(tallies["a"].trials, 10)
            self.assertEqual(tallies["a"].block_errors, 4)
            self.assertEqual(tallies["b"].trials, 10)
            self.assertEqual(tallies["b"].iterations, 10)

    def test_max_trials_cap(self):
        tallies = MonteCarloEngine(threads=2, batch_size=7).run_point(
            self.every_third, ["a", "b"], StopRule(100, 20))
        self.assertEqual(tallies["a"].trials, 20)
        self.assertEqual(tallies["a"].block_errors, 7)
        self.assertEqual(tallies["b"].block_errors, 0)


class TestTrialRecords(unittest.TestCase):

    def setUp(self):
        self.code = pauli_to_binary(["ZZXIX", "XZZXI", "IXZZX", "XIXZZ"], name="five-qubit")
        self.e = PauliVector.from_string("XIIII")

    def decoded(self, e_hat, converged=True):
        return DecodeResult(converged=converged, iterations_used=4, error_estimate=e_hat,
                            syndrome_matched=converged)

    def test_logical_failure_leaves_residual(self):
        logical = logical_operators(self.code)[0]
        record = quantum_trial_record(self.code, self.e, self.decoded(self.e * logical))
        self.assertFalse(record.block_error)
        self.assertTrue(record.logical_failure)
        self.assertEqual(record.residual_weight, logical.weight)
        self.assertGreater(record.residual_weight, 0)

    def test_degenerate_success_leaves_nothing(self):
        record = quantum_trial_record(self.code, self.e, self.decoded(self.e * self.code.stabilizer(0)))
        self.assertEqual((record.block_error, record.logical_failure, record.residual_weight), (False, False, 0))

    def test_timeout_counts_tentative_residual(self):
        record = quantum_trial_record(self.code, self.e, self.decoded(PauliVector.identity(5), converged=False))
        self.assertTrue(record.block_error)
        self.assertFalse(record.logical_failure)
        self.assertEqual(record.residual_weight, 1)

    def test_classical_wrong_codeword(self):
        e = BinaryVector([1, 0, 0, 0])
        record = classical_trial_record(e, self.decoded(BinaryVector([0, 1, 1, 0])))
        self.assertTrue(record.block_error)
        self.assertTrue(record.logical_failure)
        self.assertEqual(record.residual_weight, 3)
        self.assertEqual(classical_trial_record(e, self.decoded(e)).residual_weight, 0)


class TestResults(unittest.TestCase):

    def test_wilson_interval(self):
        self.assertEqual(wilson_interval(0, 0), (0.0, 1.0))
        lo, hi = wilson_interval(0, 10)
        self.assertEqual(lo, 0.0)
        self.assertGreater(hi, 0.0)
        lo, hi = wilson_interval(5, 10)
        self.assertAlmostEqual(lo + hi, 1.0)
        self.assertLess(lo, 0.5)

    def test_blob_hash(self):
        self.assertEqual(git_blob_hash(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391")

    def test_empty_sweep_is_header_only(self):
        text = format_csv(SweepResult(kind="quantum_mismatch", curves=["mismatch"]))
        self.assertEqual(text, ",".join(CSV_COLUMNS) + "\n")


class TestQuantumExperiments(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.code = build_bicycle_code(40, 6, 2, seed=1)

    def test_mismatch_independent_of_threads(self):
        cfg = quantum_config(ExperimentKind.QUANTUM_MISMATCH, (0.02, 0.05))
        serial = run_quantum_mismatch(cfg, code=self.code, engine=MonteCarloEngine(threads=1, batch_size=8))
        parallel = run_quantum_mismatch(cfg, code=self.code, engine=MonteCarloEngine(threads=4, batch_size=5))
        self.assertEqual(signature(serial), signature(parallel))
        self.assertIn("classical limit", serial.extras["markers"])
        self.assertEqual(serial.extras["f_true"], 0.03)

    def test_improved_comparison_curves(self):
        cfg = quantum_config(ExperimentKind.IMPROVED, (0.02, 0.04), f_true=None)
        result = run_improved_comparison(cfg, code=self.code, engine=MonteCarloEngine(threads=2, batch_size=8))
        self.assertEqual(result.curves, list(IMPROVED_ARMS))
        self.assertEqual(len(result.points), 6)
        self.assertEqual(result.extras["n_probes"], 40.0)
        for p in result.points:
            self.assertLessEqual(p.qber, (p.block_errors + p.logical_failures) / p.trials)
            self.assertLessEqual(p.trials, 24)

    def test_zero_overestimate_matches_naive(self):
        cfg = quantum_config(ExperimentKind.IMPROVED, (0.03,), f_true=None, delta_ratio=0.0, f_cap=0.75)
        result = run_improved_comparison(cfg, code=self.code, engine=MonteCarloEngine(threads=1))
        naive, improved = result.point("naive", 0.03), result.point("improved", 0.03)
        self.assertEqual((naive.trials, naive.block_errors, naive.residual_weight, naive.iterations),
                         (improved.trials, improved.block_errors, improved.residual_weight, improved.iterations))

    def test_probe_tradeoff(self):
        cfg = replace(quantum_config(ExperimentKind.PROBE_TRADEOFF, (1.0, 1000.0)), stop=StopRule(1000, 12))
        result = run_probe_tradeoff(cfg, code=self.code, engine=MonteCarloEngine(threads=2, batch_size=4))
        self.assertEqual([p.grid_value for p in result.curve("baseline")], [1.0, 1000.0])
        # the baseline decoder never sees f_hat, so the probe count cannot change it
        first, second = result.curve("baseline")
        self.assertEqual((first.trials, first.block_errors), (second.trials, second.block_errors))

    def test_bad_probe_grid(self):
        cfg = quantum_config(ExperimentKind.PROBE_TRADEOFF, (0.0, 10.0))
        with self.assertRaises(ConfigError):
            run_probe_tradeoff(cfg, code=self.code)

    def test_wrong_kind(self):
        cfg = quantum_config(ExperimentKind.QUANTUM_MISMATCH, (0.02,))
        with self.assertRaises(ConfigError):
            run_improved_comparison(cfg, code=self.code)

    def test_policy_sweep_reuses_comparison_streams(self):
        grid = (0.02, 0.04)
        stop = StopRule(10 ** 6, 16)
        engine = MonteCarloEngine(threads=2, batch_size=4)
        comparison = run_improved_comparison(
            replace(quantum_config(ExperimentKind.IMPROVED, grid, f_true=None), stop=stop),
            code=self.code, engine=engine)
        for mode, arm in (("estimated", "naive"), ("improved", "improved"), ("true", "baseline")):
            cfg = replace(quantum_config(ExperimentKind.QUANTUM_MISMATCH, grid, mode=mode), stop=stop)
            result = run_quantum_mismatch(cfg, code=self.code, engine=engine)
            self.assertEqual(result.curves, [mode])
            self.assertEqual(result.extras["policy"], mode)
            self.assertEqual(result.extras["grid_label"], "f")
            for f in grid:
                swept, reference = result.point(mode, f), comparison.point(arm, f)
                self.assertEqual((swept.trials, swept.block_errors, swept.residual_weight, swept.iterations),
                                 (reference.trials, reference.block_errors, reference.residual_weight,
                                  reference.iterations))

    def test_fixed_policy_sweep(self):
        cfg = replace(quantum_config(ExperimentKind.QUANTUM_MISMATCH, (0.02, 0.04), f_hat=0.3),
                      stop=StopRule(10 ** 6, 16))
        result = run_quantum_mismatch(cfg, code=self.code, engine=MonteCarloEngine(threads=1))
        self.assertEqual(result.curves, ["fixed"])
        self.assertEqual(result.extras["f_hat"], 0.3)
        self.assertEqual(result.extras["markers"]["f_hat"], 0.3)
        self.assertEqual([p.grid_value for p in result.points], [0.02, 0.04])
        self.assertTrue(all(p.trials == 16 for p in result.points))

    def test_policy_validation(self):
        bad = (
            quantum_config(ExperimentKind.IMPROVED, (0.02,), f_true=None, mode="fixed"),
            quantum_config(ExperimentKind.QUANTUM_MISMATCH, (0.02,), mode="true", f_hat=0.03),
            quantum_config(ExperimentKind.QUANTUM_MISMATCH, (0.02,), f_hat=0.9),
            quantum_config(ExperimentKind.QUANTUM_MISMATCH, (0.02, 0.8), mode="true"),
            quantum_config(ExperimentKind.QUANTUM_MISMATCH, (0.02,), mode="guess"),
        )
        for cfg in bad:
            with self.assertRaises(ConfigError):
                cfg.validate()
        # an assumed-f grid may run up to 1, a true-f grid only to 3/4
        quantum_config(ExperimentKind.QUANTUM_MISMATCH, (0.02, 0.8)).validate()

    def test_delta_fit(self):
        cfg = quantum_config(ExperimentKind.DELTA_FIT, (0.0, 0.25, 0.5, 0.75, 1.0), f_cap=0.75)
        fit = fit_delta_cost(cfg, code=self.code, engine=MonteCarloEngine(threads=2, batch_size=8))
        self.assertEqual(len(fit.cost_curve.points), 5)
        self.assertGreaterEqual(fit.delta_star, 0.0)
        self.assertLessEqual(fit.delta_star, 1.0)
        self.assertEqual(fit.cost_curve.extras["markers"], {"delta*": fit.delta_star})
        with self.assertRaises(ConfigError):
            fit_delta_cost(cfg, delta_grid=(0.0, 0.5, 1.0), code=self.code)

    def test_emit(self):
        cfg = quantum_config(ExperimentKind.QUANTUM_MISMATCH, (0.02, 0.05))
        result = run_quantum_mismatch(cfg, code=self.code, engine=MonteCarloEngine(threads=1))
        with tempfile.TemporaryDirectory() as tmp:
            paths = emit_results(result, tmp, "quantum_mismatch", svg=True, x_label="f_hat")
            self.assertEqual([os.path.basename(p) for p in paths],
                             ["quantum_mismatch.csv", "quantum_mismatch.manifest.json", "quantum_mismatch.svg"])
            with open(paths[0]) as f:
                rows = list(csv.DictReader(f))
            self.assertEqual(len(rows), 2)
            self.assertEqual(float(rows[1]["grid_value_fd"]), 4.0 * 0.05 / 3.0)
            with open(paths[1]) as f:
                manifest = json.load(f)
            for key in ("master_seed", "config", "code_hash", "wall_time_seconds", "host", "decisions", "version"):
                self.assertIn(key, manifest)
            self.assertEqual(manifest["master_seed"], 11)
            with open(paths[2]) as f:
                self.assertIn("<svg", f.read())


class TestClassicalExperiment(unittest.TestCase):

    def test_mismatch_sweep(self):
        code = build_peg_regular(48, 3, 6, seed=2)
        cfg = ExperimentConfig(
            kind=ExperimentKind.CLASSICAL_MISMATCH,
            code=CodeSpec(family="peg", n=48, seed=2),
            channel=ChannelSpec(kind="bsc", true_value=0.04, noise_mode="iid"),
            stop=StopRule(target_block_errors=3, max_trials=24),
            grid=(0.02, 0.06),
            max_iters=30,
        )
        first = run_classical_mismatch(cfg, code=code, engine=MonteCarloEngine(threads=1))
        second = run_classical_mismatch(cfg, code=code, engine=MonteCarloEngine(threads=3, batch_size=5))
        self.assertEqual(signature(first), signature(second))
        self.assertIn("shannon_limit", first.extras)
        self.assertTrue(all(p.curve == "mismatch" for p in first.points))
        self.assertEqual(format_csv(first).splitlines()[1].split(",")[9], "")


class TestQuadraticFit(unittest.TestCase):

    def setUp(self):
        self.deltas = np.linspace(0.0, 1.2, 7)

    def test_interior_vertex(self):
        fit = fit_quadratic_minimum(self.deltas, (self.deltas - 0.5) ** 2 + 0.1)
        self.assertTrue(fit.interior)
        self.assertAlmostEqual(fit.delta_star, 0.5)

    def test_vertex_clipped_to_grid(self):
        fit = fit_quadratic_minimum(self.deltas, (self.deltas - 2.0) ** 2)
        self.assertAlmostEqual(fit.delta_star, 1.2)

    def test_flat_costs_pick_smallest_delta(self):
        fit = fit_quadratic_minimum(self.deltas, np.full(7, 0.3))
        self.assertFalse(fit.interior)
        self.assertEqual(fit.delta_star, 0.0)

    def test_concave_costs_use_argmin(self):
        fit = fit_quadratic_minimum(self.deltas, -(self.deltas - 0.5) ** 2)
        self.assertFalse(fit.interior)
        self.assertAlmostEqual(fit.delta_star, 1.2)

    def test_too_few_points(self):
        with self.assertRaises(RejectedInputError):
            fit_quadratic_minimum([0.0, 1.0], [0.1, 0.2])


class TestCommandLine(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.config = os.path.join(self.tmp.name, "config.json")
        with open(self.config, "w") as f:
            json.dump({"Logging": {"level": "WARNING", "log_dir": os.path.join(self.tmp.name, "logs")}}, f)

    def tearDown(self):
        logging_setup._LOG_DIR = None
        logging_setup._COMPONENT_LOGGERS.clear()
        self.tmp.cleanup()

    def test_fisher_table(self):
        status = run.main(["fisher", "--config", self.config, "--out-dir", self.tmp.name,
                           "--grid", "0.1,0.2", "--probes", "100"])
        self.assertEqual(status, 0)
        with open(os.path.join(self.tmp.name, "fisher_table.csv")) as f:
            rows = list(csv.DictReader(f))
        self.assertEqual(len(rows), 2)
        self.assertAlmostEqual(float(rows[0]["J_B"]), 1.0 / (0.1 * 0.9))

    def test_construct_then_decode(self):
        status = run.main(["construct", "--config", self.config, "--family", "peg", "--n", "24",
                           "--out-dir", self.tmp.name])
        self.assertEqual(status, 0)
        path = os.path.join(self.tmp.name, "peg-24.alist")
        self.assertTrue(os.path.exists(path))
        status = run.main(["decode", "--config", self.config, "--code", path,
                           "--syndrome", "0" * 12, "--f-hat", "0.05"])
        self.assertEqual(status, 0)

    def test_version(self):
        self.assertEqual(run.main(["--version"]), 0)
        self.assertEqual(run.main(["--list"]), 0)

    def test_malformed_config_exit_code(self):
        with open(self.config, "w") as f:
            f.write("{not json")
        self.assertEqual(run.main(["fisher", "--config", self.config]), run.EXIT_CONFIG)

    def test_bad_grid_exit_code(self):
        status = run.main(["sweep-quantum", "--config", self.config, "--grid", "0.1,abc"])
        self.assertEqual(status, run.EXIT_CONFIG)

    def test_policy_flags_rejected_where_they_do_not_apply(self):
        self.assertEqual(run.main(["improved", "--config", self.config, "--policy", "true"]), run.EXIT_CONFIG)
        self.assertEqual(run.main(["sweep-classical", "--config", self.config, "--f-hat", "0.03"]),
                         run.EXIT_CONFIG)
        self.assertEqual(run.main(["sweep-quantum", "--config", self.config,
                                   "--policy", "true", "--f-hat", "0.03"]), run.EXIT_CONFIG)


if __name__ == '__main__':
    unittest.main()
