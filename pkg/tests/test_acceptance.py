"""
Desk-scale acceptance runs
The exact oracle checks and a short decode of the configured N=1034 code run
with the rest of the suite. The Monte Carlo trend
checks on the full-size codes take tens of minutes and only run when
QLDPC_ACCEPTANCE=1 is set.
"""

import os
import unittest

import numpy as np

from channels.depolarizing import DepolarizingChannel, sample_depolarizing
from channels.shannon import shannon_limit_bsc
from codes.bicycle import build_bicycle_code, column_defects
from codes.classical import ClassicalCode, tanner_girth
from codes.pauli import PauliVector
from codes.peg import build_peg_regular
from codes.stabilizer import pauli_to_binary, syndrome
from core.config_manager import ConfigManager
from core.rng import make_rng, stream_rng
from decoders.bruteforce import (bsc_posterior_bruteforce, check_messages_exhaustive,
                                 depolarizing_posterior_bruteforce)
from decoders.bsc_bp import decode_bsc_syndrome
from decoders.quaternary_bp import check_update, decode_depolarizing
from gf2.matrix import BinaryMatrix, BinaryVector, matmul_gf2, matvec_gf2
from harness.delta_fit import fit_delta_cost
from harness.engine import MonteCarloEngine
from harness.experiment_config import ExperimentKind
from harness.experiments import (build_code, run_classical_mismatch, run_improved_comparison,
                                 run_quantum_mismatch)
from harness.results import format_csv

FULL_RUNS = os.environ.get("QLDPC_ACCEPTANCE") == "1"
LETTERS = "IXYZ"


def random_tree_checks(n: int, rng: np.random.Generator):
    """Check supports forming a Tanner tree: each new check joins one covered bit to fresh ones"""
    checks = []
    covered = [0]
    fresh = 1
    while fresh < n:
        width = int(min(rng.integers(1, 3), n - fresh))
        anchor = int(rng.choice(covered))
        new = list(range(fresh, fresh + width))
        checks.append([anchor] + new)
        covered.extend(new)
        fresh += width
    return checks


def tree_stabilizer_code(n: int, rng: np.random.Generator):
    # one letter per qubit, so checks sharing a qubit agree there and commute
    letters = rng.integers(1, 4, size=n)
    ops = []
    for support in random_tree_checks(n, rng):
        op = ["I"] * n
        for i in support:
            op[i] = LETTERS[letters[i]]
        ops.append("".join(op))
    return pauli_to_binary(ops, name=f"tree-{n}")


def tree_classical_code(n: int, rng: np.random.Generator) -> ClassicalCode:
    rows = []
    for support in random_tree_checks(n, rng):
        row = np.zeros(n, dtype=np.uint8)
        row[support] = 1
        rows.append(row)
    return ClassicalCode(BinaryMatrix(np.vstack(rows)), name=f"tree-{n}")


class TestExactOracles(unittest.TestCase):

    def test_shannon_limits(self):
        self.assertAlmostEqual(shannon_limit_bsc(0.5), 0.1100, delta=0.0005)
        self.assertAlmostEqual(shannon_limit_bsc(0.75), 0.0417, delta=0.0002)

    def test_bp_exact_on_random_trees(self):
        rng = make_rng(2024)
        for instance in range(20):
            n = int(rng.integers(3, 9))
            code = tree_stabilizer_code(n, rng)
            e = PauliVector.from_letters(rng.integers(0, 4, size=n))
            s = syndrome(code, e)
            f = float(rng.uniform(0.01, 0.3))
            result = decode_depolarizing(code, s, f, max_iters=2 * n, stop_on_syndrome=False)
            np.testing.assert_allclose(result.posteriors, depolarizing_posterior_bruteforce(code, s, f),
                                       atol=1e-10, err_msg=f"quaternary instance {instance}")

            n = int(rng.integers(3, 17))
            classical = tree_classical_code(n, rng)
            e_bits = BinaryVector(rng.integers(0, 2, size=n))
            s_bits = matvec_gf2(classical.h, e_bits)
            p = float(rng.uniform(0.01, 0.3))
            result = decode_bsc_syndrome(classical, s_bits, p, max_iters=2 * n, stop_on_syndrome=False)
            np.testing.assert_allclose(result.posteriors, bsc_posterior_bruteforce(classical, s_bits, p),
                                       atol=1e-10, err_msg=f"binary instance {instance}")

    def test_check_update_against_direct_sum(self):
        rng = make_rng(99)
        for _ in range(1000):
            degree = int(rng.integers(1, 5))
            letters = rng.integers(1, 4, size=degree)
            incoming = rng.dirichlet(np.ones(4), size=degree)
            s_j = int(rng.integers(0, 2))
            np.testing.assert_allclose(check_update(letters, incoming, s_j),
                                       check_messages_exhaustive(letters, incoming, s_j), atol=1e-12)


class TestDefaultQuantumCode(unittest.TestCase):
    """The configured N=1034 code must separate single-qubit errors and decode at f = f_hat"""

    @classmethod
    def setUpClass(cls):
        config = ConfigManager(os.path.join(os.path.dirname(__file__), "..", "qldpc_config.json"))
        cls.cfg = config.build_experiment_config(ExperimentKind.QUANTUM_MISMATCH, {"f_true": 0.02})
        cls.code = build_code(cls.cfg)

    def test_columns_nonzero_and_distinct(self):
        self.assertEqual(self.code.n, 1034)
        # K = N - 2 rank(H) is even, so 516 is the closest to the 517 target
        self.assertGreaterEqual(self.code.k, 516)
        self.assertEqual(column_defects(self.code.h.dense), (0, 0))

    def test_matched_decoding_converges(self):
        channel = DepolarizingChannel(0.02)
        converged = 0
        for trial in range(10):
            e = sample_depolarizing(channel, self.code.n, stream_rng(7, trial))
            result = decode_depolarizing(self.code, syndrome(self.code, e), 0.02, max_iters=self.cfg.max_iters)
            converged += result.converged
        self.assertGreaterEqual(converged, 8)


@unittest.skipUnless(FULL_RUNS, "set QLDPC_ACCEPTANCE=1 for desk-scale Monte Carlo runs")
class TestDeskScale(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.config = ConfigManager(os.path.join(os.path.dirname(__file__), "..", "qldpc_config.json"))
        cls.bicycle = build_bicycle_code(1034, 16, 517, seed=1)

    def overrides(self, **values):
        values.setdefault("target_block_errors", 50)
        values.setdefault("max_trials", 200000)
        return values

    @staticmethod
    def non_overlapping(high, low):
        return high.interval[0] > low.interval[1]

    def test_bicycle_codes_commute(self):
        rng = make_rng(5)
        for _ in range(100):
            n = 2 * int(rng.integers(6, 518))
            # short codes keep all but one circulant row, long ones half of them
            row_weight, k_target = (6, 2) if n < 100 else (16, n // 2)
            code = build_bicycle_code(n, row_weight, k_target, seed=int(rng.integers(1 << 31)))
            self.assertTrue(matmul_gf2(code.h, code.g.T).is_zero())
            a1, a2 = code.a1, code.a2
            self.assertTrue((matmul_gf2(a1, a2.T) + matmul_gf2(a2, a1.T)).is_zero())

    def test_peg_girth(self):
        code = build_peg_regular(2040, 3, 6, seed=1)
        self.assertGreaterEqual(tanner_girth(code.h), 6)

    def test_classical_asymmetry(self):
        cfg = self.config.build_experiment_config(ExperimentKind.CLASSICAL_MISMATCH, self.overrides(
            grid=(0.04, 0.06, 0.07, 0.08, 0.10, 0.14)))
        result = run_classical_mismatch(cfg)
        points = {p.grid_value: p for p in result.points}
        best = min(result.points, key=lambda p: p.bler)
        self.assertLessEqual(abs(best.grid_value - 0.07), 0.01 + 1e-12)
        self.assertTrue(self.non_overlapping(points[0.04], points[0.10]))
        self.assertGreater(points[0.14].bler, points[0.10].bler)

    def test_quantum_asymmetry(self):
        cfg = self.config.build_experiment_config(ExperimentKind.QUANTUM_MISMATCH, self.overrides(
            f_true=0.02, grid=(0.01, 0.0175, 0.02, 0.0225, 0.03, 0.055)))
        result = run_quantum_mismatch(cfg, code=self.bicycle)
        points = {p.grid_value: p for p in result.points}
        best = min(result.points, key=lambda p: p.bler)
        self.assertLessEqual(abs(best.grid_value - 0.02), 0.0025 + 1e-12)
        self.assertTrue(self.non_overlapping(points[0.01], points[0.03]))
        self.assertGreaterEqual(points[0.055].bler, 5.0 * best.bler)

    def test_improved_decoder_gain(self):
        for scheme in ("A", "B"):
            cfg = self.config.build_experiment_config(ExperimentKind.IMPROVED, self.overrides(
                scheme=scheme, delta_ratio=0.5, target_block_errors=100))
            result = run_improved_comparison(cfg, code=self.bicycle)
            gains = []
            for f in cfg.grid:
                baseline, naive, improved = (result.point(arm, f) for arm in ("baseline", "naive", "improved"))
                self.assertLessEqual(improved.bler, naive.bler, msg=f"scheme {scheme} f={f}")
                self.assertLessEqual(baseline.bler, improved.bler, msg=f"scheme {scheme} f={f}")
                if naive.bler > 0 and self.non_overlapping(naive, improved):
                    gains.append(1.0 - improved.bler / naive.bler)
            self.assertTrue(any(g >= 0.25 for g in gains), msg=f"scheme {scheme} gains {gains}")

    def test_delta_recovery(self):
        cfg = self.config.build_experiment_config(ExperimentKind.DELTA_FIT, self.overrides(f_cap=0.75))
        fit = fit_delta_cost(cfg, code=self.bicycle)
        self.assertGreaterEqual(fit.delta_star, 0.2)
        self.assertLessEqual(fit.delta_star, 0.9)

    def test_csv_independent_of_threads(self):
        cfg = self.config.build_experiment_config(ExperimentKind.QUANTUM_MISMATCH, self.overrides(
            grid=(0.02, 0.03), target_block_errors=20))
        texts = {format_csv(run_quantum_mismatch(cfg, code=self.bicycle, engine=MonteCarloEngine(threads=t)))
                 for t in (1, 2, 8)}
        self.assertEqual(len(texts), 1)


if __name__ == '__main__':
    unittest.main()
