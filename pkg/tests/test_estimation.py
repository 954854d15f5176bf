import math
import unittest

import numpy as np

from core.errors import DivergenceError, RejectedInputError, SingularSupportError
from core.rng import make_rng
from estimation.density import (PAULI_Z, DensityOperator, apply_depolarizing, bell_state,
                                depolarizing_derivative)
from estimation.estimator import EstimatorModel, MismatchPolicy, improved_estimate, sample_estimate
from estimation.fisher import Scheme, cramer_rao_sd, fisher_table, qfi, qfi_closed_form, sld


def random_density(rng, dim: int) -> DensityOperator:
    """Random mixed state: G G^dagger normalised, G complex Gaussian"""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityOperator(rho / np.trace(rho).real)


class TestDensityOperator(unittest.TestCase):

    def test_validation(self):
        with self.assertRaises(RejectedInputError):
            DensityOperator(np.array([[1, 1], [0, 0]], dtype=complex))
        with self.assertRaises(RejectedInputError):
            DensityOperator(np.eye(2, dtype=complex))
        with self.assertRaises(RejectedInputError):
            DensityOperator(np.diag([1.5, -0.5]).astype(complex))
        with self.assertRaises(RejectedInputError):
            DensityOperator(np.eye(3, dtype=complex) / 3)

    def test_identity_channel(self):
        rho = DensityOperator.pure([1, 1j])
        np.testing.assert_allclose(apply_depolarizing(rho, 0.0).matrix, rho.matrix, atol=1e-15)

    def test_complete_depolarization(self):
        rho = DensityOperator.pure([0.6, 0.8])
        np.testing.assert_allclose(apply_depolarizing(rho, 0.75).matrix, np.eye(2) / 2, atol=1e-14)

    def test_bell_spectrum(self):
        f = 0.12
        eigenvalues = np.sort(apply_depolarizing(bell_state(), f).eigenvalues())
        np.testing.assert_allclose(eigenvalues, [f / 3, f / 3, f / 3, 1 - f], atol=1e-14)

    def test_derivative_is_affine_slope(self):
        rho = bell_state()
        slope = apply_depolarizing(rho, 0.3).matrix - apply_depolarizing(rho, 0.2).matrix
        np.testing.assert_allclose(slope / 0.1, depolarizing_derivative(rho), atol=1e-12)

    def test_affine_on_mixtures(self):
        rng = make_rng(13)
        for _ in range(20):
            a, b = (random_density(rng, 4) for _ in range(2))
            weight, f = rng.uniform(), rng.uniform(0.0, 0.75)
            mixture = DensityOperator(weight * a.matrix + (1 - weight) * b.matrix)
            expected = (weight * apply_depolarizing(a, f).matrix
                        + (1 - weight) * apply_depolarizing(b, f).matrix)
            np.testing.assert_allclose(apply_depolarizing(mixture, f).matrix, expected, atol=1e-12)

    def test_output_is_a_state(self):
        rng = make_rng(17)
        for dim in (2, 4, 4):
            rho = random_density(rng, dim)
            for f in (0.0, 0.1, 0.5, 0.75):
                out = apply_depolarizing(rho, f).matrix
                self.assertAlmostEqual(np.trace(out).real, 1.0, places=12)
                self.assertGreaterEqual(np.linalg.eigvalsh(out).min(), -1e-12)

    def test_bad_subsystem(self):
        with self.assertRaises(RejectedInputError):
            apply_depolarizing(DensityOperator.maximally_mixed(2), 0.1, on_subsystem=1)
        with self.assertRaises(RejectedInputError):
            apply_depolarizing(bell_state(), 0.1, on_subsystem=2)


class TestSld(unittest.TestCase):

    def test_zero_derivative(self):
        l_f = sld(DensityOperator.maximally_mixed(2), np.zeros((2, 2)))
        np.testing.assert_allclose(l_f, np.zeros((2, 2)))

    def test_maximally_mixed(self):
        d = 0.3 * PAULI_Z
        np.testing.assert_allclose(sld(DensityOperator.maximally_mixed(2), d), 2 * d, atol=1e-14)

    def test_case_b_quarter(self):
        probe = bell_state()
        rho_f = apply_depolarizing(probe, 0.25)
        l_f = sld(rho_f, depolarizing_derivative(probe))
        self.assertAlmostEqual(float(np.trace(rho_f.matrix @ l_f @ l_f).real), 16.0 / 3.0, places=10)

    def test_singular_support(self):
        rho = DensityOperator.pure([1, 0])
        with self.assertRaises(SingularSupportError) as ctx:
            sld(rho, np.diag([-1.0, 1.0]), f=0.0)
        self.assertEqual(ctx.exception.f, 0.0)

    def test_derivative_must_be_hermitian_and_traceless(self):
        rho = DensityOperator.maximally_mixed(2)
        with self.assertRaises(RejectedInputError):
            sld(rho, np.array([[0, 1], [0, 0]], dtype=complex))
        with self.assertRaises(RejectedInputError):
            sld(rho, np.eye(2))


class TestFisherInformation(unittest.TestCase):

    def test_known_values(self):
        self.assertAlmostEqual(qfi(Scheme.CASE_B, 0.5), 4.0, places=10)
        self.assertAlmostEqual(qfi(Scheme.CASE_A, 0.25), 3.2, places=10)

    def test_closed_forms_on_grid(self):
        for f in np.round(np.arange(1, 75) * 0.01, 2):
            for scheme in Scheme:
                numeric = qfi(scheme, f)
                closed = qfi_closed_form(scheme, f)
                self.assertLess(abs(numeric - closed) / closed, 1e-8, msg=f"{scheme} f={f}")
            self.assertGreater(qfi(Scheme.CASE_B, f), qfi(Scheme.CASE_A, f))

    def test_boundary_diverges(self):
        for f in (0.0, 0.75):
            with self.assertRaises(DivergenceError):
                qfi(Scheme.CASE_A, f)

    def test_scheme_parse(self):
        self.assertIs(Scheme.parse("a"), Scheme.CASE_A)
        self.assertIs(Scheme.parse("CASE_B"), Scheme.CASE_B)
        with self.assertRaises(RejectedInputError):
            Scheme.parse("C")

    def test_table_columns(self):
        rows = fisher_table([0.02, 0.1], 1034)
        self.assertEqual(set(rows[0]), {"f", "f_d", "J_A", "J_B", "sd_A", "sd_B"})
        self.assertAlmostEqual(rows[0]["sd_B"], cramer_rao_sd(Scheme.CASE_B, 0.02, 1034))


class TestEstimator(unittest.TestCase):

    def test_standard_deviation(self):
        model = EstimatorModel(Scheme.CASE_B, 0.02, 1034)
        self.assertAlmostEqual(model.sd, 4.36e-3, delta=0.01e-3)

    def test_sample_mean(self):
        model = EstimatorModel(Scheme.CASE_B, 0.02, 1034)
        draws = sample_estimate(model, make_rng(1), size=100000)
        self.assertLess(abs(draws.mean() - 0.02), 3 * model.sd / math.sqrt(draws.size))
        self.assertTrue(((draws >= 0) & (draws <= 1)).all())

    def test_single_probe_skews_upward(self):
        model = EstimatorModel(Scheme.CASE_B, 0.02, 1)
        draws = sample_estimate(model, make_rng(2), size=20000)
        self.assertGreater(draws.mean(), 0.02)

    def test_zero_variance(self):
        model = EstimatorModel(Scheme.CASE_A, 0.03, math.inf)
        self.assertEqual(model.variance, 0.0)
        self.assertEqual(sample_estimate(model, 1), 0.03)

    def test_scalar_draw(self):
        value = sample_estimate(EstimatorModel(Scheme.CASE_A, 0.03, 100), 5)
        self.assertIsInstance(value, float)
        self.assertEqual(value, sample_estimate(EstimatorModel(Scheme.CASE_A, 0.03, 100), 5))

    def test_improved_estimate(self):
        self.assertAlmostEqual(improved_estimate(0.02, MismatchPolicy(0.5, 0.04)), 0.03)
        self.assertEqual(improved_estimate(0.02, MismatchPolicy(0.0, 0.04)), 0.02)
        self.assertEqual(improved_estimate(0.035, MismatchPolicy(0.5, 0.0417)), 0.0417)
        with self.assertRaises(RejectedInputError):
            improved_estimate(1.5, MismatchPolicy())

    def test_improved_estimate_monotone_and_capped(self):
        rng = make_rng(3)
        for _ in range(20):
            policy = MismatchPolicy(rng.uniform(0.0, 2.0), rng.uniform(0.0, 0.75))
            values = [improved_estimate(f_hat, policy) for f_hat in np.linspace(0.0, 1.0, 101)]
            self.assertTrue(all(lo <= hi for lo, hi in zip(values, values[1:])))
            self.assertLessEqual(max(values), policy.f_cap)

    def test_policy_validation(self):
        with self.assertRaises(RejectedInputError):
            MismatchPolicy(delta_ratio=-0.1)
        with self.assertRaises(RejectedInputError):
            EstimatorModel(Scheme.CASE_A, 0.02, 0)


if __name__ == '__main__':
    unittest.main()
