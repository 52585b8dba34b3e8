import time
import unittest

import pandas as pd
import pytest

from rqbounds.errors import InputError
from rqbounds.experiments import (
    davis_kahan,
    davis_kahan_problem,
    invariant_subspace_tightness,
    random_verification,
    sin_theta_counterexample,
)


class TestDavisKahan(unittest.TestCase):
    def test_default(self) -> None:
        """Test lhs = 1/4, rhs = 3/4 and that every check passes for n = 64, eps = 1/2"""
        result = davis_kahan()
        self.assertEqual(result.failed_checks(), [])
        self.assertAlmostEqual(result.scalars['lhs'], 0.25, places=12)
        self.assertAlmostEqual(result.scalars['rhs'], 0.75, places=12)
        self.assertEqual((result.scalars['alpha'], result.scalars['beta']), (1.0, 2.0))
        self.assertGreater(result.scalars['classical_rhs'], 40)

    def test_classical_rhs_grows(self) -> None:
        """Test that the Temple rhs increases with the truncation size"""
        scalars = davis_kahan().scalars
        growth = [scalars[f'classical_rhs_n{m}'] for m in (8, 16, 32, 64)]
        self.assertEqual(growth, sorted(growth))

    def test_shifted(self) -> None:
        """Test that the shifted vector has no component along the smallest eigenvector"""
        result = davis_kahan(shifted=True)
        self.assertTrue(result.passed, result.failed_checks())
        self.assertEqual(result.scalars['eigenspace_projection_norm'], 0.0)
        self.assertTrue(result.notes)

    def test_small_eps(self) -> None:
        """Test the limits for eps = 1/4"""
        result = davis_kahan(n=32, eps=0.25)
        self.assertTrue(result.passed, result.failed_checks())
        self.assertAlmostEqual(result.scalars['lhs'], 1 - 0.25 - 0.25**2, places=10)

    def test_large_eps(self) -> None:
        """Test that eps + eps^2 >= 1 skips the limit checks"""
        result = davis_kahan(n=16, eps=0.7)
        self.assertNotIn('lhs_limit', result.checks)
        self.assertTrue(result.passed, result.failed_checks())

    def test_problem(self) -> None:
        """Test the operator and vector of the truncation"""
        A, y = davis_kahan_problem(4, 0.5)
        self.assertEqual(list(A.data), [1.0, 2.0, 4.0, 8.0])
        self.assertEqual(list(y), [1.0, 0.5, 0.25, 0.125])

    def test_invalid(self) -> None:
        """Test that n < 4 and eps outside (0, 1) are rejected"""
        with self.assertRaises(InputError):
            davis_kahan(n=3)
        with self.assertRaises(InputError):
            davis_kahan(eps=1.5)


class TestSinThetaCounterexample(unittest.TestCase):
    def test_passes(self) -> None:
        """Test a vanishing projected residual with sin^2 theta = 2/3"""
        result = sin_theta_counterexample()
        self.assertTrue(result.passed, result.failed_checks())
        self.assertAlmostEqual(result.scalars['sin2_theta'], 2 / 3, places=12)
        self.assertEqual(result.scalars['rho_y'], 0.0)
        self.assertTrue(result.checks['naive_violated'])


class TestTightness(unittest.TestCase):
    def test_seeds(self) -> None:
        """Test that the block constructions attain both bounds for several seeds"""
        for seed in range(5):
            with self.subTest(seed=seed):
                result = invariant_subspace_tightness(seed=seed)
                self.assertTrue(result.passed, result.failed_checks())

    def test_invalid_dim(self) -> None:
        """Test that dim < 3 is rejected"""
        with self.assertRaises(InputError):
            invariant_subspace_tightness(dim=2)


class TestRandomVerification(unittest.TestCase):
    def test_real(self) -> None:
        """Test a small real run without violations"""
        result = random_verification(trials=5, dim_min=2, dim_max=5, field='real', seed=3)
        self.assertTrue(result.passed, result.failed_checks())
        self.assertEqual(result.scalars['violations'], 0.0)
        self.assertEqual(result.scalars['strict_both_frequency'], 0.0)
        self.assertEqual(list(result.table.columns), ['kind', 'trials', 'violations', 'worst_slack'])
        self.assertIn('residual_gap', result.table.index)
        for name in ('compression_minimum', 'compression_minimum_simple', 'variational_projection'):
            self.assertEqual(result.table.loc[name, 'violations'], 0, name)

    def test_complex(self) -> None:
        """Test a small complex run without violations"""
        result = random_verification(trials=5, dim_min=2, dim_max=5, field='complex', seed=3)
        self.assertTrue(result.passed, result.failed_checks())
        self.assertNotIn('real_not_strict', result.table.index)

    def test_single_trial(self) -> None:
        """Test one trial in dimension 2"""
        result = random_verification(trials=1, dim_min=2, dim_max=2)
        self.assertTrue(result.passed, result.failed_checks())
        self.assertEqual(result.scalars['trials'], 1.0)

    def test_deterministic(self) -> None:
        """Test that the same seed gives the same table"""
        first = random_verification(trials=3, dim_min=3, dim_max=4, seed=11)
        second = random_verification(trials=3, dim_min=3, dim_max=4, seed=11)
        pd.testing.assert_frame_equal(first.table, second.table)
        self.assertEqual(first.scalars, second.scalars)

    def test_identities_suite(self) -> None:
        """Test that the identity suite skips the eigendecomposition and the bounds"""
        result = random_verification(trials=20, dim_min=2, dim_max=20, field='complex', seed=3, suite='identities')
        self.assertTrue(result.passed, result.failed_checks())
        self.assertIn('tangent_sandwich', result.table.index)
        self.assertNotIn('eigensolver_reconstruction', result.table.index)
        self.assertNotIn('bounds_skipped', result.scalars)
        self.assertIn('suite=identities', result.notes)

    def test_invalid(self) -> None:
        """Test that invalid trial counts, dimensions, fields and suites are rejected"""
        for kwargs in ({'trials': 0}, {'dim_min': 1}, {'dim_min': 5, 'dim_max': 4}, {'field': 'quaternion'},
                       {'suite': 'bounds'}):
            with self.subTest(**kwargs), self.assertRaises(InputError):
                random_verification(**kwargs)

    @pytest.mark.slow
    def test_identity_suite_acceptance_scale(self) -> None:
        """Test 10^4 seeded trials of dimension 2 to 20, real and complex, without violations in under 30 s"""
        start = time.perf_counter()
        for field in ('real', 'complex'):
            result = random_verification(trials=5000, dim_min=2, dim_max=20, field=field, seed=7, suite='identities')
            self.assertEqual(result.scalars['violations'], 0.0, result.failed_checks())
            self.assertEqual(result.table.loc['residual_gap', 'trials'], 5000)
        self.assertLess(time.perf_counter() - start, 30.0)

    @pytest.mark.slow
    def test_full_suite_scale(self) -> None:
        """Test 500 full trials of dimension 2 to 20 without violations"""
        result = random_verification(trials=500, dim_min=2, dim_max=20, field='complex', seed=7, suite='full')
        self.assertTrue(result.passed, result.failed_checks())
        self.assertEqual(result.table.loc['eigensolver_reconstruction', 'violations'], 0)


if __name__ == '__main__':
    unittest.main()
