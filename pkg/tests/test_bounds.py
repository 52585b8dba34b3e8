import math
import unittest
from dataclasses import replace

import numpy as np
from hypothesis import assume, given, seed, settings
from hypothesis import strategies as st

from rqbounds.bounds import (
    SKIPPABLE,
    BoundReport,
    apriori_sin2,
    bound_catalogue,
    eigenvector_error_bounds,
    gap_bound,
    improved_gap_bound,
    improved_kato_temple,
    improved_krylov_weinstein,
    improved_posteriori,
    kato_temple,
    krylov_weinstein,
    mixed_tan,
    projected_setup,
    temple,
)
from rqbounds.core_linalg import HermitianOperator, rayleigh_quotient
from rqbounds.errors import (
    HypothesisError,
    InputError,
    NotAnEigenvectorError,
    SpectrumCoincidenceError,
)
from rqbounds.spectral import eigendecompose, spectrum_context


def davis_kahan(n: int = 64) -> tuple[HermitianOperator, np.ndarray]:
    k = np.arange(n, dtype=float)
    return HermitianOperator.diagonal(2.0 ** k), 0.5 ** k


def random_problem(key: int, n: int, complex_: bool):
    rng = np.random.default_rng(key)
    g = rng.standard_normal((n, n))
    y = rng.standard_normal(n)
    if complex_:
        g = g + 1j * rng.standard_normal((n, n))
        y = y + 1j * rng.standard_normal(n)
    return HermitianOperator.dense((g + g.conj().T) / 2), y


class TestBoundReport(unittest.TestCase):
    def test_evaluate(self) -> None:
        """Test holds and equality within the scaled tolerance"""
        self.assertTrue(BoundReport.evaluate('b', 1.0, 1.0, {}).equality)
        self.assertTrue(BoundReport.evaluate('b', 1.0, 2.0, {}).holds)
        self.assertFalse(BoundReport.evaluate('b', 2.0, 1.0, {}).holds)

    def test_lower_side(self) -> None:
        """Test that a two-sided report fails below its lower side"""
        self.assertFalse(BoundReport.evaluate('b', -2.0, 1.0, {}, lower=-1.0).holds)
        self.assertTrue(BoundReport.evaluate('b', -1.0, 1.0, {}, lower=-1.0).equality)

    def test_skip(self) -> None:
        """Test that a skip record has NaN sides and does not hold"""
        report = BoundReport.skip('temple', 'reason')
        self.assertTrue(report.skipped)
        self.assertFalse(report.holds)
        self.assertTrue(math.isnan(report.lhs) and math.isnan(report.rhs))


class TestClassicalBounds(unittest.TestCase):
    def test_krylov_weinstein_diag3(self) -> None:
        """Test lhs = 0 and rhs = sqrt(2/3) for y = (1,1,1) on diag(1,0,-1)"""
        report = krylov_weinstein(HermitianOperator.diagonal([1, 0, -1]), [1, 1, 1])
        self.assertEqual(report.lhs, 0.0)
        self.assertAlmostEqual(report.rhs, math.sqrt(2 / 3), places=15)
        self.assertTrue(report.holds)

    def test_temple_equality(self) -> None:
        """Test that Temple's bound is attained at 1/4 on diag(0,1) with y = (1,1)"""
        report = temple(HermitianOperator.diagonal([0, 1]), [1, 1])
        self.assertAlmostEqual(report.lhs, 0.25, places=15)
        self.assertAlmostEqual(report.rhs, 0.25, places=15)
        self.assertTrue(report.equality)

    def test_temple_coincidence(self) -> None:
        """Test that rho(y) on the spectrum is rejected"""
        with self.assertRaises(SpectrumCoincidenceError):
            temple(HermitianOperator.diagonal([1, 0, -1]), [1, 1, 1])

    def test_temple_edge(self) -> None:
        """Test that a missing beta is a hypothesis failure"""
        A = HermitianOperator.diagonal([0, 1, 2])
        ctx = replace(spectrum_context(eigendecompose(A), 1.5), beta=None)
        with self.assertRaises(HypothesisError):
            temple(A, [0, 1, 1], ctx=ctx)

    def test_temple_davis_kahan(self) -> None:
        """Test that the classical Temple rhs is large for the Davis-Kahan truncation"""
        A, y = davis_kahan()
        report = temple(A, y)
        self.assertAlmostEqual(report.lhs, 0.25, places=12)
        self.assertGreater(report.rhs, 40)
        self.assertTrue(report.holds)

    def test_kato_temple_davis_kahan(self) -> None:
        """Test a = lam = 1 and b = 2 for rho = 1.5"""
        A, y = davis_kahan()
        report = kato_temple(A, y)
        self.assertEqual((report.ingredients['a'], report.ingredients['b']), (1.0, 2.0))
        self.assertAlmostEqual(report.lhs, 0.5, places=12)
        self.assertTrue(report.holds)
        self.assertLess(report.lower, 0)

    def test_kato_temple_interval(self) -> None:
        """Test a = lam = 0 and b = 1 for y = (1, 0.1) on diag(0,1)"""
        report = kato_temple(HermitianOperator.diagonal([0, 1]), [1, 0.1])
        self.assertEqual((report.ingredients['a'], report.ingredients['b']), (0.0, 1.0))
        self.assertTrue(report.holds)

    def test_gap_bound_davis_kahan(self) -> None:
        """Test the witness lam = 1 and delta = 1/2"""
        A, y = davis_kahan()
        report = gap_bound(A, y)
        self.assertEqual(report.ingredients['witness'], 1.0)
        self.assertEqual(report.ingredients['delta'], 0.5)
        self.assertTrue(report.holds)

    @seed(41)
    @settings(max_examples=30, deadline=None)
    @given(key=st.integers(min_value=0, max_value=2**32 - 1), n=st.integers(min_value=2, max_value=8))
    def test_temple_narrowing(self, key, n) -> None:
        """Test that moving alpha and beta toward rho(y) keeps Temple's bound valid"""
        A, y = random_problem(key, n, False)
        dec = eigendecompose(A)
        try:
            ctx = spectrum_context(dec, rayleigh_quotient(A, y))
            original = temple(A, y, ctx=ctx, dec=dec)
        except SKIPPABLE:
            assume(False)
        narrowed = replace(ctx, alpha=(ctx.alpha + ctx.rho) / 2, beta=(ctx.beta + ctx.rho) / 2)
        report = temple(A, y, ctx=narrowed, dec=dec)
        self.assertTrue(report.holds)
        self.assertLessEqual(report.lhs, original.lhs)


class TestImprovedBounds(unittest.TestCase):
    def test_davis_kahan(self) -> None:
        """Test lhs = 1/4 and rhs = 3/4 for the Davis-Kahan truncation"""
        A, y = davis_kahan()
        report = improved_posteriori(A, y)
        self.assertAlmostEqual(report.lhs, 0.25, places=12)
        self.assertAlmostEqual(report.rhs, 0.75, places=12)
        self.assertTrue(report.holds)
        self.assertGreater(report.ingredients['classical_rhs'], 40)
        self.assertLess(report.ingredients['symmetry_residual'], 1e-10)

    def test_davis_kahan_x(self) -> None:
        """Test that (I - P_U) y is the first coordinate vector"""
        A, y = davis_kahan()
        setup = projected_setup(A, y, eigendecompose(A))
        expected = np.zeros(64)
        expected[0] = 1.0
        np.testing.assert_array_equal(setup.x, expected)

    def test_two_by_two_reduces_to_temple(self) -> None:
        """Test that S is the whole space for n = 2, so both bounds coincide"""
        A = HermitianOperator.diagonal([0, 1])
        improved = improved_posteriori(A, [1, 1])
        classical = temple(A, [1, 1])
        self.assertAlmostEqual(improved.rhs, classical.rhs, places=15)
        self.assertTrue(improved.equality)

    def test_improved_kato_temple_two_by_two(self) -> None:
        """Test sides -1/2 <= 1/2 <= 1/2 for diag(0,1), y = (1,1)"""
        report = improved_kato_temple(HermitianOperator.diagonal([0, 1]), [1, 1])
        self.assertAlmostEqual(report.lhs, 0.5, places=15)
        self.assertAlmostEqual(report.rhs, 0.5, places=15)
        self.assertAlmostEqual(report.lower, -0.5, places=15)
        self.assertTrue(report.holds)

    def test_eigenvector_is_trivial(self) -> None:
        """Test that an eigenvector gives zero projected quantities"""
        A = HermitianOperator.diagonal([1, 2, 3])
        for bound in (improved_posteriori, improved_gap_bound, improved_kato_temple):
            report = bound(A, [0, 1, 0])
            self.assertEqual((report.lhs, report.rhs), (0.0, 0.0))
            self.assertTrue(report.holds)

    def test_coincidence(self) -> None:
        """Test that rho(y) on the spectrum is rejected when y is not an eigenvector"""
        with self.assertRaises(SpectrumCoincidenceError):
            improved_posteriori(HermitianOperator.diagonal([1, 0, -1]), [1, 1, 1])

    @seed(42)
    @settings(max_examples=40, deadline=None)
    @given(key=st.integers(min_value=0, max_value=2**32 - 1), n=st.integers(min_value=3, max_value=8),
           complex_=st.booleans())
    def test_hierarchy_and_dominance(self, key, n, complex_) -> None:
        """Test ||P_S r|| <= ||P_V r|| <= ||r|| and that each improved bound dominates its classical one"""
        A, y = random_problem(key, n, complex_)
        dec = eigendecompose(A)
        try:
            classical = [temple(A, y, dec=dec), krylov_weinstein(A, y, dec),
                         kato_temple(A, y, dec=dec), gap_bound(A, y, dec=dec)]
            improved = [improved_posteriori(A, y, dec), improved_krylov_weinstein(A, y, dec),
                        improved_kato_temple(A, y, dec), improved_gap_bound(A, y, dec)]
        except SKIPPABLE:
            assume(False)

        ing = improved[0].ingredients
        tol = 1e-10 * max(1.0, ing['residual_norm'])
        for key_ in ('pv_above_norm', 'pv_below_norm'):
            self.assertLessEqual(ing['projected_residual_norm'], ing[key_] + tol)
            self.assertLessEqual(ing[key_], ing['residual_norm'] + tol)

        for c, i in zip(classical, improved):
            self.assertTrue(c.holds, c.bound_name)
            self.assertTrue(i.holds, i.bound_name)
            self.assertLessEqual(i.rhs, c.rhs + 1e-10 * max(1.0, c.rhs))
        self.assertGreaterEqual(improved[2].lower, classical[2].lower - 1e-10 * max(1.0, abs(classical[2].lower)))


class TestAprioriAndMixed(unittest.TestCase):
    def test_apriori_equality(self) -> None:
        """Test |lam - rho(y)| = 1/2 = rhs on diag(0,1)"""
        report = apriori_sin2(HermitianOperator.diagonal([0, 1]), [1, 0], [1, 1])
        self.assertAlmostEqual(report.lhs, 0.5, places=15)
        self.assertAlmostEqual(report.ingredients['exact'], report.lhs, places=15)
        self.assertTrue(report.equality)

    def test_mixed_equality(self) -> None:
        """Test that the mixed bound is attained when S is invariant"""
        report = mixed_tan(HermitianOperator.diagonal([0, 1]), [1, 0], [1, 1])
        self.assertAlmostEqual(report.rhs, 0.5, places=15)
        self.assertTrue(report.equality)
        self.assertTrue(report.holds)

    def test_mixed_projected_is_exact(self) -> None:
        """Test that the projected form equals |lam - rho(y)| when S is not invariant"""
        A = HermitianOperator.diagonal([1, 2, 3, 4])
        y = np.array([1.0, 0.2, 0.3, 0.1])
        report = mixed_tan(A, [1, 0, 0, 0], y)
        self.assertAlmostEqual(report.ingredients['projected'], report.lhs, delta=1e-12)
        self.assertFalse(report.equality)
        self.assertTrue(report.holds)

    def test_same_vector(self) -> None:
        """Test that y = x gives zero on both sides"""
        A = HermitianOperator.diagonal([1, 2, 3])
        for report in (mixed_tan(A, [1, 0, 0], [1, 0, 0]), apriori_sin2(A, [1, 0, 0], [1, 0, 0])):
            self.assertEqual(report.lhs, 0.0)
            self.assertAlmostEqual(report.rhs, 0.0, places=14)

    def test_not_an_eigenvector(self) -> None:
        """Test that x must be an eigenvector"""
        with self.assertRaises(NotAnEigenvectorError):
            mixed_tan(HermitianOperator.diagonal([1, 2]), [1, 1], [1, 0])

    def test_right_angle(self) -> None:
        """Test that the mixed bound rejects orthogonal x and y"""
        with self.assertRaises(HypothesisError):
            mixed_tan(HermitianOperator.diagonal([1, 2, 3]), [1, 0, 0], [0, 1, 0])


class TestEigenvectorBounds(unittest.TestCase):
    def test_davis_kahan(self) -> None:
        """Test sin(2 theta), tan(theta) and sin(theta) for lam = 1 on the Davis-Kahan truncation"""
        A, y = davis_kahan()
        result = eigenvector_error_bounds(A, y)
        self.assertAlmostEqual(result.tantheta.lhs, 1 / math.sqrt(3), places=12)
        self.assertAlmostEqual(result.sin2theta.rhs, math.sqrt(3), places=10)
        for report in result.reports():
            self.assertFalse(report.skipped)
            self.assertTrue(report.holds, report.bound_name)
        self.assertFalse(result.naive_sintheta_violation)

    def test_naive_violation(self) -> None:
        """Test the projected residual failing as a sin(theta) bound on diag(1,0,-1)"""
        result = eigenvector_error_bounds(HermitianOperator.diagonal([1, 0, -1]), [1, 1, 1], lam=0.0)
        self.assertTrue(result.naive_sintheta_violation)
        self.assertTrue(result.classical_sintheta.equality)
        self.assertTrue(result.sin2theta.skipped)
        self.assertTrue(result.tantheta.skipped)

    def test_largest_eigenvalue(self) -> None:
        """Test that lam = max Sigma(A) uses the neighbour below"""
        A = HermitianOperator.diagonal([1, 2, 5])
        result = eigenvector_error_bounds(A, [0.1, 0.2, 1], lam=5.0)
        self.assertEqual(result.sin2theta.ingredients['beta'], 2.0)
        self.assertTrue(result.sin2theta.holds)
        self.assertTrue(result.tantheta.holds)

    def test_orthogonal(self) -> None:
        """Test that y orthogonal to the eigenspace is rejected"""
        with self.assertRaises(HypothesisError):
            eigenvector_error_bounds(HermitianOperator.diagonal([1, 2, 3]), [0, 1, 1])


class TestCatalogue(unittest.TestCase):
    def test_diag3(self) -> None:
        """Test that only Krylov-Weinstein is evaluated for y = (1,1,1) on diag(1,0,-1)"""
        reports = bound_catalogue(HermitianOperator.diagonal([1, 0, -1]), [1, 1, 1])
        evaluated = [r.bound_name for r in reports if not r.skipped]
        self.assertEqual(evaluated, ['krylov_weinstein'])
        self.assertTrue(all(r.reason for r in reports if r.skipped))

    def test_davis_kahan(self) -> None:
        """Test that every bound, a priori and mixed included, holds for the Davis-Kahan truncation"""
        A, y = davis_kahan()
        x = np.zeros(64)
        x[0] = 1.0
        reports = bound_catalogue(A, y, x)
        self.assertEqual(len(reports), 13)
        self.assertEqual(reports[0].bound_name, 'krylov_weinstein')
        for report in reports:
            self.assertFalse(report.skipped, report.bound_name)
            self.assertTrue(report.holds, report.bound_name)

    def test_length_mismatch(self) -> None:
        """Test that a reference vector of the wrong length is an input error"""
        with self.assertRaises(InputError):
            bound_catalogue(HermitianOperator.diagonal([1, 2, 3]), [1, 1, 1], [1, 0])


if __name__ == '__main__':
    unittest.main()
