import math
import unittest

import numpy as np
import pytest
from hypothesis import assume, given, seed, settings
from hypothesis import strategies as st

from rqbounds.core_linalg import HermitianOperator, project_onto_span, rayleigh_quotient
from rqbounds.errors import HypothesisError, SpectrumCoincidenceError
from rqbounds.spectral import (
    _off_norm,
    _round_robin,
    compression_eigenvalues,
    eigendecompose,
    invariant_subspace_above,
    invariant_subspace_below,
    spectrum_context,
)


def random_hermitian(rng: np.random.Generator, n: int, complex_: bool = False) -> HermitianOperator:
    g = rng.standard_normal((n, n))
    if complex_:
        g = g + 1j * rng.standard_normal((n, n))
    return HermitianOperator.dense((g + g.conj().T) / 2)


def cubic_roots(m: np.ndarray) -> list[float]:
    """Eigenvalues of a symmetric 3x3 matrix from the trigonometric form of the characteristic cubic."""
    q = np.trace(m) / 3
    b = m - q * np.eye(3)
    p = math.sqrt(np.sum(b * b) / 6)
    r = np.linalg.det(b / p) / 2
    phi = math.acos(min(1.0, max(-1.0, r))) / 3
    largest = q + 2 * p * math.cos(phi)
    smallest = q + 2 * p * math.cos(phi + 2 * math.pi / 3)
    return sorted([smallest, 3 * q - largest - smallest, largest])


class TestEigendecompose(unittest.TestCase):
    def test_diagonal_sorted(self) -> None:
        """Test that diag(3,1,2) gives eigenvalues (1,2,3) and coordinate eigenvectors"""
        dec = eigendecompose(HermitianOperator.diagonal([3, 1, 2]))
        np.testing.assert_array_equal(dec.eigenvalues, [1.0, 2.0, 3.0])
        np.testing.assert_array_equal(dec.eigenvectors, np.eye(3)[:, [1, 2, 0]])
        self.assertTrue(dec.exact)

    def test_swap(self) -> None:
        """Test that [[0,1],[1,0]] has eigenvalues (-1, 1)"""
        dec = eigendecompose(HermitianOperator.dense([[0, 1], [1, 0]]))
        np.testing.assert_allclose(dec.eigenvalues, [-1.0, 1.0], atol=1e-15)

    def test_cubic_roots(self) -> None:
        """Test a random symmetric 3x3 against the roots of its characteristic polynomial"""
        rng = np.random.default_rng(17)
        A = random_hermitian(rng, 3)
        dec = eigendecompose(A)
        np.testing.assert_allclose(dec.eigenvalues, cubic_roots(A.data), atol=1e-12 * A.norm_fro)

    def test_one_by_one(self) -> None:
        """Test the trivial 1x1 operator"""
        dec = eigendecompose(HermitianOperator.dense([[4.0]]))
        np.testing.assert_array_equal(dec.eigenvalues, [4.0])

    def test_complex_hermitian(self) -> None:
        """Test reconstruction and orthonormality for a complex 7x7 matrix"""
        rng = np.random.default_rng(4)
        A = random_hermitian(rng, 7, complex_=True)
        dec = eigendecompose(A)
        self.assertLess(dec.reconstruction_error(A), 1e-12 * A.norm_fro)
        self.assertLess(dec.orthogonality_error(), 1e-12)
        self.assertTrue(np.all(np.diff(dec.eigenvalues) >= 0))

    def test_negated(self) -> None:
        """Test that the negated decomposition is the decomposition of -A"""
        rng = np.random.default_rng(9)
        A = random_hermitian(rng, 5)
        dec = eigendecompose(A)
        neg = dec.negated()
        self.assertLess(neg.reconstruction_error(A.negated()), 1e-12 * A.norm_fro)
        self.assertEqual(neg.sigma_min, -dec.sigma_max)

    @seed(21)
    @settings(max_examples=25, deadline=None)
    @given(n=st.integers(min_value=2, max_value=8), key=st.integers(min_value=0, max_value=2**32 - 1),
           complex_=st.booleans())
    def test_reconstruction(self, n, key, complex_) -> None:
        """Test ||AV - V Lambda|| and ||V*V - I|| on random Hermitian matrices"""
        A = random_hermitian(np.random.default_rng(key), n, complex_)
        dec = eigendecompose(A)
        self.assertLess(dec.reconstruction_error(A), 1e-12 * max(1.0, A.norm_fro))
        self.assertLess(dec.orthogonality_error(), 1e-12 * n)

    def test_off_norm_small_entries(self) -> None:
        """Test that off-diagonal entries far below the diagonal are measured, not lost to cancellation"""
        a = np.array([[1e4, 1e-9], [1e-9, 1.0]])
        self.assertAlmostEqual(_off_norm(a), math.sqrt(2) * 1e-9, delta=1e-24)
        self.assertEqual(_off_norm(np.diag([3.0, -1.0])), 0.0)

    def test_round_robin(self) -> None:
        """Test that a sweep visits every pair p < q once, in rounds of disjoint pairs"""
        for n in (2, 3, 6, 7):
            with self.subTest(n=n):
                rounds = _round_robin(n)
                pairs = sorted((int(p), int(q)) for ps, qs in rounds for p, q in zip(ps, qs))
                self.assertEqual(pairs, [(p, q) for p in range(n) for q in range(p + 1, n)])
                for ps, qs in rounds:
                    self.assertTrue(np.all(ps < qs))
                    self.assertEqual(len({*ps.tolist(), *qs.tolist()}), 2 * len(ps))

    def test_converges_on_ordinary_inputs(self) -> None:
        """Test that 30 random matrices of dimension 20 to 40 converge within the bounds"""
        rng = np.random.default_rng(67)
        for i in range(30):
            n = int(rng.integers(20, 41))
            A = random_hermitian(rng, n, complex_=bool(i % 2))
            with self.subTest(i=i, n=n):
                dec = eigendecompose(A)
                self.assertLessEqual(dec.reconstruction_error(A), 1e-10 * A.norm_fro)
                self.assertLessEqual(dec.orthogonality_error(), 1e-12 * n)

    @pytest.mark.slow
    def test_acceptance_scale(self) -> None:
        """Test reconstruction and orthogonality on 500 random matrices of dimension 2 to 50"""
        rng = np.random.default_rng(2024)
        for i in range(500):
            n = int(rng.integers(2, 51))
            A = random_hermitian(rng, n, complex_=bool(i % 2))
            dec = eigendecompose(A)
            self.assertLessEqual(dec.reconstruction_error(A), 1e-10 * A.norm_fro, (i, n))
            self.assertLessEqual(dec.orthogonality_error(), 1e-12 * n, (i, n))
            self.assertTrue(np.all(np.diff(dec.eigenvalues) >= 0))


class TestSpectrumContext(unittest.TestCase):
    def setUp(self) -> None:
        self.diag3 = eigendecompose(HermitianOperator.diagonal([1, 0, -1]))

    def test_coincidence(self) -> None:
        """Test that rho = 0 on diag(1,0,-1) raises without a designated eigenvalue"""
        with self.assertRaises(SpectrumCoincidenceError):
            spectrum_context(self.diag3, 0.0)

    def test_designated_lambda(self) -> None:
        """Test delta = 1 for rho = 0 with lambda = 0 designated"""
        ctx = spectrum_context(self.diag3, 0.0, lambda_choice=0.0)
        self.assertEqual(ctx.delta, 1.0)
        self.assertEqual(ctx.lam, 0.0)
        self.assertTrue(ctx.coincides)
        self.assertEqual((ctx.alpha, ctx.beta), (-1.0, 1.0))

    def test_designated_lambda_not_eigenvalue(self) -> None:
        """Test that a designated value off the spectrum is rejected"""
        with self.assertRaises(HypothesisError):
            spectrum_context(self.diag3, 0.3, lambda_choice=0.5)

    def test_alpha_beta(self) -> None:
        """Test alpha = 1, beta = 2 for rho = 1.5 on diag(1,2)"""
        ctx = spectrum_context(eigendecompose(HermitianOperator.diagonal([1, 2])), 1.5)
        self.assertEqual((ctx.alpha, ctx.beta), (1.0, 2.0))
        self.assertEqual(ctx.delta, 0.5)
        self.assertEqual(ctx.lambda_nearest, 1.0)

    def test_davis_kahan(self) -> None:
        """Test alpha = 1, beta = 2 for rho = 1.5 on diag(2^k), k < 64"""
        dec = eigendecompose(HermitianOperator.diagonal(2.0 ** np.arange(64)))
        ctx = spectrum_context(dec, 1.5)
        self.assertEqual((ctx.alpha, ctx.beta), (1.0, 2.0))
        self.assertEqual((ctx.alpha_multiplicity, ctx.beta_multiplicity), (1, 1))

    def test_absent_side(self) -> None:
        """Test that beta is None above the spectrum"""
        ctx = spectrum_context(self.diag3, 5.0)
        self.assertIsNone(ctx.beta)
        self.assertEqual(ctx.alpha, 1.0)
        self.assertEqual(ctx.delta, 5.0)

    def test_multiplicity(self) -> None:
        """Test that a repeated eigenvalue is counted with its multiplicity"""
        dec = eigendecompose(HermitianOperator.diagonal([1, 1, 3]))
        ctx = spectrum_context(dec, 2.0)
        self.assertEqual(ctx.alpha_multiplicity, 2)
        self.assertEqual(ctx.lam_above, 3.0)

    def test_cluster_excluded_from_delta(self) -> None:
        """Test that delta skips the whole cluster of lambda"""
        dec = eigendecompose(HermitianOperator.diagonal([0, 0, 4]))
        ctx = spectrum_context(dec, 1.0, lambda_choice=0.0)
        self.assertEqual(ctx.delta, 3.0)


class TestInvariantSubspaces(unittest.TestCase):
    def test_diag3_above(self) -> None:
        """Test U = span{e1} for rho = 0.5 on diag(1,0,-1)"""
        dec = eigendecompose(HermitianOperator.diagonal([1, 0, -1]))
        above = invariant_subspace_above(dec, 0.5)
        self.assertEqual(len(above), 1)
        np.testing.assert_array_equal(above[0], [1.0, 0.0, 0.0])
        self.assertEqual(len(invariant_subspace_below(dec, 0.5)), 2)

    def test_davis_kahan_projection(self) -> None:
        """Test (I - P_U) y = y_1 e1 for the Davis-Kahan truncation at rho = 1.5"""
        dec = eigendecompose(HermitianOperator.diagonal(2.0 ** np.arange(64)))
        u = np.column_stack(invariant_subspace_above(dec, 1.5))
        self.assertEqual(u.shape, (64, 63))
        y = 0.5 ** np.arange(64)
        x = y - u @ (u.T @ y)
        expected = np.zeros(64)
        expected[0] = 1.0
        np.testing.assert_array_equal(x, expected)

    def test_coincidence(self) -> None:
        """Test that rho on the spectrum is rejected"""
        dec = eigendecompose(HermitianOperator.diagonal([1, 0, -1]))
        with self.assertRaises(SpectrumCoincidenceError):
            invariant_subspace_above(dec, 0.0)

    def test_invariance(self) -> None:
        """Test ||(I - P_U) A P_U|| <= 1e-10 ||A|| for a random 6x6 at the median gap"""
        rng = np.random.default_rng(12)
        A = random_hermitian(rng, 6)
        dec = eigendecompose(A)
        rho = float(np.mean(dec.eigenvalues[2:4]))
        u = np.column_stack(invariant_subspace_above(dec, rho))
        p = u @ u.conj().T
        leak = np.linalg.norm((np.eye(6) - p) @ A.to_dense() @ p)
        self.assertLessEqual(leak, 1e-10 * A.norm_fro)

    @seed(23)
    @settings(max_examples=25, deadline=None)
    @given(n=st.integers(min_value=2, max_value=8), key=st.integers(min_value=0, max_value=2**32 - 1),
           complex_=st.booleans())
    def test_projection_lowers_rho(self, n, key, complex_) -> None:
        """Test rho((I - P_U) y) <= rho(y) on random instances"""
        rng = np.random.default_rng(key)
        A = random_hermitian(rng, n, complex_)
        y = rng.standard_normal(n) + (1j * rng.standard_normal(n) if complex_ else 0)
        dec = eigendecompose(A)
        rho = rayleigh_quotient(A, y)
        assume(not np.any(np.abs(dec.eigenvalues - rho) <= 1e-8 * A.norm_fro))
        above = invariant_subspace_above(dec, rho)
        x = y - project_onto_span(above, y) if above else y
        self.assertLessEqual(rayleigh_quotient(A, x), rho + 1e-12 * A.norm_fro)


class TestCompression(unittest.TestCase):
    def test_diag3(self) -> None:
        """Test the eigenvalues of diag(1,0,-1) on span{e1, (0,1,1)}"""
        A = HermitianOperator.diagonal([1, 0, -1])
        np.testing.assert_allclose(compression_eigenvalues(A, [[1, 0, 0], [0, 1, 1]]), [-0.5, 1.0], atol=1e-15)

    def test_davis_kahan(self) -> None:
        """Test that U + span{y} has smallest eigenvalue rho(e1) = 1 for diag(2^k), k < 8"""
        A = HermitianOperator.diagonal(2.0 ** np.arange(8))
        y = 0.5 ** np.arange(8)
        above = invariant_subspace_above(eigendecompose(A), rayleigh_quotient(A, y))
        lowest = compression_eigenvalues(A, [*above, y])
        self.assertAlmostEqual(lowest[0], 1.0, places=12)
        self.assertAlmostEqual(lowest[1], 2.0, places=12)

    def test_minimum_is_projected_rho(self) -> None:
        """Test that lambda_min on U + span{y} equals rho((I - P_U) y), is simple and lies below rho(y)"""
        rng = np.random.default_rng(31)
        for complex_ in (False, True):
            with self.subTest(complex_=complex_):
                A = random_hermitian(rng, 7, complex_)
                y = rng.standard_normal(7) + (1j * rng.standard_normal(7) if complex_ else 0)
                rho = rayleigh_quotient(A, y)
                above = invariant_subspace_above(eigendecompose(A), rho)
                x = y - project_onto_span(above, y)
                lowest = compression_eigenvalues(A, [*above, y])
                self.assertEqual(lowest.shape, (len(above) + 1,))
                self.assertAlmostEqual(lowest[0], rayleigh_quotient(A, x), delta=1e-10 * A.norm_fro)
                self.assertGreater(lowest[1] - lowest[0], 1e-8 * A.norm_fro)
                self.assertLess(lowest[0], rho)


if __name__ == '__main__':
    unittest.main()
