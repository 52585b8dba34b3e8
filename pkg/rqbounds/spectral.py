"""
Dense Hermitian eigendecomposition and spectrum-context queries.

eigendecompose():
    Cyclic complex Jacobi for Dense operators, sorting for Diagonal ones.
spectrum_context():
    Nearest spectrum points below/above a Rayleigh quotient and the gap delta.
invariant_subspace_above() / invariant_subspace_below():
    Eigenvectors for the eigenvalues strictly above/below a Rayleigh quotient.
compression_eigenvalues():
    Spectrum of A compressed to the span of a few vectors.
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from rqbounds.config import TOLERANCES
from rqbounds.core_linalg import HermitianOperator, OperatorKind, Vector, orthonormal_basis
from rqbounds.errors import (
    CertificationError,
    ConvergenceError,
    HypothesisError,
    SpectrumCoincidenceError,
    tolerance_message,
)


log = logging.getLogger(__name__)


# region decomposition
@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """
    Ascending eigenvalues and orthonormal eigenvectors (columns) of a Hermitian operator.

    `exact` is set for Diagonal operators: their eigenvalues are the stored
    entries, so coincidence and clustering are judged relative to the
    eigenvalue compared instead of the spectral radius.
    """
    eigenvalues: NDArray[np.float64]
    eigenvectors: NDArray
    exact: bool = False

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def sigma_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def sigma_max(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def spectral_radius(self) -> float:
        return max(abs(self.sigma_min), abs(self.sigma_max))

    def coincide_tol(self, value: float) -> float:
        scale = abs(value) if self.exact else self.spectral_radius
        return TOLERANCES['coincide'] * max(1.0, scale)

    def cluster_tol(self, value: float) -> float:
        scale = abs(value) if self.exact else self.spectral_radius
        return TOLERANCES['cluster'] * scale

    def _coincide_tols(self) -> NDArray[np.float64]:
        if self.exact:
            return TOLERANCES['coincide'] * np.maximum(1.0, np.abs(self.eigenvalues))
        return np.full(self.dim, self.coincide_tol(0.0))

    def cluster(self, lam: float) -> NDArray[np.bool_]:
        """Mask of the eigenvalues equal to `lam` within cluster_tol."""
        return np.abs(self.eigenvalues - lam) <= self.cluster_tol(lam)

    def eigenspace(self, lam: float) -> NDArray:
        """
        Orthonormal basis (columns) of the clustered eigenspace of `lam`.

        Raises:
        - HypothesisError: If `lam` is not an eigenvalue within cluster_tol.
        """
        mask = self.cluster(lam)
        if not mask.any():
            raise HypothesisError(
                'eigenspace',
                'lambda is an eigenvalue of A',
                f"lambda = {lam!r}, nearest eigenvalue {self.nearest(lam)!r}",
            )
        return self.eigenvectors[:, mask]

    def nearest(self, value: float) -> float:
        """Eigenvalue nearest to `value`; ties resolve to the smaller one."""
        return float(self.eigenvalues[np.argmin(np.abs(self.eigenvalues - value))])

    def negated(self) -> 'SpectralDecomposition':
        """Decomposition of -A, obtained without recomputation."""
        return SpectralDecomposition(
            eigenvalues = -self.eigenvalues[::-1],
            eigenvectors = self.eigenvectors[:, ::-1],
            exact = self.exact,
        )

    def reconstruction_error(self, A: HermitianOperator) -> float:
        """||A V - V Lambda||_F"""
        av = A.to_dense() @ self.eigenvectors
        return float(np.linalg.norm(av - self.eigenvectors * self.eigenvalues))

    def orthogonality_error(self) -> float:
        """||V* V - I||_F"""
        v = self.eigenvectors
        return float(np.linalg.norm(v.conj().T @ v - np.eye(self.dim)))


def _off_norm(a: NDArray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _round_robin(n: int) -> list[tuple[NDArray[np.intp], NDArray[np.intp]]]:
    """
    Split all index pairs p < q of 0..n-1 into n - 1 + n % 2 rounds of disjoint pairs.

    Circle ordering: index 0 stays fixed, the others rotate one place per
    round. For odd n a dummy index pads the circle and its pairs are dropped.
    """
    m = n + n % 2
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = sorted(
            (min(p, q), max(p, q))
            for p, q in zip(players[:m // 2], reversed(players[m // 2:]))
            if max(p, q) < n
        )
        rounds.append((
            np.array([p for p, _ in pairs], dtype=np.intp),
            np.array([q for _, q in pairs], dtype=np.intp),
        ))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def _jacobi(
    matrix: NDArray,
    tol: float,
    max_sweeps: int,
) -> tuple[NDArray[np.float64], NDArray]:
    """
    Cyclic Jacobi on a Hermitian matrix.

    Each rotation first removes the phase of a_pq, then applies the real
    rotation that annihilates the now real off-diagonal entry. The combined
    2x2 unitary is [[c, s], [-s conj(e), c conj(e)]] with e = a_pq / |a_pq|.

    A sweep visits every pair once in round-robin order. The pairs of one
    round are disjoint, so their rotations commute and are applied together.
    """
    a = np.array(matrix, dtype=np.result_type(matrix, np.float64))
    n = a.shape[0]
    v = np.eye(n, dtype=a.dtype)
    fro = float(np.linalg.norm(a))
    if n == 1 or fro == 0.0:
        return np.real(np.diag(a)).copy(), v

    target = tol * fro
    negligible = 1e-16 * fro / n
    complex_ = np.iscomplexobj(a)
    rounds = _round_robin(n)

    off = _off_norm(a)
    sweep = 0
    while off > target:
        if sweep == max_sweeps:
            raise ConvergenceError('eigendecompose', sweep, off, target)
        sweep += 1
        for p, q in rounds:
            apq = a[p, q]
            size = np.abs(apq)
            active = size > negligible
            if not active.any():
                continue
            p, q, apq, size = p[active], q[active], apq[active], size[active]

            phase = apq / size
            theta = (a[q, q].real - a[p, p].real) / (2 * size)
            t = np.copysign(1.0, theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            c = 1 / np.hypot(t, 1.0)
            s = t * c
            e = np.conj(phase) if complex_ else phase

            # columns: A G
            ap, aq = a[:, p], a[:, q]
            a[:, p] = ap * c - aq * (s * e)
            a[:, q] = ap * s + aq * (c * e)
            # rows: G* (A G)
            ap, aq = a[p, :], a[q, :]
            a[p, :] = c[:, None] * ap - (s * np.conj(e))[:, None] * aq
            a[q, :] = s[:, None] * ap + (c * np.conj(e))[:, None] * aq
            a[p, q] = 0
            a[q, p] = 0
            a[p, p] = a[p, p].real
            a[q, q] = a[q, q].real

            vp, vq = v[:, p], v[:, q]
            v[:, p] = vp * c - vq * (s * e)
            v[:, q] = vp * s + vq * (c * e)
        off = _off_norm(a)

    log.debug("eigendecompose: n=%d converged after %d sweeps (off=%.3e)", n, sweep, off)
    return np.real(np.diag(a)).copy(), v


def eigendecompose(A: HermitianOperator) -> SpectralDecomposition:
    """
    Full eigendecomposition of `A`.

    Diagonal operators are sorted directly and get coordinate eigenvectors.
    Dense operators are reduced with cyclic Jacobi rotations until the
    off-diagonal Frobenius norm drops below `jacobi` * ||A||_F.

    Parameters:
    - A (HermitianOperator): The operator.

    Returns:
    - SpectralDecomposition: eigenvalues ascending, eigenvectors as columns.

    Raises:
    - ConvergenceError: If `jacobi_max_sweeps` sweeps are not enough.

    Examples:
    >>> eigendecompose(HermitianOperator.diagonal([3, 1, 2])).eigenvalues
    array([1., 2., 3.])
    """
    if A.kind is OperatorKind.DIAGONAL:
        order = np.argsort(A.data, kind='stable')
        return SpectralDecomposition(
            eigenvalues = A.data[order].copy(),
            eigenvectors = np.eye(A.dim)[:, order],
            exact = True,
        )

    w, v = _jacobi(A.data, TOLERANCES['jacobi'], int(TOLERANCES['jacobi_max_sweeps']))
    order = np.argsort(w, kind='stable')
    return SpectralDecomposition(eigenvalues=w[order], eigenvectors=v[:, order])


# region context
@dataclass(frozen=True)
class SpectrumContext:
    """
    Position of a Rayleigh quotient `rho` relative to the spectrum.

    Attributes:
    - rho (float): The Rayleigh quotient of the probe vector.
    - alpha, beta (float | None): Nearest spectrum points strictly below/above
        rho, None when that side is absent.
    - lam (float): The designated eigenvalue (nearest to rho unless chosen).
    - lambda_nearest (float): Eigenvalue nearest to rho.
    - delta (float): Distance from rho to the spectrum without the cluster of lam
        (inf if the whole spectrum is that cluster).
    - lam_below, lam_above (float | None): Spectrum neighbours of the cluster of lam.
    - alpha_multiplicity, beta_multiplicity (int): Cluster sizes of alpha and beta.
    - coincides (bool): rho lies on the spectrum within coincide_tol.
    """
    rho: float
    alpha: float | None
    beta: float | None
    delta: float
    lam: float
    lambda_nearest: float
    lam_below: float | None
    lam_above: float | None
    alpha_multiplicity: int
    beta_multiplicity: int
    coincides: bool


def _extreme(values: NDArray, pick) -> float | None:
    return float(pick(values)) if values.size else None


def spectrum_context(
    dec: SpectralDecomposition,
    rho: float,
    lambda_choice: float | None = None,
) -> SpectrumContext:
    """
    Locate `rho` in the spectrum of `dec`.

    Parameters:
    - dec (SpectralDecomposition): Decomposition of A.
    - rho (float): Rayleigh quotient of the probe vector.
    - lambda_choice (float | None): Designated eigenvalue. It is snapped to
        the nearest computed eigenvalue.

    Returns:
    - SpectrumContext

    Raises:
    - CertificationError: If `rho` is not finite.
    - SpectrumCoincidenceError: If `rho` coincides with an eigenvalue and no
        eigenvalue was designated.
    - HypothesisError: If `lambda_choice` is not an eigenvalue.

    Examples:
    >>> dec = eigendecompose(HermitianOperator.diagonal([1, 0, -1]))
    >>> spectrum_context(dec, 0.0, lambda_choice=0.0).delta
    1.0
    """
    if not math.isfinite(rho):
        raise CertificationError(f"spectrum_context: rho = {rho!r} is not finite")
    ev = dec.eigenvalues
    tols = dec._coincide_tols()
    dist = np.abs(ev - rho)
    coincides = bool(np.any(dist <= tols))

    if lambda_choice is None:
        if coincides:
            raise SpectrumCoincidenceError(tolerance_message(
                'spectrum_context', '|rho - eigenvalue|', float(dist.min()),
                TOLERANCES['coincide'],
            ))
        lam = dec.nearest(rho)
    else:
        lam = dec.nearest(lambda_choice)
        if abs(lam - lambda_choice) > max(dec.cluster_tol(lam), dec.coincide_tol(lam)):
            raise HypothesisError(
                'spectrum_context',
                'the designated lambda is an eigenvalue of A',
                f"lambda = {lambda_choice!r}, nearest eigenvalue {lam!r}",
            )

    alpha = _extreme(ev[ev < rho - tols], np.max)
    beta = _extreme(ev[ev > rho + tols], np.min)

    in_cluster = dec.cluster(lam)
    rest = ev[~in_cluster]
    delta = float(np.min(np.abs(rest - rho))) if rest.size else math.inf

    def multiplicity(point: float | None) -> int:
        return 0 if point is None else int(dec.cluster(point).sum())

    return SpectrumContext(
        rho = rho,
        alpha = alpha,
        beta = beta,
        delta = delta,
        lam = lam,
        lambda_nearest = dec.nearest(rho),
        lam_below = _extreme(rest[rest < lam], np.max),
        lam_above = _extreme(rest[rest > lam], np.min),
        alpha_multiplicity = multiplicity(alpha),
        beta_multiplicity = multiplicity(beta),
        coincides = coincides,
    )


# region invariant subspaces
def _require_off_spectrum(dec: SpectralDecomposition, rho: float, operation: str) -> None:
    dist = np.abs(dec.eigenvalues - rho)
    if np.any(dist <= dec._coincide_tols()):
        raise SpectrumCoincidenceError(tolerance_message(
            operation, '|rho - eigenvalue|', float(dist.min()), TOLERANCES['coincide']
        ))


def invariant_subspace_above(dec: SpectralDecomposition, rho: float) -> list[Vector]:
    """
    Orthonormal eigenvectors spanning U, the invariant subspace of all eigenvalues > rho.

    For any y, x = (I - P_U) y satisfies rho(x) <= rho.

    Raises:
    - SpectrumCoincidenceError: If `rho` coincides with an eigenvalue.
    """
    _require_off_spectrum(dec, rho, 'invariant_subspace_above')
    return [dec.eigenvectors[:, i] for i in np.flatnonzero(dec.eigenvalues > rho)]


def invariant_subspace_below(dec: SpectralDecomposition, rho: float) -> list[Vector]:
    """The orthogonal complement of `invariant_subspace_above`."""
    _require_off_spectrum(dec, rho, 'invariant_subspace_below')
    return [dec.eigenvectors[:, i] for i in np.flatnonzero(dec.eigenvalues < rho)]


def compression_eigenvalues(A: HermitianOperator, vectors: Sequence[ArrayLike]) -> NDArray[np.float64]:
    """
    Ascending eigenvalues of A_V = P_V A restricted to V = span(vectors).

    With U from `invariant_subspace_above(dec, rho(y))` and V = U + span{y},
    the smallest of them is rho((I - P_U) y): it is simple and below rho(y),
    strictly unless y is orthogonal to U.

    Examples:
    >>> A = HermitianOperator.diagonal([1, 0, -1])
    >>> compression_eigenvalues(A, [[1, 0, 0], [0, 1, 1]])
    array([-0.5,  1. ])
    """
    basis = orthonormal_basis(vectors)
    h = basis.conj().T @ A.to_dense() @ basis
    return np.linalg.eigvalsh((h + h.conj().T) / 2)
