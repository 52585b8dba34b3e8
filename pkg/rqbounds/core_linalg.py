"""
Vector and operator primitives for Rayleigh-quotient analysis.

inner():
    Inner product, conjugate-linear in the first argument.
rayleigh_quotient():
    <x, Ax> / <x, x> for a Hermitian operator.
residual():
    Ax - rho(x) x.
acute_angle():
    Acute angle between two nonzero vectors.
project_onto_span():
    Orthogonal projection onto the span of a list of vectors.
restrict_2d():
    Restriction of A to S = span{x, y} with its closed-form eigenpairs.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Sequence, TypeAlias

import numpy as np
from numpy.typing import ArrayLike, NDArray

from rqbounds.config import TOLERANCES
from rqbounds.errors import (
    CertificationError,
    DegenerateSubspaceError,
    DimensionMismatchError,
    NotHermitianError,
    ZeroVectorError,
    tolerance_message,
)


log = logging.getLogger(__name__)


Scalar: TypeAlias = float | complex
Vector: TypeAlias = NDArray[np.float64] | NDArray[np.complex128]


# region vectors
def as_vector(v: ArrayLike) -> Vector:
    """
    Convert `v` to a one-dimensional binary64 array (real or complex).

    Raises:
    - DimensionMismatchError: If `v` is not one-dimensional or is empty.
    - CertificationError: If `v` has non-finite entries.
    """
    arr = np.asarray(v)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatchError(
            f"Expected a non-empty one-dimensional vector, got shape {arr.shape}"
        )
    arr = arr.astype(np.complex128 if np.iscomplexobj(arr) else np.float64)
    if not np.all(np.isfinite(arr)):
        raise CertificationError("Vector has non-finite entries")
    return arr


def _check_lengths(x: Vector, y: Vector, operation: str) -> None:
    if x.shape != y.shape:
        raise DimensionMismatchError(
            f"{operation}: length mismatch {x.shape[0]} != {y.shape[0]}"
        )


def norm(v: ArrayLike) -> float:
    return float(np.linalg.norm(as_vector(v)))


def _nonzero_norm(v: Vector, operation: str) -> float:
    nv = float(np.linalg.norm(v))
    if nv == 0.0:
        raise ZeroVectorError(f"{operation}: vector must be nonzero")
    return nv


def inner(x: ArrayLike, y: ArrayLike) -> Scalar:
    """
    Inner product <x, y>, conjugate-linear in `x` and linear in `y`.

    Parameters:
    - x (ArrayLike): First vector.
    - y (ArrayLike): Second vector, same length as `x`.

    Returns:
    - Scalar: float for real inputs, complex otherwise.

    Raises:
    - DimensionMismatchError: If the lengths differ.

    Examples:
    >>> inner([1, 1, 1], [1, 0, -1])
    0.0
    >>> inner([1j, 0], [1j, 0])
    (1+0j)
    """
    x, y = as_vector(x), as_vector(y)
    _check_lengths(x, y, 'inner')
    return np.vdot(x, y).item()


# region operator
class OperatorKind(str, Enum):
    DENSE = 'dense'
    DIAGONAL = 'diagonal'


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """
    A self-adjoint operator on C^n or R^n, stored densely or as a real diagonal.

    Use the `dense` and `diagonal` constructors; they validate the input and
    store a read-only copy.

    Examples:
    >>> A = HermitianOperator.diagonal([1, 0, -1])
    >>> A.apply([1, 1, 1])
    array([ 1.,  0., -1.])
    """
    kind: OperatorKind
    data: NDArray

    @classmethod
    def dense(
        cls,
        matrix: ArrayLike,
        tol: float | None = None,
    ) -> 'HermitianOperator':
        """
        Build a Dense operator.

        Parameters:
        - matrix (ArrayLike): Square matrix.
        - tol (float | None): Relative Hermitian tolerance
            ||M - M*||_F <= tol ||M||_F. Default from config.

        Raises:
        - DimensionMismatchError: If `matrix` is not square.
        - NotHermitianError: If the Hermitian test fails.
        """
        tol = TOLERANCES['hermitian'] if tol is None else tol
        m = np.asarray(matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise DimensionMismatchError(f"Expected a square matrix, got shape {m.shape}")
        m = m.astype(np.complex128 if np.iscomplexobj(m) else np.float64)
        if not np.all(np.isfinite(m)):
            raise CertificationError("Matrix has non-finite entries")

        skew = float(np.linalg.norm(m - m.conj().T))
        size = float(np.linalg.norm(m))
        if skew > tol * size:
            raise NotHermitianError(tolerance_message(
                'HermitianOperator.dense', '||M - M*||_F / ||M||_F', skew / size, tol
            ))
        # store the exactly Hermitian part
        m = (m + m.conj().T) / 2
        if np.iscomplexobj(m) and not np.any(m.imag):
            m = m.real.copy()
        m.flags.writeable = False
        return cls(OperatorKind.DENSE, m)

    @classmethod
    def diagonal(cls, entries: ArrayLike) -> 'HermitianOperator':
        """Build a Diagonal operator from real entries."""
        d = np.asarray(entries)
        if d.ndim != 1 or d.size == 0:
            raise DimensionMismatchError(f"Expected a non-empty diagonal, got shape {d.shape}")
        if np.iscomplexobj(d):
            if np.any(d.imag):
                raise NotHermitianError("HermitianOperator.diagonal: entries must be real")
            d = d.real
        d = d.astype(np.float64)
        if not np.all(np.isfinite(d)):
            raise CertificationError("Diagonal has non-finite entries")
        d.flags.writeable = False
        return cls(OperatorKind.DIAGONAL, d)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.data)

    @cached_property
    def norm_fro(self) -> float:
        return float(np.linalg.norm(self.data))

    def apply(self, v: ArrayLike) -> Vector:
        v = as_vector(v)
        if v.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"apply: operator dimension {self.dim} != vector length {v.shape[0]}"
            )
        if self.kind is OperatorKind.DIAGONAL:
            return self.data * v
        return self.data @ v

    def __matmul__(self, v: ArrayLike) -> Vector:
        return self.apply(v)

    def rounding_scale(self, v: ArrayLike) -> float:
        """
        |||A| |v|||, the size of the rounding error committed by `apply`.

        Residual certificates are relative to this value; for a Diagonal
        operator with widely spread entries it is far smaller than ||A||_F ||v||.
        """
        v = np.abs(as_vector(v))
        if self.kind is OperatorKind.DIAGONAL:
            return float(np.linalg.norm(np.abs(self.data) * v))
        return float(np.linalg.norm(np.abs(self.data) @ v))

    def to_dense(self) -> NDArray:
        if self.kind is OperatorKind.DIAGONAL:
            return np.diag(self.data)
        return np.array(self.data)

    def negated(self) -> 'HermitianOperator':
        """The operator -A, same storage kind."""
        data = -self.data
        data.flags.writeable = False
        return HermitianOperator(self.kind, data)


# region rayleigh quotient
def rayleigh_quotient(A: HermitianOperator, x: ArrayLike) -> float:
    """
    Rayleigh quotient rho(x) = <x, Ax> / <x, x>.

    The imaginary part of <x, Ax> is rounding noise for a Hermitian A and is
    discarded; it is logged when it exceeds 1e-12 ||A||_F ||x||^2.

    Raises:
    - ZeroVectorError: If `x` is zero.
    - DimensionMismatchError: If `x` does not match the operator dimension.

    Examples:
    >>> rayleigh_quotient(HermitianOperator.diagonal([1, 0, -1]), [1, 1, 1])
    0.0
    """
    x = as_vector(x)
    nx = _nonzero_norm(x, 'rayleigh_quotient')
    num = np.vdot(x, A.apply(x))
    den = nx**2
    if abs(num.imag) > 1e-12 * max(1.0, A.norm_fro) * den:
        log.warning("rayleigh_quotient: discarding imaginary part %.3e", num.imag)
    return float(num.real / den)


def residual(A: HermitianOperator, x: ArrayLike) -> Vector:
    """
    Residual r(x) = Ax - rho(x) x, orthogonal to `x`.

    Raises:
    - ZeroVectorError: If `x` is zero.
    """
    x = as_vector(x)
    rho = rayleigh_quotient(A, x)
    return A.apply(x) - rho * x


# region angles and projections
def acute_angle(x: ArrayLike, y: ArrayLike) -> float:
    """
    Acute angle between two nonzero vectors, in [0, pi/2].

    Mathematically arccos(|<x,y>| / (||x|| ||y||)). It is evaluated as
    atan2(sin, cos) from the normalized vectors so that angles far below
    1e-8 are resolved, which arccos cannot do.

    Raises:
    - ZeroVectorError: If either vector is zero.
    - DimensionMismatchError: If the lengths differ.

    Examples:
    >>> acute_angle([0, 1, 0], [1, 1, 1])  # arccos(1/sqrt(3))
    0.9553166181245093
    """
    x, y = as_vector(x), as_vector(y)
    _check_lengths(x, y, 'acute_angle')
    qx = x / _nonzero_norm(x, 'acute_angle')
    qy = y / _nonzero_norm(y, 'acute_angle')
    c = np.vdot(qx, qy)
    sin = float(np.linalg.norm(qy - c * qx))
    cos = abs(c)
    return math.atan2(sin, min(cos, 1.0))


def orthonormal_basis(
    vectors: Sequence[ArrayLike],
    drop_ratio: float | None = None,
) -> NDArray:
    """
    Orthonormalize `vectors` with modified Gram-Schmidt and one reorthogonalization pass.

    A vector whose norm drops below `drop_ratio` times its original norm is
    considered dependent on the previous ones and dropped.

    Parameters:
    - vectors (Sequence[ArrayLike]): Nonzero vectors of equal length.
    - drop_ratio (float | None): Default `collinear_ratio` from config.

    Returns:
    - NDArray: Matrix with orthonormal columns, shape (n, k), k <= len(vectors).

    Raises:
    - ZeroVectorError: If one of the vectors is zero.
    - DimensionMismatchError: If the lengths differ or `vectors` is empty.
    """
    drop_ratio = TOLERANCES['collinear_ratio'] if drop_ratio is None else drop_ratio
    vs = [as_vector(v) for v in vectors]
    if not vs:
        raise DimensionMismatchError("orthonormal_basis: no vectors given")
    for v in vs[1:]:
        _check_lengths(vs[0], v, 'orthonormal_basis')

    dtype = np.result_type(*vs)
    columns: list[Vector] = []
    for v in vs:
        w = v.astype(dtype, copy=True)
        before = _nonzero_norm(w, 'orthonormal_basis')
        for _ in range(2):
            for q in columns:
                w -= np.vdot(q, w) * q
        after = float(np.linalg.norm(w))
        if after < drop_ratio * before:
            continue
        columns.append(w / after)

    if not columns:
        return np.zeros((vs[0].shape[0], 0), dtype=dtype)
    return np.column_stack(columns)


def project_onto_span(basis: Sequence[ArrayLike], v: ArrayLike) -> Vector:
    """
    Orthogonal projection of `v` onto span(basis).

    Parameters:
    - basis (Sequence[ArrayLike]): Nonzero spanning vectors (not necessarily orthogonal).
    - v (ArrayLike): Vector to project.

    Returns:
    - Vector: P v, idempotent and never longer than `v`.

    Raises:
    - DimensionMismatchError: If `v` does not match the basis length.

    Examples:
    >>> project_onto_span([[1, 0, 0]], [3, 4, 0])
    array([3., 0., 0.])
    """
    v = as_vector(v)
    q = orthonormal_basis(basis)
    if q.shape[0] != v.shape[0]:
        raise DimensionMismatchError(
            f"project_onto_span: basis length {q.shape[0]} != vector length {v.shape[0]}"
        )
    return q @ (q.conj().T @ v)


# region restriction
@dataclass(frozen=True, eq=False)
class TwoDimRestriction:
    """
    The restriction A_S = (P_S A)|_S to a two-dimensional subspace S.

    Attributes:
    - q1, q2 (Vector): Orthonormal basis of S, q1 parallel to the first vector.
    - h (NDArray): 2x2 Hermitian matrix <q_i, A q_j>.
    - mu, nu (float): Largest and smallest eigenvalue of A_S, mu >= nu.
    - u1, u2 (Vector): Unit eigenvectors of A_S for mu and nu, in ambient space.
    """
    q1: Vector
    q2: Vector
    h: NDArray
    mu: float
    nu: float
    u1: Vector
    u2: Vector

    @property
    def basis(self) -> NDArray:
        return np.column_stack([self.q1, self.q2])

    @property
    def gap(self) -> float:
        return self.mu - self.nu

    def coordinates(self, v: ArrayLike) -> NDArray:
        v = as_vector(v)
        return np.array([np.vdot(self.q1, v), np.vdot(self.q2, v)])

    def project(self, v: ArrayLike) -> Vector:
        """P_S v."""
        return self.basis @ self.coordinates(v)

    def contains(self, v: ArrayLike, rtol: float) -> bool:
        v = as_vector(v)
        return float(np.linalg.norm(v - self.project(v))) <= rtol * float(np.linalg.norm(v))

    def apply(self, v: ArrayLike) -> Vector:
        """A_S P_S v, computed inside the 2x2 representation."""
        return self.basis @ (self.h @ self.coordinates(v))

    def rayleigh_quotient(self, v: ArrayLike) -> float:
        """rho(v, A_S) from the 2x2 matrix."""
        z = self.coordinates(v)
        den = float(np.vdot(z, z).real)
        if den == 0.0:
            raise ZeroVectorError("TwoDimRestriction.rayleigh_quotient: v has no component in S")
        return float(np.vdot(z, self.h @ z).real / den)

    def residual(self, v: ArrayLike) -> Vector:
        """r(v, A_S) = A_S v - rho(v, A_S) v, lifted to ambient space."""
        z = self.coordinates(v)
        rho = self.rayleigh_quotient(v)
        return self.basis @ (self.h @ z - rho * z)


def _eig2x2(a: float, c: float, b: Scalar) -> tuple[float, float, NDArray, NDArray]:
    """
    Eigenpairs of [[a, b], [conj(b), c]] in closed form.

    The eigenvalue farther from the larger diagonal entry is obtained from
    |b|^2 / (r + |d|) without cancellation, the other from the trace.
    """
    d = (a - c) / 2
    babs = abs(b)
    r = math.hypot(d, babs)
    if r == 0.0:
        return a, a, np.array([1.0, 0.0]), np.array([0.0, 1.0])

    shift = babs**2 / (r + abs(d))
    if d >= 0:
        mu, nu = a + shift, c - shift
    else:
        mu, nu = c + shift, a - shift

    dtype = np.complex128 if isinstance(b, complex) else np.float64
    first = np.array([b, mu - a], dtype=dtype)
    second = np.array([mu - c, np.conj(b)], dtype=dtype)
    v = first if np.linalg.norm(first) >= np.linalg.norm(second) else second
    c1 = v / np.linalg.norm(v)
    c2 = np.array([-np.conj(c1[1]), np.conj(c1[0])], dtype=dtype)
    return mu, nu, c1, c2


def restrict_2d(
    A: HermitianOperator,
    x: ArrayLike,
    y: ArrayLike,
) -> TwoDimRestriction:
    """
    Restrict `A` to S = span{x, y} and solve the 2x2 eigenproblem of A_S.

    q1 = x/||x||, q2 is obtained from y by Gram-Schmidt with one
    reorthogonalization pass. For any v in S, rho(v) equals the Rayleigh
    quotient of the 2x2 matrix and P_S r(v) equals the residual computed inside
    the 2x2 representation.

    Parameters:
    - A (HermitianOperator): The operator.
    - x (ArrayLike): First spanning vector.
    - y (ArrayLike): Second spanning vector.

    Returns:
    - TwoDimRestriction

    Raises:
    - ZeroVectorError: If `x` or `y` is zero.
    - DegenerateSubspaceError: If `x` and `y` are collinear, i.e. the
      orthogonalized `y` keeps less than `collinear_ratio` of its norm.

    Examples:
    >>> A = HermitianOperator.diagonal([2.0**k for k in range(64)])
    >>> R = restrict_2d(A, [1] + [0]*63, [0.5**k for k in range(64)])
    >>> R.mu, R.nu
    (3.0, 1.0)
    """
    x, y = as_vector(x), as_vector(y)
    _check_lengths(x, y, 'restrict_2d')
    if x.shape[0] != A.dim:
        raise DimensionMismatchError(
            f"restrict_2d: operator dimension {A.dim} != vector length {x.shape[0]}"
        )
    nx = _nonzero_norm(x, 'restrict_2d')
    ny = _nonzero_norm(y, 'restrict_2d')

    dtype = np.result_type(x, y, A.data)
    q1 = (x / nx).astype(dtype)
    w = y.astype(dtype, copy=True)
    for _ in range(2):
        w -= np.vdot(q1, w) * q1
    nw = float(np.linalg.norm(w))
    if nw < TOLERANCES['collinear_ratio'] * ny:
        raise DegenerateSubspaceError(tolerance_message(
            'restrict_2d', 'sin angle{x, y}', nw / ny, TOLERANCES['collinear_ratio']
        ))
    q2 = w / nw

    aq1, aq2 = A.apply(q1), A.apply(q2)
    h11 = float(np.vdot(q1, aq1).real)
    h22 = float(np.vdot(q2, aq2).real)
    h12 = (np.vdot(q1, aq2) + np.conj(np.vdot(q2, aq1))) / 2
    h12 = complex(h12) if np.iscomplexobj(h12) else float(h12)

    mu, nu, c1, c2 = _eig2x2(h11, h22, h12)
    h = np.array([[h11, h12], [np.conj(h12), h22]], dtype=type(h12))
    basis = np.column_stack([q1, q2])
    log.debug("restrict_2d: mu=%.17g nu=%.17g", mu, nu)
    return TwoDimRestriction(
        q1 = q1,
        q2 = q2,
        h = h,
        mu = mu,
        nu = nu,
        u1 = basis @ c1,
        u2 = basis @ c2,
    )
