"""
Identities and sharp inequalities for the change of the Rayleigh quotient.

All functions work on S = span{x, y} through `restrict_2d`; mu >= nu and
u1, u2 are the eigenvalues and eigenvectors of the restriction A_S.

residual_gap_identity():
    [mu - rho(v)][rho(v) - nu] = ||P_S r(v)||^2 / ||v||^2
sin2_identity():
    (mu - nu)/2 sin(2 angle{v, u_i}) = ||P_S r(v)|| / ||v||
tangent_bounds():
    Xi_- <= |rho(x) - rho(y)| <= Xi_+ and which side is attained.
sine_bounds():
    Psi_- <= |rho(x) - rho(y)| <= Psi_+ and which side is attained.
eigenvector_identities():
    The exact sin^2 / tan / tan-residual identities when x is an eigenvector.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike

from rqbounds.config import TOLERANCES
from rqbounds.core_linalg import (
    HermitianOperator,
    Scalar,
    TwoDimRestriction,
    Vector,
    acute_angle,
    as_vector,
    inner,
    rayleigh_quotient,
    residual,
    restrict_2d,
)
from rqbounds.errors import (
    DegenerateSubspaceError,
    HypothesisError,
    NotAnEigenvectorError,
    NotInSubspaceError,
    ZeroVectorError,
    tolerance_message,
)


log = logging.getLogger(__name__)


class EqualityCase(str, Enum):
    LOWER_ATTAINED = 'LowerAttained'
    UPPER_ATTAINED = 'UpperAttained'
    STRICT_BOTH = 'StrictBoth'
    UNCLASSIFIED = 'Unclassified'


class IdentityPair(NamedTuple):
    """Both sides of an identity or inequality, evaluated by separate code paths."""
    lhs: float
    rhs: float

    @property
    def gap(self) -> float:
        return abs(self.lhs - self.rhs)

    def agrees(self, tol: float) -> bool:
        return self.gap <= tol

    def ordered(self, tol: float) -> bool:
        """lhs <= rhs + tol"""
        return self.lhs <= self.rhs + tol


def tolerance_scale(A: HermitianOperator, *vectors: ArrayLike) -> float:
    """max(1, ||A||_F) * max(1, ||v|| for v in vectors)^2"""
    size = max([1.0] + [float(np.linalg.norm(as_vector(v))) for v in vectors])
    return max(1.0, A.norm_fro) * size**2


# region helpers
def _probe_in(R: TwoDimRestriction, probe: ArrayLike, operation: str) -> Vector:
    probe = as_vector(probe)
    if not np.any(probe):
        raise ZeroVectorError(f"{operation}: probe must be nonzero")
    if not R.contains(probe, TOLERANCES['identity']):
        outside = float(np.linalg.norm(probe - R.project(probe)) / np.linalg.norm(probe))
        raise NotInSubspaceError(tolerance_message(
            operation, '||probe - P_S probe|| / ||probe||', outside, TOLERANCES['identity']
        ))
    return probe


def projected_residual_norm(R: TwoDimRestriction, A: HermitianOperator, v: ArrayLike) -> float:
    """||P_S r(v)|| with r(v) computed in ambient space."""
    return float(np.linalg.norm(R.project(residual(A, v))))


def _classify_ratio(ratio: complex) -> EqualityCase:
    """Sign classification of a scalar whose real nonnegativity decides the equality case."""
    size = abs(ratio)
    if size <= TOLERANCES['classify_floor'] or abs(ratio.imag) <= TOLERANCES['classify_real'] * size:
        return EqualityCase.LOWER_ATTAINED if ratio.real >= 0 else EqualityCase.UPPER_ATTAINED
    if abs(ratio.imag) > TOLERANCES['classify_nonreal'] * size:
        return EqualityCase.STRICT_BOTH
    return EqualityCase.UNCLASSIFIED


def certify_eigenvector(A: HermitianOperator, x: ArrayLike) -> float:
    """
    Check that `x` is an eigenvector of `A` and return its eigenvalue rho(x).

    Raises:
    - NotAnEigenvectorError: If ||r(x)|| > `eigenvector` * |||A| |x|||.
    """
    x = as_vector(x)
    lam = rayleigh_quotient(A, x)
    rnorm = float(np.linalg.norm(A.apply(x) - lam * x))
    scale = A.rounding_scale(x)
    if rnorm > TOLERANCES['eigenvector'] * scale:
        raise NotAnEigenvectorError(tolerance_message(
            'certify_eigenvector', '||r(x)|| / |||A| |x|||',
            rnorm / max(scale, 1e-300), TOLERANCES['eigenvector'],
        ))
    return lam


# region identities
def residual_gap_identity(
    A: HermitianOperator,
    x: ArrayLike,
    y: ArrayLike,
    probe: ArrayLike,
) -> IdentityPair:
    """
    Evaluate [mu - rho(v)][rho(v) - nu] and ||P_S r(v)||^2 / ||v||^2 for v = probe.

    Parameters:
    - A (HermitianOperator): The operator.
    - x, y (ArrayLike): Vectors spanning S.
    - probe (ArrayLike): Nonzero vector in S.

    Returns:
    - IdentityPair: (lhs, rhs), equal to 1e-10 max(1, ||A||_F^2).

    Raises:
    - DegenerateSubspaceError: If x and y are collinear.
    - NotInSubspaceError: If the probe is outside S.
    """
    R = restrict_2d(A, x, y)
    probe = _probe_in(R, probe, 'residual_gap_identity')
    rho = rayleigh_quotient(A, probe)
    lhs = (R.mu - rho) * (rho - R.nu)
    rhs = projected_residual_norm(R, A, probe) ** 2 / float(np.vdot(probe, probe).real)
    return IdentityPair(lhs, rhs)


def double_angle_pair(R: TwoDimRestriction, probe: ArrayLike) -> tuple[float, float]:
    """(mu - nu)/2 sin(2 angle{v, u_i}) for i = 1 and i = 2."""
    half_gap = R.gap / 2
    return (
        half_gap * math.sin(2 * acute_angle(probe, R.u1)),
        half_gap * math.sin(2 * acute_angle(probe, R.u2)),
    )


def sin2_identity(
    A: HermitianOperator,
    x: ArrayLike,
    y: ArrayLike,
    probe: ArrayLike,
) -> IdentityPair:
    """
    Evaluate (mu - nu)/2 sin(2 angle{v, u_1}) and ||P_S r(v)|| / ||v|| for v = probe.

    The i = 2 value is computed as a cross-check; a disagreement beyond
    1e-10 max(1, ||A||_F) is logged.

    Raises:
    - DegenerateSubspaceError: If x and y are collinear.
    - NotInSubspaceError: If the probe is outside S.
    """
    R = restrict_2d(A, x, y)
    probe = _probe_in(R, probe, 'sin2_identity')
    first, second = double_angle_pair(R, probe)
    if abs(first - second) > TOLERANCES['identity'] * max(1.0, A.norm_fro):
        log.warning("sin2_identity: i=1 and i=2 disagree (%.3e vs %.3e)", first, second)
    rhs = projected_residual_norm(R, A, probe) / float(np.linalg.norm(probe))
    return IdentityPair(first, rhs)


@dataclass(frozen=True)
class RemarkIdentity:
    """
    Three evaluations of the same ratio for 0 < angle{x, y} < pi/2.

    ratio        |<r(x), y>| / |<x, y>|
    tangent_form ||P_S r(x)|| / ||x|| tan angle{x, y}
    line_form    ||P_y r(x)|| / (||x|| cos angle{x, y})
    """
    ratio: float
    tangent_form: float
    line_form: float

    def pairs(self) -> tuple[IdentityPair, IdentityPair]:
        return (
            IdentityPair(self.ratio, self.tangent_form),
            IdentityPair(self.ratio, self.line_form),
        )


def remark_identity(A: HermitianOperator, x: ArrayLike, y: ArrayLike) -> RemarkIdentity:
    """
    Evaluate the projected-residual expressions of |<r(x), y>| / |<x, y>|.

    Raises:
    - DegenerateSubspaceError: If x and y are collinear.
    - HypothesisError: If x and y are orthogonal.
    """
    x, y = as_vector(x), as_vector(y)
    R = restrict_2d(A, x, y)
    theta = acute_angle(x, y)
    if theta >= math.pi / 2 - TOLERANCES['right_angle']:
        raise HypothesisError(
            'remark_identity', '0 < angle{x, y} < pi/2', f"angle{{x, y}} = {theta!r}"
        )
    rx = residual(A, x)
    xnorm = float(np.linalg.norm(x))
    qy = y / np.linalg.norm(y)
    return RemarkIdentity(
        ratio = abs(inner(rx, y)) / abs(inner(x, y)),
        tangent_form = float(np.linalg.norm(R.project(rx))) / xnorm * math.tan(theta),
        line_form = abs(np.vdot(qy, rx)) / (xnorm * math.cos(theta)),
    )


# region tangent bounds
@dataclass(frozen=True)
class TangentBoundResult:
    """
    Xi_-/+ = | ||P_S r(x)||/||x|| -/+ ||P_S r(y)||/||y|| | tan angle{x, y}.

    a = <x, r(y)>, b = <r(x), y>, c = <x, y> satisfy (rho(x) - rho(y)) c = a - b.
    `tangent_unbounded` is set when angle{x, y} is within `right_angle` of pi/2;
    then xi_minus = 0, xi_plus = inf and the case is Unclassified.
    """
    xi_minus: float
    xi_plus: float
    delta_rho: float
    a: Scalar
    b: Scalar
    c: Scalar
    equality_case: EqualityCase
    tangent_unbounded: bool = False

    @property
    def core_identity_residual(self) -> float:
        """| |rho(x) - rho(y)| |c| - |a - b| |"""
        return abs(self.delta_rho * abs(self.c) - abs(self.a - self.b))


def _classify_tangent(a: Scalar, b: Scalar, scale: float) -> EqualityCase:
    # ratio over whichever of a, b is larger in magnitude
    a, b = complex(a), complex(b)
    if max(abs(a), abs(b)) < TOLERANCES['classify_floor'] * scale:
        return EqualityCase.UNCLASSIFIED
    ratio = a / b if abs(b) >= abs(a) else b / a
    if abs(ratio) < TOLERANCES['classify_floor']:
        ratio = 0j
    return _classify_ratio(ratio)


def tangent_bounds(A: HermitianOperator, x: ArrayLike, y: ArrayLike) -> TangentBoundResult:
    """
    Tangent bounds Xi_- <= |rho(x) - rho(y)| <= Xi_+ with their equality case.

    For a real ratio a/b (or b/a when |a| > |b|), a nonnegative value means
    |rho(x) - rho(y)| = Xi_-, a negative one means = Xi_+. A non-real ratio
    makes both inequalities strict.

    Parameters:
    - A (HermitianOperator): The operator.
    - x, y (ArrayLike): Nonzero, linearly independent vectors.

    Returns:
    - TangentBoundResult

    Raises:
    - DegenerateSubspaceError: If x and y are collinear.

    Examples:
    >>> A = HermitianOperator.diagonal([2, 0])
    >>> result = tangent_bounds(A, [1, 0], [1, 1])
    >>> round(result.xi_minus, 12), result.delta_rho, result.equality_case.value
    (1.0, 1.0, 'LowerAttained')
    """
    x, y = as_vector(x), as_vector(y)
    R = restrict_2d(A, x, y)
    theta = acute_angle(x, y)

    rx, ry = residual(A, x), residual(A, y)
    delta_rho = abs(rayleigh_quotient(A, x) - rayleigh_quotient(A, y))
    a, b, c = inner(x, ry), inner(rx, y), inner(x, y)

    if theta >= math.pi / 2 - TOLERANCES['right_angle']:
        log.debug("tangent_bounds: angle %.17g is a right angle, tangent unbounded", theta)
        return TangentBoundResult(0.0, math.inf, delta_rho, a, b, c,
                                  EqualityCase.UNCLASSIFIED, tangent_unbounded=True)

    px = float(np.linalg.norm(R.project(rx)) / np.linalg.norm(x))
    py = float(np.linalg.norm(R.project(ry)) / np.linalg.norm(y))
    tan = math.tan(theta)
    return TangentBoundResult(
        xi_minus = abs(px - py) * tan,
        xi_plus = (px + py) * tan,
        delta_rho = delta_rho,
        a = a,
        b = b,
        c = c,
        equality_case = _classify_tangent(a, b, tolerance_scale(A, x, y)),
    )


# region sine bounds
@dataclass(frozen=True)
class SineBoundResult:
    """
    Psi_-/+ = (mu - nu) |sin(angle{x, u1} -/+ angle{y, u1})| sin angle{x, y}.

    C = <x, u1><u2, x><u1, y><y, u2>. `identity_value` is the exact
    (mu - nu) sin(angle{x,u1} + angle{y,u1}) |sin(angle{x,u1} - angle{y,u1})|.
    """
    psi_minus: float
    psi_plus: float
    delta_rho: float
    C: Scalar
    equality_case: EqualityCase
    identity_value: float
    cross_check: tuple[float, float]


def sine_bounds(A: HermitianOperator, x: ArrayLike, y: ArrayLike) -> SineBoundResult:
    """
    Sine bounds Psi_- <= |rho(x) - rho(y)| <= Psi_+ with their equality case.

    C real and positive means x and y lie on the same side of u1 within S, so
    sin angle{x, y} = |sin(angle{x,u1} - angle{y,u1})| and |rho(x) - rho(y)| = Psi_+.
    C real and nonpositive gives = Psi_-. A non-real C makes both inequalities strict.
    The sign of C is judged on unit x and y.

    Raises:
    - DegenerateSubspaceError: If x and y are collinear.

    Examples:
    >>> A = HermitianOperator.diagonal([2, 0])
    >>> result = sine_bounds(A, [1, 0], [1, 1])
    >>> round(result.psi_minus, 12), result.equality_case.value
    (1.0, 'LowerAttained')
    """
    x, y = as_vector(x), as_vector(y)
    R = restrict_2d(A, x, y)
    sin_xy = math.sin(acute_angle(x, y))
    delta_rho = abs(rayleigh_quotient(A, x) - rayleigh_quotient(A, y))

    def psi(u: Vector) -> tuple[float, float, float]:
        tx, ty = acute_angle(x, u), acute_angle(y, u)
        return (
            R.gap * abs(math.sin(tx - ty)) * sin_xy,
            R.gap * abs(math.sin(tx + ty)) * sin_xy,
            R.gap * math.sin(tx + ty) * abs(math.sin(tx - ty)),
        )

    psi_minus, psi_plus, identity_value = psi(R.u1)
    check_minus, check_plus, _ = psi(R.u2)

    C = inner(x, R.u1) * inner(R.u2, x) * inner(R.u1, y) * inner(y, R.u2)
    normalized = complex(C) / float(np.vdot(x, x).real * np.vdot(y, y).real)
    return SineBoundResult(
        psi_minus = psi_minus,
        psi_plus = psi_plus,
        delta_rho = delta_rho,
        C = C,
        equality_case = _classify_ratio(-normalized),
        identity_value = identity_value,
        cross_check = (check_minus, check_plus),
    )


def plain_sine_bound(A: HermitianOperator, x: ArrayLike, y: ArrayLike) -> IdentityPair:
    """(|rho(x) - rho(y)|, (mu - nu) sin angle{x, y}), the first never larger."""
    R = restrict_2d(A, x, y)
    delta_rho = abs(rayleigh_quotient(A, x) - rayleigh_quotient(A, y))
    return IdentityPair(delta_rho, R.gap * math.sin(acute_angle(x, y)))


# region eigenvector case
@dataclass(frozen=True)
class EigenvectorIdentities:
    """
    Values for an eigenvector x with eigenvalue lam and a probe y.

    delta_rho         |lam - rho(y)|
    sine2_gap         (mu - nu) sin^2 angle{x, y}
    tan_mixed         ||P_S r(y)|| / ||y|| tan angle{x, y}, None at a right angle
    tan_theta         tan angle{x, y}, None at a right angle
    tan_from_residual ||P_S r(y)|| / (|eta - rho(y)| ||y||), None when eta = rho(y)
    """
    lam: float
    eta: float
    delta_rho: float
    sine2_gap: float
    tan_mixed: float | None
    tan_theta: float | None
    tan_from_residual: float | None
    scale: float

    def residuals(self) -> dict[str, float]:
        """Absolute disagreement of each identity that is defined."""
        out = {'sine2': abs(self.delta_rho - self.sine2_gap)}
        if self.tan_mixed is not None:
            out['tan_mixed'] = abs(self.delta_rho - self.tan_mixed)
        if self.tan_from_residual is not None and self.tan_theta is not None:
            out['tan_from_residual'] = abs(self.tan_theta - self.tan_from_residual)
        return out

    def holds(self, tol: float | None = None) -> bool:
        tol = TOLERANCES['identity'] if tol is None else tol
        return all(value <= tol * self.scale for value in self.residuals().values())


def eigenvector_identities(
    A: HermitianOperator,
    x: ArrayLike,
    y: ArrayLike,
) -> EigenvectorIdentities:
    """
    Evaluate the eigenvector-case identities for an eigenvector `x` of `A`.

    |lam - rho(y)| = (mu - nu) sin^2 angle{x, y}, and below a right angle
    |lam - rho(y)| = ||P_S r(y)|| / ||y|| tan angle{x, y} and
    tan angle{x, y} = ||P_S r(y)|| / (|eta - rho(y)| ||y||), where eta is the
    eigenvalue of A_S other than lam. If `y` is collinear with `x`, every
    quantity is zero.

    Raises:
    - NotAnEigenvectorError: If x fails the eigenvector certificate.

    Examples:
    >>> A = HermitianOperator.diagonal([1, 0, -1])
    >>> eigenvector_identities(A, [0, 1, 0], [1, 1, 1]).sine2_gap
    0.0
    """
    x, y = as_vector(x), as_vector(y)
    lam = certify_eigenvector(A, x)
    scale = tolerance_scale(A, x, y)
    try:
        R = restrict_2d(A, x, y)
    except DegenerateSubspaceError:
        return EigenvectorIdentities(lam, lam, 0.0, 0.0, 0.0, 0.0, None, scale)

    rho = rayleigh_quotient(A, y)
    theta = acute_angle(x, y)
    eta = R.nu if abs(R.mu - lam) <= abs(R.nu - lam) else R.mu
    py = projected_residual_norm(R, A, y) / float(np.linalg.norm(y))

    right = theta >= math.pi / 2 - TOLERANCES['right_angle']
    tan = None if right else math.tan(theta)
    tan_from_residual = None
    separation = abs(eta - rho)
    if separation > TOLERANCES['identity'] * max(1.0, abs(R.mu), abs(R.nu)):
        tan_from_residual = py / separation

    return EigenvectorIdentities(
        lam = lam,
        eta = eta,
        delta_rho = abs(lam - rho),
        sine2_gap = R.gap * math.sin(theta) ** 2,
        tan_mixed = None if tan is None else py * tan,
        tan_theta = tan,
        tan_from_residual = tan_from_residual,
        scale = scale,
    )
