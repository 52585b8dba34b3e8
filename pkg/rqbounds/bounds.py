"""
Computable eigenvalue and eigenvector error bounds.

Classical bounds use the full residual r(y). The improved bounds replace
||r(y)|| by ||P_S r(y)||, S = span{x, y}, x = (I - P_U) y, where U is the
invariant subspace of all eigenvalues above rho(y).

Every bound returns a `BoundReport` with both sides evaluated. A report whose
`holds` is False for a bound with satisfied hypotheses is a certification
failure.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from rqbounds.config import TOLERANCES
from rqbounds.core_linalg import (
    HermitianOperator,
    TwoDimRestriction,
    Vector,
    acute_angle,
    as_vector,
    orthonormal_basis,
    rayleigh_quotient,
    residual,
    restrict_2d,
)
from rqbounds.errors import (
    DegenerateSubspaceError,
    HypothesisError,
    InputError,
    NotAnEigenvectorError,
    SpectrumCoincidenceError,
    ZeroVectorError,
)
from rqbounds.identities import certify_eigenvector
from rqbounds.spectral import (
    SpectralDecomposition,
    SpectrumContext,
    eigendecompose,
    invariant_subspace_above,
    invariant_subspace_below,
    spectrum_context,
)


log = logging.getLogger(__name__)


# region report
@dataclass
class BoundReport:
    """
    Evaluated bound lhs <= rhs (or lower <= lhs <= rhs for two-sided bounds).

    `holds` and `equality` are judged with tolerance `bound` * `scale`, where
    `scale` is the magnitude of the quantities compared. Skipped reports carry
    the violated hypothesis in `reason` and NaN sides.
    """
    bound_name: str
    lhs: float
    rhs: float
    holds: bool
    equality: bool
    ingredients: dict[str, float] = field(default_factory=dict)
    lower: float | None = None
    skipped: bool = False
    reason: str | None = None
    scale: float = 1.0

    @classmethod
    def evaluate(
        cls,
        bound_name: str,
        lhs: float,
        rhs: float,
        ingredients: dict[str, float],
        lower: float | None = None,
        extra_scale: tuple[float, ...] = (),
    ) -> 'BoundReport':
        finite = [abs(v) for v in (lhs, rhs, lower, *extra_scale)
                  if v is not None and math.isfinite(v)]
        scale = max([1.0] + finite)
        tol = TOLERANCES['bound'] * scale
        holds = lhs <= rhs + tol
        equality = abs(lhs - rhs) <= tol
        if lower is not None:
            holds = holds and lower - tol <= lhs
            equality = equality or abs(lhs - lower) <= tol
        return cls(bound_name, lhs, rhs, holds, equality, ingredients, lower, scale=scale)

    @classmethod
    def skip(cls, bound_name: str, reason: str) -> 'BoundReport':
        return cls(bound_name, math.nan, math.nan, False, False, skipped=True, reason=reason)


def _context(A: HermitianOperator, y: ArrayLike, dec: SpectralDecomposition | None) -> tuple[Vector, float, SpectralDecomposition]:
    y = as_vector(y)
    rho = rayleigh_quotient(A, y)
    return y, rho, eigendecompose(A) if dec is None else dec


def _sq(v: Vector) -> float:
    return float(np.vdot(v, v).real)


def _require_below_right_angle(theta: float, operation: str) -> None:
    if theta >= math.pi / 2 - TOLERANCES['right_angle']:
        raise HypothesisError(operation, 'angle{x, y} < pi/2', f"angle{{x, y}} = {theta!r}")


# region a priori and mixed
def apriori_sin2(
    A: HermitianOperator,
    x: ArrayLike,
    y: ArrayLike,
    dec: SpectralDecomposition | None = None,
) -> BoundReport:
    """
    |lam - rho(y)| <= (max Sigma(A) - min Sigma(A)) sin^2 angle{x, y}

    The exact value (mu - nu) sin^2 angle{x, y} is recorded as ingredient
    `exact`; it equals the lhs.

    Raises:
    - NotAnEigenvectorError: If x is not an eigenvector.

    Examples:
    >>> A = HermitianOperator.diagonal([0, 1])
    >>> report = apriori_sin2(A, [1, 0], [1, 1])
    >>> report.lhs, report.equality
    (0.5, True)
    """
    x = as_vector(x)
    lam = certify_eigenvector(A, x)
    y, rho, dec = _context(A, y, dec)
    theta = acute_angle(x, y)
    sin2 = math.sin(theta) ** 2
    try:
        R = restrict_2d(A, x, y)
        mu, nu = R.mu, R.nu
    except DegenerateSubspaceError:
        mu = nu = lam
    width = dec.sigma_max - dec.sigma_min
    return BoundReport.evaluate(
        'apriori_sin2',
        lhs = abs(lam - rho),
        rhs = width * sin2,
        ingredients = {
            'rho_y': rho, 'lambda': lam, 'theta': theta,
            'sigma_min': dec.sigma_min, 'sigma_max': dec.sigma_max,
            'mu': mu, 'nu': nu, 'exact': (mu - nu) * sin2,
        },
        extra_scale = (width,),
    )


def mixed_tan(A: HermitianOperator, x: ArrayLike, y: ArrayLike) -> BoundReport:
    """
    |lam - rho(y)| <= ||r(y)|| / ||y|| tan angle{x, y}

    `equality` reports whether S = span{x, y} is A-invariant, i.e.
    P_S r(y) = r(y); then the bound is attained. The projected form
    ||P_S r(y)|| / ||y|| tan angle{x, y}, which always equals the lhs, is the
    ingredient `projected`.

    Raises:
    - NotAnEigenvectorError: If x is not an eigenvector.
    - HypothesisError: If angle{x, y} is a right angle.
    """
    x, y = as_vector(x), as_vector(y)
    lam = certify_eigenvector(A, x)
    rho = rayleigh_quotient(A, y)
    theta = acute_angle(x, y)
    _require_below_right_angle(theta, 'mixed_tan')

    r = residual(A, y)
    try:
        projected_r = restrict_2d(A, x, y).project(r)
    except DegenerateSubspaceError:
        projected_r = r
    ynorm = math.sqrt(_sq(y))
    tan = math.tan(theta)
    rnorm, pnorm = math.sqrt(_sq(r)), math.sqrt(_sq(projected_r))

    report = BoundReport.evaluate(
        'mixed_tan',
        lhs = abs(lam - rho),
        rhs = rnorm / ynorm * tan,
        ingredients = {
            'rho_y': rho, 'lambda': lam, 'theta': theta,
            'residual_norm': rnorm, 'projected_residual_norm': pnorm,
            'projected': pnorm / ynorm * tan,
        },
    )
    invariance_gap = math.sqrt(_sq(projected_r - r))
    report.equality = invariance_gap <= TOLERANCES['bound'] * max(1.0, A.rounding_scale(y))
    return report


# region classical a posteriori
def temple(
    A: HermitianOperator,
    y: ArrayLike,
    ctx: SpectrumContext | None = None,
    dec: SpectralDecomposition | None = None,
) -> BoundReport:
    """
    Temple's bound (beta - rho(y))(rho(y) - alpha) <= ||r(y)||^2 / ||y||^2.

    Raises:
    - SpectrumCoincidenceError: If rho(y) lies on the spectrum.
    - HypothesisError: If alpha or beta is absent.

    Examples:
    >>> A = HermitianOperator.diagonal([0, 1])
    >>> temple(A, [1, 1]).equality
    True
    """
    y, rho, dec = _context(A, y, dec)
    ctx = spectrum_context(dec, rho) if ctx is None else ctx
    if ctx.coincides:
        raise SpectrumCoincidenceError(f"temple: rho(y) = {rho!r} lies on the spectrum")
    if ctx.alpha is None or ctx.beta is None:
        raise HypothesisError('temple', 'alpha < rho(y) < beta', f"alpha = {ctx.alpha}, beta = {ctx.beta}")
    r = residual(A, y)
    return BoundReport.evaluate(
        'temple',
        lhs = (ctx.beta - rho) * (rho - ctx.alpha),
        rhs = _sq(r) / _sq(y),
        ingredients = {
            'rho_y': rho, 'alpha': ctx.alpha, 'beta': ctx.beta,
            'residual_norm': math.sqrt(_sq(r)),
        },
    )


def _kato_temple_interval(ctx: SpectrumContext) -> tuple[float, float]:
    """a <= lam <= b with (a, lam) and (lam, b) spectrum-free and a < rho < b."""
    rho, lam = ctx.rho, ctx.lam
    below = -math.inf if ctx.lam_below is None else ctx.lam_below
    above = math.inf if ctx.lam_above is None else ctx.lam_above
    a = lam if lam < rho else below
    b = lam if lam > rho else above
    if not a < rho < b:
        raise HypothesisError(
            'kato_temple',
            'a < rho(y) < b with no spectrum in (a, lambda) and (lambda, b)',
            f"a = {a!r}, rho(y) = {rho!r}, b = {b!r}, lambda = {lam!r}",
        )
    return a, b


def _kato_temple_report(name: str, ctx: SpectrumContext, squared: float, extra: dict) -> BoundReport:
    a, b = _kato_temple_interval(ctx)
    return BoundReport.evaluate(
        name,
        lhs = ctx.rho - ctx.lam,
        rhs = squared / (b - ctx.rho),
        lower = -squared / (ctx.rho - a),
        ingredients = {'rho_y': ctx.rho, 'lambda': ctx.lam, 'a': a, 'b': b} | extra,
    )


def kato_temple(
    A: HermitianOperator,
    y: ArrayLike,
    ctx: SpectrumContext | None = None,
    dec: SpectralDecomposition | None = None,
) -> BoundReport:
    """
    Kato-Temple inequality
    -||r||^2 / ((rho - a)||y||^2) <= rho(y) - lam <= ||r||^2 / ((b - rho)||y||^2).

    a = lam when lam < rho(y), otherwise the spectrum point below lam; b
    symmetrically. A missing neighbour is taken at infinity, which makes that
    side of the interval 0.

    Raises:
    - HypothesisError: If rho(y) is not inside (a, b).
    """
    y, rho, dec = _context(A, y, dec)
    ctx = spectrum_context(dec, rho) if ctx is None else ctx
    r = residual(A, y)
    return _kato_temple_report('kato_temple', ctx, _sq(r) / _sq(y),
                               {'residual_norm': math.sqrt(_sq(r))})


def _gap_report(name: str, ctx: SpectrumContext, squared: float, extra: dict) -> BoundReport:
    if not ctx.delta > 0:
        raise HypothesisError(name, 'delta > 0', f"delta = {ctx.delta!r}")
    lo, hi = sorted((ctx.lam, ctx.rho))
    between = [p for p in (ctx.lam_below, ctx.lam_above) if p is not None and lo < p < hi]
    if between:
        raise HypothesisError(
            name, 'no eigenvalue between lambda and rho(y)',
            f"lambda = {ctx.lam!r}, rho(y) = {ctx.rho!r}",
        )
    return BoundReport.evaluate(
        name,
        lhs = abs(ctx.lam - ctx.rho),
        rhs = squared / ctx.delta,
        ingredients = {'rho_y': ctx.rho, 'witness': ctx.lam, 'delta': ctx.delta} | extra,
    )


def gap_bound(
    A: HermitianOperator,
    y: ArrayLike,
    ctx: SpectrumContext | None = None,
    dec: SpectralDecomposition | None = None,
) -> BoundReport:
    """
    |lam - rho(y)| <= ||r(y)||^2 / (delta ||y||^2), lam exhibited as `witness`.

    Raises:
    - HypothesisError: If delta = 0 or lam is not adjacent to rho(y).
    """
    y, rho, dec = _context(A, y, dec)
    ctx = spectrum_context(dec, rho) if ctx is None else ctx
    r = residual(A, y)
    return _gap_report('gap_bound', ctx, _sq(r) / _sq(y), {'residual_norm': math.sqrt(_sq(r))})


def _krylov_weinstein_report(name: str, dec: SpectralDecomposition, rho: float, ratio: float, extra: dict) -> BoundReport:
    witness = dec.nearest(rho)
    return BoundReport.evaluate(
        name,
        lhs = abs(witness - rho),
        rhs = ratio,
        ingredients = {'rho_y': rho, 'witness': witness} | extra,
    )


def krylov_weinstein(
    A: HermitianOperator,
    y: ArrayLike,
    dec: SpectralDecomposition | None = None,
) -> BoundReport:
    """
    min over Sigma(A) of |lam - rho(y)| <= ||r(y)|| / ||y||

    Examples:
    >>> A = HermitianOperator.diagonal([1, 0, -1])
    >>> report = krylov_weinstein(A, [1, 1, 1])
    >>> report.lhs, round(report.rhs, 12)
    (0.0, 0.816496580928)
    """
    y, rho, dec = _context(A, y, dec)
    r = residual(A, y)
    rnorm = math.sqrt(_sq(r))
    return _krylov_weinstein_report('krylov_weinstein', dec, rho, rnorm / math.sqrt(_sq(y)),
                                    {'residual_norm': rnorm})


# region improved a posteriori
@dataclass(frozen=True)
class ProjectedSetup:
    """
    S = span{x, y} with x = (I - P_U) y and the residual norms of the hierarchy.

    `pv_above` is ||P_V r(y)|| for V = U + span{y}, `pv_below` for
    V = U-perp + span{y}. `trivial` is set when y is an eigenvector; then
    every projected quantity is zero and `restriction` is None.
    """
    rho: float
    ctx: SpectrumContext | None
    y_norm: float
    residual_norm: float
    projected_norm: float
    pv_above: float
    pv_below: float
    x: Vector | None
    restriction: TwoDimRestriction | None
    trivial: bool = False

    def ingredients(self) -> dict[str, float]:
        out = {
            'rho_y': self.rho,
            'residual_norm': self.residual_norm,
            'projected_residual_norm': self.projected_norm,
            'pv_above_norm': self.pv_above,
            'pv_below_norm': self.pv_below,
        }
        if self.restriction is not None:
            out |= {'mu': self.restriction.mu, 'nu': self.restriction.nu}
        if self.ctx is not None:
            out |= {k: v for k, v in (('alpha', self.ctx.alpha), ('beta', self.ctx.beta),
                                       ('delta', self.ctx.delta)) if v is not None}
        return out


def _span_norm(columns: list[Vector], v: Vector) -> float:
    q = orthonormal_basis(columns)
    return float(np.linalg.norm(q.conj().T @ v))


def projected_setup(
    A: HermitianOperator,
    y: ArrayLike,
    dec: SpectralDecomposition,
    lambda_choice: float | None = None,
) -> ProjectedSetup:
    """
    Build U, x = (I - P_U) y and S = span{x, y} for rho(y).

    Raises:
    - SpectrumCoincidenceError: If rho(y) lies on the spectrum and y is not an eigenvector.
    - HypothesisError: If rho(y) is at a spectrum edge so that dim S = 1.
    """
    y = as_vector(y)
    rho = rayleigh_quotient(A, y)
    r = residual(A, y)
    ynorm = math.sqrt(_sq(y))
    rnorm = math.sqrt(_sq(r))

    if rnorm <= TOLERANCES['eigenvector'] * A.rounding_scale(y):
        log.debug("projected_setup: y is an eigenvector, projected quantities vanish")
        return ProjectedSetup(rho, None, ynorm, rnorm, rnorm, rnorm, rnorm, None, None, trivial=True)

    ctx = spectrum_context(dec, rho, lambda_choice)
    if ctx.coincides:
        raise SpectrumCoincidenceError(
            f"projected_setup: rho(y) = {rho!r} lies on the spectrum but y is not an eigenvector"
        )
    above = invariant_subspace_above(dec, rho)
    below = invariant_subspace_below(dec, rho)
    if not above or not below:
        raise HypothesisError(
            'projected_setup', 'alpha < rho(y) < beta (U and its complement nonempty)',
            f"dim U = {len(above)}, dim U-perp = {len(below)}",
        )
    u = np.column_stack(above)
    x = y - u @ (u.conj().T @ y)
    try:
        R = restrict_2d(A, x, y)
    except (DegenerateSubspaceError, ZeroVectorError) as err:
        raise HypothesisError('projected_setup', 'dim span{(I - P_U) y, y} = 2', str(err)) from err

    return ProjectedSetup(
        rho = rho,
        ctx = ctx,
        y_norm = ynorm,
        residual_norm = rnorm,
        projected_norm = math.sqrt(_sq(R.project(r))),
        pv_above = _span_norm(above + [y], r),
        pv_below = _span_norm(below + [y], r),
        x = x,
        restriction = R,
    )


def improved_posteriori(
    A: HermitianOperator,
    y: ArrayLike,
    dec: SpectralDecomposition | None = None,
) -> BoundReport:
    """
    (beta - rho(y))(rho(y) - alpha) <= ||P_S r(y)||^2 / ||y||^2

    Besides the hierarchy norms and the classical rhs, the ingredient
    `symmetry_residual` records the largest change of lhs or rhs when the
    construction is repeated for -A, which yields the same S.

    Raises:
    - SpectrumCoincidenceError, HypothesisError: see `projected_setup`.

    Examples:
    >>> A = HermitianOperator.diagonal([2.0**k for k in range(64)])
    >>> report = improved_posteriori(A, [0.5**k for k in range(64)])
    >>> round(report.lhs, 12), round(report.rhs, 12)
    (0.25, 0.75)
    """
    y, _, dec = _context(A, y, dec)
    setup = projected_setup(A, y, dec)
    if setup.trivial:
        return BoundReport.evaluate('improved_posteriori', 0.0, 0.0, setup.ingredients())

    lhs, rhs = _improved_sides(setup)
    mirrored = projected_setup(A.negated(), y, dec.negated())
    mirrored_lhs, mirrored_rhs = _improved_sides(mirrored)
    symmetry = max(abs(lhs - mirrored_lhs), abs(rhs - mirrored_rhs))

    return BoundReport.evaluate(
        'improved_posteriori',
        lhs = lhs,
        rhs = rhs,
        ingredients = setup.ingredients() | {
            'classical_rhs': setup.residual_norm**2 / setup.y_norm**2,
            'symmetry_residual': symmetry,
        },
    )


def _improved_sides(setup: ProjectedSetup) -> tuple[float, float]:
    ctx = setup.ctx
    return (
        (ctx.beta - setup.rho) * (setup.rho - ctx.alpha),
        setup.projected_norm**2 / setup.y_norm**2,
    )


def improved_kato_temple(
    A: HermitianOperator,
    y: ArrayLike,
    dec: SpectralDecomposition | None = None,
    lambda_choice: float | None = None,
) -> BoundReport:
    """Kato-Temple with ||P_S r(y)|| in place of ||r(y)||; classical sides as ingredients."""
    y, _, dec = _context(A, y, dec)
    setup = projected_setup(A, y, dec, lambda_choice)
    if setup.trivial:
        return BoundReport.evaluate('improved_kato_temple', 0.0, 0.0, setup.ingredients(), lower=0.0)
    classical = setup.residual_norm**2 / setup.y_norm**2
    a, b = _kato_temple_interval(setup.ctx)
    return _kato_temple_report(
        'improved_kato_temple', setup.ctx, setup.projected_norm**2 / setup.y_norm**2,
        setup.ingredients() | {
            'classical_lower': -classical / (setup.rho - a),
            'classical_rhs': classical / (b - setup.rho),
        },
    )


def improved_gap_bound(
    A: HermitianOperator,
    y: ArrayLike,
    dec: SpectralDecomposition | None = None,
    lambda_choice: float | None = None,
) -> BoundReport:
    """|lam - rho(y)| <= ||P_S r(y)||^2 / (delta ||y||^2)"""
    y, _, dec = _context(A, y, dec)
    setup = projected_setup(A, y, dec, lambda_choice)
    if setup.trivial:
        return BoundReport.evaluate('improved_gap', 0.0, 0.0, setup.ingredients())
    return _gap_report(
        'improved_gap', setup.ctx, setup.projected_norm**2 / setup.y_norm**2,
        setup.ingredients() | {'classical_rhs': setup.residual_norm**2 / (setup.ctx.delta * setup.y_norm**2)},
    )


def improved_krylov_weinstein(
    A: HermitianOperator,
    y: ArrayLike,
    dec: SpectralDecomposition | None = None,
) -> BoundReport:
    """min over Sigma(A) of |lam - rho(y)| <= ||P_S r(y)|| / ||y||"""
    y, _, dec = _context(A, y, dec)
    setup = projected_setup(A, y, dec)
    return _krylov_weinstein_report(
        'improved_krylov_weinstein', dec, setup.rho, setup.projected_norm / setup.y_norm,
        setup.ingredients() | {'classical_rhs': setup.residual_norm / setup.y_norm},
    )


# region eigenvector bounds
@dataclass
class EigenvectorBounds:
    """
    Error bounds for the angle theta between y and x = P_X y, X the eigenspace of lam.

    `naive_sintheta_violation` is a negative control: it is True when
    sin(theta) exceeds ||P_S r(y)|| / (delta ||y||), showing that the
    projected residual may not replace r(y) in the classical sin(theta) bound.
    """
    sin2theta: BoundReport
    tantheta: BoundReport
    classical_sintheta: BoundReport
    naive_sintheta_violation: bool
    naive_rhs: float
    x: Vector

    def reports(self) -> list[BoundReport]:
        return [self.sin2theta, self.tantheta, self.classical_sintheta]


def eigenvector_error_bounds(
    A: HermitianOperator,
    y: ArrayLike,
    dec: SpectralDecomposition | None = None,
    lam: float | None = None,
) -> EigenvectorBounds:
    """
    Bounds on the angle between y and the eigenspace of `lam`.

    With lam = min Sigma(A) and beta its spectrum neighbour above rho(y):
    sin(2 theta) <= 2 / (beta - lam) ||P_S r(y)|| / ||y|| and
    tan(theta) <= ||P_S r(y)|| / ((beta - rho(y)) ||y||). For lam = max Sigma(A)
    the neighbour below plays the role of beta. For any lam the classical
    sin(theta) <= ||r(y)|| / (delta ||y||) is evaluated. Reports whose
    hypotheses fail are skipped with the reason.

    Parameters:
    - A (HermitianOperator): The operator.
    - y (ArrayLike): Approximate eigenvector.
    - dec (SpectralDecomposition | None): Decomposition of A, computed if None.
    - lam (float | None): Designated eigenvalue, default min Sigma(A).

    Returns:
    - EigenvectorBounds

    Raises:
    - HypothesisError: If lam is not an eigenvalue or P_X y = 0.
    """
    y, rho, dec = _context(A, y, dec)
    lam = dec.sigma_min if lam is None else lam
    basis = dec.eigenspace(lam)
    lam = dec.nearest(lam)
    x = basis @ (basis.conj().T @ y)
    ynorm = math.sqrt(_sq(y))
    if math.sqrt(_sq(x)) <= TOLERANCES['collinear_ratio'] * ynorm:
        raise HypothesisError('eigenvector_error_bounds', 'P_X y != 0', 'y is orthogonal to the eigenspace')

    theta = acute_angle(x, y)
    ctx = spectrum_context(dec, rho, lambda_choice=lam)
    r = residual(A, y)
    rnorm = math.sqrt(_sq(r))
    try:
        pnorm = math.sqrt(_sq(restrict_2d(A, x, y).project(r)))
    except DegenerateSubspaceError:
        pnorm = rnorm
    base = {'rho_y': rho, 'lambda': lam, 'theta': theta,
            'residual_norm': rnorm, 'projected_residual_norm': pnorm}

    cluster = dec.cluster(lam)
    extreme_min = bool(cluster[0])
    extreme_max = bool(cluster[-1]) and not extreme_min
    if extreme_min:
        neighbour = ctx.lam_above
        inside = neighbour is not None and lam <= rho < neighbour
    else:
        neighbour = ctx.lam_below
        inside = neighbour is not None and neighbour < rho <= lam
    if not (extreme_min or extreme_max):
        reason = 'lambda is not an extreme eigenvalue'
        sin2 = BoundReport.skip('sin2theta', reason)
        tan = BoundReport.skip('tantheta', reason)
    elif not inside:
        reason = f"rho(y) = {rho!r} is not between lambda and its neighbour {neighbour!r}"
        sin2 = BoundReport.skip('sin2theta', reason)
        tan = BoundReport.skip('tantheta', reason)
    else:
        ingredients = base | {'beta': neighbour}
        sin2 = BoundReport.evaluate(
            'sin2theta',
            lhs = math.sin(2 * theta),
            rhs = 2 / abs(neighbour - lam) * pnorm / ynorm,
            ingredients = ingredients,
        )
        if theta >= math.pi / 2 - TOLERANCES['right_angle']:
            tan = BoundReport.skip('tantheta', 'angle{x, y} is a right angle')
        else:
            tan = BoundReport.evaluate(
                'tantheta',
                lhs = math.tan(theta),
                rhs = pnorm / (abs(neighbour - rho) * ynorm),
                ingredients = ingredients,
            )

    if ctx.delta > 0:
        classical = BoundReport.evaluate(
            'classical_sintheta',
            lhs = math.sin(theta),
            rhs = rnorm / (ctx.delta * ynorm),
            ingredients = base | {'delta': ctx.delta},
        )
        naive_rhs = pnorm / (ctx.delta * ynorm)
    else:
        classical = BoundReport.skip('classical_sintheta', 'delta = 0')
        naive_rhs = math.nan
    naive = bool(math.sin(theta) > naive_rhs + TOLERANCES['naive_margin'])
    classical.ingredients['naive_rhs'] = naive_rhs

    return EigenvectorBounds(sin2, tan, classical, naive, naive_rhs, x)


# region catalogue
SKIPPABLE = (HypothesisError, SpectrumCoincidenceError, DegenerateSubspaceError, NotAnEigenvectorError)


def bound_catalogue(
    A: HermitianOperator,
    y: ArrayLike,
    x: ArrayLike | None = None,
    dec: SpectralDecomposition | None = None,
) -> list[BoundReport]:
    """
    Run every bound for `y` (and the a priori/mixed bounds for a reference
    eigenvector `x`); violated hypotheses become skip records.

    Raises:
    - CertificationError: For invalid input (zero or mismatched vectors).
    """
    y, rho, dec = _context(A, y, dec)
    if x is not None and as_vector(x).shape != y.shape:
        raise InputError("bound_catalogue: reference vector and vector differ in length")

    runs = [
        ('krylov_weinstein', lambda: krylov_weinstein(A, y, dec)),
        ('temple', lambda: temple(A, y, dec=dec)),
        ('kato_temple', lambda: kato_temple(A, y, dec=dec)),
        ('gap_bound', lambda: gap_bound(A, y, dec=dec)),
        ('improved_posteriori', lambda: improved_posteriori(A, y, dec)),
        ('improved_kato_temple', lambda: improved_kato_temple(A, y, dec)),
        ('improved_gap', lambda: improved_gap_bound(A, y, dec)),
        ('improved_krylov_weinstein', lambda: improved_krylov_weinstein(A, y, dec)),
    ]
    if x is not None:
        runs += [
            ('apriori_sin2', lambda: apriori_sin2(A, x, y, dec)),
            ('mixed_tan', lambda: mixed_tan(A, x, y)),
        ]

    reports = []
    for name, run in runs:
        try:
            reports.append(run())
        except SKIPPABLE as err:
            log.info("%s skipped: %s", name, err)
            reports.append(BoundReport.skip(name, str(err)))

    try:
        reports += eigenvector_error_bounds(A, y, dec).reports()
    except SKIPPABLE as err:
        log.info("eigenvector bounds skipped: %s", err)
        reports += [BoundReport.skip(name, str(err))
                    for name in ('sin2theta', 'tantheta', 'classical_sintheta')]
    return reports
