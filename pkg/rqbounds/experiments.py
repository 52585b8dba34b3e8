"""
Reproducible experiments.

davis_kahan():
    Diagonal operator diag(eps^-k) with y = (eps^k): the classical Temple rhs
    grows with n while the projected-residual bound stays at 1/4 <= 3/4.
sin_theta_counterexample():
    3x3 example where ||P_S r(y)|| = 0 although y is not an eigenvector.
invariant_subspace_tightness():
    Block-diagonal constructions attaining the mixed and a priori bounds.
random_verification():
    Seeded harness checking identities, inequalities and bounds on random
    Hermitian matrices; results are aggregated per invariant with pandas.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import partial
from typing import Any

import numpy as np
import pandas as pd
from scipy.linalg import block_diag

from rqbounds.bounds import (
    SKIPPABLE,
    BoundReport,
    apriori_sin2,
    eigenvector_error_bounds,
    gap_bound,
    improved_gap_bound,
    improved_kato_temple,
    improved_krylov_weinstein,
    improved_posteriori,
    kato_temple,
    krylov_weinstein,
    mixed_tan,
    temple,
)
from rqbounds.config import CONFIG, TOLERANCES
from rqbounds.core_linalg import (
    HermitianOperator,
    Vector,
    acute_angle,
    project_onto_span,
    rayleigh_quotient,
    residual,
    restrict_2d,
)
from rqbounds.errors import InputError
from rqbounds.identities import (
    EqualityCase,
    IdentityPair,
    double_angle_pair,
    eigenvector_identities,
    plain_sine_bound,
    remark_identity,
    residual_gap_identity,
    sin2_identity,
    sine_bounds,
    tangent_bounds,
)
from rqbounds.spectral import (
    SpectralDecomposition,
    compression_eigenvalues,
    eigendecompose,
    invariant_subspace_above,
    spectrum_context,
)
from rqbounds.utils import Stopwatch, add_keyword_defaults, add_to_docstring


log = logging.getLogger(__name__)

DEFAULTS = CONFIG['defaults']


class Field(str, Enum):
    REAL = 'real'
    COMPLEX = 'complex'


class Suite(str, Enum):
    IDENTITIES = 'identities'
    FULL = 'full'


@dataclass
class ExperimentResult:
    """
    Outcome of one experiment.

    `passed` is the conjunction of `checks`. `table` holds per-invariant
    aggregates for the verification harness.
    """
    name: str
    scalars: dict[str, float] = field(default_factory=dict)
    reports: list[BoundReport] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)
    notes: str = ''
    table: pd.DataFrame | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failed_checks(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]


def _close(value: float, target: float, tol: float) -> bool:
    return abs(value - target) <= tol


# region davis-kahan
def davis_kahan_problem(n: int, eps: float, shifted: bool = False) -> tuple[HermitianOperator, Vector]:
    """A = diag(eps^-k), k = 0..n-1, and y = (eps^k) or, shifted, (0, 1, eps, eps^2, ...)."""
    k = np.arange(n, dtype=np.float64)
    A = HermitianOperator.diagonal(eps ** -k)
    y = eps ** k
    if shifted:
        y = np.concatenate([[0.0], y[:-1]])
    return A, y


def _temple_rhs(n: int, eps: float) -> float:
    A, y = davis_kahan_problem(n, eps)
    return temple(A, y).rhs


CLOSED_FORMS = """\
Unshifted closed forms, valid when eps + eps^2 < 1:
rho(y) = (1 + eps) / (1 + eps^n), alpha = 1, beta = 1/eps,
lhs -> 1 - eps - eps^2, rhs -> 1 - eps^2."""


@add_to_docstring(CLOSED_FORMS)
@add_keyword_defaults(DEFAULTS['davis_kahan'])
def davis_kahan(n: int, eps: float, shifted: bool) -> ExperimentResult:
    """
    Truncated diagonal example comparing Temple's bound with the projected-residual bound.

    Parameters:
    - n (int): Truncation size, n >= 4. Default from config.
    - eps (float): Ratio in (0, 1). Default from config.
    - shifted (bool): Use y = (0, 1, eps, ...), where x = (I - P_U) y is not an
        eigenvector for the smallest eigenvalue. Default from config.

    Returns:
    - ExperimentResult

    Raises:
    - InputError: If n < 4 or eps is outside (0, 1).
    """
    if int(n) != n or n < 4:
        raise InputError(f"davis_kahan: n must be an integer >= 4, got {n!r}")
    if not 0 < eps < 1:
        raise InputError(f"davis_kahan: eps must lie in (0, 1), got {eps!r}")
    n = int(n)
    stopwatch = Stopwatch('davis_kahan')

    A, y = davis_kahan_problem(n, eps, shifted)
    dec = eigendecompose(A)
    classical = temple(A, y, dec=dec)
    improved = improved_posteriori(A, y, dec)
    improved_kw = improved_krylov_weinstein(A, y, dec)
    reports = [classical, improved, improved_kw]

    ing = improved.ingredients
    rho = ing['rho_y']
    scalars = {
        'n': float(n),
        'eps': eps,
        'rho_y': rho,
        'alpha': ing['alpha'],
        'beta': ing['beta'],
        'mu': ing['mu'],
        'nu': ing['nu'],
        'lhs': improved.lhs,
        'rhs': improved.rhs,
        'classical_rhs': classical.rhs,
        'residual_norm': ing['residual_norm'],
        'projected_residual_norm': ing['projected_residual_norm'],
        'pv_above_norm': ing['pv_above_norm'],
        'pv_below_norm': ing['pv_below_norm'],
    }
    checks = {
        'temple_holds': classical.holds,
        'improved_holds': improved.holds,
        'improved_krylov_weinstein_holds': improved_kw.holds,
        'improved_dominates': improved.rhs <= classical.rhs,
        'symmetry': ing['symmetry_residual'] <= TOLERANCES['bound'] * improved.scale,
    }
    notes = ''

    if shifted:
        eigenspace = dec.eigenspace(dec.sigma_min)
        scalars['eigenspace_projection_norm'] = float(np.linalg.norm(eigenspace.conj().T @ y))
        notes = 'P_X y = 0 for the smallest eigenvalue: only the general construction applies.'
    else:
        e1 = np.zeros(n)
        e1[0] = 1.0
        mixed = mixed_tan(A, e1, y)
        reports.append(mixed)
        scalars['mixed_projected'] = mixed.ingredients['projected']

        checks['rho_closed_form'] = _close(rho, (1 + eps) / (1 + eps**n), 1e-14 * rho)

        if eps + eps**2 < 1:
            # alpha = 1: the part of y below rho is the first coordinate alone
            checks['pv_above_is_full_residual'] = _close(
                ing['pv_above_norm'], ing['residual_norm'], 1e-10 * ing['residual_norm'])
            checks['pv_below_is_projected'] = _close(
                ing['pv_below_norm'], ing['projected_residual_norm'], 1e-10 * max(1.0, ing['residual_norm']))
            tol = 10 * eps**n + 1e-12
            checks['lhs_limit'] = _close(improved.lhs, 1 - eps - eps**2, tol)
            checks['rhs_limit'] = _close(improved.rhs, 1 - eps**2, tol)
            checks['rho_limit'] = _close(rho, 1 + eps, tol)
        else:
            notes = 'eps + eps^2 >= 1: the limits 1 - eps - eps^2 and 1 - eps^2 do not apply.'

        growth = {m: _temple_rhs(m, eps) for m in (8, 16, 32, 64)}
        scalars |= {f'classical_rhs_n{m}': value for m, value in growth.items()}
        values = list(growth.values())
        checks['classical_rhs_increasing'] = all(a < b for a, b in zip(values, values[1:]))

    stopwatch.total()
    return ExperimentResult('davis_kahan', scalars, reports, checks, notes)


# region sin-theta counterexample
def sin_theta_counterexample() -> ExperimentResult:
    """
    A = diag(1, 0, -1), y = (1, 1, 1), lam = 0 with eigenvector x = (0, 1, 0).

    r(y) = (1, 0, -1) is orthogonal to S = span{x, y}, so the projected
    residual vanishes while sin^2 theta = 2/3. The classical sin(theta)
    bound holds with equality; substituting P_S r(y) for r(y) fails.
    """
    A = HermitianOperator.diagonal([1.0, 0.0, -1.0])
    y = np.ones(3)
    x = np.array([0.0, 1.0, 0.0])
    dec = eigendecompose(A)

    result = eigenvector_error_bounds(A, y, dec, lam=0.0)
    classical = result.classical_sintheta
    theta = acute_angle(x, y)
    r = residual(A, y)
    projected = float(np.linalg.norm(project_onto_span([x, y], r)))
    delta = spectrum_context(dec, rayleigh_quotient(A, y), lambda_choice=0.0).delta
    residual_ratio = float(np.vdot(r, r).real / np.vdot(y, y).real)

    scalars = {
        'rho_y': rayleigh_quotient(A, y),
        'projected_residual_norm': projected,
        'sin2_theta': math.sin(theta) ** 2,
        'residual_ratio': residual_ratio,
        'delta': delta,
        'sin_theta': classical.lhs,
        'classical_rhs': classical.rhs,
        'naive_rhs': result.naive_rhs,
    }
    checks = {
        'projected_residual_vanishes': projected <= 1e-12,
        'sin2_theta': _close(scalars['sin2_theta'], 2 / 3, 1e-12),
        'residual_ratio': _close(residual_ratio, 2 / 3, 1e-12),
        'delta': _close(delta, 1.0, 1e-12),
        'classical_equality': classical.holds and _close(classical.lhs, classical.rhs, 1e-12),
        'naive_violated': result.naive_sintheta_violation,
    }
    return ExperimentResult(
        'sin_theta', scalars, [classical, krylov_weinstein(A, y, dec)], checks,
        notes = 'The projected residual may not replace r(y) in the sin(theta) bound.',
    )


# region tightness
@add_keyword_defaults(DEFAULTS['tightness'])
def invariant_subspace_tightness(seed: int = 0, dim: int = 6) -> ExperimentResult:
    """
    Block-diagonal A = diag(B, C) with a random symmetric 2x2 block B.

    x is an eigenvector of B and y a random vector of the block, both
    extended by zeros, so S = span{x, y} is A-invariant and the mixed bound is
    attained. When C lies strictly between the eigenvalues of B the block
    carries both spectrum extremes and the a priori bound is attained too.
    """
    if dim < 3:
        raise InputError(f"invariant_subspace_tightness: dim must be >= 3, got {dim!r}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((2, 2))
    block = HermitianOperator.dense((g + g.T) / 2)
    block_dec = eigendecompose(block)
    low, high = block_dec.sigma_min, block_dec.sigma_max

    outside = rng.standard_normal(dim - 2) * 3 + (high - low)
    inside = rng.uniform(low, high, dim - 2)
    A_mixed = HermitianOperator.dense(block_diag(block.data, np.diag(outside)))
    A_extreme = HermitianOperator.dense(block_diag(block.data, np.diag(inside)))

    x = np.concatenate([block_dec.eigenvectors[:, 0], np.zeros(dim - 2)])
    y = np.concatenate([rng.standard_normal(2), np.zeros(dim - 2)])

    mixed = mixed_tan(A_mixed, x, y)
    apriori = apriori_sin2(A_extreme, x, y)
    degenerate = mixed_tan(A_mixed, x, x)

    checks = {
        'mixed_invariant': mixed.equality,
        'mixed_equality': _close(mixed.lhs, mixed.rhs, TOLERANCES['bound'] * mixed.scale),
        'apriori_equality': apriori.equality,
        'degenerate_zero': degenerate.lhs <= 1e-12 and degenerate.rhs <= 1e-12,
    }
    scalars = {
        'block_low': low,
        'block_high': high,
        'mixed_lhs': mixed.lhs,
        'mixed_rhs': mixed.rhs,
        'apriori_lhs': apriori.lhs,
        'apriori_rhs': apriori.rhs,
    }
    return ExperimentResult('tightness', scalars, [mixed, apriori, degenerate], checks)


# region random verification
class _Recorder:
    """Collects one record per checked invariant; `slack` < -rtol is a violation."""

    def __init__(self, trial: int, dim: int, rtol: float):
        self.trial = trial
        self.dim = dim
        self.rtol = rtol
        self.records: list[dict[str, Any]] = []

    def _add(self, invariant: str, kind: str, slack: float) -> None:
        self.records.append({
            'trial': self.trial,
            'dim': self.dim,
            'invariant': invariant,
            'kind': kind,
            'slack': slack,
            'passed': bool(slack >= -self.rtol),
        })

    def identity(self, invariant: str, pair: IdentityPair, norm: float) -> None:
        self._add(invariant, 'identity', -pair.gap / norm)

    def inequality(self, invariant: str, margin: float, norm: float) -> None:
        self._add(invariant, 'inequality', margin / norm)

    def flag(self, invariant: str, ok: bool) -> None:
        self._add(invariant, 'flag', 0.0 if ok else -math.inf)


def _draw_vector(rng: np.random.Generator, n: int, field: Field) -> Vector:
    v = rng.standard_normal(n)
    if field is Field.COMPLEX:
        v = v + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def _draw_operator(rng: np.random.Generator, n: int, field: Field) -> HermitianOperator:
    g = rng.standard_normal((n, n))
    if field is Field.COMPLEX:
        g = g + 1j * rng.standard_normal((n, n))
    return HermitianOperator.dense((g + g.conj().T) / 2)


def _check_identities(rec: _Recorder, rng, A: HermitianOperator, x: Vector, y: Vector, field: Field) -> dict[str, str]:
    anorm = max(1.0, A.norm_fro)
    R = restrict_2d(A, x, y)
    theta = acute_angle(x, y)
    tan_norm = anorm * max(1.0, math.tan(theta))

    coef = _draw_vector(rng, 2, field)
    probe = coef[0] * x + coef[1] * y
    probe = probe / np.linalg.norm(probe)
    rho_v = rayleigh_quotient(A, probe)
    t1, t2 = acute_angle(probe, R.u1), acute_angle(probe, R.u2)

    rec.identity('residual_gap', residual_gap_identity(A, x, y, probe), anorm**2)
    rec.identity('sin2', sin2_identity(A, x, y, probe), anorm)
    rec.identity('double_angle', IdentityPair(*double_angle_pair(R, probe)), anorm)
    rec.identity('gap_sine_u1', IdentityPair(R.mu - rho_v, R.gap * math.sin(t1) ** 2), anorm)
    rec.identity('gap_sine_u2', IdentityPair(rho_v - R.nu, R.gap * math.sin(t2) ** 2), anorm)
    rec.identity('cos_sin_complement', IdentityPair(math.cos(t1), math.sin(t2)), 1.0)
    rec.identity('restricted_rayleigh', IdentityPair(rho_v, R.rayleigh_quotient(probe)), max(1.0, abs(rho_v)))
    lifted = float(np.linalg.norm(R.project(residual(A, probe)) - R.residual(probe)))
    rec.identity('restricted_residual', IdentityPair(lifted, 0.0), anorm)
    for label, pair in zip(('remark_tangent', 'remark_line'), remark_identity(A, x, y).pairs()):
        rec.identity(label, pair, tan_norm)

    tb = tangent_bounds(A, x, y)
    rec.identity('core_identity', IdentityPair(tb.core_identity_residual, 0.0), anorm)
    rec.inequality('tangent_sandwich',
                   min(tb.delta_rho - tb.xi_minus, tb.xi_plus - tb.delta_rho), tan_norm)
    if tb.equality_case is EqualityCase.LOWER_ATTAINED:
        rec.identity('tangent_attained', IdentityPair(tb.delta_rho, tb.xi_minus), tan_norm)
    elif tb.equality_case is EqualityCase.UPPER_ATTAINED:
        rec.identity('tangent_attained', IdentityPair(tb.delta_rho, tb.xi_plus), tan_norm)
    if field is Field.REAL:
        rec.flag('real_not_strict', tb.equality_case is not EqualityCase.STRICT_BOTH)

    sb = sine_bounds(A, x, y)
    rec.inequality('sine_sandwich', min(sb.delta_rho - sb.psi_minus, sb.psi_plus - sb.delta_rho), anorm)
    rec.identity('sine_exact', IdentityPair(sb.delta_rho, sb.identity_value), anorm)
    rec.identity('sine_cross_minus', IdentityPair(sb.psi_minus, sb.cross_check[0]), anorm)
    rec.identity('sine_cross_plus', IdentityPair(sb.psi_plus, sb.cross_check[1]), anorm)
    if sb.equality_case is EqualityCase.LOWER_ATTAINED:
        rec.identity('sine_attained', IdentityPair(sb.delta_rho, sb.psi_minus), anorm)
    elif sb.equality_case is EqualityCase.UPPER_ATTAINED:
        rec.identity('sine_attained', IdentityPair(sb.delta_rho, sb.psi_plus), anorm)

    tx, ty, s = acute_angle(x, R.u1), acute_angle(y, R.u1), math.sin(theta)
    rec.inequality('angle_metric', min(s - abs(math.sin(tx - ty)), math.sin(tx + ty) - s), 1.0)
    plain = plain_sine_bound(A, x, y)
    rec.inequality('plain_sine', plain.rhs - plain.lhs, anorm)

    return {'tangent_case': tb.equality_case.value, 'sine_case': sb.equality_case.value}


def _check_bounds(rec: _Recorder, A: HermitianOperator, dec: SpectralDecomposition, y: Vector) -> bool:
    anorm = max(1.0, A.norm_fro)
    rec.identity('eigensolver_reconstruction', IdentityPair(dec.reconstruction_error(A), 0.0), anorm * 0.1)
    rec.identity('eigensolver_orthogonality', IdentityPair(dec.orthogonality_error(), 0.0), 1e-3 * dec.dim)

    try:
        kw = krylov_weinstein(A, y, dec)
        tp = temple(A, y, dec=dec)
        kt = kato_temple(A, y, dec=dec)
        gb = gap_bound(A, y, dec=dec)
        ip = improved_posteriori(A, y, dec)
        ikt = improved_kato_temple(A, y, dec)
        ig = improved_gap_bound(A, y, dec)
        ikw = improved_krylov_weinstein(A, y, dec)
    except SKIPPABLE as err:
        log.debug("trial %d: bounds skipped (%s)", rec.trial, err)
        return False

    for report in (kw, tp, kt, gb, ip, ikt, ig, ikw):
        rec.flag(f'holds_{report.bound_name}', report.holds)
    rec.flag('classical_chain', not tp.holds or (kw.holds and gb.holds))

    rec.inequality('dominance_temple', tp.rhs - ip.rhs, max(1.0, tp.rhs))
    rec.inequality('dominance_krylov_weinstein', kw.rhs - ikw.rhs, max(1.0, kw.rhs))
    rec.inequality('dominance_kato_temple_upper', kt.rhs - ikt.rhs, max(1.0, kt.rhs))
    rec.inequality('dominance_kato_temple_lower', ikt.lower - kt.lower, max(1.0, abs(kt.lower)))
    rec.inequality('dominance_gap', gb.rhs - ig.rhs, max(1.0, gb.rhs))

    ing = ip.ingredients
    full = max(1.0, ing['residual_norm'])
    rec.inequality('hierarchy_above', ing['pv_above_norm'] - ing['projected_residual_norm'], full)
    rec.inequality('hierarchy_below', ing['pv_below_norm'] - ing['projected_residual_norm'], full)
    rec.inequality('hierarchy_full_above', ing['residual_norm'] - ing['pv_above_norm'], full)
    rec.inequality('hierarchy_full_below', ing['residual_norm'] - ing['pv_below_norm'], full)
    rec.identity('negation_symmetry', IdentityPair(ing['symmetry_residual'], 0.0), ip.scale)
    _check_compression(rec, A, dec, y)
    return True


def _check_compression(rec: _Recorder, A: HermitianOperator, dec: SpectralDecomposition, y: Vector) -> None:
    """V = U + span{y}: lambda_min(A_V) = rho((I - P_U) y), simple and below rho(y)."""
    rho = rayleigh_quotient(A, y)
    above = invariant_subspace_above(dec, rho)
    if not above:
        return
    anorm = max(1.0, A.norm_fro)
    x = y - project_onto_span(above, y)
    rho_x = rayleigh_quotient(A, x)
    lowest = compression_eigenvalues(A, [*above, y])

    rec.inequality('variational_projection', rho - rho_x, anorm)
    rec.identity('compression_minimum', IdentityPair(float(lowest[0]), rho_x), anorm)
    rec.flag('compression_minimum_simple', lowest[1] - lowest[0] > dec.coincide_tol(lowest[0]))
    rec.flag('compression_below_rho', lowest[0] < rho)


def _check_extreme(rec: _Recorder, rng, A: HermitianOperator, dec: SpectralDecomposition, field: Field) -> None:
    """Probe near the smallest eigenvector, where x = P_X y is the exact setting."""
    mask = dec.cluster(dec.sigma_min)
    if mask.all():
        return
    second = float(dec.eigenvalues[~mask][0])
    basis = dec.eigenvectors[:, mask]

    w = _draw_vector(rng, A.dim, field)
    w = w - basis @ (basis.conj().T @ w)
    w = w / np.linalg.norm(w)
    v = basis[:, 0]
    t = 0.3
    for _ in range(20):
        y = v + t * w
        if rayleigh_quotient(A, y) < second - dec.coincide_tol(second):
            break
        t /= 2
    else:
        return

    x = basis @ (basis.conj().T @ y)
    anorm = max(1.0, A.norm_fro)
    R = restrict_2d(A, x, y)
    rec.identity('extreme_nu', IdentityPair(R.nu, dec.sigma_min), anorm)
    rec.inequality('extreme_mu', R.mu - second, anorm)

    ei = eigenvector_identities(A, x, y)
    if ei.tan_theta is not None and ei.tan_from_residual is not None:
        rec.identity('tan_chain', IdentityPair(ei.tan_theta, ei.tan_from_residual), max(1.0, ei.tan_theta))
    rec.identity('eigenvector_sine2', IdentityPair(ei.delta_rho, ei.sine2_gap), anorm)

    eb = eigenvector_error_bounds(A, y, dec)
    for report in eb.reports():
        if not report.skipped:
            rec.flag(f'holds_{report.bound_name}', report.holds)


def _run_trial(
    trial: int,
    seed: int,
    dim_min: int,
    dim_max: int,
    field: Field,
    rtol: float,
    suite: Suite,
) -> tuple[list[dict[str, Any]], dict[str, Any]]:
    rng = np.random.default_rng([seed, trial])
    n = int(rng.integers(dim_min, dim_max + 1))
    rec = _Recorder(trial, n, rtol)

    A = _draw_operator(rng, n, field)
    x, y = _draw_vector(rng, n, field), _draw_vector(rng, n, field)
    redraws = 0
    while True:
        theta = acute_angle(x, y)
        if math.sin(theta) >= TOLERANCES['collinear_ratio'] and theta < math.pi / 2 - TOLERANCES['right_angle']:
            break
        redraws += 1
        log.warning("trial %d: degenerate draw, redrawing", trial)
        x, y = _draw_vector(rng, n, field), _draw_vector(rng, n, field)

    summary = {'trial': trial, 'dim': n, 'redraws': redraws}
    summary |= _check_identities(rec, rng, A, x, y, field)
    if suite is Suite.FULL:
        dec = eigendecompose(A)
        summary['bounds_evaluated'] = _check_bounds(rec, A, dec, y)
        _check_extreme(rec, rng, A, dec, field)
    return rec.records, summary


@add_keyword_defaults(DEFAULTS['verify'])
def random_verification(
    trials: int,
    dim_min: int,
    dim_max: int,
    field: str,
    seed: int,
    workers: int,
    rtol: float,
    suite: str,
) -> ExperimentResult:
    """
    Run the randomized invariant suite.

    Each trial draws a Gaussian Hermitian matrix and Gaussian unit vectors
    from `numpy.random.default_rng([seed, trial])`, so the outcome does not
    depend on `workers`. Slacks are normalized by max(1, ||A||_F) (or its
    square for quadratic quantities); an invariant is violated when its
    slack drops below -rtol.

    Parameters:
    - trials (int): Number of trials, >= 1.
    - dim_min, dim_max (int): Dimension range, 2 <= dim_min <= dim_max.
    - field (str): 'real' or 'complex'.
    - seed (int): Base seed.
    - workers (int): Processes; 1 runs in-process.
    - rtol (float): Relative tolerance.
    - suite (str): 'identities' checks the identities and the tangent and
        sine sandwiches only; 'full' also decomposes A and checks every bound.

    Returns:
    - ExperimentResult: `table` has one row per invariant with columns
        kind, trials, violations and worst_slack.

    Raises:
    - InputError: For invalid parameters.
    """
    if trials < 1:
        raise InputError(f"random_verification: trials must be >= 1, got {trials!r}")
    if not 2 <= dim_min <= dim_max:
        raise InputError(f"random_verification: need 2 <= dim_min <= dim_max, got {dim_min}..{dim_max}")
    try:
        field = Field(field)
    except ValueError as err:
        raise InputError(f"random_verification: unknown field {field!r}") from err
    try:
        suite = Suite(suite)
    except ValueError as err:
        raise InputError(f"random_verification: unknown suite {suite!r}") from err

    stopwatch = Stopwatch('random_verification')
    run = partial(_run_trial, seed=seed, dim_min=dim_min, dim_max=dim_max, field=field, rtol=rtol, suite=suite)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, range(trials), chunksize=max(1, trials // (4 * workers))))
    else:
        outcomes = [run(trial) for trial in range(trials)]
    stopwatch.split('trials')

    records = pd.DataFrame.from_records([r for rs, _ in outcomes for r in rs])
    summaries = pd.DataFrame.from_records([s for _, s in outcomes])

    table = (
        records
        .groupby('invariant', sort=True)
        .agg(
            kind = ('kind', 'first'),
            trials = ('passed', 'size'),
            violations = ('passed', lambda s: int((~s).sum())),
            worst_slack = ('slack', 'min'),
        )
    )
    identities = table[table['kind'] == 'identity']
    checks = {name: bool(row.violations == 0) for name, row in table.iterrows()}
    scalars = {
        'trials': float(trials),
        'violations': float(table['violations'].sum()),
        'worst_identity_residual': float(-identities['worst_slack'].min()) if len(identities) else 0.0,
        'strict_both_frequency': float((summaries['tangent_case'] == EqualityCase.STRICT_BOTH.value).mean()),
        'sine_strict_both_frequency': float((summaries['sine_case'] == EqualityCase.STRICT_BOTH.value).mean()),
        'redraws': float(summaries['redraws'].sum()),
    }
    if suite is Suite.FULL:
        scalars['bounds_skipped'] = float((~summaries['bounds_evaluated']).sum())
    stopwatch.total()
    return ExperimentResult(
        'verify', scalars, [], checks,
        notes = f"suite={suite.value} field={field.value} dims={dim_min}..{dim_max} seed={seed}",
        table = table,
    )
