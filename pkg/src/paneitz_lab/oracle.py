"""Determinant oracle for the boundary eigenvalues, plus residual checks.

The oracle works from the general kernel of the projected interior operator
and imposes the boundary conditions as a small linear system; an eigenvalue
is a value of ``lam`` where that system is singular. Nothing here uses the
closed-form quadratic coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import DomainError, NumericalFailure
from .geometry import AnnulusModel, BallModel, CylinderModel, ModeIndex, as_mode
from .numerics import RootSpec, bracket_scan, brent_root
from .profiles import Basis, BasisFunction, basis_functions
from .spectra import Branch, EigenPair

_EPS = np.finfo(float).eps

Model = Union[AnnulusModel, BallModel]


class Domain(str, Enum):
    ANNULUS = "annulus"
    BALL = "ball"
    ZERO_MODE = "zero-mode"


def solution_basis(mode, domain) -> tuple[BasisFunction, ...]:
    """Kernel of ``(d_tt - (ell+2)^2)(d_tt - ell^2)`` admissible on ``domain``.

    The ball keeps only the two functions that stay bounded as ``t -> inf``.
    """
    ell = as_mode(mode).ell
    domain = Domain(domain)
    if domain is Domain.BALL:
        if ell == 0:
            raise DomainError("the bounded ell=0 ball kernel is the constant alone")
        return basis_functions(Basis.DECAYING_BALL, ell)
    if domain is Domain.ZERO_MODE and ell != 0:
        raise DomainError("the zero-mode domain requires ell = 0")
    if ell == 0:
        return basis_functions(Basis.AFFINE_0, 0)
    return basis_functions(Basis.HYPERBOLIC, ell)


def _matrix_basis(ell: int, model) -> tuple[BasisFunction, ...]:
    # Same span as solution_basis, with growing exponentials shifted to peak
    # at t = tau so every column is O(1) on [0, tau].
    if isinstance(model, BallModel):
        return solution_basis(ell, Domain.BALL)
    if not isinstance(model, AnnulusModel):
        raise DomainError(f"the determinant oracle supports ball and annulus models, got {model!r}")
    tau = model.tau
    if ell == 0:
        return (
            BasisFunction("poly", power=0),
            BasisFunction("poly", power=1),
            BasisFunction("exp", 2.0, shift=tau),
            BasisFunction("exp", -2.0),
        )
    return (
        BasisFunction("exp", float(ell), shift=tau),
        BasisFunction("exp", -float(ell)),
        BasisFunction("exp", float(ell + 2), shift=tau),
        BasisFunction("exp", -float(ell + 2)),
    )


@dataclass(frozen=True)
class BoundaryMatrix:
    """Boundary conditions applied to a kernel basis, at a trial eigenvalue.

    Annulus rows: ``u'(0)``, ``u'(tau)``, ``B3 u(0)/alpha - lam u(0)`` and
    ``-B3 u(tau)/(1-alpha) - lam u(tau)``, with ``B3 = d_ttt - (3 mu + 3) d_t``
    and the sign flip for the reversed normal at the inner sphere. Ball rows:
    ``u'(0)`` and ``B3 u(0) - lam u(0)``.

    Columns are the growing exponentials scaled by ``exp(-k tau)``; those
    positive factors are recorded in ``column_log_scales``.
    """

    entries: np.ndarray
    ell: ModeIndex
    lam: float
    model: Model
    column_log_scales: tuple[float, ...]


@lru_cache(maxsize=256)
def _boundary_parts(ell: int, model) -> tuple[tuple, tuple, tuple]:
    # The matrix is affine in lam: entries = fixed - lam * values.
    g = 3.0 * ell * (ell + 2) + 3.0
    basis = _matrix_basis(ell, model)

    def b3(phi, t):
        return phi(t, 3) - g * phi(t, 1)

    if isinstance(model, BallModel):
        fixed = ([phi(0.0, 1) for phi in basis], [b3(phi, 0.0) for phi in basis])
        values = ([0.0] * 2, [phi(0.0) for phi in basis])
        scales = (0.0, 0.0)
    elif isinstance(model, AnnulusModel):
        tau, alpha = model.tau, model.alpha
        fixed = (
            [phi(0.0, 1) for phi in basis],
            [phi(tau, 1) for phi in basis],
            [b3(phi, 0.0) / alpha for phi in basis],
            [-b3(phi, tau) / (1.0 - alpha) for phi in basis],
        )
        values = ([0.0] * 4, [0.0] * 4, [phi(0.0) for phi in basis], [phi(tau) for phi in basis])
        scales = tuple(-phi.rate * phi.shift if phi.kind == "exp" else 0.0 for phi in basis)
    else:
        raise DomainError(f"the determinant oracle supports ball and annulus models, got {model!r}")
    fixed = tuple(tuple(float(x) for x in row) for row in fixed)
    values = tuple(tuple(float(x) for x in row) for row in values)
    if not all(math.isfinite(x) for row in fixed + values for x in row):
        raise NumericalFailure(f"boundary matrix overflowed at ell={ell}")
    return fixed, values, scales


def _rows(ell, model, lam):
    fixed, values, _ = _boundary_parts(ell, model)
    return [[f - lam * v for f, v in zip(fr, vr)] for fr, vr in zip(fixed, values)]


def boundary_matrix(mode, model: Model, lam: float) -> BoundaryMatrix:
    mode = as_mode(mode)
    if not math.isfinite(lam):
        raise DomainError(f"trial eigenvalue must be finite, got {lam}")
    entries = np.array(_rows(mode.ell, model, float(lam)), dtype=float)
    if not np.all(np.isfinite(entries)):
        raise NumericalFailure(f"boundary matrix overflowed at ell={mode.ell}, lam={lam}")
    return BoundaryMatrix(entries, mode, float(lam), model, _boundary_parts(mode.ell, model)[2])


def _cofactor_det(m) -> float:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0.0
    for j in range(n):
        if m[0][j] == 0.0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1.0) ** j * m[0][j] * _cofactor_det(minor)
    return total


def char_determinant(mode, model: Model, lam: float) -> float:
    """Determinant of :func:`boundary_matrix`, by cofactor expansion."""
    mode = as_mode(mode)
    if not math.isfinite(lam):
        raise DomainError(f"trial eigenvalue must be finite, got {lam}")
    det = _cofactor_det(_rows(mode.ell, model, float(lam)))
    if not math.isfinite(det):
        raise NumericalFailure(f"characteristic determinant overflowed at lam={lam}")
    return det


def _hadamard_bound(mode, model, lam) -> float:
    entries = boundary_matrix(mode, model, lam).entries
    return float(np.prod(np.linalg.norm(entries, axis=1)))


@dataclass
class OracleResult(list):
    """Sorted roots; ``failures`` lists brackets whose refinement failed."""

    def __init__(self, roots=(), failures=()):
        super().__init__(sorted(roots))
        self.failures = list(failures)


def _refine_dip(f, lo, mid, hi, f_mid, spec, mode, model):
    # f keeps one sign on [lo, hi] but |f| dips at mid: find the extremum and
    # check whether the dip touches or crosses zero.
    width = hi - lo
    h = 1e-3 * width

    def slope(x):
        return f(x + h) - f(x - h)

    s_lo, s_hi = slope(lo + h), slope(hi - h)
    if s_lo * s_hi >= 0:
        return []
    x_ext = brent_root(slope, lo + h, hi - h, spec)
    f_ext = f(x_ext)
    if f_ext * f_mid < 0:
        return [brent_root(f, lo, x_ext, spec), brent_root(f, x_ext, hi, spec)]
    if abs(f_ext) <= 64.0 * _EPS * _hadamard_bound(mode, model, x_ext):
        return [x_ext, x_ext]
    return []


def oracle_eigenvalues(
    mode,
    model: Model,
    search_max: float,
    grid_points: int = 512,
    *,
    search_min: float | None = None,
    spec: RootSpec = RootSpec(),
) -> OracleResult:
    """Determinant roots in ``(0, search_max]``, ascending, with multiplicity.

    The determinant is sampled on ``grid_points`` log-spaced points from
    ``search_min`` (default ``1e-9 * search_max``) to ``search_max``. Sign
    changes are refined with Brent's method. A cell pair where ``|det|`` dips
    without a sign change is searched for its extremum, which resolves two
    roots closer together than the grid spacing; a dip that touches zero to
    rounding accuracy is reported as a double root.
    """
    mode = as_mode(mode)
    if not search_max > 0:
        raise DomainError("search_max must be positive")
    if grid_points < 16:
        raise DomainError("grid_points must be at least 16")
    lo = 1e-9 * search_max if search_min is None else search_min
    if not 0 < lo < search_max:
        raise DomainError("search_min must lie in (0, search_max)")
    grid = np.geomspace(lo, search_max, grid_points)
    cache: dict[float, float] = {}

    def f(lam):
        if lam not in cache:
            cache[lam] = char_determinant(mode, model, lam)
        return cache[lam]

    roots: list[float] = []
    failures: list[tuple[float, float]] = []
    for a, b in bracket_scan(f, grid):
        if a == b:
            roots.append(a)
            continue
        try:
            roots.append(brent_root(f, a, b, spec))
        except NumericalFailure:
            failures.append((a, b))
    values = [f(float(g)) for g in grid]
    for i in range(1, len(grid) - 1):
        y0, y1, y2 = values[i - 1], values[i], values[i + 1]
        if y0 * y1 <= 0 or y1 * y2 <= 0:
            continue
        if abs(y1) < abs(y0) and abs(y1) < abs(y2):
            try:
                roots.extend(
                    _refine_dip(f, float(grid[i - 1]), float(grid[i]), float(grid[i + 1]), y1, spec, mode, model)
                )
            except NumericalFailure:
                failures.append((float(grid[i - 1]), float(grid[i + 1])))
    return OracleResult(roots, failures)


# ---------------------------------------------------------------------------
# residual checks


@dataclass(frozen=True)
class ResidualReport:
    """Relative residuals of an eigenpair.

    ``ode`` is the finite-difference residual of the interior equation;
    ``boundary_derivative`` holds ``|u'|`` at each boundary point and
    ``eigen_relation`` the mismatch in ``B3 u = lam u`` there. Cylinder pairs
    have no boundary, so both tuples are empty.
    """

    ode: float
    boundary_derivative: tuple[float, ...]
    eigen_relation: tuple[float, ...]
    step: float

    @property
    def max_boundary(self) -> float:
        return max(self.boundary_derivative, default=0.0)

    @property
    def max_eigen_relation(self) -> float:
        return max(self.eigen_relation, default=0.0)


def _ratio(num, den):
    if num == 0.0:
        return 0.0
    return num / den if den > 0 else math.inf


def residual_check(
    pair: EigenPair, model, sample_count: int = 32, *, step_factor: float = 0.05
) -> ResidualReport:
    """Residuals of ``pair`` on ``model``.

    The profile is sampled at ``sample_count`` uniform points of the model's
    ``t`` range (``[0, tau]``, ``[0, period]``, or ``[0, 1]`` for the ball).
    Second and fourth derivatives come from centered differences with one
    Richardson halving; boundary terms use analytic derivatives.

    The difference step is ``step_factor / k`` with ``k`` the largest
    exponential rate in the profile, capped at ``length / (16 sample_count)``
    when that is larger. Residuals are measured against the summed magnitudes
    of the profile's terms, the scale at which evaluating the profile rounds.
    """
    if sample_count < 8:
        raise DomainError("sample_count must be at least 8")
    u = pair.profile
    ell = pair.mode.ell
    lam = pair.value
    if isinstance(model, AnnulusModel):
        length = model.tau
    elif isinstance(model, CylinderModel):
        length = model.period
    elif isinstance(model, BallModel):
        length = 1.0
    else:
        raise DomainError(f"unsupported model {model!r}")
    ts = np.linspace(0.0, length, sample_count)
    rate = max((abs(phi.rate) for phi in u.functions), default=0.0)
    h = max(length / (16.0 * sample_count), step_factor / max(rate, 1.0))

    def d2(step):
        return (u(ts + step) - 2.0 * u(ts) + u(ts - step)) / step**2

    def d4(step):
        return (
            u(ts + 2 * step) - 4.0 * u(ts + step) + 6.0 * u(ts) - 4.0 * u(ts - step) + u(ts - 2 * step)
        ) / step**4

    u2 = (4.0 * d2(h / 2) - d2(h)) / 3.0
    u4 = (4.0 * d4(h / 2) - d4(h)) / 3.0
    sum_sq = float((ell + 2) ** 2 + ell**2)
    prod_sq = float((ell + 2) ** 2 * ell**2)
    u0 = u(ts)
    shift = lam if pair.branch is Branch.CYLINDER else 0.0
    residual = u4 - sum_sq * u2 + (prod_sq - shift) * u0
    mag0 = u.term_scale(ts, 0)
    scale = np.max(
        np.maximum.reduce(
            [
                u.term_scale(ts, 4),
                sum_sq * u.term_scale(ts, 2),
                prod_sq * mag0,
                abs(shift) * mag0,
            ]
        )
    )
    ode = _ratio(float(np.max(np.abs(residual))), float(scale))

    if isinstance(model, CylinderModel):
        return ResidualReport(ode, (), (), h)

    g = 3.0 * pair.mode.mu + 3.0
    deriv_scale = float(np.max(u.term_scale(ts, 1)))
    if isinstance(model, BallModel):
        ends = [(0.0, 1.0)]
    else:
        ends = [(0.0, 1.0 / model.alpha), (model.tau, -1.0 / (1.0 - model.alpha))]
    bd, rel = [], []
    for t, weight in ends:
        bd.append(_ratio(abs(u(t, 1)), deriv_scale))
        lhs = weight * (u(t, 3) - g * u(t, 1))
        rhs = lam * u(t)
        den = max(abs(weight) * (u.term_scale(t, 3) + g * u.term_scale(t, 1)), abs(lam) * u.term_scale(t))
        rel.append(_ratio(abs(lhs - rhs), den))
    return ResidualReport(ode, tuple(bd), tuple(rel), h)
