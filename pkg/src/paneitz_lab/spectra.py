"""Closed-form spectra of the projected boundary problem on the model manifolds.

Per spherical-harmonic level ``ell`` the interior operator is
``(d_tt - (ell+2)^2)(d_tt - ell^2)`` and the third-order boundary operator is
``e^{-3f} (d_ttt - (3 mu_ell + 3) d_t)``; together with ``u' = 0`` on the
boundary this gives a Steklov-type problem whose eigenvalues are collected
here for the ball, the radial annulus and the periodic cylinder.

Annulus coefficients are kept multiplied by ``exp(-(2 ell + 2) tau)``, and all
hyperbolic functions are rewritten through the scaled forms
``e^{-x} sinh x`` and ``e^{-x} cosh x`` so nothing overflows for
``tau <= 350``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NumericalFailure
from .geometry import (
    AnnulusModel,
    BallModel,
    CylinderModel,
    ModeIndex,
    alpha_from_volume_ratio,
    as_mode,
    laplace_eigenvalue_s3,
    multiplicity_s3,
    vol_s3,
)
from .numerics import RootSpec, brent_root, bracket_scan, stable_quadratic_roots
from .profiles import Basis, RadialProfile, constant_profile


class Branch(str, Enum):
    ZERO = "zero"
    MINUS = "minus"
    PLUS = "plus"
    CYLINDER = "cylinder"


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue with its mode, branch, multiplicity and radial profile.

    ``truncated_at`` is set when the value is a minimum taken over levels
    ``ell <= truncated_at`` only.
    """

    value: float
    mode: ModeIndex
    branch: Branch
    multiplicity: int
    profile: RadialProfile
    truncated_at: int | None = None


def _sh(x):
    """``exp(-x) * sinh(x)`` for ``x >= 0``."""
    return -0.5 * math.expm1(-2.0 * x)


def _ch(x):
    """``exp(-x) * cosh(x)`` for ``x >= 0``."""
    return 0.5 * (1.0 + math.exp(-2.0 * x))


# ---------------------------------------------------------------------------
# cylinder


def cylinder_eigenvalue(mode, model: CylinderModel) -> float:
    """Eigenvalue of the lowest non-constant periodic mode at level ``ell``."""
    ell = as_mode(mode).ell
    w2 = (2.0 * math.pi / model.period) ** 2
    s = 2 + 2 * ell + ell * ell
    return (s + w2) ** 2 - (4 + 8 * ell + 4 * ell * ell)


def cylinder_static_eigenvalue(mode) -> float:
    """Eigenvalue ``mu_ell^2`` of the ``t``-independent mode at level ``ell``."""
    mu = laplace_eigenvalue_s3(mode)
    return float(mu * mu)


def cylinder_eigenpair(mode, model: CylinderModel) -> EigenPair:
    mode = as_mode(mode)
    w = 2.0 * math.pi / model.period
    return EigenPair(
        value=cylinder_eigenvalue(mode, model),
        mode=mode,
        branch=Branch.CYLINDER,
        # cos and sin in t for each of the (ell+1)^2 harmonics
        multiplicity=2 * multiplicity_s3(mode),
        profile=RadialProfile(mode.ell, Basis.PERIODIC, (1.0, 0.0), w),
    )


def cylinder_static_eigenpair(mode) -> EigenPair:
    mode = as_mode(mode)
    if mode.ell == 0:
        raise DomainError("the t-independent mode at ell=0 is the constant (eigenvalue 0)")
    return EigenPair(
        value=cylinder_static_eigenvalue(mode),
        mode=mode,
        branch=Branch.CYLINDER,
        multiplicity=multiplicity_s3(mode),
        profile=RadialProfile(mode.ell, Basis.PERIODIC, (1.0, 0.0), 0.0),
    )


# ---------------------------------------------------------------------------
# ball


def ball_eigenvalue(mode) -> float:
    """Eigenvalue ``4 (ell + 2)`` for ``ell >= 1`` and ``0`` for ``ell = 0``.

    This is the published value. Solving the boundary problem directly (see
    :func:`paneitz_lab.oracle.oracle_eigenvalues` with a :class:`BallModel`)
    gives ``2 ell (ell + 1) (ell + 2)`` instead; the two agree only at
    ``ell = 1``, where both equal 12. The first nonzero eigenvalue, and with it
    the ``24 pi^2`` bound, is unaffected.
    """
    ell = as_mode(mode).ell
    return 0.0 if ell == 0 else 4.0 * (ell + 2)


def ball_eigenfunction(mode) -> RadialProfile:
    """``((ell+2)/(2 ell)) e^{-ell t} - e^{-(ell+2) t} / 2``, with ``u'(0) = 0``."""
    ell = as_mode(mode).ell
    if ell == 0:
        raise DomainError("the ell=0 ball eigenfunction is the constant; use constant_profile()")
    return RadialProfile(ell, Basis.DECAYING_BALL, ((ell + 2) / (2.0 * ell), -0.5))


def ball_eigenpair(mode) -> EigenPair:
    mode = as_mode(mode)
    if mode.ell == 0:
        return EigenPair(0.0, mode, Branch.ZERO, 1, constant_profile())
    return EigenPair(
        ball_eigenvalue(mode), mode, Branch.PLUS, multiplicity_s3(mode), ball_eigenfunction(mode)
    )


# ---------------------------------------------------------------------------
# annulus


@dataclass(frozen=True)
class QuadraticCoefficients:
    """``(a, b, c)`` of the level-``ell`` quadratic, times ``exp(-log_scale)``.

    The scaled discriminant ``b^2 - 4ac`` is kept as its natural logarithm,
    built from a sum of nonnegative terms rather than by subtraction; near
    ``alpha = 1/2`` it is far below the smallest double for large ``ell tau``.
    """

    a_scaled: float
    b_scaled: float
    c_scaled: float
    log_discriminant_scaled: float
    ell: ModeIndex
    tau: float
    alpha: float

    @property
    def discriminant_scaled(self) -> float:
        """``b^2 - 4ac`` in the scaled form; may underflow to zero."""
        return math.exp(self.log_discriminant_scaled)

    @property
    def sqrt_discriminant_scaled(self) -> float:
        return math.exp(0.5 * self.log_discriminant_scaled)

    @property
    def log_scale(self) -> float:
        return (2 * self.ell.ell + 2) * self.tau

    def unscaled(self) -> tuple[float, float, float]:
        try:
            s = math.exp(self.log_scale)
        except OverflowError as exc:
            raise NumericalFailure("unscaled coefficients overflow double precision") from exc
        a, b, c = self.a_scaled * s, self.b_scaled * s, self.c_scaled * s
        if not all(math.isfinite(v) for v in (a, b, c)):
            raise NumericalFailure("unscaled coefficients overflow double precision")
        return a, b, c


def _sinh_gap_scaled(n: int, tau: float) -> float:
    """``exp(-n tau) * (sinh(n tau) - n sinh(tau))``, accurate as ``n tau -> 0``."""
    if n * tau < 1.0:
        # sinh(n x) - n sinh(x) = sinh(x) * sum_m 2 sinh^2(m x / 2), m = n-1, n-3, ..., 1-n
        m = np.arange(n - 1, -n, -2, dtype=float)
        s = math.fsum(2.0 * np.sinh(0.5 * m * tau) ** 2)
        return math.exp(-n * tau) * math.sinh(tau) * s
    return _sh(n * tau) - n * math.exp((1 - n) * tau) * _sh(tau)


def annulus_quadratic_coeffs(mode, model: AnnulusModel) -> QuadraticCoefficients:
    """Scaled coefficients of ``a lam^2 + b lam + c = 0`` for level ``ell >= 1``.

    Unscaled, ``a = -2 ell(ell+2) + 2 (ell+1)^2 cosh 2tau - 2 cosh((2ell+2)tau)``,
    ``b = 4K [(ell+1) sinh 2tau + sinh((2ell+2)tau)] / beta`` and
    ``c = -8K^2 [cosh((2ell+2)tau) - cosh 2tau] / beta`` with
    ``K = ell(ell+1)(ell+2)``.
    """
    mode = as_mode(mode)
    ell = mode.ell
    if ell < 1:
        raise DomainError("the quadratic is defined for ell >= 1; use annulus_zero_mode for ell=0")
    tau, alpha, beta = model.tau, model.alpha, model.beta
    n = ell + 1
    k = float(ell * (ell + 1) * (ell + 2))

    # a = -4 [sinh^2(n tau) - n^2 sinh^2(tau)]
    gap = _sinh_gap_scaled(n, tau)
    total = _sh(n * tau) + n * math.exp((1 - n) * tau) * _sh(tau)
    a_s = -4.0 * gap * total
    b_s = (4.0 * k / beta) * (n * math.exp((2 - 2 * n) * tau) * _sh(2 * tau) + _sh(2 * n * tau))
    # cosh(2n tau) - cosh(2 tau) = 2 sinh((n+1) tau) sinh((n-1) tau)
    ch_gap = 2.0 * _sh((n + 1) * tau) * _sh((n - 1) * tau)
    c_s = -(8.0 * k * k / beta) * ch_gap
    # b^2 - 4ac = (16 K^2 / beta^2) [W^2 + (1 - 2 alpha)^2 / 2 * (-a)(cosh 2n tau - cosh 2 tau)]
    # with W = (ell+2) sinh((ell+2) tau) - ell sinh(ell tau)
    #        = 2 [n cosh(n tau) sinh(tau) + sinh(n tau) cosh(tau)]
    log_w = (1 - n) * tau + math.log(2.0 * (n * _sh(tau) * _ch(n * tau) + _ch(tau) * _sh(n * tau)))
    spread = 0.5 * (1.0 - 2.0 * alpha) ** 2 * (-a_s) * ch_gap
    log_h = math.log(spread) if spread > 0 else -math.inf
    log_disc = 2.0 * math.log(4.0 * k / beta) + float(np.logaddexp(2.0 * log_w, log_h))
    return QuadraticCoefficients(a_s, b_s, c_s, log_disc, mode, tau, alpha)


def annulus_eigenvalues(mode, model: AnnulusModel) -> tuple[float, float]:
    """``(lam_minus, lam_plus)`` at level ``ell >= 1``; ``lam_minus`` is ``c / q``.

    The two roots are distinct in exact arithmetic. At ``alpha = 1/2`` their
    relative gap decays roughly like ``exp(-2 ell tau)`` and drops below
    double-precision resolution for large ``ell tau``, where both entries of
    the returned pair may round to the same float.
    """
    q = annulus_quadratic_coeffs(mode, model)
    if not q.log_discriminant_scaled > -math.inf:
        raise NumericalFailure(
            f"nonpositive discriminant at ell={q.ell.ell}, tau={model.tau}, alpha={model.alpha}"
        )
    lo, hi = stable_quadratic_roots(
        q.a_scaled, q.b_scaled, q.c_scaled, sqrt_discriminant=q.sqrt_discriminant_scaled
    )
    if not (0.0 < lo <= hi and math.isfinite(hi)):
        raise NumericalFailure(
            f"eigenvalues ({lo!r}, {hi!r}) violate 0 < lam- <= lam+ at ell={q.ell.ell}"
        )
    return lo, hi


def _tau_minus_tanh(tau: float) -> float:
    if tau < 0.5:
        # tau - tanh tau = (tau cosh tau - sinh tau) / cosh tau, numerator series
        # sum_{k>=1} 2k tau^(2k+1) / (2k+1)! has positive terms
        t2 = tau * tau
        term = tau  # tau^(2k+1) / (2k+1)! at k = 0
        s = 0.0
        for k in range(1, 20):
            term *= t2 / ((2 * k) * (2 * k + 1))
            s += 2 * k * term
        return s / math.cosh(tau)
    return tau - math.tanh(tau)


def zero_mode_eigenvalue(model: AnnulusModel) -> float:
    """``lam_0^+ = 4 sinh 2tau / (beta (1 - cosh 2tau + tau sinh 2tau))``.

    Evaluated as ``4 / (beta (tau - tanh tau))``, the same quantity after
    cancelling ``2 sinh tau cosh tau``.
    """
    return 4.0 / (model.beta * _tau_minus_tanh(model.tau))


def zero_mode_profile(model: AnnulusModel) -> RadialProfile:
    tau, alpha = model.tau, model.alpha
    try:
        s2, c2 = math.sinh(2 * tau), math.cosh(2 * tau)
    except OverflowError as exc:
        raise NumericalFailure("zero-mode profile coefficients overflow") from exc
    denom = 1.0 - c2 + tau * s2
    const = 2.0 * (1.0 - alpha) * denom - 1.0 + c2
    return RadialProfile(0, Basis.AFFINE_0, (const, -2.0 * s2, 1.0 - c2, s2))


def annulus_zero_mode(model: AnnulusModel) -> EigenPair:
    """The rotationally invariant eigenpair ``(lam_0^+, u_0^+)``."""
    return EigenPair(
        value=zero_mode_eigenvalue(model),
        mode=ModeIndex(0),
        branch=Branch.PLUS,
        multiplicity=1,
        profile=zero_mode_profile(model),
    )


def annulus_eigenfunction(mode, branch, model: AnnulusModel) -> RadialProfile:
    """``u^1 + (lam alpha / (4 ell (ell+1) (ell+2))) u^2`` over the hyperbolic basis."""
    mode = as_mode(mode)
    branch = Branch(branch)
    if branch not in (Branch.MINUS, Branch.PLUS):
        raise DomainError(f"annulus eigenfunctions exist on the minus/plus branches, not {branch.value}")
    ell = mode.ell
    lam = annulus_eigenvalues(mode, model)[0 if branch is Branch.MINUS else 1]
    tau, alpha = model.tau, model.alpha
    try:
        sl, sl2 = math.sinh(ell * tau), math.sinh((ell + 2) * tau)
        cl, cl2 = math.cosh(ell * tau), math.cosh((ell + 2) * tau)
    except OverflowError as exc:
        raise NumericalFailure(
            f"printed profile coefficients overflow at ell={ell}, tau={tau}"
        ) from exc
    kappa = lam * alpha / (4.0 * ell * (ell + 1) * (ell + 2))
    p = ell * sl - (ell + 2) * sl2
    r = ell * (ell + 2) * (cl - cl2)
    coeffs = (
        (ell + 2) * sl2 - kappa * r,
        kappa * (ell + 2) * p,
        -ell * sl + kappa * r,
        -kappa * ell * p,
    )
    if not all(math.isfinite(c) for c in coeffs):
        raise NumericalFailure(f"printed profile coefficients overflow at ell={ell}, tau={tau}")
    return RadialProfile(ell, Basis.HYPERBOLIC, coeffs)


def annulus_eigenpairs(mode, model: AnnulusModel) -> tuple[EigenPair, EigenPair]:
    mode = as_mode(mode)
    lo, hi = annulus_eigenvalues(mode, model)
    mult = multiplicity_s3(mode)
    return (
        EigenPair(lo, mode, Branch.MINUS, mult, annulus_eigenfunction(mode, Branch.MINUS, model)),
        EigenPair(hi, mode, Branch.PLUS, mult, annulus_eigenfunction(mode, Branch.PLUS, model)),
    )


# ---------------------------------------------------------------------------
# gap ratio, crossing, conjecture scan


def _check_beta(beta: float) -> None:
    if not (math.isfinite(beta) and 0.0 < beta <= 0.25):
        raise DomainError(f"beta = alpha (1 - alpha) must lie in (0, 1/4], got {beta}")


def alpha_from_beta(beta: float) -> float:
    """The root ``alpha <= 1/2`` of ``alpha (1 - alpha) = beta``."""
    _check_beta(beta)
    return 2.0 * beta / (1.0 + math.sqrt(max(0.0, 1.0 - 4.0 * beta)))


def gap_ratio(beta: float, tau: float) -> float:
    """Ratio ``lam_1^- / lam_0^+`` on the annulus of modulus ``tau``."""
    model = AnnulusModel(tau, alpha_from_beta(beta))
    return annulus_eigenvalues(1, model)[0] / zero_mode_eigenvalue(model)


def gap_ratio_closed_form(beta: float, tau: float) -> float:
    """The same ratio from its explicit ``ell = 1`` formula, evaluated directly.

    Loses accuracy to cancellation for small ``tau`` and, at ``beta`` near
    ``1/4``, for large ``tau``; :func:`gap_ratio` is the robust route.
    """
    _check_beta(beta)
    s2, c2, c4 = math.sinh(2 * tau), math.cosh(2 * tau), math.cosh(4 * tau)
    x = s2 * (1.0 + c2) / (c2 - 1.0) ** 2
    y = (c4 - c2) / (c2 - 1.0) ** 2
    root = math.sqrt(x * x - 2.0 * beta * y)
    z = s2 / (1.0 - c2 + tau * s2)
    return 1.5 * (x - root) / z


class TauStar(NamedTuple):
    tau_star: float
    crossing_count: int


TAU_STAR_GRID = (1e-3, 50.0, 2000)


def find_tau_star(
    beta: float,
    *,
    lo: float = TAU_STAR_GRID[0],
    hi: float = TAU_STAR_GRID[1],
    points: int = TAU_STAR_GRID[2],
    spec: RootSpec = RootSpec(),
) -> TauStar:
    """Smallest ``tau`` in ``[lo, hi]`` with ``gap_ratio(beta, tau) == 1``.

    Crossings are located by sign changes of ``F - 1`` on a log-spaced grid;
    all of them are counted, the first one is refined with Brent's method.
    """
    _check_beta(beta)
    grid = np.geomspace(lo, hi, points)

    def g(t):
        return gap_ratio(beta, t) - 1.0

    brackets = bracket_scan(g, grid)
    if not brackets:
        raise NumericalFailure(
            f"no crossing of F(beta={beta}, tau) = 1 on [{lo}, {hi}]: "
            f"F(lo) = {g(lo) + 1.0!r}, F(hi) = {g(hi) + 1.0!r}"
        )
    first = brackets[0]
    tau_star = brent_root(g, *first, spec)
    return TauStar(tau_star, len(brackets))


@dataclass(frozen=True)
class MonotonicityReport:
    """``lam_ell^-`` for ``ell = 1..lmax`` and the indices where it fails to increase."""

    values: list[tuple[int, float]]
    violations: list[tuple[int, int]]
    zero_mode: float

    @property
    def monotone(self) -> bool:
        return not self.violations


def scan_monotonicity(model: AnnulusModel, lmax: int) -> MonotonicityReport:
    if lmax < 2:
        raise DomainError("lmax must be at least 2 to compare consecutive levels")
    values = [(ell, annulus_eigenvalues(ell, model)[0]) for ell in range(1, lmax + 1)]
    violations = [
        (l1, l2) for (l1, v1), (l2, v2) in zip(values[:-1], values[1:]) if not v2 > v1
    ]
    return MonotonicityReport(values, violations, zero_mode_eigenvalue(model))


# ---------------------------------------------------------------------------
# first nonzero eigenvalue and bound constants


def first_nonzero_eigenvalue(model, lmax: int = 20) -> EigenPair:
    """Smallest positive eigenvalue among the levels ``ell <= lmax``.

    The ball answer is exact (level 1). Annulus and cylinder answers are
    minima over the truncated level range and carry ``truncated_at = lmax``.
    """
    if lmax < 1:
        raise DomainError("lmax must be at least 1")
    if isinstance(model, BallModel):
        return ball_eigenpair(1)
    if isinstance(model, AnnulusModel):
        candidates = [annulus_zero_mode(model)]
        for ell in range(1, lmax + 1):
            value = annulus_eigenvalues(ell, model)[0]
            candidates.append(
                EigenPair(
                    value,
                    ModeIndex(ell),
                    Branch.MINUS,
                    multiplicity_s3(ell),
                    annulus_eigenfunction(ell, Branch.MINUS, model),
                )
            )
    elif isinstance(model, CylinderModel):
        candidates = [cylinder_eigenpair(ell, model) for ell in range(0, lmax + 1)]
        candidates += [cylinder_static_eigenpair(ell) for ell in range(1, lmax + 1)]
    else:
        raise DomainError(f"unsupported model {model!r}")
    best = min(candidates, key=lambda p: (p.value, p.mode.ell))
    return EigenPair(best.value, best.mode, best.branch, best.multiplicity, best.profile, lmax)


def annulus_bound_constant(rho: float, volume_ratio: float) -> float:
    """``lam_0^+ * 2 pi^2`` for modulus ``-log rho`` and the boundary-volume ratio.

    The bound on ``lam_1 * vol(boundary)`` over annuli with these boundary
    volumes, normalized to total boundary volume ``2 pi^2``.
    """
    if not (math.isfinite(rho) and 0.0 < rho < 1.0):
        raise DomainError(f"rho must lie in (0, 1), got {rho}")
    model = AnnulusModel(-math.log(rho), alpha_from_volume_ratio(volume_ratio))
    return zero_mode_eigenvalue(model) * vol_s3()
