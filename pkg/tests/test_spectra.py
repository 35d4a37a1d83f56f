import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paneitz_lab import (
    AnnulusModel,
    BallModel,
    Branch,
    CylinderModel,
    DomainError,
    alpha_from_beta,
    annulus_bound_constant,
    annulus_eigenfunction,
    annulus_eigenvalues,
    annulus_quadratic_coeffs,
    annulus_zero_mode,
    ball_eigenfunction,
    ball_eigenpair,
    ball_eigenvalue,
    cylinder_eigenpair,
    cylinder_eigenvalue,
    cylinder_static_eigenvalue,
    find_tau_star,
    first_nonzero_eigenvalue,
    gap_ratio,
    gap_ratio_closed_form,
    scan_monotonicity,
    stable_quadratic_roots,
    vol_s3,
    zero_mode_eigenvalue,
    zero_mode_profile,
)
from paneitz_lab.spectra import TAU_STAR_GRID

from conftest import printed_coeffs, printed_roots

# --- cylinder


def test_cylinder_values():
    assert cylinder_eigenvalue(0, CylinderModel(2 * math.pi)) == 5.0
    rho = math.pi / 2
    assert cylinder_eigenvalue(0, CylinderModel(rho)) == pytest.approx((2 + 16) ** 2 - 4)


def test_cylinder_monotone_in_period_and_level():
    periods = np.geomspace(0.1, 100, 40)
    for ell in (0, 3, 50):
        vals = [cylinder_eigenvalue(ell, CylinderModel(float(p))) for p in periods]
        assert all(b < a for a, b in zip(vals, vals[1:]))
    for p in (0.1, 2 * math.pi, 100.0):
        vals = [cylinder_eigenvalue(l, CylinderModel(p)) for l in range(51)]
        assert all(b > a for a, b in zip(vals, vals[1:]))


def test_cylinder_pair_multiplicity_and_static_mode():
    pair = cylinder_eigenpair(1, CylinderModel(1.0))
    assert pair.multiplicity == 8
    assert pair.profile.frequency == pytest.approx(2 * math.pi)
    assert cylinder_static_eigenvalue(1) == 9.0


# --- ball


def test_ball_values():
    assert ball_eigenvalue(0) == 0.0
    assert ball_eigenvalue(1) == 12.0
    assert ball_eigenvalue(7) == 36.0


def test_ball_eigenfunction_shape():
    u = ball_eigenfunction(1)
    assert u(0.0) == pytest.approx(1.0)
    assert u(0.0, 1) == pytest.approx(0.0, abs=1e-15)
    assert ball_eigenfunction(2).coefficients == (1.0, -0.5)
    assert abs(u(40.0)) < 1e-15
    with pytest.raises(DomainError):
        ball_eigenfunction(0)


def test_ball_pair():
    p = ball_eigenpair(1)
    assert (p.value, p.multiplicity, p.branch) == (12.0, 4, Branch.PLUS)
    assert ball_eigenpair(0).branch is Branch.ZERO


# --- annulus quadratic


@pytest.mark.parametrize("ell,tau,alpha", [(1, 1.0, 0.5), (2, 1.0, 0.5), (3, 0.05, 0.2), (7, 4.0, 0.9)])
def test_coefficients_match_high_precision(ell, tau, alpha):
    a, b, c = printed_coeffs(ell, tau, alpha)
    got = annulus_quadratic_coeffs(ell, AnnulusModel(tau, alpha)).unscaled()
    for g, w in zip(got, (a, b, c)):
        assert g == pytest.approx(float(w), rel=1e-13)


def test_coefficients_do_not_overflow_at_large_tau():
    q = annulus_quadratic_coeffs(50, AnnulusModel(350.0, 0.5))
    assert all(math.isfinite(x) for x in (q.a_scaled, q.b_scaled, q.c_scaled))
    lo, hi = annulus_eigenvalues(50, AnnulusModel(350.0, 0.5))
    assert 0 < lo <= hi < math.inf


def test_leading_coefficient_vanishes_as_tau_shrinks():
    q = annulus_quadratic_coeffs(4, AnnulusModel(1e-6, 0.5)).unscaled()
    assert abs(q[0]) < 1e-9


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 50), st.floats(0.01, 10.0), st.floats(0.05, 0.95))
def test_roots_match_high_precision(ell, tau, alpha):
    lo, hi = annulus_eigenvalues(ell, AnnulusModel(tau, alpha))
    rlo, rhi = printed_roots(ell, tau, alpha, dps=80 + int(4 * ell * tau))
    assert lo == pytest.approx(rlo, rel=1e-13)
    assert hi == pytest.approx(rhi, rel=1e-13)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 50), st.floats(0.01, 10.0), st.floats(0.05, 0.95))
def test_alpha_symmetry(ell, tau, alpha):
    a = annulus_eigenvalues(ell, AnnulusModel(tau, alpha))
    b = annulus_eigenvalues(ell, AnnulusModel(tau, 1.0 - alpha))
    assert a[0] == pytest.approx(b[0], rel=1e-13)
    assert a[1] == pytest.approx(b[1], rel=1e-13)


def test_explicit_first_level_minus_root():
    # explicit level-one formula, reached through its ratio to lam_0^+
    beta, tau = 0.25, 1.0
    direct = gap_ratio_closed_form(beta, tau) * zero_mode_eigenvalue(AnnulusModel(tau, 0.5))
    assert annulus_eigenvalues(1, AnnulusModel(tau, 0.5))[0] == pytest.approx(direct, rel=1e-12)


# --- zero mode and eigenfunctions


def test_zero_mode_value():
    lam = zero_mode_eigenvalue(AnnulusModel(1.0, 0.5))
    want = 16 * math.sinh(2) / (1 - math.cosh(2) + math.sinh(2))
    assert lam == pytest.approx(want, rel=1e-14)
    assert lam == pytest.approx(67.11244879144519, rel=1e-14)


def test_zero_mode_small_tau_series_continuity():
    for tau in (0.49, 0.5, 0.51):
        t = tau
        want = 4.0 / (0.25 * (t - math.tanh(t)))
        assert zero_mode_eigenvalue(AnnulusModel(t, 0.5)) == pytest.approx(want, rel=1e-12)


def test_zero_mode_denominator_positive():
    for tau in np.geomspace(1e-4, 50, 200):
        t = float(tau)
        assert zero_mode_eigenvalue(AnnulusModel(t, 0.5)) > 0


def test_zero_mode_profile_has_neumann_ends():
    m = AnnulusModel(1.3, 0.3)
    u = zero_mode_profile(m)
    scale = max(abs(c) for c in u.coefficients)
    assert abs(u(0.0, 1)) <= 1e-13 * scale
    assert abs(u(m.tau, 1)) <= 1e-13 * scale
    assert annulus_zero_mode(m).multiplicity == 1


@pytest.mark.parametrize("branch", [Branch.MINUS, Branch.PLUS])
def test_annulus_eigenfunction_boundary_relations(branch):
    m = AnnulusModel(1.0, 0.5)
    lam = annulus_eigenvalues(1, m)[0 if branch is Branch.MINUS else 1]
    u = annulus_eigenfunction(1, branch, m)
    scale = float(np.max(u.term_scale(np.linspace(0, 1, 11), 1)))
    assert abs(u(0.0, 1)) <= 1e-9 * scale
    assert abs(u(1.0, 1)) <= 1e-9 * scale
    b3 = (u(0.0, 3) - 12.0 * u(0.0, 1)) / m.alpha
    assert b3 == pytest.approx(lam * u(0.0), rel=1e-8)


# --- gap ratio and tau*


def test_alpha_from_beta():
    assert alpha_from_beta(0.25) == 0.5
    a = alpha_from_beta(1e-12)
    assert a * (1 - a) == pytest.approx(1e-12, rel=1e-12)
    with pytest.raises(DomainError):
        alpha_from_beta(0.3)


@pytest.mark.parametrize("beta", [0.05, 0.15, 0.25])
def test_gap_ratio_two_ways(beta):
    for tau in (0.5, 1.0, 2.0):
        assert gap_ratio(beta, tau) == pytest.approx(gap_ratio_closed_form(beta, tau), rel=1e-10)


@pytest.mark.parametrize("beta", [0.05, 0.1, 0.25])
def test_gap_ratio_limits(beta):
    assert gap_ratio(beta, 1e-3) < 0.05
    assert gap_ratio(beta, 20.0) > 1.0


def test_tau_star_frozen_values():
    assert find_tau_star(0.25).tau_star == pytest.approx(1.95523, rel=1e-5)
    assert find_tau_star(0.15).tau_star == pytest.approx(2.8415, rel=1e-4)
    assert find_tau_star(0.05).tau_star == pytest.approx(7.3148, rel=1e-4)


def test_tau_star_local_crossing():
    ts = find_tau_star(0.1)
    assert ts.crossing_count == 1
    assert gap_ratio(0.1, ts.tau_star * 0.99) < 1.0 < gap_ratio(0.1, ts.tau_star * 1.01)


def test_tau_star_no_crossing_raises():
    from paneitz_lab import NumericalFailure

    with pytest.raises(NumericalFailure):
        find_tau_star(0.25, lo=TAU_STAR_GRID[0], hi=0.5, points=50)


# --- scans and first eigenvalue


def test_scan_monotonicity_report():
    rep = scan_monotonicity(AnnulusModel(1.0, 0.5), 5)
    assert len(rep.values) == 5
    assert rep.monotone
    assert rep.zero_mode == pytest.approx(67.11244879144519)
    with pytest.raises(DomainError):
        scan_monotonicity(AnnulusModel(1.0, 0.5), 1)


def test_first_nonzero_ball_and_cylinder():
    p = first_nonzero_eigenvalue(BallModel())
    assert (p.value, p.multiplicity) == (12.0, 4)
    c = first_nonzero_eigenvalue(CylinderModel(2 * math.pi))
    assert c.value == 5.0 and c.mode.ell == 0 and c.truncated_at == 20
    # short cylinders: the t-independent level-one modes (value 9) come first
    s = first_nonzero_eigenvalue(CylinderModel(2.0))
    assert s.value == 9.0 and s.mode.ell == 1


@pytest.mark.parametrize("beta", [0.1, 0.25])
def test_first_nonzero_annulus_switches_at_tau_star(beta):
    ts = find_tau_star(beta).tau_star
    alpha = alpha_from_beta(beta)
    below = first_nonzero_eigenvalue(AnnulusModel(0.9 * ts, alpha))
    above = first_nonzero_eigenvalue(AnnulusModel(1.1 * ts, alpha))
    assert below.branch is Branch.MINUS and below.mode.ell == 1
    assert above.mode.ell == 0
    assert above.truncated_at == 20


def test_annulus_bound_constant():
    want = 2 * math.pi**2 * 16 * math.sinh(2) / (1 - math.cosh(2) + math.sinh(2))
    assert annulus_bound_constant(math.exp(-1), 1.0) == pytest.approx(want, rel=1e-13)
    assert annulus_bound_constant(0.3, 2.5) == pytest.approx(annulus_bound_constant(0.3, 0.4), rel=1e-13)
    rhos = [0.5, 0.9, 0.99, 0.999]
    vals = [annulus_bound_constant(r, 1.0) for r in rhos]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert vals[-1] > 1e8
