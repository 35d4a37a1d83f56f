import math
from dataclasses import replace

import numpy as np
import pytest

from paneitz_lab import (
    AnnulusModel,
    BallModel,
    CylinderModel,
    Domain,
    DomainError,
    annulus_eigenpairs,
    annulus_eigenvalues,
    annulus_zero_mode,
    ball_eigenpair,
    boundary_matrix,
    char_determinant,
    cylinder_eigenpair,
    oracle_eigenvalues,
    residual_check,
    solution_basis,
    zero_mode_eigenvalue,
)


def test_solution_basis_shapes():
    assert len(solution_basis(2, Domain.ANNULUS)) == 4
    assert len(solution_basis(0, Domain.ZERO_MODE)) == 4
    assert len(solution_basis(2, Domain.BALL)) == 2
    with pytest.raises(DomainError):
        solution_basis(0, Domain.BALL)
    with pytest.raises(DomainError):
        solution_basis(1, Domain.ZERO_MODE)


@pytest.mark.parametrize("ell", [0, 1, 3])
def test_solution_basis_solves_projected_ode(ell):
    p, q = (ell + 2) ** 2, ell**2
    for phi in solution_basis(ell, Domain.ANNULUS):
        for t in (0.0, 0.7):
            val = phi(t, 4) - (p + q) * phi(t, 2) + p * q * phi(t)
            assert abs(val) <= 1e-12 * max(1.0, abs(phi(t, 4)))


def test_boundary_matrix_shape():
    m = boundary_matrix(2, AnnulusModel(1.0, 0.3), 10.0)
    assert m.entries.shape == (4, 4)
    assert boundary_matrix(2, BallModel(), 10.0).entries.shape == (2, 2)
    with pytest.raises(DomainError):
        char_determinant(1, CylinderModel(1.0), 1.0)


@pytest.mark.parametrize("ell,tau,alpha", [(1, 1.0, 0.5), (2, 0.2, 0.8), (5, 3.0, 0.2)])
def test_determinant_changes_sign_at_closed_form_roots(ell, tau, alpha):
    m = AnnulusModel(tau, alpha)
    for lam in annulus_eigenvalues(ell, m):
        lo = char_determinant(ell, m, lam * (1 - 1e-6))
        hi = char_determinant(ell, m, lam * (1 + 1e-6))
        assert lo * hi < 0


@pytest.mark.parametrize("tau", [0.2, 1.0, 3.0])
@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.8])
def test_oracle_reproduces_annulus_spectrum(tau, alpha):
    m = AnnulusModel(tau, alpha)
    lam0 = zero_mode_eigenvalue(m)
    roots0 = oracle_eigenvalues(0, m, 4 * lam0)
    assert min(abs(r - lam0) for r in roots0) <= 1e-8 * lam0
    for ell in range(1, 11):
        lo, hi = annulus_eigenvalues(ell, m)
        roots = oracle_eigenvalues(ell, m, 1.5 * hi)
        assert not roots.failures
        assert len(roots) == 2
        assert roots[0] == pytest.approx(lo, rel=1e-8)
        assert roots[1] == pytest.approx(hi, rel=1e-8)


def test_oracle_ball_level_one():
    roots = oracle_eigenvalues(1, BallModel(), 100.0)
    assert len(roots) == 1
    assert roots[0] == pytest.approx(12.0, rel=1e-12)


@pytest.mark.parametrize("ell", [2, 3, 5])
def test_oracle_ball_higher_levels(ell):
    # the boundary problem on the ball has the single root 2 l (l+1) (l+2)
    roots = oracle_eigenvalues(ell, BallModel(), 10.0 * ell**3)
    assert len(roots) == 1
    assert roots[0] == pytest.approx(2.0 * ell * (ell + 1) * (ell + 2), rel=1e-12)


def test_oracle_rejects_bad_window():
    with pytest.raises(DomainError):
        oracle_eigenvalues(1, BallModel(), -1.0)
    with pytest.raises(DomainError):
        oracle_eigenvalues(1, BallModel(), 10.0, search_min=20.0)


@pytest.mark.parametrize("tau,alpha", [(0.2, 0.2), (1.0, 0.5), (3.0, 0.8)])
def test_residuals_of_closed_form_pairs(tau, alpha):
    m = AnnulusModel(tau, alpha)
    pairs = [annulus_zero_mode(m)]
    for ell in range(1, 11):
        pairs.extend(annulus_eigenpairs(ell, m))
    for pair in pairs:
        rep = residual_check(pair, m)
        assert rep.ode <= 1e-6
        assert rep.max_boundary <= 1e-9
        assert rep.max_eigen_relation <= 1e-9


def test_residual_detects_wrong_eigenvalue():
    m = AnnulusModel(1.0, 0.3)
    pair = annulus_eigenpairs(2, m)[0]
    bad = replace(pair, value=pair.value * (1 + 1e-3))
    assert residual_check(bad, m).max_eigen_relation > 1e-4


def test_residual_ball_and_cylinder():
    rep = residual_check(ball_eigenpair(1), BallModel())
    assert rep.ode <= 1e-6 and rep.max_boundary == 0.0 and rep.max_eigen_relation <= 1e-12
    cyl = CylinderModel(2 * math.pi)
    rep = residual_check(cylinder_eigenpair(2, cyl), cyl)
    assert rep.ode <= 1e-6
    assert rep.boundary_derivative == () and rep.eigen_relation == ()


def test_residual_flags_ball_pair_above_level_one():
    rep = residual_check(ball_eigenpair(2), BallModel())
    assert rep.max_boundary == 0.0
    assert rep.max_eigen_relation > 1e-2
