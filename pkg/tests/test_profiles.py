import math

import numpy as np
import pytest

from paneitz_lab import Basis, NumericalFailure, RadialProfile, constant_profile
from paneitz_lab.profiles import BasisFunction, basis_functions


@pytest.mark.parametrize("kind", ["cosh", "sinh", "exp", "cos", "sin"])
def test_derivatives_match_finite_differences(kind):
    f = BasisFunction(kind, 1.7, shift=0.4)
    t, h = 0.8, 1e-5
    for order in range(4):
        fd = (f(t + h, order) - f(t - h, order)) / (2 * h)
        assert f(t, order + 1) == pytest.approx(fd, rel=1e-8)


def test_polynomial_derivatives():
    f = BasisFunction("poly", power=1)
    assert f(2.0) == 2.0
    assert f(2.0, 1) == 1.0
    assert f(2.0, 2) == 0.0


def test_overflow_is_reported():
    with pytest.raises(NumericalFailure):
        BasisFunction("cosh", 10.0)(100.0)


def test_basis_sizes():
    assert len(basis_functions(Basis.HYPERBOLIC, 2)) == 4
    assert len(basis_functions(Basis.AFFINE_0, 0)) == 4
    assert len(basis_functions(Basis.DECAYING_BALL, 2)) == 2
    assert len(basis_functions(Basis.PERIODIC, 0, 1.0)) == 2


def test_profile_evaluates_linear_combination():
    p = RadialProfile(1, Basis.HYPERBOLIC, (1.0, 0.0, 0.0, 2.0))
    t = np.array([0.0, 0.5])
    want = np.cosh(t) + 2.0 * np.sinh(3.0 * t)
    assert np.allclose(p(t), want, rtol=1e-15)
    assert np.allclose(p.term_scale(t), np.abs(np.cosh(t)) + np.abs(2.0 * np.sinh(3.0 * t)))
    assert p.scaled(2.0)(0.5) == pytest.approx(2.0 * p(0.5))


def test_profile_wrong_coefficient_count():
    with pytest.raises(ValueError):
        RadialProfile(1, Basis.DECAYING_BALL, (1.0, 2.0, 3.0))


def test_constant_profile():
    p = constant_profile()
    assert p(1.3) == 1.0
    assert p(1.3, 1) == 0.0
    assert p(np.zeros(3)).shape == (3,)
