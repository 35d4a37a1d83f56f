import mpmath as mp
import pytest


def printed_coeffs(ell, tau, alpha, dps=60):
    """Unscaled (a, b, c) of the annulus quadratic in high precision."""
    with mp.workdps(dps):
        beta = mp.mpf(alpha) * (1 - mp.mpf(alpha))
        t = mp.mpf(tau)
        n = ell + 1
        k = ell * (ell + 1) * (ell + 2)
        a = -2 * ell * (ell + 2) + 2 * n**2 * mp.cosh(2 * t) - 2 * mp.cosh(2 * n * t)
        b = 4 * k * (n * mp.sinh(2 * t) + mp.sinh(2 * n * t)) / beta
        c = -8 * k**2 * (mp.cosh(2 * n * t) - mp.cosh(2 * t)) / beta
        return a, b, c


def printed_roots(ell, tau, alpha, dps=600):
    with mp.workdps(dps):
        a, b, c = printed_coeffs(ell, tau, alpha, dps)
        d = mp.sqrt(b * b - 4 * a * c)
        r = sorted([(-b - d) / (2 * a), (-b + d) / (2 * a)])
        return float(r[0]), float(r[1])


@pytest.fixture
def mpref():
    return {"coeffs": printed_coeffs, "roots": printed_roots}
