"""Quadrature, bracketed root finding and cancellation-free quadratic roots.

Every routine here is deterministic: fixed node sets, fixed evaluation order,
no parallel reductions.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NumericalFailure

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for :func:`integrate`.

    ``max_subdivisions`` bounds the number of panel bisections performed by the
    adaptive loop, not the recursion depth.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 40
    points_per_panel: int = 32

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1 or self.points_per_panel < 1:
            raise DomainError("max_subdivisions and points_per_panel must be >= 1")


@dataclass(frozen=True)
class RootSpec:
    rel_tol: float = 1e-12
    max_iterations: int = 200

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("root tolerance must be positive")
        if self.max_iterations < 1:
            raise DomainError("max_iterations must be >= 1")


@lru_cache(maxsize=16)
def _gauss_legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _panel(f, a, b, nodes, weights, vectorized):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    xs = mid + half * nodes
    if vectorized:
        ys = np.asarray(f(xs), dtype=float)
    else:
        ys = np.array([f(float(x)) for x in xs], dtype=float)
    if not np.all(np.isfinite(ys)):
        bad = xs[~np.isfinite(ys)][0]
        raise NumericalFailure(f"integrand is not finite at t={bad!r}")
    return half * float(np.dot(weights, ys))


def _refined(f, a, b, nodes, weights, vectorized):
    coarse = _panel(f, a, b, nodes, weights, vectorized)
    m = 0.5 * (a + b)
    left = _panel(f, a, m, nodes, weights, vectorized)
    right = _panel(f, m, b, nodes, weights, vectorized)
    return left + right, abs(left + right - coarse)


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = QuadratureSpec(),
    *,
    breakpoints: Sequence[float] = (),
    vectorized: bool = False,
    full_output: bool = False,
):
    """Adaptive composite Gauss-Legendre quadrature of ``f`` over ``[a, b]``.

    Each panel is integrated once with ``points_per_panel`` nodes and once as
    two halves; the difference is the panel error estimate. The panel with the
    largest estimate is bisected until the summed estimate drops below
    ``rel_tol * |I| + abs_tol``.

    ``breakpoints`` seed the initial panel partition. With ``vectorized`` the
    integrand is called once per panel on an array of nodes. With
    ``full_output`` the pair ``(value, error_estimate)`` is returned.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integration limits must be finite")
    if a > b:
        raise DomainError(f"integration limits must satisfy a <= b, got [{a}, {b}]")
    if a == b:
        return (0.0, 0.0) if full_output else 0.0

    nodes, weights = _gauss_legendre(spec.points_per_panel)
    cuts = [a] + sorted(p for p in breakpoints if a < p < b) + [b]
    heap = []
    for order, (lo, hi) in enumerate(zip(cuts[:-1], cuts[1:])):
        value, err = _refined(f, lo, hi, nodes, weights, vectorized)
        # order breaks ties so the bisection sequence is deterministic
        heapq.heappush(heap, (-err, order, lo, hi, value))
    counter = len(heap)

    bisections = 0
    while True:
        total = math.fsum(item[4] for item in heap)
        error = math.fsum(-item[0] for item in heap)
        if error <= spec.rel_tol * abs(total) + spec.abs_tol:
            return (total, error) if full_output else total
        if bisections >= spec.max_subdivisions:
            raise NumericalFailure(
                f"quadrature on [{a}, {b}] did not converge after "
                f"{spec.max_subdivisions} subdivisions",
                estimate=total,
                error_bound=error,
            )
        _, _, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        for sub_lo, sub_hi in ((lo, mid), (mid, hi)):
            value, err = _refined(f, sub_lo, sub_hi, nodes, weights, vectorized)
            counter += 1
            heapq.heappush(heap, (-err, counter, sub_lo, sub_hi, value))
        bisections += 1


def _checked(f, x):
    y = f(x)
    if not math.isfinite(y):
        raise NumericalFailure(f"function value is not finite at x={x!r}")
    return y


def brent_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    spec: RootSpec = RootSpec(),
) -> float:
    """Root of ``f`` inside the sign-changing bracket ``[lo, hi]``."""
    if not lo < hi:
        if lo == hi and _checked(f, lo) == 0.0:
            return lo
        raise DomainError(f"invalid bracket [{lo}, {hi}]")
    flo, fhi = _checked(f, lo), _checked(f, hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise DomainError(
            f"f does not change sign on [{lo}, {hi}]: f(lo)={flo!r}, f(hi)={fhi!r}"
        )
    rtol = max(spec.rel_tol, 4.0 * _EPS)
    root, info = brentq(
        lambda x: _checked(f, x),
        lo,
        hi,
        xtol=1e-300,
        rtol=rtol,
        maxiter=spec.max_iterations,
        full_output=True,
        disp=False,
    )
    if not info.converged:
        raise NumericalFailure(
            f"Brent iteration cap {spec.max_iterations} reached on [{lo}, {hi}]",
            estimate=root,
        )
    return min(max(root, lo), hi)


def bracket_scan(f: Callable[[float], float], grid: Sequence[float]) -> list[tuple[float, float]]:
    """Sign-change intervals of ``f`` between consecutive grid points.

    A grid point where ``f`` vanishes exactly is returned as the degenerate
    interval ``(g, g)``.
    """
    grid = [float(g) for g in grid]
    if len(grid) < 2:
        raise DomainError("bracket_scan needs at least two grid points")
    if any(b <= a for a, b in zip(grid[:-1], grid[1:])):
        raise DomainError("bracket_scan grid must be strictly increasing")
    values = []
    for g in grid:
        y = f(g)
        if not math.isfinite(y):
            raise NumericalFailure(f"non-finite function value at grid point {g!r}")
        values.append(y)
    out = []
    for i, (g, y) in enumerate(zip(grid, values)):
        if y == 0.0:
            out.append((g, g))
        if i + 1 < len(grid) and y * values[i + 1] < 0:
            out.append((g, grid[i + 1]))
    return out


def stable_quadratic_roots(
    a: float, b: float, c: float, *, sqrt_discriminant: float | None = None
) -> tuple[float, float]:
    """Real roots ``(r_minus, r_plus)`` of ``a x^2 + b x + c`` without cancellation.

    The larger-magnitude root comes from ``q = -(b + sign(b) sqrt(D)) / 2`` as
    ``q / a``; the other one is ``c / q``. A caller that can evaluate
    ``sqrt(b*b - 4*a*c)`` more accurately than by subtraction may pass it in.
    A discriminant that is negative only at rounding level counts as zero.
    """
    if a == 0:
        raise DomainError("leading coefficient is zero; not a quadratic")
    if sqrt_discriminant is None:
        disc = b * b - 4.0 * a * c
        if not math.isfinite(disc):
            raise NumericalFailure("discriminant overflowed")
        if disc < 0 and -disc <= 8.0 * _EPS * max(b * b, abs(4.0 * a * c)):
            disc = 0.0  # double root blurred by rounding
        if disc < 0:
            raise NumericalFailure(f"negative discriminant {disc!r}: no real roots")
        sq = math.sqrt(disc)
    else:
        sq = sqrt_discriminant
        if not (math.isfinite(sq) and sq >= 0):
            raise NumericalFailure(f"invalid square-root discriminant {sq!r}")
    q = -0.5 * (b + math.copysign(sq, b))
    if q == 0.0:
        # b == 0 and disc == 0, so c == 0 as well
        return (0.0, 0.0)
    r1, r2 = q / a, c / q
    return (r1, r2) if r1 <= r2 else (r2, r1)


def golden_section_max(
    f: Callable[[float], float], lo: float, hi: float, *, tol: float = 1e-10, max_iterations: int = 200
) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iterations):
        if b - a <= tol * max(1.0, abs(a) + abs(b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    candidates = [(fc, c), (fd, d), (f(lo), lo), (f(hi), hi)]
    best = max(candidates, key=lambda item: item[0])
    return best[1], best[0]
