"""Moebius calibration energies and the eigenvalue-bound constants.

Test functions on the cylinder ``[0, period) x S^3`` are the coordinates of
a Moebius dilation of S^3 centred at the South pole. Their summed conformal
energy reduces, in polar angle ``phi`` with ``y4 = cos(phi)``, to two
one-dimensional integrals in

    f(phi, delta) = 1 / (1 - cos phi + delta^2 (1 + cos phi)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NumericalFailure
from .geometry import CylinderModel, vol_s3, vol_s4
from .numerics import QuadratureSpec, golden_section_max, integrate
from .spectra import ball_eigenvalue

# first nonzero eigenvalue of -Delta on S^4
SPHERE_MU1 = 4
BALL_BOUND_NOTE = "attained at a flat disk"


@dataclass(frozen=True)
class MoebiusParams:
    """Dilation factor of a Moebius map of S^3; ``delta = 1`` is the identity.

    ``rotation`` (a 4x4 orthogonal matrix) moves the pole away from the South
    pole by conjugation.
    """

    delta: float
    rotation: np.ndarray | None = None

    def __post_init__(self):
        if not (math.isfinite(self.delta) and 0.0 < self.delta <= 1.0):
            raise DomainError(f"delta must lie in (0, 1], got {self.delta}")
        if self.rotation is not None:
            r = np.asarray(self.rotation, dtype=float)
            if r.shape != (4, 4) or not np.allclose(r @ r.T, np.eye(4), atol=1e-12):
                raise DomainError("rotation must be a 4x4 orthogonal matrix")
            object.__setattr__(self, "rotation", r)


@dataclass(frozen=True)
class EnergyResult:
    value: float
    delta: float
    period: float
    quadrature_error_estimate: float


def _dilate(delta: float, y: np.ndarray) -> np.ndarray:
    y4 = y[..., 3]
    denom = (1.0 - y4) + delta * delta * (1.0 + y4)
    out = np.empty_like(y)
    out[..., :3] = 2.0 * delta * y[..., :3] / denom[..., None]
    out[..., 3] = (y4 - 1.0 + delta * delta * (1.0 + y4)) / denom
    return out


def _check_unit(point) -> np.ndarray:
    y = np.asarray(point, dtype=float)
    if y.shape[-1] != 4:
        raise DomainError("points on S^3 are 4-vectors")
    if np.any(np.abs(np.linalg.norm(y, axis=-1) - 1.0) > 1e-12):
        raise DomainError("point is not on the unit sphere (|y| = 1 within 1e-12)")
    return y


def moebius_map_s3(params: MoebiusParams, point) -> np.ndarray:
    """Image of ``point`` (or an ``(..., 4)`` array of points) under the dilation."""
    y = _check_unit(point)
    if params.rotation is None:
        return _dilate(params.delta, y)
    r = params.rotation
    return _dilate(params.delta, y @ r) @ r.T


def moebius_inverse_s3(params: MoebiusParams, point) -> np.ndarray:
    """Inverse map: the same family with dilation ``1 / delta``."""
    y = _check_unit(point)
    if params.rotation is None:
        return _dilate(1.0 / params.delta, y)
    r = params.rotation
    return _dilate(1.0 / params.delta, y @ r) @ r.T


def _f(phi, delta):
    # 1 - cos = 2 sin^2(phi/2), 1 + cos = 2 cos^2(phi/2)
    return 1.0 / (2.0 * np.sin(0.5 * phi) ** 2 + 2.0 * delta * delta * np.cos(0.5 * phi) ** 2)


def _energy_density(delta: float):
    d2 = delta * delta
    g = 1.0 - d2

    def density(phi):
        f = _f(phi, delta)
        s, c = np.sin(phi), np.cos(phi)
        s2 = s * s
        first = f * f * s2 * s2 * (3.0 + 5.0 * c * g * f - 2.0 * g * g * f * f * s2) ** 2
        second = f**4 * s2 * (3.0 * c - 2.0 * s2 * g * f) ** 2
        return 16.0 * d2 * math.pi * first + 64.0 * d2 * d2 * math.pi * second

    return density


def _check_delta(delta):
    if not (math.isfinite(delta) and 0.0 < delta <= 1.0):
        raise DomainError(f"delta must lie in (0, 1], got {delta}")


def cylinder_moebius_energy(
    delta: float, model: CylinderModel, spec: QuadratureSpec = QuadratureSpec()
) -> EnergyResult:
    """Summed energy of the four dilated coordinate functions on the cylinder.

    Tends to ``18 pi^2 period`` as ``delta -> 1`` and grows like ``1/delta``
    as ``delta -> 0``.
    """
    _check_delta(delta)
    value, err = integrate(
        _energy_density(delta),
        0.0,
        math.pi,
        spec,
        breakpoints=(0.5 * math.pi,),
        vectorized=True,
        full_output=True,
    )
    p = model.period
    return EnergyResult(value * p, delta, p, err * p)


class HerschBound(NamedTuple):
    value: float
    delta: float


def hersch_bound_search(
    epsilon: float,
    delta0: float,
    model: CylinderModel,
    *,
    grid_points: int = 256,
    spec: QuadratureSpec = QuadratureSpec(),
) -> HerschBound:
    """Largest ``energy(delta) / period`` over ``min(delta0, 1 - epsilon) <= delta <= 1``.

    A ``grid_points`` sweep locates the best grid cell, then golden-section
    search refines inside the neighbouring cells.
    """
    if not (0.0 < epsilon < 1.0):
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    _check_delta(delta0)
    lo = min(delta0, 1.0 - epsilon)

    def per_period(d):
        return cylinder_moebius_energy(d, model, spec).value / model.period

    grid = np.linspace(lo, 1.0, grid_points)
    values = [per_period(float(d)) for d in grid]
    i = int(np.argmax(values))
    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, len(grid) - 1)])
    x, fx = golden_section_max(per_period, a, b, tol=1e-10)
    if values[i] > fx:
        x, fx = float(grid[i]), values[i]
    return HerschBound(fx, x)


def hersch_bound_constant(epsilon: float, delta0: float, model: CylinderModel) -> float:
    """An admissible constant ``C(epsilon, delta0)`` with ``lam_1 vol <= C period``."""
    return hersch_bound_search(epsilon, delta0, model).value


def moebius_center_of_mass(
    delta: float, model: CylinderModel, spec: QuadratureSpec = QuadratureSpec()
) -> np.ndarray:
    """Integrals of the four dilated coordinates over the round cylinder.

    The first three vanish by symmetry; the fourth is
    ``4 pi period * int_0^pi x4(phi) sin^2(phi) dphi``.
    """
    _check_delta(delta)
    d2 = delta * delta

    def x4(phi):
        s = np.sin(0.5 * phi) ** 2
        c = np.cos(0.5 * phi) ** 2
        # (y4 - 1 + d2 (1 + y4)) / ((1 - y4) + d2 (1 + y4)) with y4 = cos(phi)
        return (-2.0 * s + 2.0 * d2 * c) / (2.0 * s + 2.0 * d2 * c) * np.sin(phi) ** 2

    value = integrate(x4, 0.0, math.pi, spec, breakpoints=(0.5 * math.pi,), vectorized=True)
    return np.array([0.0, 0.0, 0.0, 4.0 * math.pi * model.period * value])


def sphere_coordinate_energy_sum(spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Energy of the five coordinate functions of S^4, summed: ``64 pi^2``.

    Each coordinate has energy ``(mu1^2 + 2 mu1) int z_i^2`` and the squares sum
    to one, so the total is ``24 vol(S^4)``. ``vol(S^4)`` is also computed by
    slicing, ``vol(S^3) int_0^pi sin^3``, and the two must agree. Writing the
    total as ``8 vol(S^4)`` is a known slip; that would give ``64 pi^2 / 3``.
    """
    coefficient = SPHERE_MU1**2 + 2 * SPHERE_MU1
    analytic = coefficient * vol_s4()
    sliced = vol_s3() * integrate(lambda t: np.sin(t) ** 3, 0.0, math.pi, spec, vectorized=True)
    numeric = coefficient * sliced
    if abs(numeric - analytic) > 1e-9 * abs(analytic):
        raise NumericalFailure(
            f"sphere energy mismatch: analytic {analytic!r}, quadrature {numeric!r}",
            estimate=numeric,
        )
    return analytic


def ball_bound_constant() -> float:
    """``lam_1 vol(S^3) = 12 * 2 pi^2 = 24 pi^2``, sharp for the flat ball."""
    return ball_eigenvalue(1) * vol_s3()
