"""Mode indices, model manifolds and the volume conventions they share.

Three model 4-manifolds are supported:

* the periodic cylinder ``[0, period) x S^3`` with its round product metric,
* the unit ball in cylindrical coordinates ``t = -log r``, ``t >= 0``,
* the radial annulus ``[0, tau] x S^3`` with boundary weights ``alpha`` at
  ``t = 0`` and ``1 - alpha`` at ``t = tau``.

Boundary volumes are normalized to ``vol(S^3) = 2 pi^2`` throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

MAX_ELL = 10**6
ALPHA_MIN = 1e-6
ALPHA_MAX = 1.0 - 1e-6
TAU_MIN = 1e-6
TAU_MAX = 350.0


@dataclass(frozen=True)
class ModeIndex:
    """Spherical-harmonic level ``ell`` on S^3."""

    ell: int

    def __post_init__(self):
        if isinstance(self.ell, bool) or not isinstance(self.ell, int):
            raise DomainError(f"ell must be an integer, got {self.ell!r}")
        if self.ell < 0:
            raise DomainError(f"ell must be nonnegative, got {self.ell}")
        if self.ell > MAX_ELL:
            raise DomainError(f"ell={self.ell} exceeds the supported cap {MAX_ELL}")

    @property
    def mu(self) -> int:
        return laplace_eigenvalue_s3(self)

    @property
    def multiplicity(self) -> int:
        return multiplicity_s3(self)


def as_mode(mode) -> ModeIndex:
    return mode if isinstance(mode, ModeIndex) else ModeIndex(int(mode))


@dataclass(frozen=True)
class CylinderModel:
    """Round cylinder ``[0, period) x S^3`` with periodic identification."""

    period: float

    def __post_init__(self):
        if not (math.isfinite(self.period) and self.period > 0):
            raise DomainError(f"period must be positive and finite, got {self.period}")

    @property
    def volume(self) -> float:
        return vol_s3() * self.period


@dataclass(frozen=True)
class BallModel:
    """Flat unit ball, conformal factor normalized so ``e^{f(0)} = 1``."""

    @property
    def boundary_volume(self) -> float:
        return vol_s3()


@dataclass(frozen=True)
class AnnulusModel:
    """Radial annulus with log-modulus ``tau`` and boundary weight ``alpha``.

    ``alpha`` is the weight ``e^{3f(0)}`` of the outer sphere; the inner
    sphere carries ``1 - alpha`` so the two always sum to one.
    """

    tau: float
    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.tau) and TAU_MIN <= self.tau <= TAU_MAX):
            raise DomainError(f"tau must lie in [{TAU_MIN}, {TAU_MAX}], got {self.tau}")
        if not (math.isfinite(self.alpha) and ALPHA_MIN <= self.alpha <= ALPHA_MAX):
            raise DomainError(
                f"alpha must lie in [{ALPHA_MIN}, {ALPHA_MAX}] (degenerate boundary), "
                f"got {self.alpha}"
            )

    @property
    def beta(self) -> float:
        return self.alpha * (1.0 - self.alpha)

    @property
    def rho(self) -> float:
        return math.exp(-self.tau)

    @property
    def inner_weight(self) -> float:
        return 1.0 - self.alpha

    @classmethod
    def from_rho(cls, rho: float, alpha: float) -> "AnnulusModel":
        if not (0.0 < rho < 1.0):
            raise DomainError(f"rho must lie in (0, 1), got {rho}")
        return cls(-math.log(rho), alpha)


@dataclass(frozen=True)
class GeometricConstants:
    vol_s3: float
    vol_s4: float


def vol_s3() -> float:
    return 2.0 * math.pi**2


def vol_s4() -> float:
    return 8.0 * math.pi**2 / 3.0


CONSTANTS = GeometricConstants(vol_s3=vol_s3(), vol_s4=vol_s4())


def laplace_eigenvalue_s3(mode) -> int:
    """Eigenvalue ``ell (ell + 2)`` of ``-Delta`` on S^3 at level ``ell``."""
    ell = as_mode(mode).ell
    return ell * (ell + 2)


def multiplicity_s3(mode) -> int:
    """Dimension ``(ell + 1)^2`` of the degree-``ell`` harmonics on S^3."""
    ell = as_mode(mode).ell
    return (ell + 1) ** 2


def alpha_from_volume_ratio(ratio: float) -> float:
    """Outer boundary weight for ``ratio = vol(inner) / vol(outer)``.

    The two weights ``alpha`` and ``1 - alpha`` are proportional to the two
    boundary volumes, so ``(1 - alpha) / alpha == ratio``.
    """
    if not (math.isfinite(ratio) and ratio > 0):
        raise DomainError(f"volume ratio must be positive and finite, got {ratio}")
    return 1.0 / (1.0 + ratio)
