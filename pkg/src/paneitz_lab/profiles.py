"""Radial profiles over exponential-type solution bases.

A profile is a finite linear combination of the functions below, evaluated
together with derivatives of order 0 to 4 (numpy arrays are accepted).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NumericalFailure


class Basis(str, Enum):
    HYPERBOLIC = "hyperbolic"  # cosh lt, sinh lt, cosh (l+2)t, sinh (l+2)t
    AFFINE_0 = "affine-0"  # 1, t, cosh 2t, sinh 2t
    DECAYING_BALL = "decaying-ball"  # exp(-lt), exp(-(l+2)t)
    PERIODIC = "periodic"  # cos wt, sin wt


@dataclass(frozen=True)
class BasisFunction:
    """One of ``cosh, sinh, exp, cos, sin`` at ``rate``, or the monomial ``t**power``.

    ``shift`` applies to ``exp`` only, giving ``exp(rate * (t - shift))``.
    """

    kind: str
    rate: float = 0.0
    power: int = 0
    shift: float = 0.0

    def __call__(self, t, order: int = 0):
        t = np.asarray(t, dtype=float)
        k = self.rate
        with np.errstate(over="raise", invalid="raise"):
            try:
                if self.kind == "cosh":
                    f = np.cosh if order % 2 == 0 else np.sinh
                    out = k**order * f(k * t)
                elif self.kind == "sinh":
                    f = np.sinh if order % 2 == 0 else np.cosh
                    out = k**order * f(k * t)
                elif self.kind == "exp":
                    out = k**order * np.exp(k * (t - self.shift))
                elif self.kind in ("cos", "sin"):
                    shift = 0 if self.kind == "cos" else 1
                    phase = (order + shift) % 4
                    trig = [np.cos, lambda x: -np.sin(x), lambda x: -np.cos(x), np.sin][phase]
                    out = k**order * trig(k * t)
                elif self.kind == "poly":
                    p = self.power
                    if order > p:
                        out = np.zeros_like(t)
                    else:
                        out = math.perm(p, order) * t ** (p - order)
                else:
                    raise ValueError(f"unknown basis kind {self.kind!r}")
            except FloatingPointError as exc:
                raise NumericalFailure(
                    f"{self.kind}({k} t) overflows at the requested t"
                ) from exc
        return out if out.ndim else float(out)


def basis_functions(basis: Basis, ell: int, frequency: float = 0.0) -> tuple[BasisFunction, ...]:
    basis = Basis(basis)
    if basis is Basis.HYPERBOLIC:
        return (
            BasisFunction("cosh", ell),
            BasisFunction("sinh", ell),
            BasisFunction("cosh", ell + 2),
            BasisFunction("sinh", ell + 2),
        )
    if basis is Basis.AFFINE_0:
        return (
            BasisFunction("poly", power=0),
            BasisFunction("poly", power=1),
            BasisFunction("cosh", 2),
            BasisFunction("sinh", 2),
        )
    if basis is Basis.DECAYING_BALL:
        return (BasisFunction("exp", -ell), BasisFunction("exp", -(ell + 2)))
    return (BasisFunction("cos", frequency), BasisFunction("sin", frequency))


@dataclass(frozen=True)
class RadialProfile:
    """Radial eigenfunction ``u(t)`` as coefficients over a named basis.

    ``frequency`` is used only by the periodic basis of cylinder modes.
    """

    ell: int
    basis: Basis
    coefficients: tuple[float, ...]
    frequency: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "basis", Basis(self.basis))
        expected = len(basis_functions(self.basis, self.ell, self.frequency))
        if len(self.coefficients) != expected:
            raise ValueError(
                f"{self.basis.value} basis needs {expected} coefficients, "
                f"got {len(self.coefficients)}"
            )

    @property
    def functions(self) -> tuple[BasisFunction, ...]:
        return basis_functions(self.basis, self.ell, self.frequency)

    def __call__(self, t, order: int = 0):
        return self.evaluate(t, order)

    def evaluate(self, t, order: int = 0):
        total = 0.0
        for c, phi in zip(self.coefficients, self.functions):
            if c != 0.0:
                total = total + c * phi(t, order)
        if np.ndim(t) and np.ndim(total) == 0:
            total = np.full(np.shape(t), float(total))
        return total

    def term_scale(self, t, order: int = 0):
        """Sum of absolute term magnitudes; the rounding scale of :meth:`evaluate`."""
        total = 0.0
        for c, phi in zip(self.coefficients, self.functions):
            if c != 0.0:
                total = total + abs(c * phi(t, order))
        return total

    def scaled(self, factor: float) -> "RadialProfile":
        return RadialProfile(
            self.ell, self.basis, tuple(factor * c for c in self.coefficients), self.frequency
        )


def constant_profile() -> RadialProfile:
    return RadialProfile(0, Basis.AFFINE_0, (1.0, 0.0, 0.0, 0.0))
