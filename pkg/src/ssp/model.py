"""Physical model of a point mass riding the midpoint of a stretched string.

A mass ``m`` sits halfway along an elastic string clamped at both ends. Each
half has unstretched length ``l0`` and stretched rest length ``l > l0``; the
string constant is ``sigma`` (force per relative elongation of a half). For a
transverse displacement ``y`` each half has length ``sqrt(l^2 + y^2)``, so the
restoring force is nonlinear in ``y`` even though the string itself is
Hookean. All quantities assume one coherent unit system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameters

# Amplitudes below DEGENERACY_THRESHOLD * l are treated as the linear limit.
DEGENERACY_THRESHOLD = 1e-9

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class StringParams:
    """Static parameters of the string-mass system.

    l0    unstretched half-length, > 0
    l     stretched half-length at rest, > l0
    sigma string constant (tension per unit relative elongation), > 0
    mass  midpoint mass, > 0
    """

    l0: float
    l: float
    sigma: float
    mass: float

    def __post_init__(self) -> None:
        for name in ("l0", "l", "sigma", "mass"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise InvalidParameters(f"{name} must be finite, got {v!r}")
        if self.l0 <= 0.0:
            raise InvalidParameters(f"l0 must be positive, got {self.l0!r}")
        if self.l <= self.l0:
            raise InvalidParameters(
                f"l must exceed l0 (got l={self.l!r}, l0={self.l0!r})"
            )
        if self.sigma <= 0.0:
            raise InvalidParameters(f"sigma must be positive, got {self.sigma!r}")
        if self.mass <= 0.0:
            raise InvalidParameters(f"mass must be positive, got {self.mass!r}")

    @property
    def epsilon(self) -> float:
        """Rest elongation of a half, l - l0."""
        return self.l - self.l0

    @property
    def rest_tension(self) -> float:
        """Tension of either half at y = 0: sigma * (l - l0) / l0."""
        return self.sigma * (self.l - self.l0) / self.l0

    @property
    def linear_stiffness(self) -> float:
        """Squared angular frequency of the linearized motion, 2T/(m*l)."""
        return 2.0 * self.rest_tension / (self.mass * self.l)


@dataclass(frozen=True)
class Oscillation:
    """A release-from-rest oscillation: parameters plus initial amplitude.

    Negative amplitudes are mapped to their absolute value (the force is odd,
    so the motion is mirror symmetric).
    """

    params: StringParams
    y0: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.y0):
            raise InvalidParameters(f"y0 must be finite, got {self.y0!r}")
        object.__setattr__(self, "y0", abs(self.y0))

    @property
    def is_degenerate(self) -> bool:
        return self.y0 < DEGENERACY_THRESHOLD * self.params.l


def tension(p: StringParams, y: float) -> float:
    """Tension of one half at displacement y: sigma*(sqrt(l^2+y^2)-l0)/l0."""
    return p.sigma * (math.hypot(p.l, y) - p.l0) / p.l0


def vertical_force(p: StringParams, y: float) -> float:
    """Net transverse force on the mass (both halves), restoring for y != 0."""
    r = math.hypot(p.l, y)
    return -2.0 * p.sigma * ((r - p.l0) / p.l0) * (y / r)


def acceleration(p: StringParams, y: float) -> float:
    return vertical_force(p, y) / p.mass


def energy(p: StringParams, y: float, v: float) -> float:
    """Conserved energy per unit mass of the transverse motion.

    E = v^2/2 + (2*sigma/m) * (y^2/(2*l0) - sqrt(l^2+y^2)); the potential
    term's derivative is -acceleration(y).
    """
    return 0.5 * v * v + (2.0 * p.sigma / p.mass) * (
        y * y / (2.0 * p.l0) - math.hypot(p.l, y)
    )


def rayleigh_period(p: StringParams) -> float:
    """Period of the linearized (harmonic) motion, 2*pi/sqrt(2T/(m*l)).

    Exact in the y0 -> 0 limit and a strict upper bound on the true period
    for any finite amplitude.
    """
    return TWO_PI / math.sqrt(p.linear_stiffness)


def rayleigh_solution(p: StringParams, y0: float, t: float) -> float:
    """Harmonic-approximation trajectory y(t) = y0*cos(omega0*t)."""
    return y0 * math.cos(math.sqrt(p.linear_stiffness) * t)
