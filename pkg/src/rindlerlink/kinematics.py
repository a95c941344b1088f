"""Worldline geometry for a uniformly accelerating receiver.

Natural units c = 1 throughout; lengths and times share one unit. The
receiver rides the hyperbola x**2 - t**2 = 1/a**2 (right Rindler wedge,
detector pinned at Rindler position xi = 0 so its proper acceleration
is exactly ``a``). The sender is inertial and enters only through the
emission event of the light pulse. Everything the channel needs from
the geometry collapses into one number: the null invariant T = x + t of
the left-moving ray, conserved along the ray and positive iff the ray
crosses into the wedge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import HorizonError

__all__ = [
    "AcceleratedObserver",
    "EmissionEvent",
    "rindler_to_minkowski",
    "emission_invariant",
    "reception_proper_time",
    "doppler_invariant",
]


@dataclass(frozen=True)
class AcceleratedObserver:
    """Receiver with constant proper acceleration a > 0."""

    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"proper acceleration must be positive, got {self.a}")


@dataclass(frozen=True)
class EmissionEvent:
    """Minkowski event (x, t) on the beam axis where the pulse originates."""

    x: float
    t: float


def rindler_to_minkowski(xi: float, tau: float, a: float) -> tuple[float, float]:
    """Map Rindler coordinates (xi, tau) to Minkowski (x, t).

    x = exp(a*xi) * cosh(a*tau) / a
    t = exp(a*xi) * sinh(a*tau) / a

    The image always satisfies x**2 - t**2 = exp(2*a*xi) / a**2 > 0.
    """
    if not a > 0:
        raise ValueError(f"proper acceleration must be positive, got {a}")
    scale = math.exp(a * xi) / a
    return scale * math.cosh(a * tau), scale * math.sinh(a * tau)


def emission_invariant(event: EmissionEvent) -> float:
    """Null invariant T = x + t of the left-moving ray through the event."""
    return event.x + event.t


def reception_proper_time(T: float, a: float) -> float:
    """Proper time at which the receiver meets the ray of invariant T.

    On the xi = 0 worldline, x(tau) + t(tau) = exp(a*tau)/a, so the
    unique crossing is tau = ln(a*T)/a. T <= 0 means the ray runs
    behind the horizon and is never received.
    """
    if not a > 0:
        raise ValueError(f"proper acceleration must be positive, got {a}")
    if not T > 0:
        raise HorizonError(
            f"null invariant T={T} is non-positive: beyond the Rindler horizon, "
            "pulse never received"
        )
    return math.log(a * T) / a


def doppler_invariant(v: float, a: float) -> float:
    """Null invariant reconstructed from the receiver velocity at reception.

    A receiver moving with instantaneous velocity v (along +x) when the
    pulse arrives sees it red- or blue-shifted by the relativistic
    Doppler factor; the corresponding invariant is

        T = sqrt((1 + v) / (1 - v)) / a

    and agrees with reception_proper_time via v = tanh(a*tau).
    """
    if not a > 0:
        raise ValueError(f"proper acceleration must be positive, got {a}")
    if not abs(v) < 1:
        raise ValueError(f"receiver speed must satisfy |v| < 1, got {v}")
    return math.sqrt((1.0 + v) / (1.0 - v)) / a
