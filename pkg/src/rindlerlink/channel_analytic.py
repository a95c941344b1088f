"""Closed-form model of the accelerated-receiver channel.

In the narrowband, well-localized limit the link acts on the detected
quadratures as a phase-insensitive linear amplifier followed by loss:
the mean amplitude scales by sqrt(G) and the vacuum variance rises to
2G - 1, where the gain depends only on the dimensionless combination

    kappa = 2 * pi * |k_so| * T

of the pulse's central wavenumber k_so and the null invariant T = x + t
of its emission event. The thermal weight q = exp(-kappa) is the
Boltzmann-like factor the accelerating detector assigns to the Doppler-
shifted pulse; G = 1 / (1 - q). Detector loss with transmissivity eta
acts after the amplification: mean scales by sqrt(eta), variance mixes
toward the vacuum as eta*V + (1 - eta).

The identity (1 + q)/(1 - q) == 2G - 1 pins the amplifier picture: a
gain-G amplifier with vacuum idler is the unique Gaussian map with this
mean/variance pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import HorizonError
from .kinematics import doppler_invariant

__all__ = [
    "ChannelParams",
    "gain_from_kappa",
    "effective_gain",
    "kappa_from_geometry",
    "mean_quadrature",
    "quadrature_variance",
    "doppler_gain_profile",
]


def kappa_from_geometry(k_so: float, T: float) -> float:
    """Dimensionless channel parameter kappa = 2*pi*|k_so|*T."""
    if k_so == 0:
        raise ValueError("central wavenumber k_so must be nonzero")
    if not T > 0:
        raise HorizonError(
            f"null invariant T={T} is non-positive: beyond the Rindler horizon, "
            "gain undefined"
        )
    return 2.0 * math.pi * abs(k_so) * T


def gain_from_kappa(kappa: float) -> float:
    """Effective gain G = 1 / (1 - exp(-kappa)) for kappa > 0.

    Evaluated through expm1 so that e.g. kappa = ln 2 gives exactly 2.0
    and large kappa saturates to 1.0 without cancellation.
    """
    if not kappa > 0:
        raise HorizonError(f"channel parameter kappa={kappa} must be positive")
    if math.isinf(kappa):
        return 1.0
    return 1.0 / -math.expm1(-kappa)


def effective_gain(k_so: float, T: float) -> float:
    """Gain of the link for a pulse of central wavenumber k_so emitted at T."""
    return gain_from_kappa(kappa_from_geometry(k_so, T))


@dataclass(frozen=True)
class ChannelParams:
    """Gaussian-channel summary of one link configuration.

    kappa:  dimensionless channel parameter 2*pi*|k_so|*T
    eta:    receiver transmissivity in (0, 1]
    alpha:  coherent signal amplitude (complex)
    phi:    measured quadrature angle in radians
    """

    kappa: float
    eta: float = 1.0
    alpha: complex = 0.0j
    phi: float = 0.0
    q: float = field(init=False)
    gain: float = field(init=False)

    def __post_init__(self):
        if not self.kappa > 0:
            raise HorizonError(f"channel parameter kappa={self.kappa} must be positive")
        if not 0.0 < self.eta <= 1.0:
            raise ValueError(f"transmissivity eta must lie in (0, 1], got {self.eta}")
        object.__setattr__(self, "q", math.exp(-self.kappa))
        object.__setattr__(self, "gain", gain_from_kappa(self.kappa))


def mean_quadrature(params: ChannelParams) -> float:
    """Mean detected quadrature, LO-normalized.

    <X(phi)> = 2*Re(alpha * exp(i*phi)) * sqrt(G) * sqrt(eta)
    """
    projection = 2.0 * (params.alpha * complex(math.cos(params.phi), math.sin(params.phi))).real
    return projection * math.sqrt(params.gain) * math.sqrt(params.eta)


def quadrature_variance(params: ChannelParams) -> float:
    """Detected quadrature variance in shot-noise units.

    Unit-efficiency value (1 + q)/(1 - q); loss mixes it with vacuum:
    eta*V + (1 - eta). Phase-insensitive, so independent of phi.
    """
    v_unit = (1.0 + params.q) / -math.expm1(-params.kappa)
    return params.eta * v_unit + (1.0 - params.eta)


def doppler_gain_profile(
    a: float, k_so: float, v_list: list[float]
) -> list[tuple[float, float, float]]:
    """Gain as a function of receiver velocity at reception.

    For each velocity v, the emission invariant is T = sqrt((1+v)/(1-v))/a
    and the gain is G(k_so, T). Approaching receivers (v < 0) intercept
    the ray earlier (smaller T), see it blue-shifted less strongly in
    their own frame history, and get the larger gain; T is strictly
    increasing in v and G strictly decreasing in T.

    Returns a list of (v, T, G) triples in the order given.
    """
    out = []
    for v in v_list:
        T = doppler_invariant(v, a)
        out.append((v, T, effective_gain(k_so, T)))
    return out
