"""Mode-mixing kernels between inertial plane waves and wedge modes.

A uniformly accelerating detector decomposes the field into boost
eigenmodes of dimensionless frequency k_d1 > 0 (right wedge only).
Against inertial plane waves of longitudinal wavenumber k_s1 and
transverse magnitude k_perp, the transformation has a particle-
conserving kernel ``a_coefficient`` and a particle-creating kernel
``b_coefficient``. Both share the phase

    ((omega + k_s1) / (omega - k_s1)) ** (i * k_d1 / 2),
    omega = sqrt(k_s1**2 + k_perp**2),

and differ only in their thermal prefactors, whose squared-modulus
ratio is exp(2*pi*k_d1): the detailed-balance signature of the thermal
response at dimensionless temperature 1/(2*pi).

The particle-creating kernel also reverses the transverse momentum
(it couples the wedge mode at +k_perp to the plane wave at -k_perp);
with the matched transverse profiles used here that reversal only
relabels an integration variable, so it is recorded in docstrings
rather than in the return values.

Frequencies k_d1 are measured in the boost convention in which the
thermal weights are exp(-2*pi*k_d1); no conversion constants appear
anywhere downstream.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "n_plus",
    "n_minus",
    "exact_phase",
    "a_coefficient",
    "b_coefficient",
    "phase_approx",
]


def n_plus(k_d1):
    """Thermal weight (1 - exp(-2*pi*k)) ** -1 = nbar + 1 (array-safe)."""
    return 1.0 / -np.expm1(-2.0 * math.pi * np.asarray(k_d1, dtype=float))


def n_minus(k_d1):
    """Thermal occupation (exp(2*pi*k) - 1) ** -1 = nbar (array-safe).

    Evaluated as exp(-2*pi*k) / (1 - exp(-2*pi*k)) so large k underflows
    to 0 instead of overflowing the intermediate.
    """
    x = 2.0 * math.pi * np.asarray(k_d1, dtype=float)
    return np.exp(-x) / -np.expm1(-x)


def exact_phase(k_d1: float, k_s1: float, k_perp: float) -> float:
    """Exact phase of both kernels, in radians.

    arg[((omega + k_s1)/(omega - k_s1)) ** (i*k_d1/2)]
      = sign(k_s1) * k_d1 * (ln(omega + |k_s1|) - ln(k_perp))

    written in the form above to stay accurate when omega + k_s1
    suffers cancellation (k_s1 large and negative), using
    (omega - |k_s1|) * (omega + |k_s1|) = k_perp**2.
    """
    if not k_perp > 0:
        raise ValueError(
            f"transverse magnitude k_perp must be positive, got {k_perp} "
            "(the on-axis phase is singular)"
        )
    if k_s1 == 0:
        return 0.0
    omega = math.hypot(k_s1, k_perp)
    return math.copysign(1.0, k_s1) * k_d1 * (math.log(omega + abs(k_s1)) - math.log(k_perp))


def a_coefficient(k_d1: float, k_s1: float, k_perp: float) -> complex:
    """Particle-conserving kernel at (k_d1, k_s1, k_perp).

    Modulus [2*pi*omega*(1 - exp(-2*pi*k_d1))] ** -1/2 times the exact
    shared phase. Requires k_d1 > 0 (right-wedge spectrum) and a
    nonzero momentum.
    """
    if not k_d1 > 0:
        raise ValueError(f"wedge frequency k_d1 must be positive, got {k_d1}")
    if k_s1 == 0 and k_perp == 0:
        raise ValueError("momentum (k_s1, k_perp) must be nonzero")
    omega = math.hypot(k_s1, k_perp)
    modulus = math.sqrt(float(n_plus(k_d1)) / (2.0 * math.pi * omega))
    phase = exact_phase(k_d1, k_s1, k_perp)
    return modulus * complex(math.cos(phase), math.sin(phase))


def b_coefficient(k_d1: float, k_s1: float, k_perp: float) -> complex:
    """Particle-creating kernel at (k_d1, k_s1, k_perp).

    Same shared phase, thermal prefactor [2*pi*omega*(exp(2*pi*k_d1)-1)]**-1/2,
    so |a|**2 / |b|**2 = exp(2*pi*k_d1) pointwise. Couples the wedge
    mode to the plane wave with reversed transverse momentum; with
    matched transverse profiles that reversal is a relabeling and is
    not carried in the value.
    """
    if not k_d1 > 0:
        raise ValueError(f"wedge frequency k_d1 must be positive, got {k_d1}")
    if k_s1 == 0 and k_perp == 0:
        raise ValueError("momentum (k_s1, k_perp) must be nonzero")
    omega = math.hypot(k_s1, k_perp)
    modulus = math.sqrt(float(n_minus(k_d1)) / (2.0 * math.pi * omega))
    phase = exact_phase(k_d1, k_s1, k_perp)
    return modulus * complex(math.cos(phase), math.sin(phase))


def phase_approx(k_d1: float, k_s1: float, k_perp: float, k_so: float) -> complex:
    """Narrowband approximation of the shared kernel phase.

    Valid for |k_s1| >> k_perp and |k_s1 - k_so| << |k_so|; expanding
    the exact phase around the pulse center k_so gives

        exp(s*i*|k_s1/k_so|*k_d1) * exp(s*i*k_d1*(ln(2|k_so|) - ln(k_perp) - 1))

    with s = sign(k_so). The ln(k_perp) term diverges as k_perp -> 0:
    the approximation (like the exact phase) has no on-axis limit, so
    k_perp must stay positive.
    """
    if not k_perp > 0:
        raise ValueError(
            f"transverse magnitude k_perp must be positive, got {k_perp} "
            "(approximated phase diverges logarithmically on axis)"
        )
    if k_so == 0:
        raise ValueError("central wavenumber k_so must be nonzero")
    sign = math.copysign(1.0, k_so)
    phase = sign * k_d1 * (
        abs(k_s1 / k_so) + math.log(2.0 * abs(k_so)) - math.log(k_perp) - 1.0
    )
    return complex(math.cos(phase), math.sin(phase))
