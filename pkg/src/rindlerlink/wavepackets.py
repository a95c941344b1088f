"""Source and detector mode functions.

The signal and local-oscillator pulses share a factored mode function:
a longitudinal envelope over the wavenumber k_s1 times a transverse
profile over (k_2, k_3). Only left-moving pulses (k_s1 < 0, so central
wavenumber k_so < 0) are supported; the envelope is parameterized by
the positive magnitude u = |k_s1|.

The default longitudinal envelope is a Gaussian centred at u0 = |k_so|
with standard deviation sigma,

    env(u) = (2*pi*sigma**2) ** -0.25 * exp(-(u - u0)**2 / (4*sigma**2)),

renormalized on the half line u > 0 so the mode has exactly unit norm
even when the tail would spill past u = 0. The accelerated detector's
longitudinal profile is flat, (2*pi) ** -0.5 on 0 < k_d1 <= k_max and
zero elsewhere; it is deliberately left unnormalized (every reported
quantity is an LO-normalized ratio in which the constant cancels) and
k_max acts purely as a quadrature truncation.

Transverse profiles are carried abstractly: source and detector are
assumed matched (unit overlap), so the transverse sector contributes
only its normalization and the reference magnitude k_perp used by the
kernel phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kinematics import EmissionEvent, emission_invariant

__all__ = [
    "TransverseProfile",
    "SourceProfile",
    "DetectorProfile",
    "evaluate_longitudinal",
    "detector_longitudinal",
    "ValidityThresholds",
    "ValidityReport",
    "validity_report",
]


@dataclass(frozen=True)
class TransverseProfile:
    """Matched transverse envelope, reduced to its reference magnitude.

    k_perp > 0 is the characteristic transverse wavenumber entering the
    kernel phase; ``matched`` records that the detector profile is the
    phase-conjugate partner of the source (the only supported case), in
    which the mutual overlap integrates to exactly 1.
    """

    k_perp: float
    matched: bool = True

    def __post_init__(self):
        if not self.k_perp > 0:
            raise ValueError(f"k_perp must be positive, got {self.k_perp}")
        if not self.matched:
            raise ValueError("unmatched transverse profiles are not supported")

    @property
    def norm(self) -> float:
        return 1.0


@dataclass(frozen=True)
class SourceProfile:
    """Longitudinal Gaussian envelope plus transverse profile and origin."""

    k_so: float
    sigma: float
    transverse: TransverseProfile
    origin: EmissionEvent = EmissionEvent(1.0, 0.0)
    shape: str = "gaussian"
    # fraction of the full-line Gaussian mass that survives the u > 0 cut
    half_line_mass: float = field(init=False)

    def __post_init__(self):
        if not self.k_so < 0:
            raise ValueError(
                f"central wavenumber k_so must be negative (left-mover), got {self.k_so}"
            )
        if not self.sigma > 0:
            raise ValueError(
                f"sigma must be positive, got {self.sigma} "
                "(zero-width envelope is unnormalizable)"
            )
        if self.shape != "gaussian":
            raise ValueError(f"unsupported envelope shape {self.shape!r}")
        mass = 0.5 * math.erfc(-self.u0 / (self.sigma * math.sqrt(2.0)))
        object.__setattr__(self, "half_line_mass", mass)

    @property
    def u0(self) -> float:
        """Center of the envelope in wavenumber magnitude, |k_so|."""
        return abs(self.k_so)

    @property
    def narrowband_ratio(self) -> float:
        return self.sigma / abs(self.k_so)

    @property
    def T(self) -> float:
        """Null invariant x + t of the stored emission event."""
        return emission_invariant(self.origin)

    def envelope(self, u):
        """Unit-norm longitudinal envelope at wavenumber magnitude u >= 0.

        Vectorized; integrates to 1 in |.|**2 over u in (0, inf).
        """
        u = np.asarray(u, dtype=float)
        peak = (2.0 * math.pi * self.sigma**2) ** -0.25
        val = peak * np.exp(-((u - self.u0) ** 2) / (4.0 * self.sigma**2))
        return np.where(u > 0, val / math.sqrt(self.half_line_mass), 0.0)


def evaluate_longitudinal(profile: SourceProfile, k_s1):
    """Longitudinal mode function f_j(k_s1), propagation phase included.

    f_j(k_s1) = env(|k_s1|) * exp(i*|k_s1|*(x + t)) for k_s1 < 0, else 0.
    The phase carries the stored origin; along the left-moving ray only
    the combination T = x + t enters.
    """
    k_s1 = np.asarray(k_s1, dtype=float)
    u = -k_s1
    T = profile.T
    amp = np.where(k_s1 < 0, profile.envelope(np.abs(u)), 0.0)
    return amp * np.exp(1j * np.where(k_s1 < 0, u, 0.0) * T)


def detector_longitudinal(k_d1, k_max: float):
    """Flat detector profile: (2*pi) ** -0.5 on 0 < k_d1 <= k_max, else 0."""
    k_d1 = np.asarray(k_d1, dtype=float)
    return np.where(
        (k_d1 > 0) & (k_d1 <= k_max), 1.0 / math.sqrt(2.0 * math.pi), 0.0
    )


@dataclass(frozen=True)
class DetectorProfile:
    """Accelerated receiver's mode selection.

    k_max:      upper cutoff of the flat wedge-frequency profile; None
                lets the overlap engine choose a cutoff that covers both
                the thermal kernels and the detected pulse.
    tau_window: half-width of the photocurrent integration window in
                units of 1/a (dimensionless a*tau); None auto-scales to
                the pulse duration.
    """

    transverse: TransverseProfile
    k_max: float | None = None
    tau_window: float | None = None

    def __post_init__(self):
        if self.k_max is not None and not self.k_max > 0:
            raise ValueError(f"k_max must be positive, got {self.k_max}")
        if self.tau_window is not None and not self.tau_window > 0:
            raise ValueError(f"tau_window must be positive, got {self.tau_window}")


@dataclass(frozen=True)
class ValidityThresholds:
    """Configurable bounds for the approximation checks."""

    narrowband_max: float = 0.1
    sigma_t_min: float = 3.0
    paraxial_max: float = 0.1


@dataclass(frozen=True)
class ValidityReport:
    """Dimensionless ratios plus satisfied/violated flags.

    narrowband:      sigma/|k_so| small (envelope narrow next to the carrier)
    delta_reduction: sigma*T large (pulse many cycles from the horizon, so
                     the detected spectrum collapses onto |k_so|*T)
    paraxial:        k_perp/|k_so| small (transverse momenta negligible)
    """

    narrowband_ratio: float
    sigma_t: float
    paraxial_ratio: float
    narrowband_ok: bool
    delta_reduction_ok: bool
    paraxial_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.narrowband_ok and self.delta_reduction_ok and self.paraxial_ok

    def violated(self) -> list[str]:
        out = []
        if not self.narrowband_ok:
            out.append("narrowband")
        if not self.delta_reduction_ok:
            out.append("delta_reduction")
        if not self.paraxial_ok:
            out.append("paraxial")
        return out


def validity_report(
    src: SourceProfile,
    det: DetectorProfile,
    T: float,
    thresholds: ValidityThresholds = ValidityThresholds(),
) -> ValidityReport:
    """Check each closed-form approximation against its precondition.

    Advisory only: nothing is rejected here. Points failing any flag are
    still computable by the overlap engine, they just cannot be expected
    to match the closed-form amplifier model.
    """
    narrowband = src.narrowband_ratio
    sigma_t = src.sigma * T
    paraxial = src.transverse.k_perp / abs(src.k_so)
    return ValidityReport(
        narrowband_ratio=narrowband,
        sigma_t=sigma_t,
        paraxial_ratio=paraxial,
        narrowband_ok=narrowband <= thresholds.narrowband_max,
        delta_reduction_ok=sigma_t >= thresholds.sigma_t_min,
        paraxial_ok=paraxial <= thresholds.paraxial_max,
    )
