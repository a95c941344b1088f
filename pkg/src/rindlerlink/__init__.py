"""Quantum communication from an inertial sender to an accelerating receiver.

The package evaluates the homodyne channel of this link two ways: by
direct numerical quadrature of the field-overlap integrals
(:mod:`rindlerlink.overlap_engine`) and by the closed-form amplifier
model (:mod:`rindlerlink.channel_analytic`), then feeds either channel
summary into a Gaussian CV-QKD rate calculation
(:mod:`rindlerlink.gaussian_qkd`). Sweeps, deterministic tabular
output, figures and the command line live in :mod:`rindlerlink.sweep`,
:mod:`rindlerlink.report` and :mod:`rindlerlink.cli`.
"""

__version__ = "0.1.0"

from .channel_analytic import ChannelParams, effective_gain, gain_from_kappa
from .errors import ConfigError, DiscretizationError, HorizonError, NonConvergenceError
from .gaussian_qkd import KeyRateResult, key_rate, optimize_modulation, threshold_kappa
from .kinematics import (
    AcceleratedObserver,
    EmissionEvent,
    doppler_invariant,
    emission_invariant,
    reception_proper_time,
    rindler_to_minkowski,
)
from .overlap_engine import (
    OverlapResult,
    QuadratureSettings,
    compute_overlap,
    homodyne_mean,
    homodyne_variance,
    tau_window_crosscheck,
)
from .config import SweepConfig, apply_overrides, build_sweep_config, load_config
from .sweep import SweepRow, emit_outputs, run_sweep
from .wavepackets import DetectorProfile, SourceProfile, TransverseProfile, validity_report

__all__ = [
    "__version__",
    "AcceleratedObserver",
    "EmissionEvent",
    "rindler_to_minkowski",
    "emission_invariant",
    "reception_proper_time",
    "doppler_invariant",
    "SourceProfile",
    "DetectorProfile",
    "TransverseProfile",
    "validity_report",
    "QuadratureSettings",
    "OverlapResult",
    "compute_overlap",
    "homodyne_mean",
    "homodyne_variance",
    "tau_window_crosscheck",
    "ChannelParams",
    "effective_gain",
    "gain_from_kappa",
    "KeyRateResult",
    "key_rate",
    "optimize_modulation",
    "threshold_kappa",
    "SweepConfig",
    "load_config",
    "apply_overrides",
    "build_sweep_config",
    "SweepRow",
    "run_sweep",
    "emit_outputs",
    "ConfigError",
    "HorizonError",
    "NonConvergenceError",
    "DiscretizationError",
]
