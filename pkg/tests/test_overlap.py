"""Direct quadrature of the detected-mode statistics.

Oracle values: in the narrowband, well-localized regime the engine must
reproduce the closed-form amplifier (mean ratio sqrt(G), variance ratio
2G - 1); outside it, internal consistency is checked against the
proper-time route, exact inequalities, and grid refinement.
"""

import dataclasses
import json
import math

import numpy as np
import pytest

from rindlerlink.channel_analytic import gain_from_kappa
from rindlerlink.errors import HorizonError
from rindlerlink.overlap_engine import (
    DEFAULT_SETTINGS,
    compute_overlap,
    default_k_max,
    envelope_transform,
    homodyne_mean,
    homodyne_variance,
    inner_conjugate_transform,
    inner_signal_transform,
    tau_window_crosscheck,
)
from rindlerlink.wavepackets import DetectorProfile, SourceProfile, TransverseProfile

TP = TransverseProfile(k_perp=1.0)
DET = DetectorProfile(transverse=TP)


def _src(k_so=-10.0, sigma=0.5):
    return SourceProfile(k_so=k_so, sigma=sigma, transverse=TP)


@pytest.mark.parametrize(
    "k_so,sigma,T",
    [
        (-10.0, 0.5, 6.0),   # ratio 0.05, sigma*T = 3
        (-10.0, 1.0, 5.0),   # ratio 0.10, sigma*T = 5
        (-20.0, 1.0, 4.0),   # ratio 0.05, sigma*T = 4, kappa ~ 503
    ],
)
def test_valid_regime_matches_closed_form(k_so, sigma, T):
    src = _src(k_so, sigma)
    result = compute_overlap(src, DET, T)
    kappa = 2.0 * math.pi * abs(k_so) * T
    gain = gain_from_kappa(kappa)
    assert result.mean_ratio == pytest.approx(math.sqrt(gain), rel=1e-6)
    assert result.variance_ratio == pytest.approx(2.0 * gain - 1.0, rel=1e-6)
    assert result.diagnostics.validity.all_ok
    # error estimates honest: quoted error covers the actual deviation
    assert abs(result.mean_ratio - math.sqrt(gain)) <= 5.0 * result.diagnostics.mean_error


def test_particle_creation_negligible_when_localized():
    result = compute_overlap(_src(-10.0, 0.5), DET, 6.0)
    assert result.n_b / result.n_a < 0.05
    assert result.diagnostics.delta_residual < 1e-6


def test_variance_ratio_never_below_shot_noise():
    for T in (0.05, 0.1, 0.5, 2.0):
        assert homodyne_variance(_src(-10.0, 1.0), DET, T) >= 1.0


def test_localization_suppresses_conjugate_route():
    # gb mass falls monotonically as the pulse pulls away from the horizon
    residuals = [
        compute_overlap(_src(-10.0, sigma), DET, 0.2).diagnostics.delta_residual
        for sigma in (10.0, 20.0, 30.0)
    ]
    assert residuals[0] > residuals[1] > residuals[2]


def test_proper_time_crosscheck_agrees():
    # moderately localized point: both routes within 1% and within the
    # combined reported error estimates
    src = _src(-10.0, 25.0)
    T = 0.1
    result = compute_overlap(src, DET, T)
    tau = tau_window_crosscheck(src, DET, T, alpha=1.0 + 0j)
    mean_k = 2.0 * result.mean_ratio
    assert abs(mean_k - tau.mean) / abs(mean_k) < 0.01
    assert abs(mean_k - tau.mean) <= tau.total_error + 2.0 * result.diagnostics.mean_error
    # window mass reproduces the frequency-side mode mass
    assert tau.mass_tau == pytest.approx(result.mass, rel=0.05)


def test_refinement_stability():
    src = _src(-10.0, 25.0)
    T = 0.1
    base = compute_overlap(src, DET, T)
    tight = dataclasses.replace(
        DEFAULT_SETTINGS, panel_cap=0.0625, geometric_ratio=1.2, gl_order=20
    )
    refined = compute_overlap(src, DET, T, tight)
    budget = 3.0 * (base.diagnostics.mean_error + refined.diagnostics.mean_error)
    assert abs(base.mean_ratio - refined.mean_ratio) <= budget


def test_mean_projection_identities():
    src = _src(-10.0, 0.5)
    T = 6.0
    # alpha = 0 short-circuits; real alpha at phi = 0 gives 2*alpha*mean
    assert homodyne_mean(src, DET, T, alpha=0.0) == 0.0
    result = compute_overlap(src, DET, T)
    mean = homodyne_mean(src, DET, T, alpha=0.75 + 0j)
    assert mean == pytest.approx(1.5 * result.mean_ratio, rel=1e-12)
    # the two complex overlap routes sum to the real detected-mode mass
    total = result.signal_overlap + result.conjugate_overlap
    assert total.imag == pytest.approx(0.0, abs=1e-12 * abs(total))
    assert total.real == pytest.approx(result.mass, rel=1e-12)


def test_detected_bump_location():
    # |g_a| peaks where the Doppler map sends the carrier: k = |k_so|*T
    src = _src(-10.0, 25.0)
    T = 0.1
    k_peak = abs(src.k_so) * T
    width = abs(src.k_so) / (2.0 * src.sigma)
    at_peak = abs(inner_signal_transform(src, T, k_peak))
    assert at_peak > abs(inner_signal_transform(src, T, k_peak + 4.0 * width))
    assert at_peak > abs(inner_signal_transform(src, T, max(k_peak - 4.0 * width, 1e-4)))


def test_envelope_transform_linearity_and_conjugacy():
    src = _src(-8.0, 2.0)
    T = 0.3
    ks = np.array([0.5, 2.0, 7.0])
    zero = envelope_transform(lambda u: np.zeros_like(u), -8.0, T, ks)
    assert np.all(zero == 0)
    one = envelope_transform(src.envelope, -8.0, T, ks)
    two = envelope_transform(lambda u: 2.0 * src.envelope(u), -8.0, T, ks)
    assert np.allclose(two, 2.0 * one, rtol=1e-13, atol=0.0)
    # for a real envelope the conjugate route is the reflected conjugate
    g_b = inner_conjugate_transform(src, T, ks)
    g_a_reflected = inner_signal_transform(src, T, -ks)
    assert np.allclose(g_b, np.conj(g_a_reflected), rtol=1e-12, atol=1e-15)


def test_horizon_and_cutoff_guards():
    with pytest.raises(HorizonError):
        compute_overlap(_src(), DET, 0.0)
    with pytest.raises(HorizonError):
        compute_overlap(_src(), DET, -1.0)
    with pytest.raises(ValueError):
        compute_overlap(_src(), DetectorProfile(transverse=TP, k_max=1e-4), 1.0)


def test_detector_cutoff_respected():
    src = _src(-10.0, 0.5)
    det = DetectorProfile(transverse=TP, k_max=50.0)
    result = compute_overlap(src, det, 1.0)
    assert result.diagnostics.k_max == 50.0
    assert default_k_max(src, 1.0) > 50.0


def test_ir_sensitivity_flagged_on_broadband_point():
    result = compute_overlap(_src(-10.0, 0.5), DET, 0.1)
    assert result.diagnostics.subfloor_sensitivity > 0.01
    assert any(w.startswith("ir_sensitive") for w in result.diagnostics.warnings)
    assert not result.diagnostics.validity.all_ok


def test_diagnostics_record_is_json_ready():
    record = compute_overlap(_src(-10.0, 0.5), DET, 6.0).diagnostics.as_record()
    parsed = json.loads(json.dumps(record))
    assert parsed["validity_ok"] is True
    assert parsed["nodes_k"] > 0 and parsed["nodes_u"] > 0


def test_bitwise_deterministic():
    first = compute_overlap(_src(-10.0, 1.0), DET, 0.25)
    second = compute_overlap(_src(-10.0, 1.0), DET, 0.25)
    assert first.mean_ratio == second.mean_ratio
    assert first.variance_ratio == second.variance_ratio
    assert first.signal_overlap == second.signal_overlap
