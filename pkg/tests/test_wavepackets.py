"""Mode functions: envelopes, detector profile, validity checks."""

import math

import numpy as np
import pytest

from rindlerlink.kinematics import EmissionEvent
from rindlerlink.wavepackets import (
    DetectorProfile,
    SourceProfile,
    TransverseProfile,
    ValidityThresholds,
    detector_longitudinal,
    evaluate_longitudinal,
    validity_report,
)

TP = TransverseProfile(k_perp=1.0)


def _source(k_so=-10.0, sigma=0.5, origin=None):
    if origin is None:
        return SourceProfile(k_so=k_so, sigma=sigma, transverse=TP)
    return SourceProfile(k_so=k_so, sigma=sigma, transverse=TP, origin=origin)


def test_envelope_peak_and_tail():
    src = _source()
    peak = (2.0 * math.pi * src.sigma**2) ** -0.25 / math.sqrt(src.half_line_mass)
    assert src.envelope(src.u0) == pytest.approx(peak, rel=1e-14)
    assert src.envelope(0.0) == 0.0
    assert src.envelope(-3.0) == 0.0
    assert src.envelope(src.u0 + 10 * src.sigma) < peak * 1e-10


def test_envelope_unit_norm_two_resolutions():
    # half-line renormalization keeps the norm exactly 1 even when the
    # tail would cross u = 0; start just inside the support because the
    # envelope jumps from its boundary value to 0 exactly at u = 0
    src = _source(k_so=-1.0, sigma=0.8)
    for n in (200_001, 400_001):
        u = np.linspace(1e-9, src.u0 + 12 * src.sigma, n)
        norm = np.trapezoid(src.envelope(u) ** 2, u)
        assert norm == pytest.approx(1.0, abs=1e-6)


def test_half_line_mass_value():
    src = _source(k_so=-1.0, sigma=0.8)
    expected = 0.5 * math.erfc(-1.0 / (0.8 * math.sqrt(2.0)))
    assert src.half_line_mass == pytest.approx(expected, rel=1e-15)
    # narrowband pulse: essentially no mass is cut away
    assert _source().half_line_mass == pytest.approx(1.0, abs=1e-16)


def test_longitudinal_mode_phase_and_support():
    src = _source(origin=EmissionEvent(0.7, 0.3))
    k = np.array([-10.5, -9.5, 0.0, 3.0])
    f = evaluate_longitudinal(src, k)
    assert f[2] == 0 and f[3] == 0
    assert abs(f[0]) == pytest.approx(float(src.envelope(10.5)), rel=1e-13)
    assert np.angle(f[0]) == pytest.approx(
        math.remainder(10.5 * 1.0, 2.0 * math.pi), abs=1e-12
    )


def test_detector_profile_flat_wedge():
    k = np.array([-1.0, 0.0, 0.5, 2.0, 2.1])
    vals = detector_longitudinal(k, k_max=2.0)
    flat = 1.0 / math.sqrt(2.0 * math.pi)
    assert list(vals) == [0.0, 0.0, flat, flat, 0.0]


def test_profile_validation():
    with pytest.raises(ValueError):
        SourceProfile(k_so=10.0, sigma=0.5, transverse=TP)
    with pytest.raises(ValueError):
        SourceProfile(k_so=-10.0, sigma=0.0, transverse=TP)
    with pytest.raises(ValueError):
        SourceProfile(k_so=-10.0, sigma=0.5, transverse=TP, shape="lorentzian")
    with pytest.raises(ValueError):
        TransverseProfile(k_perp=0.0)
    with pytest.raises(ValueError):
        TransverseProfile(k_perp=1.0, matched=False)
    with pytest.raises(ValueError):
        DetectorProfile(transverse=TP, k_max=-1.0)
    with pytest.raises(ValueError):
        DetectorProfile(transverse=TP, tau_window=0.0)


def test_validity_report_flags():
    det = DetectorProfile(transverse=TP)
    good = validity_report(_source(k_so=-10.0, sigma=0.5), det, T=10.0)
    assert good.all_ok and good.violated() == []
    broadband = validity_report(_source(k_so=-10.0, sigma=5.0), det, T=10.0)
    assert broadband.violated() == ["narrowband"]
    early = validity_report(_source(k_so=-10.0, sigma=0.5), det, T=0.1)
    assert early.violated() == ["delta_reduction"]
    wide_angle = validity_report(
        SourceProfile(k_so=-2.0, sigma=0.1, transverse=TP), det, T=100.0
    )
    assert "paraxial" in wide_angle.violated()


def test_validity_thresholds_configurable():
    det = DetectorProfile(transverse=TP)
    loose = ValidityThresholds(narrowband_max=0.9, sigma_t_min=0.0, paraxial_max=0.9)
    report = validity_report(_source(k_so=-10.0, sigma=5.0), det, T=0.01, thresholds=loose)
    assert report.all_ok


def test_source_records_emission_invariant():
    src = _source(origin=EmissionEvent(2.0, -0.5))
    assert src.T == 1.5
    assert src.narrowband_ratio == pytest.approx(0.05)
    assert src.u0 == 10.0
