"""Worldline geometry and Doppler kinematics."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rindlerlink.errors import HorizonError
from rindlerlink.kinematics import (
    AcceleratedObserver,
    EmissionEvent,
    doppler_invariant,
    emission_invariant,
    reception_proper_time,
    rindler_to_minkowski,
)


def test_worldline_stays_in_right_wedge():
    for a in (0.5, 1.0, 3.0):
        for tau in (-2.0, -0.5, 0.0, 0.5, 2.0):
            x, t = rindler_to_minkowski(0.0, tau, a)
            assert x > abs(t)


def test_wedge_position_invariant():
    # x**2 - t**2 depends on xi alone: the orbit of the boost
    for xi in (-1.0, 0.0, 0.7):
        a = 2.0
        radius2 = (math.exp(a * xi) / a) ** 2
        for tau in (-1.5, 0.0, 0.8):
            x, t = rindler_to_minkowski(xi, tau, a)
            assert x * x - t * t == pytest.approx(radius2, rel=1e-12)


def test_emission_invariant_is_x_plus_t():
    event = EmissionEvent(x=1.25, t=-0.25)
    assert emission_invariant(event) == 1.0


def test_reception_time_zero_at_unit_aT():
    assert reception_proper_time(1.0, 1.0) == 0.0
    assert reception_proper_time(0.5, 2.0) == 0.0


def test_reception_time_monotone_and_guarded():
    times = [reception_proper_time(T, 1.3) for T in (0.01, 0.1, 1.0, 10.0)]
    assert times == sorted(times)
    for bad in (0.0, -1.0):
        with pytest.raises(HorizonError):
            reception_proper_time(bad, 1.0)


def test_doppler_invariant_basics():
    assert doppler_invariant(0.0, 2.0) == pytest.approx(0.5, rel=1e-15)
    assert doppler_invariant(0.6, 1.0) == pytest.approx(2.0, rel=1e-12)
    for bad in (1.0, -1.0, 1.5):
        with pytest.raises(ValueError):
            doppler_invariant(bad, 1.0)


@settings(derandomize=True, max_examples=100, deadline=None)
@given(
    T=st.floats(min_value=0.01, max_value=100.0),
    a=st.floats(min_value=0.1, max_value=10.0),
)
def test_velocity_round_trip(T, a):
    # receiver velocity at reception reproduces the invariant
    v = math.tanh(a * reception_proper_time(T, a))
    assert doppler_invariant(v, a) == pytest.approx(T, rel=1e-9)


@settings(derandomize=True, max_examples=100, deadline=None)
@given(
    v=st.floats(min_value=-0.999, max_value=0.999),
    a=st.floats(min_value=0.1, max_value=10.0),
)
def test_doppler_symmetry_product(v, a):
    # approaching and receding at the same speed are reciprocal up to 1/a^2
    product = doppler_invariant(v, a) * doppler_invariant(-v, a) * a * a
    assert product == pytest.approx(1.0, abs=5e-15)


def test_observer_requires_positive_acceleration():
    with pytest.raises(ValueError):
        AcceleratedObserver(a=0.0)
    assert AcceleratedObserver(a=2.0).a == 2.0
