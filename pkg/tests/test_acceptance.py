"""Acceptance gate: every release criterion, one test and one verdict
line each, at the tolerances the criteria state.

These call the same checks as ``rindlerlink selftest``. Criterion 3 is
expected to fail and is asserted anyway: its concordance suite pins the
pulse bandwidth to sigma*T = 0.05*kappa/(2*pi) <= 0.05 while the
closed-form amplifier needs sigma*T >> 1, so the suite evaluates the
quadrature engine outside the regime where the closed form holds and
the 5% agreement bound is unattainable there (observed deviations reach
several hundred percent). The bound is not weakened here; the red line
is the honest report. See check_3_concordance's docstring for the
measured numbers.
"""

from rindlerlink import acceptance

_BY_NUMBER = {number: (name, fn) for number, name, fn in acceptance.CHECKS}


def _run(number: int) -> None:
    name, fn = _BY_NUMBER[number]
    ok, detail = fn()
    print(f"[{'PASS' if ok else 'FAIL'}] check {number} ({name}): {detail}")
    assert ok, f"check {number} ({name}): {detail}"


def test_criterion_1_closed_form_gain():
    _run(1)


def test_criterion_2_amplifier_identity():
    _run(2)


def test_criterion_3_engine_concordance_suite():
    # expected red: mutually inconsistent suite preconditions, see module docstring
    _run(3)


def test_criterion_4_proper_time_crosscheck():
    _run(4)


def test_criterion_5_kinematics():
    _run(5)


def test_criterion_6_mode_mixing():
    _run(6)


def test_criterion_7_gaussian_engine():
    _run(7)


def test_criterion_8_rate_shape():
    _run(8)


def test_criterion_9_sweep_determinism():
    _run(9)


def test_gate_covers_every_check():
    # one test above per registered check, numbered without gaps
    assert sorted(_BY_NUMBER) == list(range(1, 10))
    assert all(callable(fn) for _, fn in _BY_NUMBER.values())
