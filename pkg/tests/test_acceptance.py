"""Acceptance gate: every criterion at its stated tolerance.

Each test runs one check from the verification suite, prints its one-line
pass/fail summary, and asserts the stated tolerance (and runtime budget
where one is pinned).  The comparison of the closed-form input-dephasing
fidelity with its sphere oracle is informational: its measured deviation
is printed and must be finite, but agreement is not enforced (the
oracle's self-consistency is).
"""

import math

import dephlab.verify as verify


def _run(check):
    result = check()
    print(result.line())
    return result


def test_criterion_01_initial_state_limits():
    assert _run(verify.check_initial_limits).passed


def test_criterion_02_negativity_oracle_equivalence():
    assert _run(verify.check_negativity_oracle).passed


def test_criterion_03_discord_oracle_equivalence():
    assert _run(verify.check_discord_oracle).passed


def test_criterion_04_teleportation_oracle_equivalence():
    assert _run(verify.check_teleport_case1).passed


def test_criterion_05_critical_temperature():
    assert _run(verify.check_critical_temperature).passed


def test_criterion_06_case3_oracle_self_consistency():
    assert _run(verify.check_case3_self_consistency).passed


def test_criterion_06_case3_closed_form_comparison_reported():
    result = _run(verify.check_case3_closed_form_comparison)
    assert result.informational
    assert math.isfinite(result.deviation)


def test_criterion_07_fig2_qualitative_reproduction():
    assert _run(verify.check_fig2_shape).passed


def test_criterion_08_fig1_qualitative_reproduction():
    assert _run(verify.check_fig1_shape).passed


def test_criterion_09_quadrature_robustness():
    assert _run(verify.check_quadrature_robustness).passed


def test_criterion_10_determinism():
    assert _run(verify.check_determinism).passed
