import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from becdephase import (RamseyParams, effective_probability,
                        ramsey_probability, visibility)


def test_params_validation():
    with pytest.raises(ValueError):
        RamseyParams(P_d=1.2, P_s=0.0, gamma_d=0.0, tau=0.0)
    with pytest.raises(ValueError):
        RamseyParams(P_d=0.8, P_s=-0.1, gamma_d=0.0, tau=0.0)
    with pytest.raises(ValueError):
        RamseyParams(P_d=0.8, P_s=0.0, gamma_d=-1.0, tau=0.0)
    with pytest.raises(ValueError):
        RamseyParams(P_d=0.8, P_s=0.0, gamma_d=1.0, tau=-1.0)


def test_ramsey_probability_values():
    assert ramsey_probability(0.0) == 0.0
    # gamma = ln 2 gives exactly 1/4
    assert ramsey_probability(math.log(2.0)) == pytest.approx(0.25, rel=1e-14)
    assert ramsey_probability(1e3) == pytest.approx(0.5, rel=1e-12)
    with pytest.raises(ValueError):
        ramsey_probability(-0.1)


def test_effective_probability_worked_example():
    rp = RamseyParams(P_d=0.8, P_s=0.04, gamma_d=0.0, tau=0.01)
    # 0.4 (1 - e^-1/2) + 0.04, evaluated by hand
    assert effective_probability(0.5, rp) == pytest.approx(
        0.19738773611494664, rel=1e-12)


def test_effective_reduces_to_ideal():
    rp = RamseyParams(P_d=1.0, P_s=0.0, gamma_d=0.0, tau=0.0)
    for g in (0.0, 0.3, 2.0):
        assert effective_probability(g, rp) == ramsey_probability(g)


def test_visibility_worked_example():
    rp = RamseyParams(P_d=0.8, P_s=0.04, gamma_d=10.0, tau=0.01)
    v = visibility(rp)
    # (1 - 0.1) / (1 + 0.1 + 4 * 0.05) = 0.9 / 1.3
    assert v.closed_form == pytest.approx(0.9 / 1.3, rel=1e-14)
    # exact route: e^-x / (2 - e^-x + 4 P_s/P_d)
    x = 0.1
    exact = math.exp(-x) / (2.0 - math.exp(-x) + 4.0 * 0.05)
    assert v.exact == pytest.approx(exact, rel=1e-14)
    assert v.discrepancy == pytest.approx(abs(v.closed_form - v.exact))


def test_perfect_detection_no_extrinsic():
    v = visibility(RamseyParams(P_d=1.0, P_s=0.0, gamma_d=0.0, tau=1.0))
    assert v.closed_form == 1.0
    assert v.exact == 1.0


def test_visibility_requires_detection():
    with pytest.raises(ValueError):
        visibility(RamseyParams(P_d=0.0, P_s=0.0, gamma_d=0.0, tau=0.0))


@given(st.floats(min_value=0.0, max_value=0.3),
       st.floats(min_value=0.2, max_value=1.0),
       st.floats(min_value=0.0, max_value=0.2))
def test_closed_form_error_is_second_order(x, pd, ps):
    rp = RamseyParams(P_d=pd, P_s=ps, gamma_d=x, tau=1.0)
    v = visibility(rp)
    # the expansion drops O(x^2) terms of e^-x in the minimum only
    assert v.discrepancy <= x**2 + 1e-12
    assert rp.linearization_ok


@given(st.floats(min_value=0.0, max_value=0.25),
       st.floats(min_value=0.0, max_value=0.2))
def test_visibility_degrades_with_noise(x, ps):
    base = visibility(RamseyParams(P_d=0.8, P_s=0.0, gamma_d=0.0, tau=1.0))
    noisy = visibility(RamseyParams(P_d=0.8, P_s=ps, gamma_d=x, tau=1.0))
    assert noisy.closed_form <= base.closed_form + 1e-12
    assert noisy.exact <= base.exact + 1e-12


@given(st.floats(min_value=0.0, max_value=5.0),
       st.floats(min_value=0.0, max_value=5.0))
def test_effective_probability_monotone_in_gamma(g1, g2):
    rp = RamseyParams(P_d=0.8, P_s=0.04, gamma_d=10.0, tau=0.01)
    lo, hi = min(g1, g2), max(g1, g2)
    assert effective_probability(lo, rp) <= effective_probability(hi, rp) + 1e-15
