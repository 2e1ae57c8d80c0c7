"""Tests for the special-function and scalar-solver layer."""

import math

import numpy as np
import pytest

from covertfd import (
    NoSignChangeError,
    brent_root,
    exp_integral_ei,
    golden_min,
    solve_quadratic,
)
from covertfd.oracles import ei_quad

# Reference values for Ei(x), frozen from an independent implementation.
EI_KNOWN = {
    1.0: 1.895117816355937,
    -1.0: -0.2193839343955205,
    10.0: 2492.2289762418773,
    -10.0: -4.156968929685325e-06,
    0.5: 0.45421990486317354,
    -0.5: -0.5597735947761608,
    25.0: 3005950906.5255475,
    -30.0: -3.021552010688813e-15,
    1e-06: -13.23829389306249,
    -1e-06: -13.23829589306249,
}


@pytest.mark.parametrize("x,expected", sorted(EI_KNOWN.items()))
def test_ei_frozen_values(x, expected):
    assert exp_integral_ei(x) == pytest.approx(expected, rel=1e-14)


def test_ei_matches_quadrature_spot_checks():
    xs = [-40.0, -7.5, -2.0, -0.3, -1e-5, 1e-5, 0.2, 3.0, 8.0, 20.0, 29.9]
    for x in xs:
        ref = ei_quad(x)
        assert exp_integral_ei(x) == pytest.approx(ref, rel=1e-12), f"x={x}"


def test_ei_small_argument_logarithmic_behaviour():
    # Ei(x) ~ euler_gamma + ln|x| + x near zero
    euler = 0.5772156649015329
    for x in (1e-9, -1e-9):
        expected = euler + math.log(abs(x)) + x
        assert exp_integral_ei(x) == pytest.approx(expected, rel=1e-12)


def test_ei_rejects_zero_and_nonfinite():
    with pytest.raises(ValueError):
        exp_integral_ei(0.0)
    with pytest.raises(ValueError):
        exp_integral_ei(math.nan)
    with pytest.raises(ValueError):
        exp_integral_ei(math.inf)


def test_ei_monotone_across_series_cf_switch():
    # the continued fraction takes over on the far negative axis; the two
    # regimes must agree where they meet.  Ei' = e^x / x < 0 there, so the
    # function decreases as x increases toward zero.
    xs = np.linspace(-6.0, -4.0, 41)
    vals = [exp_integral_ei(float(x)) for x in xs]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    for x in xs:
        assert exp_integral_ei(float(x)) == pytest.approx(ei_quad(float(x)), rel=1e-12)


def test_brent_root_cosine():
    res = brent_root(math.cos, 1.0, 2.0)
    assert res.location == pytest.approx(math.pi / 2.0, abs=1e-12)
    assert abs(res.residual) <= 1e-10
    assert res.iterations >= 1


def test_brent_root_endpoint_hit():
    res = brent_root(lambda x: x - 1.0, 1.0, 2.0)
    assert res.location == 1.0
    assert res.residual == 0.0


def test_brent_root_requires_sign_change():
    with pytest.raises(NoSignChangeError):
        brent_root(lambda x: x * x + 1.0, -1.0, 1.0)
    with pytest.raises(ValueError):
        brent_root(math.cos, 2.0, 1.0)


def test_golden_min_parabola():
    loc, val = golden_min(lambda x: (x - 2.0) ** 2 + 3.0, 0.0, 5.0, tol=1e-12)
    # location resolution for a quadratic minimum is sqrt(eps) regardless of
    # the interval tolerance: the objective is flat below that scale
    assert loc == pytest.approx(2.0, abs=5e-8)
    assert val == pytest.approx(3.0, abs=1e-14)


def test_golden_min_stays_in_bracket():
    loc, _ = golden_min(lambda x: -x, 0.0, 1.0)
    assert 0.0 <= loc <= 1.0
    assert loc == pytest.approx(1.0, abs=1e-6)


def test_solve_quadratic_real_roots():
    out = solve_quadratic(1.0, -3.0, 2.0)
    assert out.discriminant == pytest.approx(1.0)
    assert out.roots == pytest.approx((1.0, 2.0))


def test_solve_quadratic_no_real_roots():
    out = solve_quadratic(1.0, 0.0, 1.0)
    assert out.discriminant < 0.0
    assert out.roots == ()


def test_solve_quadratic_degenerate_cases():
    assert solve_quadratic(0.0, 2.0, -4.0).roots == (2.0,)
    # inconsistent constant equation: no roots, but not an error
    assert solve_quadratic(0.0, 0.0, 1.0).roots == ()
    with pytest.raises(ValueError):
        solve_quadratic(0.0, 0.0, 0.0)


def test_solve_quadratic_cancellation_safe():
    # classic catastrophic-cancellation case: tiny c, large b
    out = solve_quadratic(1.0, -1e8, 1.0)
    r_small = min(out.roots)
    assert r_small == pytest.approx(1e-8, rel=1e-9)
