"""System-parameter containers, unit conversions, and order-statistic math."""

import numpy as np
import pytest

from covertfd import (
    OrderStatSpec,
    PowerConfig,
    SystemParams,
    an_power_pdf,
    dbm_to_watts,
    min_exp_cdf,
    min_exp_mean,
    min_exp_pdf,
    unit_params,
    watts_to_dbm,
)
from covertfd.model import path_gain
from covertfd.oracles import min_exp_mean_quad, min_exp_pdf_mass_quad


def test_unit_params_defaults_and_overrides():
    p = unit_params()
    assert p.r_ab == p.r_aw == p.r_bw == 1.0
    assert p.alpha == 2.0
    assert p.lambda_bw == 1.0
    assert p.sigma_w2 == pytest.approx(1e-3)
    assert p.n_uses == 1000
    q = unit_params(lambda_bw=0.8, n_uses=20)
    assert q.lambda_bw == 0.8
    assert q.n_uses == 20
    assert q.alpha == 2.0


@pytest.mark.parametrize(
    "kwargs",
    [
        {"r_bw": 0.0},
        {"r_ab": -2.0},
        {"alpha": 0.0},
        {"lambda_aw": 0.0},
        {"sigma_w2": -1e-6},
        {"si_coeff": 1.5},
        {"si_coeff": -0.1},
        {"rate": 0.0},
        {"n_uses": 0},
    ],
)
def test_system_params_validation(kwargs):
    with pytest.raises(ValueError):
        unit_params(**kwargs)


def test_power_config_validation():
    PowerConfig(p_a=1.0, p_b_max=2.0)
    with pytest.raises(ValueError):
        PowerConfig(p_a=0.0, p_b_max=1.0)
    with pytest.raises(ValueError):
        PowerConfig(p_a=1.0, p_b_max=0.0)


def test_params_are_frozen():
    p = unit_params()
    with pytest.raises(Exception):
        p.alpha = 3.0


def test_dbm_round_trip():
    for dbm in np.linspace(-90.0, 60.0, 31):
        watts = dbm_to_watts(float(dbm))
        assert watts_to_dbm(watts) == pytest.approx(float(dbm), rel=1e-12, abs=1e-12)
    assert dbm_to_watts(0.0) == pytest.approx(1e-3, rel=1e-15)
    assert dbm_to_watts(30.0) == pytest.approx(1.0, rel=1e-15)
    with pytest.raises(ValueError):
        watts_to_dbm(0.0)


def test_path_gain():
    assert path_gain(1.0, 2.0) == 1.0
    assert path_gain(2.0, 2.0) == pytest.approx(0.25)
    assert path_gain(3.0, 3.0) == pytest.approx(1.0 / 27.0)


def test_an_power_pdf_is_uniform():
    y = np.array([-0.5, 0.0, 1.0, 2.0, 2.1])
    dens = an_power_pdf(y, 2.0)
    assert dens == pytest.approx([0.0, 0.5, 0.5, 0.5, 0.0])
    with pytest.raises(ValueError):
        an_power_pdf(y, 0.0)


def test_min_exp_distribution_consistency():
    spec = OrderStatSpec(n=1000, rate_param=1.25)
    # cdf is that of an exponential with rate n * rate_param
    z = np.array([0.0, 1e-4, 8e-4, 5e-3])
    expected = 1.0 - np.exp(-spec.n * spec.rate_param * z)
    assert min_exp_cdf(z, spec) == pytest.approx(expected, rel=1e-14)
    assert min_exp_cdf(-1.0, spec) == 0.0
    assert min_exp_pdf(-1.0, spec) == 0.0

    # pdf integrates to one and reproduces the analytic mean
    assert min_exp_pdf_mass_quad(spec) == pytest.approx(1.0, abs=1e-10)
    assert min_exp_mean(spec) == pytest.approx(1.0 / (1000 * 1.25), rel=1e-15)
    assert min_exp_mean_quad(spec) == pytest.approx(min_exp_mean(spec), abs=1e-12)


def test_order_stat_spec_validation():
    with pytest.raises(ValueError):
        OrderStatSpec(n=0, rate_param=1.0)
    with pytest.raises(ValueError):
        OrderStatSpec(n=10, rate_param=0.0)


def test_min_exp_mean_matches_mc_seeded():
    rng = np.random.default_rng(1234)
    spec = OrderStatSpec(n=50, rate_param=2.0)
    draws = rng.exponential(scale=1.0 / spec.rate_param, size=(20_000, spec.n))
    sample = draws.min(axis=1).mean()
    se = draws.min(axis=1).std(ddof=1) / np.sqrt(20_000)
    assert abs(sample - min_exp_mean(spec)) < 4.0 * se
