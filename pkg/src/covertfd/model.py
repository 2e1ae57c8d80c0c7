"""Scenario constants, the uniform jamming-power law, and the order
statistics of the minimum of exponential channel gains.

All powers are linear watts; unit conversions (dBm) live at the CLI boundary
only.  Parameter validation is centralized in these types — every other
module assumes already-validated inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SystemParams:
    """Static scenario constants.

    Parameters
    ----------
    r_ab, r_aw, r_bw : float
        Link distances in meters (transmitter->receiver, transmitter->warden,
        receiver->warden), all > 0.
    alpha : float
        Path-loss exponent (received power decays as r^-alpha), > 0.
    lambda_ab, lambda_aw, lambda_bw, lambda_bb : float
        Mean channel power gains E[|h|^2] per link, all > 0.
    sigma_w2, sigma_b2 : float
        Noise variances at the warden and at the receiver, linear watts >= 0.
    si_coeff : float
        Residual self-interference coefficient in [0, 1] (fraction of the
        receiver's own jamming power leaking into its receive chain).
    rate : float
        Target transmission rate in bits per channel use, > 0.
    n_uses : int
        Number of channel uses per frame, >= 1.
    """

    r_ab: float
    r_aw: float
    r_bw: float
    alpha: float
    lambda_ab: float
    lambda_aw: float
    lambda_bw: float
    lambda_bb: float
    sigma_w2: float
    sigma_b2: float
    si_coeff: float
    rate: float
    n_uses: int

    def __post_init__(self):
        for name in ("r_ab", "r_aw", "r_bw"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be a positive distance")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        for name in ("lambda_ab", "lambda_aw", "lambda_bw", "lambda_bb"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be a positive mean gain")
        for name in ("sigma_w2", "sigma_b2"):
            if not getattr(self, name) >= 0:
                raise ValueError(f"{name} must be a nonnegative variance")
        if not 0.0 <= self.si_coeff <= 1.0:
            raise ValueError("si_coeff must lie in [0, 1]")
        if not self.rate > 0:
            raise ValueError("rate must be positive")
        if not (isinstance(self.n_uses, (int, np.integer)) and self.n_uses >= 1):
            raise ValueError("n_uses must be an integer >= 1")


@dataclass(frozen=True)
class PowerConfig:
    """Transmit power point: the sender's power and the jammer's maximum."""

    p_a: float
    p_b_max: float

    def __post_init__(self):
        if not self.p_a > 0:
            raise ValueError("p_a must be positive")
        if not self.p_b_max > 0:
            raise ValueError("p_b_max must be positive")


@dataclass(frozen=True)
class OrderStatSpec:
    """Minimum of ``n`` i.i.d. exponential draws with the given rate."""

    n: int
    rate_param: float

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise ValueError("n must be an integer >= 1")
        if not self.rate_param > 0:
            raise ValueError("rate_param must be positive")


def an_power_pdf(y, p_b_max: float):
    """Density of the jamming power: uniform 1/p_b_max on [0, p_b_max].

    Accepts scalars or arrays; returns the matching shape.
    """
    if not p_b_max > 0:
        raise ValueError("p_b_max must be positive")
    y_arr = np.asarray(y, dtype=float)
    out = np.where((y_arr >= 0.0) & (y_arr <= p_b_max), 1.0 / p_b_max, 0.0)
    if np.isscalar(y) or y_arr.ndim == 0:
        return float(out)
    return out


def min_exp_cdf(z, spec: OrderStatSpec):
    """CDF of the minimum of n exponential(rate) draws: 1 - e^{-n rate z}.

    Negative z maps to 0 by convention.
    """
    z_arr = np.asarray(z, dtype=float)
    out = np.where(z_arr >= 0.0, -np.expm1(-spec.n * spec.rate_param *
                                           np.maximum(z_arr, 0.0)), 0.0)
    if np.isscalar(z) or z_arr.ndim == 0:
        return float(out)
    return out


def min_exp_pdf(z, spec: OrderStatSpec):
    """Density of the minimum of n exponential(rate) draws on z >= 0."""
    z_arr = np.asarray(z, dtype=float)
    lam = spec.n * spec.rate_param
    out = np.where(z_arr >= 0.0, lam * np.exp(-lam * np.maximum(z_arr, 0.0)), 0.0)
    if np.isscalar(z) or z_arr.ndim == 0:
        return float(out)
    return out


def min_exp_mean(spec: OrderStatSpec) -> float:
    """Mean of the minimum of n exponential(rate) draws: 1/(rate * n)."""
    return 1.0 / (spec.rate_param * spec.n)


def path_gain(distance: float, alpha: float) -> float:
    """Deterministic path-loss factor r^-alpha."""
    return distance ** -alpha


def unit_params(**overrides) -> SystemParams:
    """Convenience baseline: unit distances and gains, small noise floors.

    Keyword overrides replace individual fields; used heavily by tests and
    demos to build scenario variants tersely.
    """
    base = dict(
        r_ab=1.0,
        r_aw=1.0,
        r_bw=1.0,
        alpha=2.0,
        lambda_ab=1.0,
        lambda_aw=1.0,
        lambda_bw=1.0,
        lambda_bb=1.0,
        sigma_w2=1e-3,
        sigma_b2=1e-3,
        si_coeff=0.1,
        rate=1.0,
        n_uses=1000,
    )
    base.update(overrides)
    if "n_uses" in base:
        base["n_uses"] = int(base["n_uses"])
    return SystemParams(**base)


def dbm_to_watts(dbm: float) -> float:
    """Convert a dBm level to linear watts: 10^((dbm - 30)/10)."""
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(watts: float) -> float:
    """Convert linear watts to dBm; requires a strictly positive power."""
    if not watts > 0:
        raise ValueError("dBm undefined for non-positive power")
    return 30.0 + 10.0 * math.log10(watts)
