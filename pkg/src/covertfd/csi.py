"""Comparison scenario where the warden knows the channel realizations and
only the jamming power (uniform on [0, p_b_max]) stays secret.

With known gains the warden's received power under each hypothesis is a
shifted uniform variable, so the best threshold and the resulting error
floor have elementary per-realization forms.  Averaging the induced design
over realizations gives the curve the statistics-only (CDI) design is
benchmarked against.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .design import outage_probability
from .errors import CeilingWarning
from .model import PowerConfig, SystemParams
from .montecarlo import McEstimate

PA_CEILING = 1e6  # watts; bounds the heavy-tailed per-realization power ratio


@dataclass(frozen=True)
class CsiRealization:
    """Squared channel magnitudes the warden is assumed to know."""

    gain_aw: float
    gain_bw: float

    def __post_init__(self):
        if self.gain_aw < 0 or self.gain_bw < 0:
            raise ValueError("channel power gains cannot be negative")


@dataclass(frozen=True)
class CsiDesignPoint:
    p_a: float
    xi_star: float
    feasible: bool


def _received_scales(
    real: CsiRealization, p_a: float, p_b_max: float, params: SystemParams
) -> tuple[float, float]:
    """Deterministic received power of the sender (a) and the maximum of the
    jammer (b_max) for this realization."""
    a = p_a * real.gain_aw / params.r_aw ** params.alpha
    b_max = p_b_max * real.gain_bw / params.r_bw ** params.alpha
    return a, b_max


def csi_detection_error(
    tau: float,
    real: CsiRealization,
    p_a: float,
    p_b_max: float,
    params: SystemParams,
) -> float:
    """Warden's total error at threshold tau for one known-channel draw.

    Under H0 the received power is sigma_w2 + U with U uniform on
    [0, b_max]; under H1 it is shifted further by the sender's fixed term.
    Both error rates are therefore clipped linear ramps in tau.
    """
    a, b_max = _received_scales(real, p_a, p_b_max, params)
    if b_max == 0.0:
        return 0.0 if tau >= params.sigma_w2 + a or tau < params.sigma_w2 else 1.0
    excess = tau - params.sigma_w2
    p_fa = min(1.0, max(0.0, 1.0 - excess / b_max))
    p_md = min(1.0, max(0.0, (excess - a) / b_max))
    return p_fa + p_md


def csi_error_floor(
    real: CsiRealization, p_a: float, p_b_max: float, params: SystemParams
) -> float:
    """Best total error the warden can force for one known-channel draw.

    Minimizing the two clipped ramps over tau gives max(0, 1 - a/b_max):
    the hypotheses' power supports overlap by exactly that fraction of the
    jamming range.  A zero jamming gain is degenerate (perfect detection).
    """
    a, b_max = _received_scales(real, p_a, p_b_max, params)
    if b_max == 0.0:
        warnings.warn(
            "jamming gain is zero for this realization; the warden separates "
            "the hypotheses perfectly",
            UserWarning,
            stacklevel=2,
        )
        return 0.0
    return max(0.0, 1.0 - a / b_max)


def csi_max_covert_pa(
    real: CsiRealization,
    p_b_max: float,
    params: SystemParams,
    epsilon: float,
    ceiling: float = PA_CEILING,
) -> float:
    """Largest transmit power keeping the per-realization floor at 1 - epsilon.

    Inverting the floor gives p_a proportional to epsilon and the gain
    ratio; a vanishing sender-side gain makes it unbounded, hence the
    ceiling (with a warning) to keep averages finite.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    if real.gain_aw == 0.0:
        warnings.warn(
            f"sender gain is zero; covert power is unbounded, capping at {ceiling:g} W",
            CeilingWarning,
            stacklevel=2,
        )
        return ceiling
    p_a = (
        epsilon
        * p_b_max
        * real.gain_bw
        * params.r_aw ** params.alpha
        / (params.r_bw ** params.alpha * real.gain_aw)
    )
    if p_a > ceiling:
        warnings.warn(
            f"per-realization covert power {p_a:.3g} W exceeds the "
            f"{ceiling:g} W ceiling; capping",
            CeilingWarning,
            stacklevel=2,
        )
        return ceiling
    return p_a


def csi_design_point(
    real: CsiRealization,
    p_b_max: float,
    params: SystemParams,
    epsilon: float,
) -> CsiDesignPoint:
    """Per-realization design: power, achieved floor, and whether it binds."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        p_a = csi_max_covert_pa(real, p_b_max, params, epsilon)
    capped = any(issubclass(w.category, CeilingWarning) for w in caught)
    xi_star = csi_error_floor(real, p_a, p_b_max, params) if p_a > 0 else 1.0
    return CsiDesignPoint(p_a=p_a, xi_star=xi_star, feasible=not capped)


def csi_expected_outage(
    params: SystemParams,
    p_b_max: float,
    epsilon: float,
    n_samples: int = 10_000,
    seed: int = 0,
) -> McEstimate:
    """Average receiver outage over known-channel draws.

    For each realization the warden-facing gains fix the largest covert
    transmit power; the resulting outage probability (itself a closed-form
    average over the receiver-side randomness) is then averaged over
    realizations.  The same seed always reproduces the same draws, so
    sweeps over p_b_max share common random numbers.
    """
    if n_samples < 1000:
        raise ValueError("n_samples must be at least 1000")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    gain_aw = rng.exponential(params.lambda_aw, n_samples)
    gain_bw = rng.exponential(params.lambda_bw, n_samples)
    ratio = np.divide(
        gain_bw,
        gain_aw,
        out=np.full(n_samples, np.inf),
        where=gain_aw > 0,
    )
    scale = epsilon * p_b_max * params.r_aw ** params.alpha / params.r_bw ** params.alpha
    with np.errstate(over="ignore", invalid="ignore"):
        raw = np.nan_to_num(scale * ratio, nan=0.0, posinf=PA_CEILING)
    p_a_values = np.minimum(np.maximum(raw, 5e-324), PA_CEILING)
    n_capped = int(np.count_nonzero(p_a_values >= PA_CEILING))
    if n_capped:
        warnings.warn(
            f"{n_capped} of {n_samples} realizations hit the {PA_CEILING:g} W "
            "power ceiling",
            CeilingWarning,
            stacklevel=2,
        )
    outages = np.array(
        [
            outage_probability(params, PowerConfig(p_a=float(p), p_b_max=p_b_max))
            for p in p_a_values
        ]
    )
    mean = float(outages.mean())
    std_err = float(outages.std(ddof=1) / math.sqrt(n_samples))
    return McEstimate(mean=mean, std_err=std_err, n_samples=n_samples, seed=seed)
