"""Ground-truth simulation: symbol-level radiometer trials and empirical
estimates of the false-alarm, miss-detection, and outage probabilities.

Randomness policy: every estimator takes an integer seed, expands it with
``numpy.random.SeedSequence``, and spawns one Philox (counter-based) stream
per fixed-size chunk of trials.  Chunk sizes are module constants, so a
given (seed, n_trials) pair always produces bit-identical results, and
chunks are independent streams that could run in parallel.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .detection import normalized_gains
from .errors import ConstraintViolationError
from .model import OrderStatSpec, PowerConfig, SystemParams

_TRIAL_CHUNK = 1 << 14          # trials per stream for scalar-statistic estimators
_SYMBOL_BUDGET = 1 << 20        # complex samples per chunk for symbol-level frames
_MIN_TRIALS = 1000


class Hypothesis(enum.Enum):
    H0 = "H0"
    H1 = "H1"


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of the four complex Rayleigh channel coefficients."""

    h_ab: complex
    h_aw: complex
    h_bw: complex
    h_bb: complex


@dataclass(frozen=True)
class SignalFrame:
    """One frame of warden-side samples under a fixed hypothesis."""

    x_a: np.ndarray
    v_b: np.ndarray
    n_w: np.ndarray
    y_w: np.ndarray
    hypothesis: Hypothesis


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_err: float
    n_samples: int
    seed: int


def _rngs_for(seed: int, n_chunks: int) -> list[np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    return [np.random.Generator(np.random.Philox(c)) for c in children]


def _chunk_counts(n_total: int, chunk: int) -> list[int]:
    full, rest = divmod(n_total, chunk)
    return [chunk] * full + ([rest] if rest else [])


def _complex_gaussian(rng: np.random.Generator, mean_square: float, size) -> np.ndarray:
    scale = math.sqrt(mean_square / 2.0)
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def _warn_if_underpowered(n_trials: int) -> None:
    if n_trials < _MIN_TRIALS:
        warnings.warn(
            f"{n_trials} trials is below the {_MIN_TRIALS}-trial floor; "
            "estimates will be statistically weak",
            UserWarning,
            stacklevel=3,
        )


def draw_channels(params: SystemParams, rng: np.random.Generator) -> ChannelRealization:
    """One Rayleigh draw per link: Re/Im i.i.d. normal with variance lambda/2."""
    def one(lam: float) -> complex:
        return complex(_complex_gaussian(rng, lam, ()))

    return ChannelRealization(
        h_ab=one(params.lambda_ab),
        h_aw=one(params.lambda_aw),
        h_bw=one(params.lambda_bw),
        h_bb=one(params.lambda_bb),
    )


def build_frame(
    params: SystemParams,
    powers: PowerConfig,
    channels: ChannelRealization,
    p_b: float,
    hypothesis: Hypothesis,
    n_uses: int,
    rng: np.random.Generator,
) -> SignalFrame:
    """Assemble the warden's received samples for one trial.

    The jamming term is always present; the sender's term only under H1.
    Symbols are complex Gaussian with unit average power (only second
    moments are constrained by the model).
    """
    x_a = _complex_gaussian(rng, 1.0, n_uses)
    v_b = _complex_gaussian(rng, 1.0, n_uses)
    n_w = _complex_gaussian(rng, params.sigma_w2, n_uses)
    y = math.sqrt(p_b / params.r_bw ** params.alpha) * channels.h_bw * v_b + n_w
    if hypothesis is Hypothesis.H1:
        y = y + math.sqrt(powers.p_a / params.r_aw ** params.alpha) * channels.h_aw * x_a
    return SignalFrame(x_a=x_a, v_b=v_b, n_w=n_w, y_w=y, hypothesis=hypothesis)


def radiometer_statistic(frame: SignalFrame) -> float:
    """Average received symbol power over the frame."""
    return float(np.mean(np.abs(frame.y_w) ** 2))


def _bernoulli_estimate(count: int, n: int, seed: int) -> McEstimate:
    p = count / n
    std_err = math.sqrt(p * (1.0 - p) / (n - 1)) if n > 1 else math.inf
    return McEstimate(mean=p, std_err=std_err, n_samples=n, seed=seed)


def estimate_far_mdr(
    tau: float,
    params: SystemParams,
    powers: PowerConfig,
    n_trials: int,
    n_uses: int | None = None,
    seed: int = 0,
) -> tuple[McEstimate, McEstimate]:
    """Empirical false-alarm and miss-detection rates of the radiometer.

    Each trial draws a jamming power (uniform) and fresh channels, evaluates
    the statistic under both hypotheses with common randomness, and compares
    to tau (alarm when statistic > tau).  ``n_uses=None`` uses the
    infinite-frame limit of the statistic -- the regime the closed forms
    describe -- where noise and symbol averages collapse to their means;
    an integer ``n_uses`` simulates actual symbols.
    """
    _warn_if_underpowered(n_trials)
    alpha = params.alpha
    if n_uses is None:
        chunk = _TRIAL_CHUNK
    else:
        chunk = max(1, _SYMBOL_BUDGET // int(n_uses))
    counts_fa = 0
    counts_md = 0
    sizes = _chunk_counts(n_trials, chunk)
    for rng, size in zip(_rngs_for(seed, len(sizes)), sizes):
        p_b = rng.uniform(0.0, powers.p_b_max, size)
        if n_uses is None:
            gain_bw = rng.exponential(params.lambda_bw, size)
            gain_aw = rng.exponential(params.lambda_aw, size)
            t0 = p_b * gain_bw / params.r_bw ** alpha + params.sigma_w2
            t1 = t0 + powers.p_a * gain_aw / params.r_aw ** alpha
        else:
            h_bw = _complex_gaussian(rng, params.lambda_bw, (size, 1))
            h_aw = _complex_gaussian(rng, params.lambda_aw, (size, 1))
            v_b = _complex_gaussian(rng, 1.0, (size, n_uses))
            x_a = _complex_gaussian(rng, 1.0, (size, n_uses))
            n_w = _complex_gaussian(rng, params.sigma_w2, (size, n_uses))
            y0 = np.sqrt(p_b[:, None] / params.r_bw ** alpha) * h_bw * v_b + n_w
            y1 = y0 + math.sqrt(powers.p_a / params.r_aw ** alpha) * h_aw * x_a
            t0 = np.mean(np.abs(y0) ** 2, axis=1)
            t1 = np.mean(np.abs(y1) ** 2, axis=1)
        counts_fa += int(np.count_nonzero(t0 > tau))
        counts_md += int(np.count_nonzero(t1 <= tau))
    return (
        _bernoulli_estimate(counts_fa, n_trials, seed),
        _bernoulli_estimate(counts_md, n_trials, seed),
    )


def estimate_outage(
    params: SystemParams,
    powers: PowerConfig,
    n_trials: int,
    seed: int = 0,
) -> McEstimate:
    """Empirical probability that the receiver's rate falls short.

    Draws the signal gain, the self-interference gain, and the jamming power
    per trial; the outage event is SINR below 2^rate - 1.
    """
    _warn_if_underpowered(n_trials)
    snr_threshold = 2.0 ** params.rate - 1.0
    count = 0
    sizes = _chunk_counts(n_trials, _TRIAL_CHUNK)
    for rng, size in zip(_rngs_for(seed, len(sizes)), sizes):
        gain_ab = rng.exponential(params.lambda_ab, size)
        gain_bb = rng.exponential(params.lambda_bb, size)
        p_b = rng.uniform(0.0, powers.p_b_max, size)
        signal = powers.p_a * gain_ab / params.r_ab ** params.alpha
        interference = params.sigma_b2 + params.si_coeff * p_b * gain_bb
        with np.errstate(divide="ignore"):
            sinr = signal / interference
        count += int(np.count_nonzero(sinr < snr_threshold))
    return _bernoulli_estimate(count, n_trials, seed)


def estimate_p2_clipping_bias(
    tau: float,
    params: SystemParams,
    powers: PowerConfig,
    n_trials: int,
    seed: int = 0,
) -> McEstimate:
    """How much the miss-detection closed form undershoots the truth.

    The closed form integrates the conditional miss probability without
    clipping it at zero where the jamming term alone already exceeds
    tau - sigma_w2.  This estimates the dropped (nonnegative) piece,
    E[(e^{g(B - (tau - sigma_w2))} - 1) 1{B > tau - sigma_w2}] with B the
    received jamming power, so that mdr + bias matches the empirical rate.
    """
    _warn_if_underpowered(n_trials)
    gains = normalized_gains(params, powers, tau)
    if gains.d <= gains.g:
        raise ConstraintViolationError(gains.d, gains.g)
    excess_floor = tau - params.sigma_w2
    s1 = 0.0
    s2 = 0.0
    sizes = _chunk_counts(n_trials, _TRIAL_CHUNK)
    for rng, size in zip(_rngs_for(seed, len(sizes)), sizes):
        p_b = rng.uniform(0.0, powers.p_b_max, size)
        gain_bw = rng.exponential(params.lambda_bw, size)
        b = p_b * gain_bw / params.r_bw ** params.alpha
        term = np.where(b > excess_floor, np.expm1(gains.g * (b - excess_floor)), 0.0)
        s1 += float(term.sum())
        s2 += float(np.square(term).sum())
    mean = s1 / n_trials
    var = max(0.0, (s2 - n_trials * mean * mean) / (n_trials - 1))
    return McEstimate(
        mean=mean,
        std_err=math.sqrt(var / n_trials),
        n_samples=n_trials,
        seed=seed,
    )


def estimate_min_exp_mean(
    spec: OrderStatSpec, n_trials: int, seed: int = 0
) -> McEstimate:
    """MC mean of the minimum of n exponential draws (order-statistic oracle)."""
    _warn_if_underpowered(n_trials)
    chunk = max(1, (1 << 21) // spec.n)
    s1 = 0.0
    s2 = 0.0
    sizes = _chunk_counts(n_trials, chunk)
    for rng, size in zip(_rngs_for(seed, len(sizes)), sizes):
        draws = rng.exponential(1.0 / spec.rate_param, (size, spec.n))
        mins = draws.min(axis=1)
        s1 += float(mins.sum())
        s2 += float(np.square(mins).sum())
    mean = s1 / n_trials
    var = max(0.0, (s2 - n_trials * mean * mean) / (n_trials - 1))
    return McEstimate(
        mean=mean,
        std_err=math.sqrt(var / n_trials),
        n_samples=n_trials,
        seed=seed,
    )
