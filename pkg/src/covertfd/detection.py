"""Closed-form radiometer performance at the warden when only channel
statistics are known.

The warden compares the average received power over a frame against a
threshold tau.  Randomized jamming power (uniform on [0, p_b_max]) and
Rayleigh fading make both error rates available in closed form, built on the
exponential integral.  Everything here is a pure function of validated
inputs; Monte Carlo cross-checks live in :mod:`covertfd.montecarlo`.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ClampWarning, ConstraintViolationError, NoInteriorMinWarning
from .model import PowerConfig, SystemParams
from .numerics import brent_root, exp_integral_ei, golden_min
from .errors import NoSignChangeError

_CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class DetectionThresholds:
    """Branch boundaries of the detection-error curve (watts)."""

    rho1: float
    rho2: float


@dataclass(frozen=True)
class NormalizedGains:
    """Inverse interference/signal scales entering the closed forms.

    d = r_bw^alpha / (lambda_bw * p_b_max)  -- jamming side
    g = r_aw^alpha / (lambda_aw * p_a)      -- signal side
    gamma = d * (sigma_w2 - tau)

    The miss-detection closed form is only valid for d > g.
    """

    d: float
    g: float
    gamma: float

    def __post_init__(self):
        if not (self.d > 0 and self.g > 0):
            raise ValueError("normalized gains must be positive")


class Branch(enum.Enum):
    BELOW_RHO1 = "BELOW_RHO1"
    BETWEEN = "BETWEEN"
    ABOVE_RHO2 = "ABOVE_RHO2"


@dataclass(frozen=True)
class DetectionError:
    """False-alarm rate, miss-detection rate, their sum, and the active branch."""

    p_fa: float
    p_md: float
    xi: float
    branch: Branch


def thresholds(params: SystemParams, powers: PowerConfig) -> DetectionThresholds:
    """Minimum mean received power under each hypothesis.

    Both levels sit above the noise floor by the mean of the minimum (over
    the frame) of the relevant exponential fading term, hence the 1/N.
    """
    n = params.n_uses
    rho1 = params.sigma_w2 + params.lambda_bw * powers.p_b_max / (n * params.r_bw ** params.alpha)
    rho2 = params.sigma_w2 + powers.p_a * params.lambda_aw / (n * params.r_aw ** params.alpha)
    return DetectionThresholds(rho1=rho1, rho2=rho2)


def normalized_gains(params: SystemParams, powers: PowerConfig, tau: float) -> NormalizedGains:
    d = params.r_bw ** params.alpha / (params.lambda_bw * powers.p_b_max)
    g = params.r_aw ** params.alpha / (params.lambda_aw * powers.p_a)
    return NormalizedGains(d=d, g=g, gamma=d * (params.sigma_w2 - tau))


def _clamp_probability(raw: float, what: str, detail: str = "") -> float:
    clipped = min(1.0, max(0.0, raw))
    if abs(clipped - raw) > _CLAMP_TOL:
        warnings.warn(
            f"{what} = {raw:.6g} clamped to {clipped:.6g}{detail}",
            ClampWarning,
            stacklevel=3,
        )
    return clipped


def far(tau: float, params: SystemParams, powers: PowerConfig) -> float:
    """False-alarm rate of the radiometer.

    Equals 1 whenever the threshold sits at or below the smallest mean power
    the quiet hypothesis can produce; above that, the uniform jamming power
    and exponential fading integrate to e^gamma - gamma*Ei(gamma).
    """
    th = thresholds(params, powers)
    if tau <= th.rho1:
        return 1.0
    gains = normalized_gains(params, powers, tau)
    gamma = gains.gamma  # strictly negative here
    raw = math.exp(gamma) - gamma * exp_integral_ei(gamma)
    return _clamp_probability(raw, "false-alarm rate")


def mdr_raw(tau: float, params: SystemParams, powers: PowerConfig) -> float:
    """The miss-detection closed form exactly as derived, unclamped.

    Equals the signed integral of the unclipped conditional miss
    probability, so it can leave [0, 1] where the jamming term alone
    exceeds tau - sigma_w2.  Exposed for oracle comparisons; requires d > g.
    """
    gains = normalized_gains(params, powers, tau)
    d, g = gains.d, gains.g
    if d <= g:
        raise ConstraintViolationError(d, g)
    u = g / d
    # -log1p(-u)/u = (d/g) ln(d/(d-g)), stable for small u
    return 1.0 - math.exp((params.sigma_w2 - tau) * g) * (-math.log1p(-u) / u)


def mdr(tau: float, params: SystemParams, powers: PowerConfig) -> float:
    """Miss-detection rate of the radiometer.

    Zero at or below the minimum mean power of the active hypothesis; above,
    the closed form 1 - (d/g) e^{(sigma_w2-tau) g} ln(d/(d-g)) applies and
    requires d > g.  Near g -> d the underlying derivation drops a clipping
    term and the raw value can leave [0, 1]; such outputs are clamped with a
    warning, never returned silently.
    """
    gains = normalized_gains(params, powers, tau)
    if gains.d <= gains.g:
        raise ConstraintViolationError(gains.d, gains.g)
    th = thresholds(params, powers)
    if tau <= th.rho2:
        return 0.0
    raw = mdr_raw(tau, params, powers)
    return _clamp_probability(
        raw,
        "miss-detection rate",
        detail=f" (d - g = {gains.d - gains.g:.3g}; closed form unclipped)",
    )


def detection_error(tau: float, params: SystemParams, powers: PowerConfig) -> DetectionError:
    """Total detection error xi = FAR + MDR with its piecewise branch."""
    gains = normalized_gains(params, powers, tau)
    if gains.d <= gains.g:
        raise ConstraintViolationError(gains.d, gains.g)
    th = thresholds(params, powers)
    if tau <= th.rho1:
        return DetectionError(p_fa=1.0, p_md=0.0, xi=1.0, branch=Branch.BELOW_RHO1)
    p_fa = far(tau, params, powers)
    if tau <= th.rho2:
        return DetectionError(p_fa=p_fa, p_md=0.0, xi=p_fa, branch=Branch.BETWEEN)
    p_md = mdr(tau, params, powers)
    return DetectionError(p_fa=p_fa, p_md=p_md, xi=p_fa + p_md, branch=Branch.ABOVE_RHO2)


def xi_derivative(tau: float, params: SystemParams, powers: PowerConfig) -> float:
    """d(xi)/d(tau) on the upper branch (tau above both boundaries)."""
    th = thresholds(params, powers)
    if tau <= th.rho2:
        raise ValueError(f"xi_derivative defined only for tau > {th.rho2!r}")
    gains = normalized_gains(params, powers, tau)
    d, g = gains.d, gains.g
    if d <= g:
        raise ConstraintViolationError(d, g)
    shift = params.sigma_w2 - tau  # negative
    return d * exp_integral_ei(d * shift) + d * math.log(d / (d - g)) * math.exp(g * shift)


def optimal_threshold(
    params: SystemParams,
    powers: PowerConfig,
    search_hi: float | None = None,
    n_scan: int = 512,
) -> tuple[float, float]:
    """Warden's best threshold: the minimizer of xi over (rho2, search_hi].

    The derivative of xi changes sign once across the minimum; a scan
    brackets that sign change and a root solve pins it down (golden-section
    fallback if bracketing fails).  When xi is monotone over the whole range
    the better boundary is returned and a ``NoInteriorMinWarning`` is issued.
    """
    th = thresholds(params, powers)
    if search_hi is None:
        search_hi = th.rho2 + 50.0 * (th.rho2 - params.sigma_w2)
    if not search_hi > th.rho2:
        raise ValueError("search_hi must exceed rho2")

    lo = th.rho2 + 1e-9 * (search_hi - th.rho2)
    grid = np.linspace(lo, search_hi, n_scan)
    with warnings.catch_warnings():
        # the scan sweeps through the branch join where clamping is routine
        warnings.simplefilter("ignore", ClampWarning)
        deriv = np.array([xi_derivative(t, params, powers) for t in grid])
        xi_vals = np.array([detection_error(t, params, powers).xi for t in grid])

    sign_flips = np.nonzero(np.diff(np.signbit(deriv)))[0]
    if sign_flips.size == 0:
        # monotone: pick the better end of the range
        idx = int(np.argmin(xi_vals))
        tau_star = float(grid[idx])
        warnings.warn(
            "xi has no interior stationary point on the search range; "
            "returning the boundary minimizer",
            NoInteriorMinWarning,
            stacklevel=2,
        )
        return tau_star, float(xi_vals[idx])

    i = int(sign_flips[0])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ClampWarning)
        try:
            root = brent_root(
                lambda t: xi_derivative(t, params, powers), grid[i], grid[i + 1]
            )
            tau_star = root.location
        except NoSignChangeError:
            tau_star, _ = golden_min(
                lambda t: detection_error(t, params, powers).xi, grid[i], grid[i + 1]
            )
    xi_star = detection_error(tau_star, params, powers).xi

    # never return worse than the scan's own argmin
    idx = int(np.argmin(xi_vals))
    if xi_vals[idx] < xi_star:
        tau_star, xi_star = float(grid[idx]), float(xi_vals[idx])
    return float(tau_star), float(xi_star)
