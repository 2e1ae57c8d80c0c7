"""Independent cross-checks by adaptive quadrature.

Every closed form in the library is re-derivable as an integral over the
model's randomness; this module evaluates those defining integrals with
scipy's adaptive routines, deliberately avoiding the library's own special
functions and algebra.  Slow but trustworthy: used by the test suite and
the ``validate`` CLI command, not by production code paths.
"""

from __future__ import annotations

import math

from scipy.integrate import dblquad, quad

from .model import OrderStatSpec, PowerConfig, SystemParams
from .numerics import EULER_GAMMA

_EPS = dict(epsabs=1e-12, epsrel=1e-12)


def ei_quad(x: float) -> float:
    """Exponential integral by quadrature.

    Away from zero on the negative side the exponential factor is pulled out
    of the tail integral, leaving quadrature an O(1) integrand -- the raw
    tail underflows epsabs long before deep arguments like -50, destroying
    relative accuracy.  Near zero and for positive x the smooth decomposition
    Ei(x) = euler_gamma + ln|x| + int_0^x expm1(t)/t dt applies; its
    integrand is entire.
    """
    if x == 0.0 or not math.isfinite(x):
        raise ValueError("Ei requires finite nonzero x")
    if x <= -1.5:
        scaled, _ = quad(
            lambda s: math.exp(-s) / (s - x), 0.0, math.inf, epsabs=0.0,
            epsrel=1e-13, limit=200,
        )
        return -math.exp(x) * scaled
    smooth, _ = quad(
        lambda t: math.expm1(t) / t if t != 0.0 else 1.0, 0.0, x, limit=200, **_EPS
    )
    return EULER_GAMMA + math.log(abs(x)) + smooth


def far_quad(tau: float, params: SystemParams, powers: PowerConfig) -> float:
    """False-alarm rate as the literal double integral: uniform jamming
    power outside, exponential-gain tail inside."""
    lam = params.lambda_bw
    pbm = powers.p_b_max
    c = (tau - params.sigma_w2) * params.r_bw ** params.alpha
    value, _ = dblquad(
        lambda z, y: math.exp(-z / lam) / (lam * pbm),
        0.0,
        pbm,
        lambda y: c / y,
        lambda y: math.inf,
        epsabs=1e-11,
        epsrel=1e-11,
    )
    return value


def mdr_quad(tau: float, params: SystemParams, powers: PowerConfig) -> float:
    """Miss-detection rate as the printed triple integral.

    The innermost integral (over the sender-side gain) is an elementary
    antiderivative, kept signed exactly as printed -- its upper limit goes
    negative where the jamming term alone exceeds tau - sigma_w2, which is
    the known unclipped-integrand quirk of the closed form.  The remaining
    two dimensions are integrated adaptively.  Converges only for d > g.
    """
    lam_bw = params.lambda_bw
    pbm = powers.p_b_max
    g = params.r_aw ** params.alpha / (params.lambda_aw * powers.p_a)
    excess = tau - params.sigma_w2
    r_bw_a = params.r_bw ** params.alpha

    def integrand(x: float, y: float) -> float:
        # combined exponents: the lone inner exponential overflows long
        # before the outer exponential damps it
        decay = math.exp(-x / lam_bw)
        cross = math.exp(-x / lam_bw - g * excess + g * y * x / r_bw_a)
        return (decay - cross) / (lam_bw * pbm)

    value, _ = dblquad(
        integrand, 0.0, pbm, 0.0, math.inf, epsabs=1e-10, epsrel=1e-10
    )
    return value


def outage_quad(params: SystemParams, powers: PowerConfig) -> float:
    """Receiver outage as a double integral over the self-interference gain
    (exponential) and the jamming power (uniform); the signal-gain dimension
    is the exponential CDF evaluated in the integrand."""
    mu = params.r_ab ** params.alpha * (2.0 ** params.rate - 1.0) / powers.p_a
    lam_ab = params.lambda_ab
    lam_bb = params.lambda_bb
    pbm = powers.p_b_max
    h = params.si_coeff

    def integrand(gain: float, p_b: float) -> float:
        shortfall = -math.expm1(-mu * (params.sigma_b2 + h * p_b * gain) / lam_ab)
        return math.exp(-gain / lam_bb) / (lam_bb * pbm) * shortfall

    value, _ = dblquad(
        integrand, 0.0, pbm, 0.0, math.inf, epsabs=1e-11, epsrel=1e-11
    )
    return value


def min_exp_mean_quad(spec: OrderStatSpec) -> float:
    """Mean of the minimum of n exponential draws via its density."""
    lam = spec.n * spec.rate_param
    value, _ = quad(lambda z: z * lam * math.exp(-lam * z), 0.0, math.inf, **_EPS)
    return value


def min_exp_pdf_mass_quad(spec: OrderStatSpec) -> float:
    """Total mass of the minimum's density (should integrate to 1)."""
    lam = spec.n * spec.rate_param
    value, _ = quad(lambda z: lam * math.exp(-lam * z), 0.0, math.inf, **_EPS)
    return value
