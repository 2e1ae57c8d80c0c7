"""Link design under the covertness constraint: the receiver outage
probability, the largest transmit power the detection-error floor allows,
and the jamming-power level that minimizes outage subject to covertness.

Two solver modes are offered.  EXACT_ROOT solves the transcendental
covertness equation xi = 1 - epsilon by bracketed root finding and is the
default.  PAPER_QUADRATIC reproduces a published Taylor-expansion shortcut
verbatim for comparison; its discriminant turns out to be negative for every
admissible parameter combination (the expansion target always lies outside
the quadratic's range), so it reports infeasibility with reasons rather
than a design.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .detection import detection_error, optimal_threshold
from .errors import (
    CeilingWarning,
    ClampWarning,
    ConvergenceError,
    InfeasibleError,
    NoInteriorMinWarning,
)
from .model import PowerConfig, SystemParams
from .numerics import brent_root, exp_integral_ei, golden_min

PA_SCAN_LO = 1e-6
PA_SCAN_HI = 1e6
PA_SCAN_POINTS = 512
ROOT_RESIDUAL_TOL = 1e-6
_SERIES_SWITCH = 1e-8


class TauMode(enum.Enum):
    FIXED = "FIXED"
    WORST_CASE = "WORST_CASE"


class SolverMode(enum.Enum):
    PAPER_QUADRATIC = "PAPER_QUADRATIC"
    EXACT_ROOT = "EXACT_ROOT"


@dataclass(frozen=True)
class CovertConstraint:
    """Covertness requirement: warden's total error must stay >= 1 - epsilon."""

    epsilon: float
    tau: float = 0.0
    tau_mode: TauMode = TauMode.FIXED

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie strictly inside (0, 1)")
        if self.tau_mode is TauMode.FIXED and not self.tau > 0:
            raise ValueError("a FIXED tau_mode requires tau > 0")


class Violation(enum.Enum):
    DELTA_NEG = "DELTA_NEG"
    ROOTS_NONPOS = "ROOTS_NONPOS"
    TAYLOR_REGION = "TAYLOR_REGION"
    M_BOUND = "M_BOUND"


@dataclass(frozen=True)
class QuadraticSolve:
    """Outcome of the published quadratic shortcut, reproduced verbatim."""

    m_value: float
    discriminant: float
    g1: float
    g2: float
    feasible: bool
    violation_reasons: tuple[Violation, ...]


@dataclass(frozen=True)
class CovertDesign:
    p_a_opt: float
    p_b_max_opt: float
    p_out_opt: float
    mode: SolverMode
    residual: float
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SweepPoint:
    """One jamming-power level of a design sweep."""

    p_b_max: float
    p_a_opt: float
    p_out: float
    residual: float
    feasible: bool
    status: str


def outage_probability(params: SystemParams, powers: PowerConfig) -> float:
    """Probability the receiver cannot sustain the target rate.

    Averages the Rayleigh signal gain, the Rayleigh self-interference gain,
    and the uniform jamming power in closed form.  For vanishing interference
    scale the expression degenerates to 0/0; a two-term series takes over so
    the switch is seamless (mismatch is quadratic in the switch threshold).
    """
    mu = params.r_ab ** params.alpha * (2.0 ** params.rate - 1.0) / powers.p_a
    lam = params.lambda_ab
    noise_factor = math.exp(-mu * params.sigma_b2 / lam)
    x = mu * params.si_coeff * params.lambda_bb * powers.p_b_max
    if x < _SERIES_SWITCH * lam:
        return 1.0 - noise_factor * (1.0 - 0.5 * x / lam)
    return 1.0 - lam * noise_factor * math.log1p(x / lam) / x


def xi_ddagger(
    p_a: float, p_b_max: float, params: SystemParams, cc: CovertConstraint
) -> float:
    """Warden's total detection error at the design point.

    FIXED mode evaluates at the constraint's own threshold; WORST_CASE lets
    the warden pick the threshold that hurts most.
    """
    powers = PowerConfig(p_a=p_a, p_b_max=p_b_max)
    if cc.tau_mode is TauMode.WORST_CASE:
        _, xi_min = optimal_threshold(params, powers)
        return xi_min
    return detection_error(cc.tau, params, powers).xi


def big_m(tau: float, epsilon: float, d: float, sigma_w2: float) -> float:
    """Constant side of the covertness equation after isolating the
    power-dependent factor: gamma*Ei(gamma) - e^gamma - epsilon at
    gamma = (sigma_w2 - tau)*d.  Always in (-2, 0)."""
    if not tau > sigma_w2:
        raise ValueError("tau must exceed the warden noise floor")
    gamma = (sigma_w2 - tau) * d
    return gamma * exp_integral_ei(gamma) - math.exp(gamma) - epsilon


def paper_quadratic_roots(
    tau: float, epsilon: float, d: float, sigma_w2: float
) -> QuadraticSolve:
    """The published Taylor-expansion shortcut, coefficients as printed.

    The shortcut replaces the covertness equation by a quadratic in g and
    quotes a root formula.  Both are reproduced character-for-character,
    feasibility conditions included.  Algebraically the discriminant equals
    -(d*(tau-sigma_w2) + M)^2 + 2*M*(M+2), which is negative for every
    M in (-2, 0) -- and M always lies there -- so DELTA_NEG is expected on
    all real inputs; the structure exists to demonstrate that, not to solve.
    """
    m = big_m(tau, epsilon, d, sigma_w2)
    t = tau - sigma_w2
    disc = m * m - d * d * t * t + m * (4.0 - 2.0 * d * tau + 2.0 * d * sigma_w2)

    reasons: list[Violation] = []
    if m >= min(0.5 * d * d * t * t, d * t * t):
        reasons.append(Violation.M_BOUND)
    if disc < 0.0:
        reasons.append(Violation.DELTA_NEG)
        return QuadraticSolve(
            m_value=m,
            discriminant=disc,
            g1=math.nan,
            g2=math.nan,
            feasible=False,
            violation_reasons=tuple(reasons),
        )

    denom = d * d * sigma_w2 * (sigma_w2 - 2.0 * tau) + d * d * tau * tau - 2.0 * m
    root_term = math.sqrt(disc)
    g1 = (d * d * t * t - d * m - root_term) / denom
    g2 = (d * d * t * t - d * m + root_term) / denom
    g1, g2 = sorted((g1, g2))
    if not (g1 + g2 > 0.0 and g1 * g2 > 0.0):
        reasons.append(Violation.ROOTS_NONPOS)
    # the selected root is the smaller g (largest transmit power)
    if 2.0 * g1 >= d:
        reasons.append(Violation.TAYLOR_REGION)
    return QuadraticSolve(
        m_value=m,
        discriminant=disc,
        g1=g1,
        g2=g2,
        feasible=not reasons,
        violation_reasons=tuple(reasons),
    )


def _xi_gap_scan(
    p_b_max: float, params: SystemParams, cc: CovertConstraint, n_scan: int
):
    """Evaluate xi - (1 - epsilon) over a log-spaced transmit-power grid.

    Grid points where the miss-detection closed form is undefined (d <= g)
    are masked out; validity is a half-line in p_a, so the remaining points
    are contiguous.
    """
    target = 1.0 - cc.epsilon
    p_grid = np.logspace(math.log10(PA_SCAN_LO), math.log10(PA_SCAN_HI), n_scan)
    d = params.r_bw ** params.alpha / (params.lambda_bw * p_b_max)
    g_grid = params.r_aw ** params.alpha / (params.lambda_aw * p_grid)
    valid = g_grid < d
    gaps = np.full(p_grid.shape, np.nan)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ClampWarning)
        warnings.simplefilter("ignore", NoInteriorMinWarning)
        for i in np.nonzero(valid)[0]:
            gaps[i] = xi_ddagger(float(p_grid[i]), p_b_max, params, cc) - target
    return p_grid, gaps, valid


def optimal_pa(
    p_b_max: float,
    params: SystemParams,
    cc: CovertConstraint,
    mode: SolverMode = SolverMode.EXACT_ROOT,
    n_scan: int = PA_SCAN_POINTS,
) -> tuple[float, float]:
    """Largest transmit power keeping the warden's error at 1 - epsilon.

    EXACT_ROOT brackets every sign change of xi - (1 - epsilon) on a
    log-spaced scan and keeps the largest root.  If the constraint never
    binds (xi above target across the whole scan) the scan cap is returned
    with a ``CeilingWarning``.  PAPER_QUADRATIC maps the smaller published
    root (the larger transmit power) to p_a and raises ``InfeasibleError``
    when the shortcut's own feasibility conditions fail (they always do; see
    :func:`paper_quadratic_roots`).
    """
    target = 1.0 - cc.epsilon
    if mode is SolverMode.PAPER_QUADRATIC:
        if cc.tau_mode is not TauMode.FIXED:
            raise ValueError("PAPER_QUADRATIC requires a FIXED threshold")
        d = params.r_bw ** params.alpha / (params.lambda_bw * p_b_max)
        solve = paper_quadratic_roots(cc.tau, cc.epsilon, d, params.sigma_w2)
        if not solve.feasible:
            raise InfeasibleError(
                "quadratic shortcut infeasible: "
                + ", ".join(v.value for v in solve.violation_reasons),
                reasons=tuple(v.value for v in solve.violation_reasons),
            )
        p_a = params.r_aw ** params.alpha / (solve.g1 * params.lambda_aw)
        residual = abs(xi_ddagger(p_a, p_b_max, params, cc) - target)
        return p_a, residual

    p_grid, gaps, valid = _xi_gap_scan(p_b_max, params, cc, n_scan)
    if not valid.any():
        raise InfeasibleError(
            "miss-detection validity region d > g is empty on the scan range",
            reasons=("EMPTY_CONSTRAINT",),
        )

    idx = np.nonzero(valid)[0]
    roots = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ClampWarning)
        warnings.simplefilter("ignore", NoInteriorMinWarning)
        for i, j in zip(idx[:-1], idx[1:]):
            if gaps[i] == 0.0:
                roots.append(float(p_grid[i]))
            if gaps[i] * gaps[j] < 0.0:
                br = brent_root(
                    lambda p: xi_ddagger(p, p_b_max, params, cc) - target,
                    float(p_grid[i]),
                    float(p_grid[j]),
                )
                roots.append(br.location)
        if gaps[idx[-1]] == 0.0:
            roots.append(float(p_grid[idx[-1]]))

    if not roots:
        if np.all(gaps[idx] > 0.0):
            p_cap = float(p_grid[idx[-1]])
            warnings.warn(
                "covert constraint never binds on the scan range; "
                f"returning the scan cap {p_cap:g} W",
                CeilingWarning,
                stacklevel=2,
            )
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", ClampWarning)
                warnings.simplefilter("ignore", NoInteriorMinWarning)
                residual = abs(xi_ddagger(p_cap, p_b_max, params, cc) - target)
            return p_cap, residual
        raise InfeasibleError(
            "warden error stays below 1 - epsilon for every transmit power",
            reasons=("COVERT_UNATTAINABLE",),
        )

    p_a = max(roots)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ClampWarning)
        warnings.simplefilter("ignore", NoInteriorMinWarning)
        residual = abs(xi_ddagger(p_a, p_b_max, params, cc) - target)
    if residual > ROOT_RESIDUAL_TOL:
        raise ConvergenceError(
            f"root residual {residual:.3g} exceeds {ROOT_RESIDUAL_TOL:g}"
        )
    return p_a, residual


def _evaluate_sweep_point(
    p_b_max: float,
    params: SystemParams,
    cc: CovertConstraint,
    mode: SolverMode,
) -> SweepPoint:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            p_a, residual = optimal_pa(p_b_max, params, cc, mode)
        except InfeasibleError as exc:
            return SweepPoint(
                p_b_max=p_b_max,
                p_a_opt=math.nan,
                p_out=math.nan,
                residual=math.nan,
                feasible=False,
                status="INFEASIBLE:" + ",".join(exc.reasons),
            )
    non_binding = any(issubclass(w.category, CeilingWarning) for w in caught)
    p_out = outage_probability(params, PowerConfig(p_a=p_a, p_b_max=p_b_max))
    status = "NON_BINDING" if non_binding else "OK"
    return SweepPoint(
        p_b_max=p_b_max,
        p_a_opt=p_a,
        p_out=p_out,
        residual=residual,
        feasible=not non_binding,
        status=status,
    )


def sweep_pbmax(
    params: SystemParams,
    cc: CovertConstraint,
    p_b_max_values,
    mode: SolverMode = SolverMode.EXACT_ROOT,
) -> list[SweepPoint]:
    """Design the transmit power at each jamming level of a sweep."""
    values = sorted(float(v) for v in np.asarray(p_b_max_values, dtype=float).ravel())
    if not values:
        raise ValueError("sweep range must be nonempty")
    return [_evaluate_sweep_point(v, params, cc, mode) for v in values]


def optimal_pbmax(
    params: SystemParams,
    cc: CovertConstraint,
    p_b_max_values,
    mode: SolverMode = SolverMode.EXACT_ROOT,
) -> CovertDesign:
    """Jamming-power budget minimizing the designed outage probability.

    Scans the given levels, excludes points where the design is infeasible
    or where the covert constraint does not bind (the scan-cap transmit
    power would fake an arbitrarily good outage), then refines the grid
    argmin by golden-section search between its neighbors.  Ties break
    toward the smallest jamming power.
    """
    points = sweep_pbmax(params, cc, p_b_max_values, mode)
    usable = [p for p in points if p.feasible]
    if not usable:
        raise InfeasibleError(
            "ALL_INFEASIBLE: no sweep point admits a binding covert design",
            reasons=tuple(sorted({p.status for p in points})),
        )

    best = min(usable, key=lambda p: (p.p_out, p.p_b_max))
    grid = [p.p_b_max for p in points]
    k = grid.index(best.p_b_max)
    lo = grid[k - 1] if k > 0 else grid[k]
    hi = grid[k + 1] if k + 1 < len(grid) else grid[k]

    def objective(v: float) -> float:
        pt = _evaluate_sweep_point(v, params, cc, mode)
        return pt.p_out if pt.feasible else math.inf

    p_b_opt, p_out_ref = best.p_b_max, best.p_out
    if hi > lo:
        loc, val = golden_min(objective, lo, hi, tol=1e-6 * (hi - lo))
        if val < p_out_ref:
            p_b_opt, p_out_ref = loc, val

    final = _evaluate_sweep_point(p_b_opt, params, cc, mode)
    if not final.feasible:  # golden landed on a boundary artifact; keep grid best
        final = best
    return CovertDesign(
        p_a_opt=final.p_a_opt,
        p_b_max_opt=final.p_b_max,
        p_out_opt=final.p_out,
        mode=mode,
        residual=final.residual,
        diagnostics={
            "sweep": points,
            "excluded": [p.status for p in points if not p.feasible],
            "refine_bracket": (lo, hi),
        },
    )
