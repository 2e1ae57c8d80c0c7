"""Covert-rate and detection-error analysis for a wireless link hidden by a
full-duplex receiver's randomized jamming.

The library provides the closed-form warden error rates and receiver outage
probability under statistics-only knowledge (CDI), the transmit/jamming
power design that minimizes outage subject to a covertness floor, a
known-channel (CSI) comparison baseline, quadrature oracles, and a
Monte Carlo engine for end-to-end validation.
"""

from .csi import (
    CsiDesignPoint,
    CsiRealization,
    csi_design_point,
    csi_detection_error,
    csi_error_floor,
    csi_expected_outage,
    csi_max_covert_pa,
)
from .design import (
    CovertConstraint,
    CovertDesign,
    QuadraticSolve,
    SolverMode,
    SweepPoint,
    TauMode,
    Violation,
    big_m,
    optimal_pa,
    optimal_pbmax,
    outage_probability,
    paper_quadratic_roots,
    sweep_pbmax,
    xi_ddagger,
)
from .detection import (
    Branch,
    DetectionError,
    DetectionThresholds,
    NormalizedGains,
    detection_error,
    far,
    mdr,
    mdr_raw,
    normalized_gains,
    optimal_threshold,
    thresholds,
    xi_derivative,
)
from .errors import (
    CeilingWarning,
    ClampWarning,
    ConfigError,
    ConstraintViolationError,
    ConvergenceError,
    CovertFdError,
    InfeasibleError,
    NoInteriorMinWarning,
    NoSignChangeError,
)
from .model import (
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
from .montecarlo import (
    ChannelRealization,
    Hypothesis,
    McEstimate,
    SignalFrame,
    build_frame,
    draw_channels,
    estimate_far_mdr,
    estimate_min_exp_mean,
    estimate_outage,
    estimate_p2_clipping_bias,
    radiometer_statistic,
)
from .numerics import (
    BracketedRoot,
    QuadRoots,
    brent_root,
    exp_integral_ei,
    golden_min,
    solve_quadratic,
)

__version__ = "0.1.0"

__all__ = [
    "BracketedRoot",
    "Branch",
    "CeilingWarning",
    "ChannelRealization",
    "ClampWarning",
    "ConfigError",
    "ConstraintViolationError",
    "ConvergenceError",
    "CovertConstraint",
    "CovertDesign",
    "CovertFdError",
    "CsiDesignPoint",
    "CsiRealization",
    "DetectionError",
    "DetectionThresholds",
    "Hypothesis",
    "InfeasibleError",
    "McEstimate",
    "NoInteriorMinWarning",
    "NoSignChangeError",
    "NormalizedGains",
    "OrderStatSpec",
    "PowerConfig",
    "QuadRoots",
    "QuadraticSolve",
    "SignalFrame",
    "SolverMode",
    "SweepPoint",
    "SystemParams",
    "TauMode",
    "Violation",
    "an_power_pdf",
    "big_m",
    "brent_root",
    "build_frame",
    "csi_design_point",
    "csi_detection_error",
    "csi_error_floor",
    "csi_expected_outage",
    "csi_max_covert_pa",
    "dbm_to_watts",
    "detection_error",
    "draw_channels",
    "estimate_far_mdr",
    "estimate_min_exp_mean",
    "estimate_outage",
    "estimate_p2_clipping_bias",
    "exp_integral_ei",
    "far",
    "golden_min",
    "mdr",
    "mdr_raw",
    "min_exp_cdf",
    "min_exp_mean",
    "min_exp_pdf",
    "normalized_gains",
    "optimal_pa",
    "optimal_pbmax",
    "optimal_threshold",
    "outage_probability",
    "paper_quadratic_roots",
    "radiometer_statistic",
    "solve_quadratic",
    "sweep_pbmax",
    "thresholds",
    "unit_params",
    "watts_to_dbm",
    "xi_ddagger",
    "xi_derivative",
]
