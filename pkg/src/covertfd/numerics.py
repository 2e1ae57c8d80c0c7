"""Special functions and scalar solvers used by the closed forms and optimizers.

The exponential integral Ei is implemented locally (power series plus a
continued fraction) so that the package's closed forms can be validated
against independent quadrature without the test oracle and the implementation
sharing code.  The scalar root finder wraps scipy's Brent method; the
golden-section minimizer is small enough to keep explicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.optimize import brentq

from .errors import ConvergenceError, NoSignChangeError

EULER_GAMMA = 0.57721566490153286060651209008240243

#: Default absolute tolerance for the scalar solvers.  Exposed so validation
#: suites can tighten or loosen it; never hard-coded at call sites.
DEFAULT_TOL = 1e-10

# Below this point the alternating series for Ei(x), x < 0 keeps full double
# precision; beyond it cancellation grows like e^{2|x|} and the continued
# fraction for E1 takes over.  Chosen by validating both routes against
# adaptive quadrature over |x| in [1e-6, 50].
_SERIES_NEG_LIMIT = 2.0

_MAX_SERIES_TERMS = 700
_CF_EPS = 1e-15
_MAX_CF_ITER = 20_000


@dataclass(frozen=True)
class BracketedRoot:
    """Result of a bracketed scalar root solve."""

    location: float
    residual: float
    iterations: int


@dataclass(frozen=True)
class QuadRoots:
    """Real roots of a quadratic (or degenerate linear) equation.

    ``roots`` holds zero, one, or two values in ascending order; the
    discriminant is reported even when negative.
    """

    discriminant: float
    roots: tuple[float, ...]


def _ei_series(x: float) -> float:
    # Ei(x) = gamma + ln|x| + sum_{k>=1} x^k / (k * k!).  All terms positive
    # for x > 0; alternating but mild for small negative x.
    total = EULER_GAMMA + math.log(abs(x))
    term = 1.0  # x^k / k!
    for k in range(1, _MAX_SERIES_TERMS + 1):
        term *= x / k
        contrib = term / k
        total += contrib
        if abs(contrib) < 1e-18 * (abs(total) + 1e-300):
            return total
    raise ConvergenceError(f"Ei power series did not converge at x = {x!r}")


def _e1_continued_fraction(z: float) -> float:
    # E1(z) = e^{-z} / (z + 1 - 1^2/(z + 3 - 2^2/(z + 5 - ...))), z > 0,
    # evaluated by the modified Lentz algorithm.
    tiny = 1e-300
    b = z + 1.0
    f = b if b != 0.0 else tiny
    c = f
    d = 0.0
    for j in range(1, _MAX_CF_ITER + 1):
        a = -float(j * j)
        b += 2.0
        d = b + a * d
        if d == 0.0:
            d = tiny
        c = b + a / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return math.exp(-z) / f
    raise ConvergenceError(f"E1 continued fraction did not converge at z = {z!r}")


def exp_integral_ei(x: float) -> float:
    """Exponential integral Ei(x) = PV int_{-inf}^{x} e^t / t dt.

    For x < 0 this equals -E1(-x).  Relative accuracy is 1e-12 or better for
    |x| in [1e-6, 50] (validated against adaptive quadrature).

    Parameters
    ----------
    x : float
        Nonzero finite argument.

    Raises
    ------
    ValueError
        At x = 0 (logarithmic singularity) or non-finite input.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"Ei argument must be finite, got {x!r}")
    if x == 0.0:
        raise ValueError("Ei has a logarithmic singularity at x = 0")
    if x > 0.0 or -_SERIES_NEG_LIMIT < x < 0.0:
        return _ei_series(x)
    return -_e1_continued_fraction(-x)


def brent_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = DEFAULT_TOL,
    max_iter: int = 200,
) -> BracketedRoot:
    """Find a root of ``f`` on the bracket [lo, hi] by Brent's method.

    The bracket must change sign.  Convergence means the bracket width has
    shrunk below ``tol`` (or an exact zero was hit); the residual f(root) is
    reported alongside.
    """
    if not (lo < hi):
        raise ValueError(f"invalid bracket [{lo!r}, {hi!r}]")
    f_lo = f(lo)
    f_hi = f(hi)
    if f_lo == 0.0:
        return BracketedRoot(location=lo, residual=0.0, iterations=0)
    if f_hi == 0.0:
        return BracketedRoot(location=hi, residual=0.0, iterations=0)
    if f_lo * f_hi > 0.0:
        raise NoSignChangeError(
            f"f({lo:.6g}) = {f_lo:.6g} and f({hi:.6g}) = {f_hi:.6g} "
            "have the same sign"
        )
    root, info = brentq(
        f, lo, hi, xtol=tol, maxiter=max_iter, full_output=True, disp=False
    )
    if not info.converged:
        raise ConvergenceError(
            f"Brent root solve did not converge in {max_iter} iterations"
        )
    return BracketedRoot(
        location=float(root), residual=float(f(root)), iterations=info.iterations
    )


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2


def golden_min(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = DEFAULT_TOL,
) -> tuple[float, float]:
    """Golden-section search for a minimizer of ``f`` on [lo, hi].

    For unimodal f the returned location is within ``tol`` of the true
    minimizer; for general f it is a local minimizer of the induced
    refinement.  Returns ``(location, value)``.
    """
    if not (lo < hi):
        raise ValueError(f"invalid interval [{lo!r}, {hi!r}]")
    a, b = lo, hi
    h = b - a
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    fc = f(c)
    fd = f(d)
    # Each step shrinks the interval by 1/phi; bound iterations accordingly.
    n_steps = max(0, math.ceil(math.log(max(tol, 1e-300) / h) / math.log(_INV_PHI)))
    for _ in range(n_steps):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + _INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_PHI * h
            fd = f(d)
    if fc < fd:
        return (c, fc)
    return (d, fd)


def solve_quadratic(a: float, b: float, c: float) -> QuadRoots:
    """Real roots of a x^2 + b x + c = 0 with cancellation-safe evaluation.

    Degenerates gracefully to the linear case when a = 0; rejects the
    all-zero coefficient triple.
    """
    if a == 0.0 and b == 0.0 and c == 0.0:
        raise ValueError("all-zero coefficients do not define an equation")
    if a == 0.0:
        disc = b * b
        if b == 0.0:
            return QuadRoots(discriminant=disc, roots=())
        return QuadRoots(discriminant=disc, roots=(-c / b,))
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return QuadRoots(discriminant=disc, roots=())
    if disc == 0.0:
        return QuadRoots(discriminant=disc, roots=(-b / (2.0 * a),))
    # Rationalized form: compute the root that adds |b| and sqrt(disc) first,
    # derive the other from the product c/a to avoid cancellation.
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    r1 = q / a
    r2 = c / q if q != 0.0 else -b / a - r1
    roots = (r1, r2) if r1 <= r2 else (r2, r1)
    return QuadRoots(discriminant=disc, roots=roots)
