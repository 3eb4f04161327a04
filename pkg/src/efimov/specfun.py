r"""Special functions and numerical kernels.

The central object is the modified Bessel function of the third kind with
purely imaginary order, :math:`K_{is}(x)`, which is real for real ``s`` and
``x > 0``.  It is evaluated along two independent routes:

* for ``x >= 0.1`` by adaptive quadrature of

  .. math:: K_{is}(x) = \int_0^\infty e^{-x\cosh t}\cos(st)\,dt

* for ``x < 0.1`` by the ascending series

  .. math::

      K_{is}(x) = \sqrt{\frac{\pi}{s\sinh\pi s}}\;|S(x)|\,
                  \sin\bigl(s\ln(2/x) + \arg\Gamma(1+is) - \arg S(x)\bigr),
      \qquad S(x) = \sum_k \frac{(x^2/4)^k}{k!\,(1+is)_k}

  whose leading term (``S = 1``) is the familiar oscillatory small-argument
  form.  Near the zeros that control shallow bound states the quadrature loses
  all relative accuracy, while the series stays accurate down to the smallest
  representable ``x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, optimize, special

from .exceptions import InvalidBracketError

__all__ = [
    "RootBracket",
    "QuadratureResult",
    "ZeroScan",
    "find_root",
    "integrate_adaptive",
    "lambert_root",
    "bessel_k_imag",
    "bessel_k_imag_series",
    "bessel_k_imag_quad",
    "bessel_k_imag_amplitude",
    "bessel_k_imag_zeros",
    "EULER_GAMMA",
]

EULER_GAMMA = float(np.euler_gamma)

# switch between the series and the integral representation
_SERIES_CUTOFF = 0.1
# exp(-x) underflows beyond this
_UNDERFLOW_X = 745.0
# smallest argument the zero scan will descend to
_X_FLOOR = 1e-300

RealFunction = Callable[[float], float]


# --------------------------------------------------------------------------
# root finding
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RootBracket:
    """An interval ``[lo, hi]`` across which a function changes sign."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvalidBracketError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if not (np.isfinite(self.f_lo) and np.isfinite(self.f_hi)):
            raise InvalidBracketError("function values at the bracket ends must be finite")
        if not (self.f_lo * self.f_hi < 0):
            raise InvalidBracketError(
                f"no strict sign change: f({self.lo})={self.f_lo}, f({self.hi})={self.f_hi}"
            )

    @classmethod
    def from_function(cls, f: RealFunction, lo: float, hi: float) -> "RootBracket":
        return cls(lo, hi, f(lo), f(hi))


def find_root(f: RealFunction, bracket: RootBracket, tol: float = 1e-12) -> float:
    """Locate a root of ``f`` inside ``bracket``.

    Brent's method (inverse quadratic interpolation guarded by bisection), so
    convergence is guaranteed for continuous ``f``.  ``tol`` bounds the final
    bracket width, in absolute terms.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    return optimize.brentq(f, bracket.lo, bracket.hi, xtol=tol, rtol=4 * np.finfo(float).eps,
                           maxiter=500)


def lambert_root(tol: float = 1e-15) -> float:
    """Positive root ``A`` of ``exp(-x)/x = 1``, i.e. ``x exp(x) = 1``.

    Newton iteration from ``x = 0.5``; ``A = 0.567143290409784...`` (the omega
    constant).
    """
    x = 0.5
    for _ in range(50):
        ex = math.exp(x)
        step = (x * ex - 1.0) / (ex * (1.0 + x))
        x -= step
        if abs(step) < tol:
            break
    return x


# --------------------------------------------------------------------------
# quadrature
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool = True

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be non-negative")
        if self.evaluations < 1:
            raise ValueError("at least one evaluation is required")


def integrate_adaptive(f: RealFunction, a: float, b: float, tol: float = 1e-10,
                       rtol: float = 0.0, limit: int = 500,
                       mapping: str = "rational") -> QuadratureResult:
    """Adaptive Gauss-Kronrod quadrature of ``f`` over ``[a, b]``.

    ``b`` may be ``+inf``.  The half-line is then mapped onto ``(0, 1]``,
    either by ``x = a + (1 - u)/u`` (``mapping="rational"``, safe for
    algebraic decay) or by ``x = a - ln u`` (``mapping="log"``, best for
    exponentially decaying integrands).

    Non-convergence is not an error: the best estimate comes back with
    ``converged=False``.
    """
    if math.isinf(a):
        raise ValueError("lower limit must be finite")
    if b == a:
        return QuadratureResult(0.0, 0.0, 1)
    if math.isinf(b):
        if b < 0:
            raise ValueError("upper limit -inf is not supported")
        if mapping == "rational":
            def g(u):
                return f(a + (1.0 - u) / u) / (u * u)
        elif mapping == "log":
            def g(u):
                return f(a - math.log(u)) / u
        else:
            raise ValueError(f"unknown mapping {mapping!r}")
        lo, hi = 0.0, 1.0
    else:
        g, lo, hi = f, a, b

    out = integrate.quad(g, lo, hi, epsabs=tol, epsrel=rtol, limit=limit, full_output=1)
    value, err, info = out[0], out[1], out[2]
    converged = len(out) == 3
    return QuadratureResult(float(value), float(abs(err)), int(info["neval"]), converged)


# --------------------------------------------------------------------------
# K_{is}(x)
# --------------------------------------------------------------------------


def bessel_k_imag_amplitude(s: float) -> float:
    """Envelope ``sqrt(pi / (s sinh(pi s)))`` of the small-x oscillation."""
    if s <= 0:
        raise ValueError("order s must be positive")
    # sinh(pi s) overflows near s ~ 226; work in logs
    log_sinh = math.pi * s + math.log1p(-math.exp(-2 * math.pi * s)) - math.log(2.0)
    return math.exp(0.5 * (math.log(math.pi / s) - log_sinh))


def _series_phase_sum(s: float, x: float) -> complex:
    # S(x) = sum_k (x^2/4)^k / (k! (1+is)_k)
    q = 0.25 * x * x
    term = 1.0 + 0j
    total = term
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + 1j * s))
        total += term
        if abs(term) < 1e-17 * abs(total) or k > 500:
            return total


def bessel_k_imag_series(s: float, x: float) -> float:
    """``K_{is}(x)`` from the ascending series; accurate for ``x`` up to ~2."""
    if x <= 0:
        raise ValueError("x must be positive")
    amp = bessel_k_imag_amplitude(s)
    arg_gamma = special.loggamma(1.0 + 1j * s).imag
    ssum = _series_phase_sum(s, x)
    phase = s * (math.log(2.0) - math.log(x)) + arg_gamma - math.atan2(ssum.imag, ssum.real)
    return amp * abs(ssum) * math.sin(phase)


def bessel_k_imag_quad(s: float, x: float, tol: float = 1e-14) -> float:
    """``K_{is}(x)`` by quadrature of its integral representation.

    The integrand is rescaled by ``exp(x)`` so the tolerance is relative to
    the function's natural size.
    """
    if x <= 0:
        raise ValueError("x must be positive")
    if x > _UNDERFLOW_X:
        return 0.0
    # beyond t_max the scaled integrand is below 1e-17
    t_max = math.acosh(1.0 + 40.0 / x)

    def scaled(t):
        return math.exp(-x * (math.cosh(t) - 1.0)) * math.cos(s * t)

    n_osc = int(s * t_max / math.pi) + 1
    # full_output silences the roundoff warning that a 1e-14 request triggers
    res = integrate.quad(scaled, 0.0, t_max, epsabs=tol, epsrel=tol,
                         limit=200 + 10 * n_osc, full_output=1)
    return res[0] * math.exp(-x)


def bessel_k_imag(s: float, x: float, full_output: bool = False):
    """Modified Bessel function ``K_{is}(x)`` of imaginary order, real-valued.

    Parameters
    ----------
    s : float
        Order parameter, ``s > 0``.
    x : float
        Argument, ``x > 0``.
    full_output : bool
        If true, return ``(value, saturated)`` where ``saturated`` flags an
        argument so large that ``exp(-x)`` underflows and 0 is returned.
    """
    if s <= 0:
        raise ValueError("order s must be positive")
    if not x > 0:
        raise ValueError("x must be positive")
    saturated = x > _UNDERFLOW_X
    if saturated:
        value = 0.0
    elif x < _SERIES_CUTOFF:
        value = bessel_k_imag_series(s, x)
    else:
        value = bessel_k_imag_quad(s, x)
    if full_output:
        return value, saturated
    return value


@dataclass(frozen=True)
class ZeroScan:
    """Zeros of ``K_{is}`` in decreasing order.

    ``truncated`` is set when the scan reached the floating-point floor before
    collecting the requested number of zeros.
    """

    zeros: np.ndarray
    truncated: bool

    def __len__(self):
        return len(self.zeros)


def default_zero_ceiling(s: float) -> float:
    """An argument above the largest zero of ``K_{is}``.

    ``K_{is}(x)`` stops oscillating once ``x`` exceeds the turning point
    ``x ~ s``; a margin of 2 covers the transition region.
    """
    return 2.0 * (s + 1.0)


def bessel_k_imag_zeros(s: float, n_max: int, x_upper: float | None = None,
                        points_per_period: int = 40, tol: float = 1e-14) -> ZeroScan:
    """The ``n_max`` largest zeros of ``K_{is}(x)`` below ``x_upper``.

    Zeros are evenly spaced in ``ln x`` with period ``pi/s``; the scan walks
    down a logarithmic grid with ``points_per_period`` samples per period and
    polishes each sign change with Brent's method in ``ln x``.
    """
    if s <= 0:
        raise ValueError("order s must be positive")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if points_per_period < 40:
        raise ValueError("need at least 40 points per period to guarantee bracketing")
    if x_upper is None:
        x_upper = default_zero_ceiling(s)

    step = (math.pi / s) / points_per_period
    y_floor = math.log(_X_FLOOR)

    def f(y):
        return bessel_k_imag(s, math.exp(y))

    zeros = []
    y_hi = math.log(x_upper)
    f_hi = f(y_hi)
    while len(zeros) < n_max:
        y_lo = y_hi - step
        if y_lo < y_floor:
            break
        f_lo = f(y_lo)
        if f_lo == 0.0:
            zeros.append(math.exp(y_lo))
            # step past the exact zero so it is not bracketed twice
            y_lo -= 0.5 * step
            f_lo = f(y_lo)
        elif f_lo * f_hi < 0:
            root = find_root(f, RootBracket(y_lo, y_hi, f_lo, f_hi), tol=tol)
            zeros.append(math.exp(root))
        y_hi, f_hi = y_lo, f_lo
    return ZeroScan(np.array(zeros), truncated=len(zeros) < n_max)
