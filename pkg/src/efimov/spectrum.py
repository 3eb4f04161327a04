r"""Bound states of the cut-off inverse-square potential.

The radial problem is

.. math:: \left[-\frac{d^2}{dr^2} - \frac{s_0^2 + 1/4}{r^2}\right] u = -\kappa^2 u,
          \qquad u(r_c) = 0,

whose decaying solution is :math:`\sqrt{\kappa r}\,K_{is_0}(\kappa r)`.  Three
routes to the spectrum are provided: zeros of :math:`K_{is_0}`, direct
numerical shooting, and the leading small-argument formula
``kappa_n r_c = 2 exp(-gamma) exp(-n pi / s0)``.

The shooting solver works on the logarithmic grid ``x = ln(r/r_c)`` with
``u = sqrt(r) w(x)``, which turns the equation into

    w'' = (z^2 exp(2x) - s0^2) w,    z = kappa r_c,

a constant-frequency oscillator inside the turning point.  Everything depends
on ``kappa`` only through ``z``, so spectra are computed in units of ``1/r_c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp

from .specfun import (
    EULER_GAMMA,
    RootBracket,
    bessel_k_imag_zeros,
    default_zero_ceiling,
    find_root,
)

__all__ = [
    "InverseSquareProblem",
    "Method",
    "SpectrumResult",
    "ThomasReport",
    "spectrum_bessel",
    "spectrum_shooting",
    "shoot_spectrum",
    "spectrum_asymptotic",
    "scaling_ratio",
    "count_states_formula",
    "count_states_direct",
    "thomas_scaling_check",
    "node_count",
]

# outer boundary of the shooting grid, r_max = _DECAY_LENGTHS / kappa
_DECAY_LENGTHS = 30.0
# samples per period pi/s0 of ln(kappa) in the node-count scan
_SCAN_PER_PERIOD = 8
_Z_FLOOR = 1e-250
_ODE_RTOL = 1e-12
_ODE_ATOL = 1e-14


@dataclass(frozen=True)
class InverseSquareProblem:
    """Inverse-square well ``-(s0^2 + 1/4)/r^2`` on ``r_c < r < r_outer``.

    ``s0 = 0`` (the zero-energy threshold coupling -1/4) is accepted.
    """

    s0: float
    r_c: float
    r_outer: float = math.inf

    def __post_init__(self):
        if self.s0 < 0:
            raise ValueError("s0 must be non-negative")
        if not self.r_c > 0:
            raise ValueError("r_c must be positive")
        if not self.r_outer > self.r_c:
            raise ValueError("r_outer must exceed r_c")

    @property
    def coupling(self) -> float:
        """Dimensionless coefficient ``lambda`` of ``V = lambda/r^2``."""
        return -(self.s0 ** 2 + 0.25)

    def scaled(self, factor: float) -> "InverseSquareProblem":
        return InverseSquareProblem(self.s0, self.r_c * factor, self.r_outer * factor)


class Method(str, Enum):
    bessel_zeros = "bessel_zeros"
    shooting = "shooting"
    asymptotic = "asymptotic"


@dataclass(frozen=True)
class SpectrumResult:
    """Bound states ordered from deepest to shallowest (``kappa_1 > kappa_2 > ...``)."""

    kappas: np.ndarray
    energies: np.ndarray
    method: Method
    n_found: int
    truncated: bool = False

    def __post_init__(self):
        k = np.asarray(self.kappas)
        if np.any(np.diff(k) >= 0):
            raise ValueError("kappas must be strictly decreasing")
        if np.any(np.asarray(self.energies) >= 0):
            raise ValueError("bound-state energies must be negative")

    @classmethod
    def from_kappas(cls, kappas, method, truncated=False) -> "SpectrumResult":
        kappas = np.asarray(kappas, dtype=float)
        return cls(kappas, -kappas ** 2, Method(method), len(kappas), truncated)

    @property
    def ratios(self) -> np.ndarray:
        """Successive ``kappa_n / kappa_{n+1}``."""
        return self.kappas[:-1] / self.kappas[1:]


@dataclass(frozen=True)
class ThomasReport:
    scale: float
    ratio: float
    expected: float

    @property
    def relative_error(self) -> float:
        return abs(self.ratio - self.expected) / self.expected


def scaling_ratio(s0: float) -> float:
    """Energy ratio ``E_{n+1}/E_n = exp(-2 pi/s0)`` of neighbouring states."""
    if not s0 > 0:
        raise ValueError("s0 must be positive")
    return math.exp(-2.0 * math.pi / s0)


def spectrum_bessel(prob: InverseSquareProblem, n_max: int,
                    x_upper: float | None = None) -> SpectrumResult:
    """Spectrum from the zeros ``x_n`` of ``K_{is0}``: ``kappa_n = x_n / r_c``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if prob.s0 == 0:
        return SpectrumResult.from_kappas([], Method.bessel_zeros)
    scan = bessel_k_imag_zeros(prob.s0, n_max, x_upper=x_upper)
    return SpectrumResult.from_kappas(scan.zeros / prob.r_c, Method.bessel_zeros,
                                      truncated=scan.truncated)


def spectrum_asymptotic(prob: InverseSquareProblem, n_max: int) -> SpectrumResult:
    """Leading-order zeros ``kappa_n r_c = 2 exp(-gamma) exp(-n pi/s0)``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if not prob.s0 > 0:
        raise ValueError("s0 must be positive")
    n = np.arange(1, n_max + 1)
    z = 2.0 * math.exp(-EULER_GAMMA) * np.exp(-n * math.pi / prob.s0)
    return SpectrumResult.from_kappas(z / prob.r_c, Method.asymptotic)


# --------------------------------------------------------------------------
# shooting
# --------------------------------------------------------------------------


def _rhs(z: float, delta: float):
    z2 = z * z

    def f(x, y):
        return [y[1], (z2 * math.exp(2.0 * x) + delta) * y[0]]

    return f


def _node_event(x, y):
    return y[0]


def _integrate(z, delta, x0, x1, y0, count_nodes=False):
    sol = solve_ivp(_rhs(z, delta), (x0, x1), y0, method="DOP853", rtol=_ODE_RTOL,
                    atol=_ODE_ATOL, events=_node_event if count_nodes else None)
    if not sol.success:
        raise RuntimeError(f"radial integration failed: {sol.message}")
    nodes = 0
    if count_nodes:
        # the start point w(0) = 0 is not an interior node
        nodes = int(np.sum(np.abs(sol.t_events[0] - x0) > 1e-9))
    return sol.y[:, -1], nodes


def _outer_x(z: float) -> float:
    return math.log(_DECAY_LENGTHS / z)


def node_count(z: float, delta: float) -> int:
    """Interior nodes of the regular solution at ``kappa r_c = z``.

    By Sturm oscillation this equals the number of bound states deeper than
    ``-kappa^2`` (the box ``[r_c, 30/kappa]`` is wide enough that the count
    matches the half-line problem).
    """
    x_end = _outer_x(z)
    if x_end <= 0:
        return 0
    _, nodes = _integrate(z, delta, 0.0, x_end, [0.0, 1.0], count_nodes=True)
    return nodes


def _wronskian(z: float, delta: float) -> float:
    """Normalized Wronskian of the regular and the decaying solution.

    Zero exactly when the log-derivatives of the two match, i.e. at an
    eigenvalue.  The Wronskian of two solutions is independent of the matching
    point; the normalization only fixes its scale.
    """
    x_end = _outer_x(z)
    s0 = math.sqrt(max(-delta, 0.0))
    x_turn = math.log(s0 / z) if s0 > 0 else 0.5 * x_end
    x_m = min(max(x_turn, 0.1 * x_end), 0.9 * x_end)
    out, _ = _integrate(z, delta, 0.0, x_m, [0.0, 1.0])
    q = z * z * math.exp(2.0 * x_end) + delta
    # WKB log-derivative of the decaying branch
    slope = -math.sqrt(q) - z * z * math.exp(2.0 * x_end) / (2.0 * q)
    inn, _ = _integrate(z, delta, x_end, x_m, [1.0, slope])
    w = out[0] * inn[1] - out[1] * inn[0]
    return w / (math.hypot(*out) * math.hypot(*inn))


def shoot_spectrum(coupling: float, r_c: float, n_max: int,
                   z_floor: float = _Z_FLOOR) -> SpectrumResult:
    """Shooting solution of ``-u'' + (coupling/r^2) u = -kappa^2 u``, ``u(r_c) = 0``.

    Works for any real ``coupling``; for ``coupling >= -1/4`` there are no
    bound states and an empty result is returned.  States are bracketed by
    bisection on the node count in ``ln kappa`` and refined on the Wronskian.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    delta = coupling + 0.25
    if delta >= 0:
        return SpectrumResult.from_kappas([], Method.shooting)
    s0 = math.sqrt(-delta)
    period = math.pi / s0
    step = period / _SCAN_PER_PERIOD

    z_hi = default_zero_ceiling(s0)
    while node_count(z_hi, delta) > 0:
        z_hi *= 2.0

    # walk down in ln z until n_max states lie above
    grid = [(math.log(z_hi), 0)]
    truncated = False
    while grid[-1][1] < n_max:
        y = grid[-1][0] - step
        if y < math.log(z_floor):
            truncated = True
            break
        grid.append((y, node_count(math.exp(y), delta)))

    def log_w(y):
        return _wronskian(math.exp(y), delta)

    kappas = []
    for n in range(1, n_max + 1):
        # adjacent samples with N(y_hi) < n <= N(y_lo)
        pair = next(((lo, hi) for hi, lo in zip(grid, grid[1:]) if hi[1] < n <= lo[1]), None)
        if pair is None:
            break
        (y_lo, n_lo), (y_hi, n_hi) = pair
        # isolate the single transition n-1 -> n
        while n_lo > n or n_hi < n - 1 or y_hi - y_lo > 0.05 * period:
            y_mid = 0.5 * (y_lo + y_hi)
            n_mid = node_count(math.exp(y_mid), delta)
            if n_mid >= n:
                y_lo, n_lo = y_mid, n_mid
            else:
                y_hi, n_hi = y_mid, n_mid
        # widen slightly: the node-count jump and the Wronskian zero differ by
        # the exponentially small finite-box shift
        pad = 0.01 * period
        bracket = RootBracket.from_function(log_w, y_lo - pad, y_hi + pad)
        kappas.append(math.exp(find_root(log_w, bracket, tol=1e-13)) / r_c)
    truncated = truncated or len(kappas) < n_max
    return SpectrumResult.from_kappas(kappas, Method.shooting, truncated=truncated)


def spectrum_shooting(prob: InverseSquareProblem, n_max: int) -> SpectrumResult:
    """The ``n_max`` deepest bound states by direct integration of the radial equation."""
    return shoot_spectrum(prob.coupling, prob.r_c, n_max)


# --------------------------------------------------------------------------
# counting
# --------------------------------------------------------------------------


def count_states_formula(s0: float, a: float, r0: float) -> float:
    """Estimated number of shallow states, ``(s0/pi) ln(|a|/r0)`` (not rounded)."""
    if not r0 > 0:
        raise ValueError("r0 must be positive")
    if abs(a) < r0:
        raise ValueError("need |a| >= r0")
    return s0 / math.pi * math.log(abs(a) / r0)


def count_states_direct(prob: InverseSquareProblem, boundary_rtol: float = 1e-9) -> int:
    """Bound states with ``E <= 0`` of the doubly cut-off well.

    Counts the nodes of the zero-energy solution on ``(r_c, r_outer]`` (Sturm
    oscillation).  A node sitting on ``r_outer`` within ``boundary_rtol`` of the
    oscillation amplitude is a zero-energy state and is counted.
    """
    if math.isinf(prob.r_outer):
        raise ValueError("direct counting needs a finite r_outer")
    if prob.s0 == 0:
        return 0
    x_end = math.log(prob.r_outer / prob.r_c)
    sol = solve_ivp(_rhs(0.0, -prob.s0 ** 2), (0.0, x_end), [0.0, 1.0], method="DOP853",
                    rtol=_ODE_RTOL, atol=_ODE_ATOL, events=_node_event)
    w, dw = sol.y[:, -1]
    t_nodes = sol.t_events[0]
    interior = np.sum((t_nodes > 1e-9) & (t_nodes < x_end * (1.0 - 1e-9)))
    amplitude = math.hypot(w, dw / prob.s0)
    on_boundary = abs(w) <= boundary_rtol * amplitude
    return int(interior) + int(on_boundary)


def thomas_scaling_check(prob: InverseSquareProblem, scale: float) -> ThomasReport:
    """Deepest-state energy ratio ``E_1(r_c/scale)/E_1(r_c)``, expected ``scale^2``."""
    if not scale > 0:
        raise ValueError("scale must be positive")
    e_ref = spectrum_bessel(prob, 1).energies[0]
    e_new = spectrum_bessel(prob.scaled(1.0 / scale), 1).energies[0]
    return ThomasReport(scale, e_new / e_ref, scale ** 2)
