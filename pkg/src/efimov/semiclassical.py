"""Semiclassical partition function, density of states and state counting.

In units hbar = 2m = 1 (so m = 1/2) the per-partial-wave expressions are

    Z_l(b) = (m / 2 pi hbar^2)^(1/2) b^(-1/2) int exp(-b V_l(r)) dr
    g_l(E) = (m / 2 hbar^2)^(1/2) (1/pi) int dr / sqrt(E - V_l(r))
    N(E)   = (m / 2 hbar^2)^(1/2) (2/pi) int sqrt(E - V_l(r)) dr

with integrals over the classically allowed part of the radial domain.  ``g`` is
the inverse Laplace transform of ``Z`` and ``N`` the integral of ``g``, so all
three share the square-root prefactor.  ``b`` is an inverse temperature,
unrelated to the form-factor range of the two-body module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .exceptions import DivergentIntegralError
from .specfun import RootBracket, find_root

__all__ = [
    "RadialPotential",
    "LangerChannel",
    "langer_potential",
    "allowed_intervals",
    "partition_function",
    "density_of_states",
    "count_states_wkb",
    "count_states_semiclassical",
]

MASS = 0.5
HBAR = 1.0
_PREF = math.sqrt(MASS / (2 * HBAR ** 2))
# near a turning point E - V(r) is a difference of nearly equal numbers,
# which caps the attainable relative accuracy
_QUAD_TOL = 1e-12


@dataclass(frozen=True)
class RadialPotential:
    """A radial potential ``V(r)`` restricted to ``[r_lo, r_hi]``.

    ``r_lo = 0`` is allowed for potentials that stay finite at the origin.
    """

    func: Callable[[float], float]
    r_lo: float
    r_hi: float

    def __post_init__(self):
        if not self.r_lo >= 0:
            raise ValueError("r_lo must be non-negative")
        if not self.r_hi > self.r_lo:
            raise ValueError("need r_hi > r_lo")

    def __call__(self, r):
        return self.func(r)


@dataclass(frozen=True)
class LangerChannel:
    """Partial wave ``ell`` of the inverse-square well with strength ``s0``.

    With ``langer=True`` the centrifugal factor is ``(ell + 1/2)^2``; otherwise
    the bare ``ell (ell + 1)`` is kept.
    """

    ell: int
    s0: float
    langer: bool = True

    def __post_init__(self):
        if self.ell < 0 or int(self.ell) != self.ell:
            raise ValueError("ell must be a non-negative integer")

    @property
    def coefficient(self) -> float:
        """``C`` in ``V_l(r) = C / r^2``."""
        centrifugal = (self.ell + 0.5) ** 2 if self.langer else self.ell * (self.ell + 1)
        return centrifugal - (self.s0 ** 2 + 0.25)

    def potential(self, r_lo: float, r_hi: float) -> RadialPotential:
        c = self.coefficient
        if c == 0:
            return RadialPotential(lambda r: 0.0, r_lo, r_hi)
        return RadialPotential(lambda r: c / (r * r) if r > 0 else math.inf, r_lo, r_hi)


def langer_potential(chan: LangerChannel, r: float) -> float:
    """``V_l(r) = [(l + 1/2)^2 - (s0^2 + 1/4)] / r^2``."""
    if not r > 0:
        raise ValueError("r must be positive")
    return chan.coefficient / (r * r)


def _as_potential(pot, domain) -> RadialPotential:
    if isinstance(pot, RadialPotential):
        return pot
    if domain is None:
        raise ValueError("a LangerChannel needs an explicit radial domain")
    r_lo, r_hi = domain
    if not math.isfinite(r_hi):
        raise DivergentIntegralError(f"radial domain [{r_lo}, {r_hi}] is unbounded")
    if r_lo == 0 and pot.coefficient < 0:
        raise DivergentIntegralError(
            "the 1/r^2 potential is not integrable at r = 0; use r_lo > 0")
    return pot.potential(r_lo, r_hi)


def allowed_intervals(pot: RadialPotential, E: float, samples: int = 400):
    """Sub-intervals of the domain where ``V(r) < E``.

    Returns a list of ``(r1, r2, left_turning, right_turning)``; the flags mark
    ends that are classical turning points rather than domain edges.
    """
    if pot.r_lo > 0:
        rs = np.geomspace(pot.r_lo, pot.r_hi, samples)
    else:
        rs = np.concatenate([[0.0], np.geomspace(1e-9 * pot.r_hi, pot.r_hi, samples - 1)])

    def excess(r):
        return E - pot(r)

    vals = [excess(r) for r in rs]
    out = []
    start = None
    for i, (r, v) in enumerate(zip(rs, vals)):
        if v > 0 and start is None:
            if i == 0:
                start = (pot.r_lo, False)
            else:
                r_t = find_root(excess, RootBracket(rs[i - 1], r, vals[i - 1], v),
                                tol=1e-15 * r) if vals[i - 1] < 0 else rs[i - 1]
                start = (r_t, vals[i - 1] < 0)
        elif v <= 0 and start is not None:
            r_t = find_root(excess, RootBracket(rs[i - 1], r, vals[i - 1], v),
                            tol=1e-15 * r) if v < 0 else r
            out.append((start[0], r_t, start[1], True))
            start = None
    if start is not None:
        out.append((start[0], pot.r_hi, start[1], False))
    return out


def _quad_radial(f, a: float, b: float) -> float:
    """``int_a^b f(r) dr``, in ``ln r`` unless the interval starts at 0."""
    if a == 0:
        return integrate.quad(f, a, b, epsabs=0.0, epsrel=_QUAD_TOL, limit=400,
                              full_output=1)[0]

    def g(t):
        r = math.exp(t)
        return r * f(r)

    return integrate.quad(g, math.log(a), math.log(b), epsabs=0.0, epsrel=_QUAD_TOL,
                          limit=400, full_output=1)[0]


def _integrate_allowed(h, pot: RadialPotential, E: float) -> float:
    """``int h(E - V(r)) dr`` over the allowed region.

    Plain ends are integrated in ``ln r``; a turning point ``r_t`` is handled
    with ``r = r_t -+ u^2``, which cancels the square-root behaviour there.
    """
    total = 0.0
    for r1, r2, left_t, right_t in allowed_intervals(pot, E):
        mid = math.sqrt(r1 * r2) if r1 > 0 else 0.5 * r2
        for a, b, turning, side in ((r1, mid, left_t, -1), (mid, r2, right_t, +1)):
            if b <= a:
                continue
            if turning:
                r_t = a if side < 0 else b

                def f(u, r_t=r_t, side=side):
                    r = r_t - side * u * u
                    return 2.0 * u * h(max(E - pot(r), 0.0))

                val = integrate.quad(f, 0.0, math.sqrt(b - a), epsabs=0.0,
                                     epsrel=_QUAD_TOL, limit=400, full_output=1)[0]
            else:
                val = _quad_radial(lambda r: h(E - pot(r)), a, b)
            total += val
    return total


def _inv_sqrt(x):
    return 1.0 / math.sqrt(x) if x > 0 else 0.0


def partition_function(pot, inverse_temperature: float, pot_domain=None) -> float:
    """Semiclassical ``Z_l`` at the given inverse temperature."""
    if not inverse_temperature > 0:
        raise ValueError("inverse temperature must be positive")
    V = _as_potential(pot, pot_domain)
    b = inverse_temperature
    integral = _quad_radial(lambda r: math.exp(-b * V(r)), V.r_lo, V.r_hi)
    return math.sqrt(MASS / (2 * math.pi * HBAR ** 2)) / math.sqrt(b) * integral


def density_of_states(pot, E: float, pot_domain=None) -> float:
    """Semiclassical density of states ``g_l(E)``; zero if no region is allowed."""
    V = _as_potential(pot, pot_domain)
    return _PREF / math.pi * _integrate_allowed(_inv_sqrt, V, E)


def count_states_wkb(pot, E: float, pot_domain=None) -> float:
    """Semiclassical count ``N(E)`` of states below ``E``."""
    V = _as_potential(pot, pot_domain)
    return 2.0 * _PREF / math.pi * _integrate_allowed(lambda x: math.sqrt(max(x, 0.0)), V, E)


def count_states_semiclassical(s0: float, E: float, r0: float, a: float,
                               langer: bool = True) -> float:
    """Number of s-wave states below ``E <= 0`` for the well cut off at ``[r0, a]``.

    At ``E = 0`` the whole domain is classically allowed and the integral
    reduces to ``(s0/pi) ln(a/r0)``; it is still evaluated by quadrature.
    """
    if E > 0:
        raise ValueError("E must be non-positive")
    if not r0 > 0:
        raise ValueError("r0 must be positive")
    if a < r0:
        raise ValueError("need a >= r0")
    if a == r0:
        return 0.0
    return count_states_wkb(LangerChannel(0, s0, langer=langer), E, (r0, a))
