"""Two-body physics: the separable Yamaguchi interaction and low-energy scattering.

Units are hbar = 2m = 1 throughout, so energies are squared inverse lengths
and a bound state at wavenumber ``kappa0`` has energy ``-kappa0**2``.

The Yamaguchi form factor is ``g(p) = 1/(p**2 + beta**2)`` and the interaction
is ``V = -lambda |g><g|``.  Its binding integral has the closed form

    lambda * 4 pi * int_0^inf p^2 g(p)^2 / (p^2 + kappa^2) dp
        = lambda * pi^2 / (beta (beta + kappa)^2)

which makes the coupling/binding map explicit in both directions.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import mpmath

from .exceptions import NoBoundStateError

__all__ = [
    "YamaguchiPotential",
    "DimerState",
    "LowEnergyParams",
    "FeshbachParams",
    "critical_coupling",
    "binding_integral",
    "binding_from_coupling",
    "coupling_from_binding",
    "form_factor",
    "form_factor_r",
    "bound_wavefunction",
    "zero_range_amplitude",
    "effective_range_expansion",
    "dimer_pole",
    "feshbach_scattering_length",
    "feshbach_energy_gap",
]

# relative |beta - kappa0| below which the wave function uses its analytic limit
DEGENERATE_RTOL = 1e-8
# working precision for the coupling <-> binding conversions; near threshold
# kappa0 = sqrt(lambda pi^2 / beta) - beta loses ~log10(beta/kappa0) digits
_MP_DPS = 40
_THRESHOLD_ULPS = 4


@dataclass(frozen=True)
class YamaguchiPotential:
    """Attractive separable interaction ``V = -lambda |g><g|``.

    Attributes
    ----------
    lam : float
        Coupling strength (inverse length cubed), ``lam > 0``.
    beta : float
        Inverse range of the form factor, ``beta > 0``.
    """

    lam: float
    beta: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"coupling must be positive, got {self.lam}")
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")

    @property
    def form_factor_range(self) -> float:
        return self.beta

    @property
    def critical_coupling(self) -> float:
        return critical_coupling(self.beta)

    def g(self, p):
        return form_factor(p, self.beta)

    def g_r(self, r):
        return form_factor_r(r, self.beta)


@dataclass(frozen=True)
class DimerState:
    """Two-body bound state.

    ``scattering_length`` is the zero-range identification ``1/kappa0``
    (``+inf`` at threshold).  ``norm_const`` is the overlap
    ``C = int g(p) psi(p) d^3p`` of the normalized state; it vanishes at
    threshold where the state is not normalizable.
    """

    kappa0: float
    binding_energy: float
    scattering_length: float
    norm_const: float

    def __post_init__(self):
        if self.kappa0 < 0:
            raise ValueError("kappa0 must be non-negative")
        if self.binding_energy > 0:
            raise ValueError("binding energy must be non-positive")
        if self.kappa0 > 0 and not self.norm_const > 0:
            raise ValueError("a bound dimer needs a positive normalization constant")


@dataclass(frozen=True)
class LowEnergyParams:
    """Scattering length ``a`` (any sign, possibly infinite) and effective range ``r0``.

    ``r0 = 0`` is accepted and means the zero-range limit.
    """

    a: float
    r0: float

    def __post_init__(self):
        if self.r0 < 0:
            raise ValueError("effective range must be non-negative")
        if self.a == 0:
            raise ValueError("scattering length must be non-zero")


@dataclass(frozen=True)
class FeshbachParams:
    a_bg: float
    B0: float
    delta_B: float
    delta_mu: float = 1.0

    def __post_init__(self):
        if self.delta_B == 0:
            raise ValueError("resonance width delta_B must be non-zero")


def form_factor(p, beta: float):
    """Yamaguchi form factor in momentum space, ``1/(p^2 + beta^2)``."""
    return 1.0 / (p * p + beta * beta)


def form_factor_r(r, beta: float):
    """Form factor in coordinate space, ``sqrt(pi/2) exp(-beta r)/r``."""
    return math.sqrt(math.pi / 2) * math.exp(-beta * r) / r


def binding_integral(kappa: float, beta: float) -> float:
    """``int g(p)^2/(kappa^2 + p^2) d^3p`` for the Yamaguchi form factor."""
    return math.pi ** 2 / (beta * (beta + kappa) ** 2)


def critical_coupling(beta: float) -> float:
    """Coupling at which the bound state reaches zero energy, ``beta^3/pi^2``."""
    return beta ** 3 / math.pi ** 2


def _norm_const(kappa0: float, beta: float, lam: float) -> float:
    if kappa0 == 0:
        return 0.0
    # from int psi(p)^2 d^3p = 1 with psi(p) = lam C g(p)/(kappa0^2 + p^2)
    return (beta + kappa0) ** 1.5 * math.sqrt(kappa0 * beta) / (math.pi * lam)


def coupling_from_binding(kappa0: float, beta: float) -> YamaguchiPotential:
    """Coupling that binds the pair at wavenumber ``kappa0``."""
    if kappa0 < 0:
        raise ValueError("kappa0 must be non-negative")
    if beta <= 0:
        raise ValueError("beta must be positive")
    with mpmath.workdps(_MP_DPS):
        b = mpmath.mpf(beta)
        lam = b * (b + mpmath.mpf(kappa0)) ** 2 / mpmath.pi ** 2
    return YamaguchiPotential(float(lam), beta)


def binding_from_coupling(pot: YamaguchiPotential) -> DimerState:
    """Solve the separable binding condition for ``kappa0``.

    Raises
    ------
    NoBoundStateError
        If the coupling is below ``critical_coupling(beta)``; the scattering
        length is then negative and there is no dimer.
    """
    with mpmath.workdps(_MP_DPS):
        b = mpmath.mpf(pot.beta)
        kappa0 = float(mpmath.sqrt(mpmath.mpf(pot.lam) * mpmath.pi ** 2 / b) - b)
    # a double-precision coupling resolves kappa0 only to ~eps*beta/2; anything
    # within a few of those steps of zero is the threshold itself
    if abs(kappa0) <= _THRESHOLD_ULPS * sys.float_info.epsilon * pot.beta:
        kappa0 = 0.0
    if kappa0 < 0:
        lam_c = critical_coupling(pot.beta)
        raise NoBoundStateError(
            f"coupling {pot.lam:g} below critical value {lam_c:g}: no bound state"
        )
    a = math.inf if kappa0 == 0 else 1.0 / kappa0
    return DimerState(kappa0, -kappa0 ** 2, a, _norm_const(kappa0, pot.beta, pot.lam))


def bound_wavefunction(state: DimerState, pot: YamaguchiPotential, r):
    """Normalized bound-state wave function ``psi(r)`` of the Yamaguchi dimer.

    ``psi(r) = lam C sqrt(pi/2) (exp(-kappa0 r) - exp(-beta r)) / ((beta^2 - kappa0^2) r)``
    with ``int |psi|^2 4 pi r^2 dr = 1``; the shape is the Fourier transform of
    ``lam C g(p)/(kappa0^2 + p^2)``.  For ``beta == kappa0`` (relative
    difference under 1e-8) the analytic limit ``r exp(-beta r)/r`` is used.
    """
    k, b = state.kappa0, pot.beta
    if not k > 0:
        raise ValueError("wave function requires kappa0 > 0")
    r = float(r)
    if not r > 0:
        raise ValueError("r must be positive")
    # profile D(r) = (exp(-k r) - exp(-b r)) / (b - k), finite as b -> k
    prefactor = pot.lam * state.norm_const * math.sqrt(math.pi / 2) / (b + k)
    if abs(b - k) <= DEGENERATE_RTOL * b:
        profile = r * math.exp(-k * r)
    else:
        profile = -math.exp(-k * r) * math.expm1(-(b - k) * r) / (b - k)
    return prefactor * profile / r


def zero_range_amplitude(k: float, a: float) -> complex:
    """s-wave amplitude of a zero-range interaction, ``-1/(1/a + i k)``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    inv_a = 0.0 if math.isinf(a) else 1.0 / a
    return -1.0 / complex(inv_a, k)


def effective_range_expansion(k: float, params: LowEnergyParams) -> float:
    """``k cot(delta_0)`` truncated after the effective-range term."""
    inv_a = 0.0 if math.isinf(params.a) else 1.0 / params.a
    return -inv_a + 0.5 * params.r0 * k * k


def dimer_pole(params: LowEnergyParams) -> float:
    """Bound-state wavenumber from the pole of the amplitude at ``k = i kappa``.

    Solves ``-1/a - r0 kappa^2/2 + kappa = 0`` for the shallow root; with
    ``r0 = 0`` this is ``kappa = 1/a``.
    """
    if math.isinf(params.a) or params.a < 0:
        raise NoBoundStateError("no shallow dimer for a <= 0 or a = inf")
    a, r0 = params.a, params.r0
    disc = 1.0 - 2.0 * r0 / a
    if disc < 0:
        raise NoBoundStateError("effective range too large for a real pole")
    # rationalized form of (1 - sqrt(disc))/r0, finite as r0 -> 0
    return 2.0 / (a * (1.0 + math.sqrt(disc)))


def feshbach_scattering_length(B: float, params: FeshbachParams) -> float:
    """Single-channel resonance form ``a_bg (1 - delta_B/(B - B0))``.

    At ``B == B0`` the divergence is returned as an infinity carrying the sign
    of the ``B -> B0+`` branch.
    """
    detuning = B - params.B0
    if detuning == 0:
        return math.copysign(math.inf, -params.a_bg * params.delta_B)
    if math.isinf(detuning):
        return params.a_bg
    return params.a_bg * (1.0 - params.delta_B / detuning)


def feshbach_energy_gap(B: float, params: FeshbachParams) -> float:
    """Zeeman gap ``delta_mu (B - B0)`` between the open and closed channels."""
    return params.delta_mu * (B - params.B0)
