"""Born-Oppenheimer model of two heavy particles and one light particle.

The light particle (mass m) interacts with each heavy particle (mass M)
through the same separable Yamaguchi potential.  At fixed heavy-heavy
separation R its bound-state energy ``epsilon(R) = -kappa(R)**2`` follows from

    1 - q = q * B(kappa, R),    q = ((beta + kappa0)/(beta + kappa))**2,

    B = 2 beta/(beta - kappa)**2 * (exp(-kappa R) - exp(-beta R))/R
        - (beta + kappa)/(beta - kappa) * exp(-beta R),

after eliminating the coupling through the dimer wavenumber ``kappa0``.  With
``xi = kappa - kappa0`` the left side is rewritten as
``xi (2 beta + kappa + kappa0) / (beta + kappa)**2`` so that the far tail,
where ``xi`` is many orders of magnitude below ``kappa0``, stays accurate.

The light-particle equation is solved as written (``nu = nu' = 1``, heavy
limit); mass-ratio effects enter only through ``inverse_square_strength`` and
``efimov_s0``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .exceptions import NoRootError, SubcriticalMassRatioError
from .specfun import RootBracket, find_root, lambert_root
from .twobody import DimerState, YamaguchiPotential

__all__ = [
    "MassConfig",
    "Region",
    "BOPoint",
    "BOCurve",
    "BOValidityWarning",
    "bo_residual",
    "solve_kappa",
    "classify_region",
    "build_curve",
    "yukawa_tail",
    "inverse_square_strength",
    "critical_mass_ratio",
    "efimov_s0",
    "LAMBERT_A",
]

LAMBERT_A = lambert_root()

# |beta - kappa|/beta below which B is evaluated from its series form
_SINGULAR_RTOL = 1e-6
# upper end of the kappa bracket sits this far below beta (relative)
_BRACKET_GAP = 1e-8
_XI_FLOOR = 1e-300
# |xi R - A|/A tolerance for the inverse-square diagnostic
_LAMBERT_RTOL = 0.05


class BOValidityWarning(UserWarning):
    """The mass ratio is too small for the adiabatic picture to be trusted."""


@dataclass(frozen=True)
class MassConfig:
    """Kinematic factors for heavy/light mass ratio ``M/m``."""

    mass_ratio: float
    mu: float = field(init=False)
    nu: float = field(init=False)
    nu_prime: float = field(init=False)

    def __post_init__(self):
        m = self.mass_ratio
        if not m > 0:
            raise ValueError("mass ratio must be positive")
        object.__setattr__(self, "mu", m / 2)
        object.__setattr__(self, "nu", 2 * m / (2 * m + 1))
        object.__setattr__(self, "nu_prime", m / (m + 1))


class Region(str, Enum):
    """Regions of the adiabatic potential, from short to long distance."""

    I = "I"      # inside the heavy-heavy interaction range R0
    II = "II"    # inverse-square zone, R << a
    III = "III"  # crossover, R ~ a
    IV = "IV"    # Yukawa tail, R >> a


@dataclass(frozen=True)
class BOPoint:
    """Solution of the light-particle problem at one separation.

    ``shift`` is ``epsilon + kappa0**2 = -xi (2 kappa0 + xi)``, the part of the
    adiabatic energy measured from the atom-dimer threshold; it is computed
    without the cancellation that ``epsilon + kappa0**2`` would suffer.
    ``inverse_square`` flags points with ``|xi R - A|/A < 0.05``.
    """

    R: float
    kappa: float
    epsilon: float
    xi: float
    region: Region
    shift: float = math.nan
    inverse_square: bool = False
    status: str = "ok"

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass(frozen=True)
class BOCurve:
    points: tuple
    dimer: DimerState
    potential: YamaguchiPotential
    masses: "MassConfig"

    def __post_init__(self):
        Rs = [p.R for p in self.points]
        if any(b <= a for a, b in zip(Rs, Rs[1:])):
            raise ValueError("curve points must be strictly increasing in R")

    def __len__(self):
        return len(self.points)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(p, name) for p in self.points])

    @property
    def R(self):
        return self.column("R")

    @property
    def epsilon(self):
        return self.column("epsilon")

    @property
    def regions(self):
        return [p.region for p in self.points]


def _bracket_term(kappa: float, R: float, beta: float) -> float:
    """``B(kappa, R)``, the overlap term on the right of the BO equation."""
    d = beta - kappa
    if abs(d) < _SINGULAR_RTOL * beta:
        # B = exp(-beta R) (1 + 2 beta R phi(dR)),  phi(z) = (e^z - 1 - z)/z^2
        z = d * R
        if abs(z) < 1e-3:
            phi = 0.5 + z / 6 + z * z / 24 + z ** 3 / 120
        else:
            phi = (math.expm1(z) - z) / (z * z)
        return math.exp(-beta * R) * (1.0 + 2.0 * beta * R * phi)
    e_k = math.exp(-kappa * R)
    e_b = math.exp(-beta * R)
    # exp(-kR) - exp(-bR) without cancellation
    diff = -e_k * math.expm1(-d * R)
    return 2.0 * beta / (d * d) * diff / R - (beta + kappa) / d * e_b


def _bo_terms(xi: float, R: float, kappa0: float, beta: float):
    lhs = xi * (2.0 * beta + 2.0 * kappa0 + xi)
    rhs = (beta + kappa0) ** 2 * _bracket_term(kappa0 + xi, R, beta)
    return lhs, rhs


def bo_residual(xi: float, R: float, kappa0: float, beta: float) -> float:
    """Relative residual of the BO equation at ``kappa = kappa0 + xi``.

    Takes ``xi`` rather than ``kappa``: in the tail ``xi`` is far below the
    resolution of ``kappa0`` in floating point.
    """
    lhs, rhs = _bo_terms(xi, R, kappa0, beta)
    return (lhs - rhs) / (abs(lhs) + abs(rhs))


def classify_region(R: float, a: float, R0: float) -> Region:
    """Positional label: I below ``R0``, III on ``[a/3, 3a]``, II before, IV after."""
    if R <= R0:
        return Region.I
    if math.isinf(a) or R < a / 3:
        return Region.II
    if R <= 3 * a:
        return Region.III
    return Region.IV


def solve_kappa(R: float, dimer: DimerState, pot: YamaguchiPotential,
                R0: float | None = None, tol: float = 1e-14) -> BOPoint:
    """Light-particle wavenumber ``kappa(R)`` at heavy-heavy separation ``R``.

    The bracket for ``xi = kappa - kappa0`` is ``(0, beta - kappa0 - 1e-8 beta)``,
    searched downward in decades of ``xi``; the left side of the equation is
    increasing and the overlap term decreasing in ``xi``, so the root is unique.

    Raises
    ------
    NoRootError
        When ``kappa0 R`` is so large that the overlap term underflows, i.e.
        ``kappa`` cannot be distinguished from ``kappa0``.
    """
    beta, kappa0 = pot.beta, dimer.kappa0
    if not R > 0:
        raise ValueError("R must be positive")
    if not beta > kappa0:
        raise ValueError("need beta > kappa0")
    if R0 is None:
        R0 = 1.0 / beta

    def g(y):
        lhs, rhs = _bo_terms(math.exp(y), R, kappa0, beta)
        return lhs - rhs

    xi_hi = beta - kappa0 - _BRACKET_GAP * beta
    y_hi = math.log(xi_hi)
    g_hi = g(y_hi)
    if not g_hi > 0:
        raise NoRootError(f"no attractive branch at R={R:g} (kappa0 too close to beta)")
    y_floor = math.log(_XI_FLOOR)
    y_lo, g_lo = y_hi, g_hi
    while g_lo > 0:
        y_hi, g_hi = y_lo, g_lo
        y_lo = y_hi - math.log(10.0)
        if y_lo < y_floor:
            raise NoRootError(
                f"at R={R:g} the light particle is bound to a single heavy partner "
                f"to machine precision (kappa0 R = {kappa0 * R:g})"
            )
        g_lo = g(y_lo)
    if g_lo == 0:
        y = y_lo
    else:
        y = find_root(g, RootBracket(y_lo, y_hi, g_lo, g_hi), tol=tol)
    xi = math.exp(y)
    kappa = kappa0 + xi
    a = dimer.scattering_length
    return BOPoint(
        R=R,
        kappa=kappa,
        epsilon=-kappa * kappa,
        xi=xi,
        region=classify_region(R, a, R0),
        shift=-xi * (2.0 * kappa0 + xi),
        inverse_square=abs(xi * R - LAMBERT_A) / LAMBERT_A < _LAMBERT_RTOL,
    )


def build_curve(dimer: DimerState, pot: YamaguchiPotential, masses: MassConfig,
                R_grid: Sequence[float], R0: float | None = None,
                tol: float = 1e-14) -> BOCurve:
    """Solve the adiabatic problem on every grid point.

    Failures are recorded per point (``status="no_root"``, NaN values) rather
    than aborting the curve.
    """
    R_grid = [float(r) for r in R_grid]
    if any(r <= 0 for r in R_grid):
        raise ValueError("grid points must be positive")
    if any(b <= a for a, b in zip(R_grid, R_grid[1:])):
        raise ValueError("grid must be strictly increasing")
    if R0 is None:
        R0 = 1.0 / pot.beta
    points = []
    for R in R_grid:
        try:
            points.append(solve_kappa(R, dimer, pot, R0=R0, tol=tol))
        except NoRootError:
            nan = math.nan
            region = classify_region(R, dimer.scattering_length, R0)
            points.append(BOPoint(R, nan, nan, nan, region, status="no_root"))
    return BOCurve(tuple(points), dimer, pot, masses)


def yukawa_tail(R: float, a: float, masses: MassConfig) -> float:
    """Asymptotic adiabatic potential ``-(2/nu) exp(-R/a)/(a R)`` for ``R >> a``."""
    if not (R > 0 and a > 0):
        raise ValueError("R and a must be positive")
    return -(2.0 / masses.nu) * math.exp(-R / a) / (a * R)


def inverse_square_strength(masses: MassConfig) -> float:
    """Coefficient ``c`` of the heavy-pair potential ``-c/R^2`` at resonance.

    ``c = mu A^2 / nu = A^2 (1 + 2M)/4`` with ``A`` the Lambert constant.
    """
    if masses.mass_ratio < 1:
        warnings.warn(
            f"mass ratio {masses.mass_ratio:g} < 1: the adiabatic approximation "
            "assumes heavy outer particles", BOValidityWarning, stacklevel=2)
    return LAMBERT_A ** 2 * (1.0 + 2.0 * masses.mass_ratio) / 4.0


def critical_mass_ratio() -> float:
    """Mass ratio at which ``c`` reaches 1/4: ``(1/A^2 - 1)/2``."""
    return (1.0 / LAMBERT_A ** 2 - 1.0) / 2.0


def efimov_s0(masses: MassConfig) -> float:
    """Efimov scaling parameter from matching ``-c/R^2`` to ``-(s0^2 + 1/4)/R^2``."""
    excess = LAMBERT_A ** 2 * (1.0 + 2.0 * masses.mass_ratio) / 4.0 - 0.25
    if excess <= 0:
        raise SubcriticalMassRatioError(masses.mass_ratio, critical_mass_ratio())
    return math.sqrt(excess)
