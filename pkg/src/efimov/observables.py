"""Lab-frame observables: three-body recombination in a cold gas.

This layer works in SI units.  Scattering lengths quoted in Bohr radii are
converted with :data:`BOHR_RADIUS`.  The dimensionless coefficient ``C(a)`` is
always an input; it is never computed here.  The rate law describes a
thermal gas with ``k_B T`` small compared with ``hbar^2/(m a^2)``; that
condition is the caller's responsibility and is not checked.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import constants

__all__ = [
    "BOHR_RADIUS",
    "ATOMIC_MASS_UNIT",
    "HBAR",
    "GasParams",
    "recombination_rate",
    "recombination_length",
    "resonance_ladder",
    "next_resonance",
    "read_c_table",
]

BOHR_RADIUS = constants.physical_constants["Bohr radius"][0]
ATOMIC_MASS_UNIT = constants.atomic_mass
HBAR = constants.hbar


@dataclass(frozen=True)
class GasParams:
    """A thermal gas of identical bosons.

    Attributes
    ----------
    number_density : float
        Atoms per m^3.
    atom_mass : float
        Mass in kg.
    scattering_length : float
        In metres, either sign.
    c_of_a : float
        Dimensionless recombination coefficient at this scattering length.
    """

    number_density: float
    atom_mass: float
    scattering_length: float
    c_of_a: float

    def __post_init__(self):
        if not self.number_density > 0:
            raise ValueError("number density must be positive")
        if not self.atom_mass > 0:
            raise ValueError("atom mass must be positive")
        if not self.c_of_a >= 0:
            raise ValueError("C(a) must be non-negative")


def recombination_rate(gas: GasParams) -> float:
    """Recombination events per unit volume and time, ``C n^3 (hbar/m) a^4``."""
    n, a = gas.number_density, gas.scattering_length
    return gas.c_of_a * n ** 3 * (HBAR / gas.atom_mass) * a ** 4


def recombination_length(c_of_a: float, a: float) -> float:
    """``rho_3 = (2 sqrt(3) C)^(1/4) a``; carries the units (and sign) of ``a``."""
    if not c_of_a >= 0:
        raise ValueError("C(a) must be non-negative")
    return (2.0 * math.sqrt(3.0) * c_of_a) ** 0.25 * a


def resonance_ladder(a1: float, n: int, factor: float = 22.7) -> np.ndarray:
    """Scattering lengths of ``n`` successive resonances starting at ``a1``.

    Consecutive entries differ by ``factor`` (``exp(pi/s0)``); the sign of
    ``a1`` is kept.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not factor > 1:
        raise ValueError("scaling factor must exceed 1")
    return a1 * factor ** np.arange(n)


def next_resonance(a: float, factor: float = 22.7) -> float:
    """Position of the next resonance further from unitarity."""
    return float(resonance_ladder(a, 2, factor)[1])


def read_c_table(path) -> tuple[np.ndarray, np.ndarray]:
    """Read a two-column ``a, C(a)`` table.

    Comma separated, ``.`` decimal point; blank lines and lines starting with
    ``#`` are skipped.  Raises ``ValueError`` on malformed rows or negative C.
    """
    a_vals, c_vals = [], []
    with Path(path).open(newline="") as fh:
        rows = csv.reader(line for line in fh if line.strip() and not line.lstrip().startswith("#"))
        for lineno, row in enumerate(rows, 1):
            if len(row) != 2:
                raise ValueError(f"row {lineno}: expected 2 columns, got {len(row)}")
            a, c = float(row[0]), float(row[1])
            if not (math.isfinite(a) and math.isfinite(c)) or c < 0:
                raise ValueError(f"row {lineno}: need finite a and C >= 0")
            a_vals.append(a)
            c_vals.append(c)
    if not a_vals:
        raise ValueError(f"{path}: no data rows")
    return np.array(a_vals), np.array(c_vals)
