"""Tabulate the adiabatic light-particle energy across the separation regions.

Writes ``R, xi R, shift, yukawa`` for a resonant and a slightly bound pair so
the crossover from ``-A^2/R^2`` to the Yukawa tail can be plotted.
"""

import argparse

import numpy as np

from efimov.bo3body import LAMBERT_A, MassConfig, build_curve, yukawa_tail
from efimov.twobody import binding_from_coupling, coupling_from_binding


def curve_table(kappa0, beta, masses, R):
    pot = coupling_from_binding(kappa0, beta)
    dimer = binding_from_coupling(pot)
    curve = build_curve(dimer, pot, masses, R)
    out = []
    for p in curve.points:
        yk = yukawa_tail(p.R, dimer.scattering_length, masses) if kappa0 > 0 else np.nan
        out.append((p.R, p.xi * p.R, p.shift, yk, p.region.value))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--beta", type=float, default=1e3)
    ap.add_argument("--mass-ratio", type=float, default=20.0)
    ap.add_argument("--points", type=int, default=25)
    args = ap.parse_args(argv)
    masses = MassConfig(args.mass_ratio)
    R = np.geomspace(1e-3, 3e3, args.points)
    print(f"# A = {LAMBERT_A:.12f}")
    for kappa0 in (0.0, 0.01):
        print(f"# kappa0 = {kappa0:g}")
        print("R,xi_R,shift,yukawa,region")
        for row in curve_table(kappa0, args.beta, masses, R):
            print(",".join(f"{v:.8g}" if isinstance(v, float) else str(v) for v in row))


if __name__ == "__main__":
    main()
