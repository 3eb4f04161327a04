"""Compare the three spectrum routes and the three state counts.

Shows the geometric ratio converging to ``exp(pi/s0)``, the constant offset of
the leading asymptotic zeros, and how the semiclassical count with and
without the Langer shift compares with the exact node count.
"""

import argparse
import math

from efimov.semiclassical import count_states_semiclassical
from efimov.spectrum import (
    InverseSquareProblem,
    count_states_direct,
    count_states_formula,
    spectrum_asymptotic,
    spectrum_bessel,
    spectrum_shooting,
)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s0", type=float, default=1.00624)
    ap.add_argument("--n", type=int, default=4)
    args = ap.parse_args(argv)
    prob = InverseSquareProblem(args.s0, 1.0)
    exact = spectrum_bessel(prob, args.n)
    shot = spectrum_shooting(prob, min(args.n, 3))
    asym = spectrum_asymptotic(prob, args.n)
    factor = math.exp(math.pi / args.s0)
    print(f"exp(pi/s0) = {factor:.8f}")
    print("n,kappa_bessel,kappa_shooting,kappa_asymptotic,ratio_to_next")
    for i in range(args.n):
        ks = f"{shot.kappas[i]:.10g}" if i < shot.n_found else ""
        ratio = f"{exact.kappas[i] / exact.kappas[i + 1]:.8f}" if i + 1 < args.n else ""
        print(f"{i + 1},{exact.kappas[i]:.10g},{ks},{asym.kappas[i]:.10g},{ratio}")
    print()
    print("a_over_r0,formula,direct,semiclassical,semiclassical_no_langer")
    for ratio in (1e2, 1e4, 1e6, 1e8):
        f = count_states_formula(args.s0, ratio, 1.0)
        d = count_states_direct(InverseSquareProblem(args.s0, 1.0, ratio))
        sc = count_states_semiclassical(args.s0, 0.0, 1.0, ratio)
        bare = count_states_semiclassical(args.s0, 0.0, 1.0, ratio, langer=False)
        print(f"{ratio:g},{f:.6f},{d},{sc:.6f},{bare:.6f}")


if __name__ == "__main__":
    main()
