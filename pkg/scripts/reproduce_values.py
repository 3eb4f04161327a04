"""Print the headline numbers of the toolkit next to their reference values."""

import math

from efimov.bo3body import MassConfig, critical_mass_ratio, efimov_s0
from efimov.observables import next_resonance
from efimov.specfun import lambert_root
from efimov.spectrum import InverseSquareProblem, spectrum_asymptotic, spectrum_bessel
from efimov.twobody import critical_coupling

S0 = 1.00624


def main():
    rows = []
    A = lambert_root()
    rows.append(("Lambert constant A", A, 0.5671))
    rows.append(("critical coupling (beta = 1)", critical_coupling(1.0), 1 / math.pi ** 2))
    rows.append(("size ratio exp(pi/s0)", math.exp(math.pi / S0), 22.694))
    spec = spectrum_bessel(InverseSquareProblem(S0, 1.0), 3)
    rows.append(("exact kappa_1 r_c", spec.kappas[0], math.nan))
    rows.append(("asymptotic kappa_1 r_c",
                 spectrum_asymptotic(InverseSquareProblem(S0, 1.0), 1).kappas[0], math.nan))
    rows.append(("energy ratio E_1/E_2", spec.energies[0] / spec.energies[1], 515.0))
    rows.append(("critical mass ratio", critical_mass_ratio(), 1.054))
    rows.append(("s0 at mass ratio 20", efimov_s0(MassConfig(20.0)), 1.7455))
    rows.append(("next resonance from -850 a0", next_resonance(-850.0, 22.7), -19295.0))
    width = max(len(r[0]) for r in rows)
    for name, value, ref in rows:
        ref_txt = "" if math.isnan(ref) else f"  (reference {ref:g})"
        print(f"{name:<{width}}  {value:.10g}{ref_txt}")


if __name__ == "__main__":
    main()
