"""Acceptance gate: eleven end-to-end checks at their stated tolerances.

Each check returns ``(passed, detail)``; the pytest wrapper prints one
``PASS``/``FAIL`` line per criterion and then asserts.  Run the file directly
(``python3 tests/test_acceptance.py``) for the summary alone.
"""

import math

import numpy as np
import pytest
from scipy import integrate

from efimov.bo3body import (
    MassConfig,
    critical_mass_ratio,
    efimov_s0,
    solve_kappa,
    yukawa_tail,
)
from efimov.exceptions import SubcriticalMassRatioError
from efimov.observables import next_resonance
from efimov.semiclassical import count_states_semiclassical
from efimov.specfun import bessel_k_imag_zeros, lambert_root
from efimov.spectrum import (
    InverseSquareProblem,
    count_states_direct,
    count_states_formula,
    spectrum_asymptotic,
    spectrum_bessel,
    spectrum_shooting,
)
from efimov.twobody import binding_from_coupling, coupling_from_binding

S0 = 1.00624


def lambert_constant():
    A = lambert_root()
    residual = abs(math.exp(-A) / A - 1)
    ok = round(A, 4) == 0.5671 and residual < 1e-12
    return ok, f"A = {A:.15f}, residual {residual:.1e}"


def efimov_scaling():
    r = spectrum_bessel(InverseSquareProblem(S0, 1.0), 3)
    k_ratio = r.kappas[1] / r.kappas[2]
    e_ratio = r.energies[0] / r.energies[1]
    ok = abs(k_ratio / 22.694 - 1) < 5e-3 and abs(e_ratio / 515.0 - 1) < 1e-2
    return ok, f"kappa_2/kappa_3 = {k_ratio:.6f}, E_1/E_2 = {e_ratio:.3f}"


def cross_method_spectrum():
    worst = 0.0
    for s0 in (0.5, S0, 1.7455):
        prob = InverseSquareProblem(s0, 1.0)
        exact = spectrum_bessel(prob, 3).kappas
        shot = spectrum_shooting(prob, 3).kappas
        if len(shot) < 3:
            return False, f"shooting found {len(shot)} states at s0={s0}"
        worst = max(worst, float(np.max(np.abs(shot / exact - 1))))
    return worst < 1e-6, f"max relative deviation {worst:.2e}"


def asymptotic_zeros():
    exact = bessel_k_imag_zeros(S0, 3).zeros
    approx = spectrum_asymptotic(InverseSquareProblem(S0, 1.0), 3).kappas
    err = np.abs(approx / exact - 1)
    ok = err[0] < 0.05 and bool(np.all(np.diff(err) < 0))
    return ok, "relative errors n=1..3: " + ", ".join(f"{e:.4f}" for e in err)


def bo_inverse_square():
    pot = coupling_from_binding(0.0, 1e3)
    dimer = binding_from_coupling(pot)
    lo, hi = 0.5666, 0.5677
    bad = []
    worst = None
    for R in np.geomspace(0.1, 1e3, 41):
        if 1e3 * R < 100:
            continue
        xr = solve_kappa(float(R), dimer, pot).xi * R
        if not lo <= xr <= hi:
            bad.append(R)
            if worst is None:
                worst = (R, xr)
    if not bad:
        return True, "xi R within [0.5666, 0.5677] on the whole grid"
    return False, (f"{len(bad)}/41 grid points outside window, R <= {max(bad):.3g}; "
                   f"worst xi R = {worst[1]:.5f} at R = {worst[0]:.3g}")


def bo_yukawa_tail():
    kappa0, beta = 0.01, 1e3
    pot = coupling_from_binding(kappa0, beta)
    dimer = binding_from_coupling(pot)
    masses = MassConfig(20.0)
    devs = []
    for R in (10 / kappa0, 20 / kappa0):
        pt = solve_kappa(R, dimer, pot)
        devs.append(abs(pt.shift / yukawa_tail(R, dimer.scattering_length, masses) - 1))
    return max(devs) < 0.1, "deviations " + ", ".join(f"{d:.4f}" for d in devs)


def state_count_agreement():
    worst = 0.0
    for ratio in (1e2, 1e4, 1e6):
        counts = (count_states_formula(S0, ratio, 1.0),
                  count_states_direct(InverseSquareProblem(S0, 1.0, ratio)),
                  count_states_semiclassical(S0, 0.0, 1.0, ratio))
        worst = max(worst, max(counts) - min(counts))
    # 22.694 is exp(pi/s0) to 5 significant figures; k is exact at that precision
    exact_k = [count_states_formula(S0, math.exp(k * math.pi / S0), 1.0) for k in (1, 2, 3)]
    literal_k = [count_states_formula(S0, 22.694 ** k, 1.0) for k in (1, 2, 3)]
    ok_k = all(abs(n - k) < 1e-12 for k, n in zip((1, 2, 3), exact_k)) and \
        all(round(n, 4) == k for k, n in zip((1, 2, 3), literal_k))
    return worst <= 1 and ok_k, (f"max spread {worst:.3f}; formula at 22.694^k: "
                                 + ", ".join(f"{n:.6f}" for n in literal_k))


def cutoff_scaling():
    base = spectrum_shooting(InverseSquareProblem(S0, 1.0), 3).energies
    halved = spectrum_shooting(InverseSquareProblem(S0, 0.5), 3).energies
    dev = float(np.max(np.abs(halved / base - 4.0)))
    return dev <= 1e-5, f"max |E_n(r_c/2)/E_n(r_c) - 4| = {dev:.2e}"


def critical_mass():
    m_star = critical_mass_ratio()
    try:
        efimov_s0(MassConfig(m_star))
        rejected = False
    except SubcriticalMassRatioError as exc:
        rejected = f"{m_star:.3f}" in str(exc) or f"{m_star:.4g}" in str(exc)
    s20 = efimov_s0(MassConfig(20.0))
    ok = rejected and round(m_star, 3) == 1.054 and abs(s20 - 1.7455) <= 1e-3
    return ok, f"M* = {m_star:.7f}, s0(20) = {s20:.7f}, rejected at M* = {bool(rejected)}"


def _binding_residual(pot, kappa0):
    beta = pot.beta
    # angular integral done analytically: 4 pi int p^2 g(p)^2/(kappa0^2 + p^2) dp
    f = lambda p: p * p / ((p * p + beta ** 2) ** 2 * (kappa0 ** 2 + p * p))  # noqa: E731
    # log-spaced breakpoints between the two scales so each piece is resolved
    n_dec = max(1, int(np.ceil(np.log10(beta / kappa0))))
    edges = [0.0, *np.geomspace(kappa0, beta, n_dec + 1), np.inf]
    val = sum(integrate.quad(f, lo, hi, epsabs=0, epsrel=1e-13, limit=400)[0]
              for lo, hi in zip(edges, edges[1:]))
    return abs(pot.lam * 4 * math.pi * val - 1)


def two_body_round_trip():
    beta = 1.0
    worst_trip, worst_res = 0.0, 0.0
    for x in np.geomspace(1e-6, 1.0, 25):
        pot = coupling_from_binding(x * beta, beta)
        k = binding_from_coupling(pot).kappa0
        worst_trip = max(worst_trip, abs(k / (x * beta) - 1))
        worst_res = max(worst_res, _binding_residual(pot, x * beta))
    ok = worst_trip < 1e-10 and worst_res < 1e-10
    return ok, f"round trip {worst_trip:.1e}, binding residual {worst_res:.1e}"


def resonance_ladder():
    a2 = next_resonance(-850.0, 22.7)
    return a2 == pytest.approx(-19295.0, abs=0.5), f"next resonance {a2:.1f} a0"


CRITERIA = [
    ("lambert_constant", lambert_constant),
    ("efimov_scaling", efimov_scaling),
    ("cross_method_spectrum", cross_method_spectrum),
    ("asymptotic_zeros", asymptotic_zeros),
    ("bo_inverse_square", bo_inverse_square),
    ("bo_yukawa_tail", bo_yukawa_tail),
    ("state_count_agreement", state_count_agreement),
    ("cutoff_scaling", cutoff_scaling),
    ("critical_mass_ratio", critical_mass),
    ("two_body_round_trip", two_body_round_trip),
    ("resonance_ladder", resonance_ladder),
]


def _line(i, name, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] {i:2d} {name}: {detail}"


@pytest.mark.parametrize("index, name, check",
                         [(i, n, c) for i, (n, c) in enumerate(CRITERIA, 1)],
                         ids=[n for n, _ in CRITERIA])
def test_criterion(index, name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(index, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    for i, (name, check) in enumerate(CRITERIA, 1):
        print(_line(i, name, *check()))
