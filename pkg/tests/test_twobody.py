import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from efimov.exceptions import NoBoundStateError
from efimov.twobody import (
    DimerState,
    FeshbachParams,
    LowEnergyParams,
    YamaguchiPotential,
    binding_from_coupling,
    binding_integral,
    bound_wavefunction,
    coupling_from_binding,
    critical_coupling,
    dimer_pole,
    effective_range_expansion,
    feshbach_scattering_length,
    feshbach_energy_gap,
    form_factor,
    form_factor_r,
    zero_range_amplitude,
)


def quad_binding_integral(kappa, beta):
    """4 pi int p^2 g(p)^2/(kappa^2 + p^2) dp by plain quadrature."""
    f = lambda p: 4 * math.pi * p * p * form_factor(p, beta) ** 2 / (kappa ** 2 + p * p)  # noqa: E731
    val, _ = integrate.quad(f, 0, np.inf, epsabs=0, epsrel=1e-13, limit=200)
    return val


# ---------------------------------------------------------------- types


@pytest.mark.parametrize("lam, beta", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0)])
def test_potential_validation(lam, beta):
    with pytest.raises(ValueError):
        YamaguchiPotential(lam, beta)


def test_dimer_state_validation():
    with pytest.raises(ValueError):
        DimerState(-0.1, -0.01, 10.0, 1.0)
    with pytest.raises(ValueError):
        DimerState(0.1, 0.01, 10.0, 1.0)
    with pytest.raises(ValueError):
        DimerState(0.1, -0.01, 10.0, 0.0)


def test_low_energy_params_validation():
    with pytest.raises(ValueError):
        LowEnergyParams(10.0, -1.0)
    with pytest.raises(ValueError):
        LowEnergyParams(0.0, 1.0)
    LowEnergyParams(-math.inf, 1.0)


def test_feshbach_params_validation():
    with pytest.raises(ValueError):
        FeshbachParams(1.0, 0.0, 0.0)


def test_form_factor_r_is_fourier_transform():
    # (2 pi)^(-3/2) int e^{ip.r} g(p) d^3p = sqrt(2/pi) / r int_0^inf p sin(pr) g(p) dp
    beta, r = 1.3, 0.7
    val, _ = integrate.quad(lambda p: p * form_factor(p, beta), 0, np.inf, weight="sin", wvar=r)
    assert math.sqrt(2 / math.pi) / r * val == pytest.approx(form_factor_r(r, beta), rel=1e-8)


# ---------------------------------------------------------------- binding


@pytest.mark.parametrize("kappa, beta", [(0.0, 1.0), (0.01, 1.0), (1.0, 1.0), (0.3, 2.5)])
def test_binding_integral_closed_form(kappa, beta):
    assert binding_integral(kappa, beta) == pytest.approx(quad_binding_integral(kappa, beta),
                                                          rel=1e-11)


def test_critical_coupling_value():
    lam = coupling_from_binding(0.0, 1.0).lam
    assert lam == pytest.approx(0.10132, abs=1e-5)
    assert lam == pytest.approx(1 / math.pi ** 2, rel=1e-15)
    assert binding_from_coupling(YamaguchiPotential(critical_coupling(1.0), 1.0)).kappa0 == 0.0


def test_critical_threshold_gives_infinite_scattering_length():
    d = binding_from_coupling(YamaguchiPotential(critical_coupling(2.0), 2.0))
    assert d.kappa0 == 0.0 and math.isinf(d.scattering_length) and d.norm_const == 0.0


def test_kappa_equal_beta_needs_four_times_critical():
    assert coupling_from_binding(1.7, 1.7).lam == pytest.approx(4 * critical_coupling(1.7),
                                                                rel=1e-14)


def test_critical_coupling_cubic_scaling():
    betas = np.array([0.5, 2.0, 11.0])
    slope = np.polyfit(np.log(betas), np.log([critical_coupling(b) for b in betas]), 1)[0]
    assert slope == pytest.approx(3.0, abs=1e-6)


def test_subcritical_raises():
    with pytest.raises(NoBoundStateError):
        binding_from_coupling(YamaguchiPotential(0.05, 1.0))


@pytest.mark.parametrize("beta", [1.0, 1e3])
@pytest.mark.parametrize("ratio", [1e-6, 1e-4, 1e-2, 0.5, 1.0])
def test_round_trip(beta, ratio):
    k0 = ratio * beta
    back = binding_from_coupling(coupling_from_binding(k0, beta)).kappa0
    assert back == pytest.approx(k0, rel=1e-10)


@given(st.floats(-6, 0), st.floats(-2, 3))
@settings(max_examples=80, deadline=None)
def test_round_trip_property(log_ratio, log_beta):
    beta = 10 ** log_beta
    k0 = 10 ** log_ratio * beta
    back = binding_from_coupling(coupling_from_binding(k0, beta)).kappa0
    assert abs(back / k0 - 1) < 1e-10


def test_binding_condition_by_quadrature():
    pot = YamaguchiPotential(2 * critical_coupling(1.0), 1.0)
    d = binding_from_coupling(pot)
    assert d.kappa0 > 0
    assert abs(pot.lam * quad_binding_integral(d.kappa0, 1.0) - 1) < 1e-10
    assert d.binding_energy == pytest.approx(-d.kappa0 ** 2)
    assert d.scattering_length == pytest.approx(1 / d.kappa0)


@given(st.floats(0, 5), st.floats(0, 5))
@settings(max_examples=50, deadline=None)
def test_coupling_monotone_in_kappa(k1, k2):
    lo, hi = sorted((k1, k2))
    if hi - lo < 1e-9:
        return
    assert coupling_from_binding(lo, 1.0).lam < coupling_from_binding(hi, 1.0).lam


# ---------------------------------------------------------------- wave function


def _norm(k0, beta):
    pot = coupling_from_binding(k0, beta)
    d = binding_from_coupling(pot)
    f = lambda r: 4 * math.pi * r * r * bound_wavefunction(d, pot, r) ** 2  # noqa: E731
    val, _ = integrate.quad(f, 0, np.inf, epsabs=0, epsrel=1e-12, limit=400)
    return val


@pytest.mark.parametrize("k0, beta", [(0.3, 1.0), (0.01, 1.0), (1.0, 1.0), (1.0 - 1e-10, 1.0),
                                      (0.05, 20.0)])
def test_wavefunction_normalized(k0, beta):
    assert _norm(k0, beta) == pytest.approx(1.0, abs=1e-8)


def test_wavefunction_shape_matches_fourier_transform():
    # psi(p) = lam C g(p)/(k0^2 + p^2) transformed numerically
    k0, beta = 0.4, 1.5
    pot = coupling_from_binding(k0, beta)
    d = binding_from_coupling(pot)
    r = 1.1
    integrand = lambda p: p * pot.lam * d.norm_const * form_factor(p, beta) / (k0 ** 2 + p * p)  # noqa: E731
    val, _ = integrate.quad(integrand, 0, np.inf, weight="sin", wvar=r)
    assert math.sqrt(2 / math.pi) / r * val == pytest.approx(bound_wavefunction(d, pot, r),
                                                             rel=1e-8)


def test_wavefunction_finite_at_origin():
    pot = coupling_from_binding(0.2, 1.0)
    d = binding_from_coupling(pot)
    vals = [bound_wavefunction(d, pot, r) for r in (1e-6, 1e-8, 1e-10)]
    assert vals[0] == pytest.approx(vals[-1], rel=1e-5)
    assert all(math.isfinite(v) for v in vals)


def test_wavefunction_degenerate_limit_continuous():
    beta = 1.0
    pot_a = coupling_from_binding(beta, beta)
    pot_b = coupling_from_binding(beta * (1 - 1e-6), beta)
    da, db = binding_from_coupling(pot_a), binding_from_coupling(pot_b)
    for r in (0.1, 1.0, 5.0):
        assert bound_wavefunction(da, pot_a, r) == pytest.approx(
            bound_wavefunction(db, pot_b, r), rel=1e-5)


@pytest.mark.parametrize("ratio", [100.0, 1e3])
def test_zero_range_asymptote(ratio):
    k0, beta = 1.0, ratio
    pot = coupling_from_binding(k0, beta)
    d = binding_from_coupling(pot)
    rs = np.geomspace(10 / beta, 20 / k0, 40)
    shape = np.array([bound_wavefunction(d, pot, r) * r * math.exp(k0 * r) for r in rs])
    const = shape[-1]
    assert np.max(np.abs(shape / const - 1)) < 1e-2
    # the plateau tends to the zero-range value sqrt(k0/(2 pi)) as O(k0/beta)
    assert const == pytest.approx(math.sqrt(k0 / (2 * math.pi)), rel=2 * k0 / beta)


def test_wavefunction_domain_errors():
    pot = coupling_from_binding(0.0, 1.0)
    d = binding_from_coupling(pot)
    with pytest.raises(ValueError):
        bound_wavefunction(d, pot, 1.0)
    pot = coupling_from_binding(0.3, 1.0)
    d = binding_from_coupling(pot)
    with pytest.raises(ValueError):
        bound_wavefunction(d, pot, 0.0)


# ---------------------------------------------------------------- scattering


def test_zero_range_amplitude_examples():
    assert zero_range_amplitude(0.0, -100.0) == pytest.approx(100.0)
    a = 7.0
    assert abs(zero_range_amplitude(1 / a, a)) ** 2 == pytest.approx(a * a / 2)
    assert zero_range_amplitude(2.0, math.inf) == pytest.approx(1j / 2)


@given(st.floats(1e-4, 1e3), st.floats(-1e3, 1e3).filter(lambda a: abs(a) > 1e-3))
def test_optical_theorem(k, a):
    f = zero_range_amplitude(k, a)
    assert f.imag == pytest.approx(k * abs(f) ** 2, rel=1e-12)


def test_effective_range_examples():
    assert effective_range_expansion(0.0, LowEnergyParams(5.0, 1.0)) == pytest.approx(-0.2)
    assert effective_range_expansion(1.0, LowEnergyParams(math.inf, 1.0)) == pytest.approx(0.5)


@pytest.mark.parametrize("a", [1.0, 10.0, 1e4])
def test_dimer_pole_zero_range(a):
    k = dimer_pole(LowEnergyParams(a, 0.0))
    assert k == pytest.approx(1 / a)
    # E_b = -hbar^2/(M a^2) with M = 2m and hbar = 2m = 1
    assert -k * k == pytest.approx(-1 / a ** 2)


def test_dimer_pole_solves_pole_condition():
    p = LowEnergyParams(10.0, 2.0)
    k = dimer_pole(p)
    # k cot delta at k = i kappa equals -kappa
    assert -1 / p.a - 0.5 * p.r0 * k * k == pytest.approx(-k)


@pytest.mark.parametrize("p", [LowEnergyParams(-5.0, 1.0), LowEnergyParams(math.inf, 1.0),
                               LowEnergyParams(1.0, 2.0)])
def test_dimer_pole_absent(p):
    with pytest.raises(NoBoundStateError):
        dimer_pole(p)


# ---------------------------------------------------------------- Feshbach


def test_feshbach_examples():
    p = FeshbachParams(a_bg=1.0, B0=0.0, delta_B=1.0)
    assert feshbach_scattering_length(2.0, p) == pytest.approx(0.5)
    assert feshbach_scattering_length(math.inf, p) == 1.0
    assert feshbach_scattering_length(-math.inf, p) == 1.0
    assert feshbach_scattering_length(1e12, p) == pytest.approx(1.0, rel=1e-11)
    above = feshbach_scattering_length(1e-9, p)
    below = feshbach_scattering_length(-1e-9, p)
    assert above < -1e8 and below > 1e8
    assert feshbach_scattering_length(0.0, p) == -math.inf


@given(st.floats(-100, 100).filter(lambda b: abs(b) > 1e-6),
       st.floats(-100, 100).filter(lambda b: abs(b) > 1e-6))
def test_feshbach_inverse_proportional_to_gap(b1, b2):
    p = FeshbachParams(a_bg=-2.0, B0=0.0, delta_B=3.0, delta_mu=0.7)
    lhs = (feshbach_scattering_length(b1, p) - p.a_bg) * feshbach_energy_gap(b1, p)
    rhs = (feshbach_scattering_length(b2, p) - p.a_bg) * feshbach_energy_gap(b2, p)
    assert lhs == pytest.approx(rhs, rel=1e-9)
