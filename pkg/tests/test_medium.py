import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from photon_recoil.errors import ConvergenceError, InvalidParameterError, MediumResonanceError, RegimeViolationError
from photon_recoil.medium import (
    inverse_detuning,
    line_center_response,
    mode_index,
    params_from_n_alpha,
    polarizability,
    refractive_index,
    self_consistent_pole,
    self_energy,
    self_energy_coupling_form,
)
from photon_recoil.model import ModelParams

FAR = ModelParams(omega_m=100.0, gamma0=1e-6)


def test_inverse_detuning_hand_values():
    assert inverse_detuning(0.0, 1.0, 0.0, FAR) == pytest.approx(-0.019804, abs=5e-7)
    exact = float(-Fraction(1, 99) - Fraction(1, 101))
    assert inverse_detuning(1.0, 1.0, 0.0, FAR) == pytest.approx(exact, rel=1e-15)
    assert exact == pytest.approx(-0.0200020, abs=1e-7)


def test_inverse_detuning_resonance():
    with pytest.raises(MediumResonanceError):
        inverse_detuning(100.0 + 1e-9, 1.0, 1e-9, FAR)
    with pytest.raises(MediumResonanceError):
        inverse_detuning(np.array([1.0, 102.0]), 1.0, 0.0, FAR)


def test_polarizability_examples():
    alpha = polarizability(1.0, 1.0, FAR)
    expected = 4 * math.pi * 1.5e-6 * float(Fraction(1, 99) + Fraction(1, 101))
    assert alpha == pytest.approx(expected, rel=1e-14)
    assert alpha == pytest.approx(3.7703e-7, rel=1e-4)
    assert polarizability(1.0, 1.0, ModelParams(omega_m=1e12)) == pytest.approx(0.0, abs=1e-16)


def test_polarizability_monotone_below_resonance():
    E = np.linspace(0.01, 99.9, 5000)
    alpha = polarizability(E, 1.0, FAR)
    assert np.all(alpha > 0)
    assert np.all(np.diff(alpha) > 0)


def test_refractive_index():
    p = ModelParams(density=2.0)
    assert refractive_index(ModelParams(), 0.3) == 1.0
    assert refractive_index(p, 0.01) == pytest.approx(1.01, rel=1e-15)
    with pytest.raises(RegimeViolationError):
        refractive_index(p, 0.3)


@given(st.floats(0, 1e4), st.floats(1e-8, 1e-5))
def test_refractive_index_affine_in_density(density, alpha):
    n1 = refractive_index(ModelParams(density=density), alpha)
    n2 = refractive_index(ModelParams(density=2 * density), alpha)
    assert n1 == pytest.approx(1.0 + 0.5 * density * alpha, abs=1e-15)
    assert n2 - n1 == pytest.approx(n1 - 1.0, abs=1e-15)


def test_self_energy_examples():
    assert self_energy(1.0, 1.0, FAR) == 0.0
    p = ModelParams(omega_m=100.0, gamma0=1e-6, density=2.65e4)
    alpha_form = self_energy(1.0, 1.0, p)
    g_form = self_energy_coupling_form(1.0, 1.0, p)
    assert abs(alpha_form - g_form) <= 1e-15 * abs(alpha_form)
    # Sigma = -N alpha omega_k / 2 with N alpha = 0.02
    n = 0.02 / polarizability(1.0, 1.0, p)
    assert self_energy(1.0, 1.0, replace_density(p, n)) == pytest.approx(-0.01, rel=1e-13)


def replace_density(p, density):
    return ModelParams(p.omega_m, p.gamma0, p.recoil_scale, density, p.strict)


@settings(max_examples=200)
@given(
    st.floats(-5.0, 40.0),
    st.floats(0.05, 20.0),
    st.floats(20.0, 1e4),
    st.floats(1e-9, 1e-3),
    st.one_of(st.just(0.0), st.floats(1e-6, 1e6)),
    st.floats(0.0, 1e-6),
)
def test_dual_form_self_energy(E, omega_k, omega_m, gamma0, density, recoil):
    p = ModelParams(omega_m, gamma0, recoil, density)
    try:
        a = self_energy(E, omega_k, p)
    except MediumResonanceError:
        return
    b = self_energy_coupling_form(E, omega_k, p)
    assert abs(a - b) <= 1e-14 * abs(a)


def test_pole_vacuum_one_iteration():
    p = ModelParams(recoil_scale=1e-6)
    r = self_consistent_pole(1.3, p)
    assert r.iterations == 1
    assert r.pole_energy == 1e-6 * 1.3**2 + 1.3
    assert r.n == 1.0 and r.alpha > 0 and r.n_alpha == 0.0


def test_pole_matches_root_bracketing(medium_params):
    p = medium_params
    r = self_consistent_pole(1.0, p)
    assert r.iterations <= 3

    def residual(E):
        return E - (p.recoil_frequency(1.0) + (1 - 0.5 * p.density * polarizability(E, 1.0, p)))

    root = brentq(residual, 0.5, 1.5, xtol=1e-16, rtol=1e-15)
    assert r.pole_energy == pytest.approx(root, rel=1e-12)
    assert abs(residual(r.pole_energy)) <= 1e-12 * r.pole_energy
    assert r.n == 1.0 + 0.5 * p.density * r.alpha
    assert r.n_alpha == pytest.approx(0.02, rel=1e-3)


@given(st.floats(0.2, 5.0), st.floats(0.0, 0.1), st.floats(50.0, 1e3))
def test_pole_resubstitution(omega_k, n_alpha, omega_m):
    p = params_from_n_alpha(n_alpha, omega_m=omega_m, recoil_scale=1e-9)
    r = self_consistent_pole(omega_k, p)
    assert r.iterations <= 20
    rhs = p.recoil_frequency(omega_k) + (1 - 0.5 * p.density * polarizability(r.pole_energy, omega_k, p)) * omega_k
    assert r.pole_energy == pytest.approx(rhs, rel=1e-12)
    assert r.alpha > 0


def test_pole_resonance():
    with pytest.raises(MediumResonanceError):
        self_consistent_pole(100.0, ModelParams(omega_m=100.0, density=1.0))


def test_pole_non_convergence():
    # Strong coupling close to resonance makes the map expand instead of contract.
    p = ModelParams(omega_m=1.5, gamma0=0.5, density=0.05)
    with pytest.raises((ConvergenceError, MediumResonanceError, RegimeViolationError)):
        self_consistent_pole(1.45, p)


def test_line_center_response_consistency(medium_params):
    r = line_center_response(medium_params)
    r0 = medium_params.recoil_scale
    assert r.n_alpha == pytest.approx(0.02, rel=1e-13)
    assert r.n == pytest.approx(1.01, rel=1e-14)
    assert r.omega_k == pytest.approx(r.n * (1 - r.n**2 * r0), rel=1e-14)


def test_line_center_vacuum():
    r = line_center_response(ModelParams(recoil_scale=0.0))
    assert (r.omega_k, r.n, r.n_alpha) == (1.0, 1.0, 0.0)


def test_params_from_n_alpha():
    assert params_from_n_alpha(0.0).density == 0.0
    with pytest.raises(InvalidParameterError):
        params_from_n_alpha(-0.1)
    with pytest.raises(RegimeViolationError):
        params_from_n_alpha(0.6)


def test_mode_index_matches_scalar_pole(medium_params):
    omega = np.array([0.9, 1.0, 1.01, 1.2])
    n = mode_index(omega, medium_params)
    expected = [self_consistent_pole(w, medium_params).n for w in omega]
    np.testing.assert_allclose(n, expected, rtol=1e-14)
