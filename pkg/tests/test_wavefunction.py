"""Closed-form wavefunctions, the derivative-free identity, and asymptotic
boundary coefficients."""

import math

import numpy as np
import pytest

from hyperpot import params as P
from hyperpot import potential as pot
from hyperpot import scattering as sc
from hyperpot import wavefunction as wf

FULL = P.InvariantParams(q=2, r=-2, rho=1, omega=1)
CF1 = P.ConfluentFirstParams(q=1, beta=-2, rho=1)
CF2 = P.ConfluentSecondParams(q=0.125, rho=1)


class TestGroundState:
    def test_full_value(self):
        # q=2, r=-2, omega=rho=1 at x=1: 2^{-15/4} / 2^{1/4} = 1/16
        assert wf.ground_state_psi(FULL, 1.0) == pytest.approx(0.0625, rel=1e-14)

    def test_confluent_first_value(self):
        assert wf.ground_state_psi(CF1, 1.0) == pytest.approx(
            math.exp(-1.0) / 2**0.25, rel=1e-14)

    def test_confluent_second_value(self):
        assert wf.ground_state_psi(CF2, 1.0) == pytest.approx(2**-0.25, rel=1e-14)

    def test_vectorized(self):
        xs = np.array([0.5, 1.0, 2.0])
        vals = wf.ground_state_psi(FULL, xs)
        assert vals.shape == (3,)


class TestPsi:
    def test_zero_energy_collapse(self):
        p0 = wf.Psi(FULL, 0.0)
        for x in (0.07, 0.9, 4.2, 30.0):
            target = FULL.rho * wf.ground_state_psi(FULL, x)
            assert abs(p0(x) - target) <= 1e-12 * abs(target)

    def test_zero_energy_collapse_confluent(self):
        for params in (CF1, CF2):
            p0 = wf.Psi(params, 0.0)
            for x in (0.3, 1.7):
                target = params.rho * wf.ground_state_psi(params, x)
                assert abs(p0(x) - target) <= 1e-12 * abs(target)

    def test_first_excited_closed_form(self):
        # b terminates at order zero: psi = x^{3/2} (1-x) (1+x)^{-4} / 2
        p = wf.Psi(FULL, 1.75)
        for x in np.geomspace(0.03, 50, 40):
            exact = 0.5 * x**1.5 * (1 - x) * (1 + x) ** -4
            assert p(x) == pytest.approx(exact, abs=1e-14, rel=1e-11)

    def test_node_at_one(self):
        p = wf.Psi(FULL, 1.75)
        assert abs(p(1.0)) < 1e-15
        assert p(0.5).real * p(1.5).real < 0

    def test_derivative_free_form_agrees(self):
        for energy in (0.6, 1.75, 5.0, 11.3):
            p = wf.Psi(FULL, energy)
            for x in (0.21, 1.3, 3.7, 14.0):
                v35 = p(x)
                v38 = wf.psi_contiguous(FULL, energy, x)
                assert abs(v35 - v38) <= 1e-10 * max(1.0, abs(v35))

    def test_small_x_log_slope(self):
        # psi ~ x^{sqrt(q^2 - eps)} as x -> 0 on the bound branch
        energy = 1.2
        expo = math.sqrt(FULL.q**2 - energy)
        p = wf.Psi(FULL, energy)
        x1, x2 = 1e-8, 1e-6
        slope = (math.log(abs(p(x2))) - math.log(abs(p(x1)))) / (
            math.log(x2) - math.log(x1))
        assert slope == pytest.approx(expo, rel=1e-6)

    def test_norm_of_bound_state(self):
        p = wf.Psi(FULL, 1.75)
        n = p.norm()
        assert n > 0
        # halving the amplitude halves the norm: scaling sanity via profile
        xs = np.array([0.4, 1.9])
        vals = p.profile(xs)
        assert vals.shape == (2,)


class TestAsymptoticCoefficients:
    def test_outgoing_vanishes_at_eigenvalue(self):
        # eps = 3 is excluded: there a = b = -1 exactly (coincident branch
        # exponents), the logarithmic case that is reported, not computed
        for energy in (1.75, 3.75):
            ac = wf.asymptotic_coefficients(FULL, energy)
            assert abs(ac.right_out) <= 1e-10
        pp = P.InvariantParams(q=2, r=-1, rho=1, omega=1)
        ac = wf.asymptotic_coefficients(pp, 15.0 / 16.0)
        assert abs(ac.right_out) <= 1e-10

    def test_coincident_branches_reported(self):
        from hyperpot.errors import DegenerateParameterError
        with pytest.raises(DegenerateParameterError):
            wf.asymptotic_coefficients(FULL, 3.0)

    def test_outgoing_not_zero_off_eigenvalue(self):
        ac = wf.asymptotic_coefficients(FULL, 2.3)
        assert abs(ac.right_out) > 1e-6

    def test_left_amplitude_value(self):
        pp = P.InvariantParams(q=2, r=-2, rho=1, omega=0.25)
        ac = wf.asymptotic_coefficients(pp, 5.0)
        # rho^{3/4} (a + 1) with a = -q - i k = -2 - i
        assert ac.left_amp == pytest.approx(complex(-1.0, -1.0), rel=1e-14)

    def test_modulus_ratio_equals_reflection_probability(self):
        rng = np.random.default_rng(13)
        for _ in range(25):
            pp = P.InvariantParams(q=rng.uniform(-3, 3), r=rng.uniform(-3, 3),
                                   rho=rng.uniform(0.3, 3),
                                   omega=rng.uniform(0.3, 3))
            energy = max(pp.u_left, pp.u_right) * rng.uniform(1.05, 4.0) + 0.07
            ac = wf.asymptotic_coefficients(pp, energy)
            p_closed = sc.reflection_probability_full(pp, energy)
            assert ac.reflection_probability() == pytest.approx(p_closed, abs=1e-10)


class TestResidualViaSamples:
    def test_wave_samples_track_mapping(self):
        zg = np.linspace(-6, 6, 601)
        mapping = pot.build_mapping(FULL, zg)
        p = wf.Psi(FULL, 5.0)
        vals = p.profile(mapping.x)
        assert vals.shape == mapping.x.shape
        # |psi| ~ const on the incoming flat side (plane wave in z)
        mags = np.abs(vals[:40])
        assert np.std(mags) / np.mean(mags) < 0.05
