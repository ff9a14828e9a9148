"""Brute-force solver: plane-wave and oscillator fixtures, node theorem,
fourth-order accuracy, reflection extraction, and the x-form residual."""

import math

import numpy as np
import pytest

from hyperpot import oracle as orc
from hyperpot import params as P
from hyperpot import potential as pot
from hyperpot import scattering as sc
from hyperpot import wavefunction as wf
from hyperpot.errors import BoxTooSmallError, InvalidParameterError


def _fake_potential(z, U, case=P.CaseKind.CONFLUENT_SECOND):
    class _Params:
        pass

    obj = object.__new__(orc.SampledPotential)
    obj.params = _Params()
    obj.params.case = case
    step = z[1] - z[0]
    obj.grid = orc.ZGrid(float(z[0]), float(z[-1]), float(step))
    obj.z = z
    obj.x = None
    obj.U = U
    obj.u_left = float(U[0])
    obj.u_right = float(U[-1])
    return obj


class TestNumerovIntegrate:
    def test_free_particle_sine(self):
        grid = orc.ZGrid(0.0, 1.0, 1e-3)
        z = grid.points()
        psi = orc.numerov_integrate(np.zeros(grid.n), 1.0, grid.step,
                                    seed=(math.sin(z[0]), math.sin(z[1])))
        assert np.max(np.abs(psi - np.sin(z))) < 1e-8

    def test_fourth_order_convergence(self):
        # halving the step shrinks the plane-wave error by about 16x; the
        # steps are kept coarse so truncation stays above roundoff
        errs = []
        for step in (0.04, 0.02):
            grid = orc.ZGrid(0.0, 40.0, step)
            z = grid.points()
            psi = orc.numerov_integrate(np.zeros(grid.n), 4.0, grid.step,
                                        seed=(np.sin(2 * z[0]), np.sin(2 * z[1])))
            errs.append(np.max(np.abs(psi - np.sin(2 * z))))
        ratio = errs[0] / errs[1]
        assert 11.0 < ratio < 22.0

    def test_right_direction(self):
        grid = orc.ZGrid(0.0, 1.0, 1e-3)
        z = grid.points()
        psi = orc.numerov_integrate(np.zeros(grid.n), 1.0, grid.step,
                                    direction="right",
                                    seed=(math.sin(z[-1]), math.sin(z[-2])))
        assert np.max(np.abs(psi - np.sin(z))) < 1e-8

    def test_direction_validated(self):
        with pytest.raises(InvalidParameterError):
            orc.numerov_integrate(np.zeros(1001), 1.0, 1e-3, direction="up")


class TestZGrid:
    def test_validation(self):
        with pytest.raises(InvalidParameterError):
            orc.ZGrid(0.0, 1.0, -1e-3)
        with pytest.raises(InvalidParameterError):
            orc.ZGrid(0.0, 1.0, 0.3)   # not an integer multiple
        with pytest.raises(InvalidParameterError):
            orc.ZGrid(0.0, 0.05, 1e-3)  # fewer than 1000 points

    def test_points(self):
        g = orc.ZGrid(-1.0, 1.0, 1e-3)
        z = g.points()
        assert z.shape == (g.n,)
        assert z[0] == -1.0 and z[-1] == pytest.approx(1.0)


class TestShooting:
    def test_harmonic_oscillator_levels(self):
        grid = orc.ZGrid(-12.0, 12.0, 2e-3)
        z = grid.points()
        pot_fake = _fake_potential(z, z**2)
        res = orc.shoot_eigenvalues(pot_fake, (0.0, 12.0), grid)
        assert [r.node_count for r in res] == [0, 1, 2, 3, 4, 5]
        for r, exact in zip(res, (1.0, 3.0, 5.0, 7.0, 9.0, 11.0)):
            assert abs(r.energy - exact) < 1e-8

    def test_paper_potential_matching_diagnostic(self):
        pp = P.InvariantParams(q=2, r=-2, rho=1, omega=1)
        grid = orc.ZGrid(-30.0, 30.0, 1e-3)
        spotted = orc.SampledPotential(pp, grid)
        mism = orc._matching_mismatch(spotted, np.array([1.75]))
        assert mism[0] < 1e-6

    def test_white_region_empty(self):
        pp = P.InvariantParams(q=0.5, r=0.2, rho=1, omega=1)
        grid = orc.ZGrid(-30.0, 30.0, 2e-3)
        res = orc.shoot_eigenvalues(pp, (-0.3, 0.04 * (1 - 1e-6)), grid)
        assert res == []

    def test_window_must_stay_below_threshold(self):
        pp = P.InvariantParams(q=2, r=-2, rho=1, omega=1)
        grid = orc.ZGrid(-30.0, 30.0, 2e-3)
        with pytest.raises(InvalidParameterError):
            orc.shoot_eigenvalues(pp, (0.0, 4.5), grid)


class TestNumericReflection:
    def test_free_particle_no_reflection(self):
        z = orc.ZGrid(-20.0, 20.0, 1e-3).points()
        fake = _fake_potential(z, np.zeros(z.shape))
        fake.u_right = 0.0
        fake.params.case = P.CaseKind.FULL_HYPERGEOMETRIC
        fake.params.u_left = 0.0
        fake.params.u_right = 0.0
        P_num = orc.numeric_reflection(fake, 1.0, fake.grid)
        assert P_num < 1e-10

    def test_smooth_step_analytic_value(self):
        # steep but smooth step U0 -> U1; narrow transition approximates the
        # abrupt-step formula ((k - k') / (k + k'))^2
        z = orc.ZGrid(-20.0, 20.0, 5e-4).points()
        U0, U1 = 0.0, 1.0
        width = 0.002
        U = U0 + (U1 - U0) * 0.5 * (1.0 + np.tanh(z / width))
        fake = _fake_potential(z, U)
        fake.params.case = P.CaseKind.FULL_HYPERGEOMETRIC
        energy = 2.0
        k = math.sqrt(energy - U0)
        kp = math.sqrt(energy - U1)
        exact = ((k - kp) / (k + kp)) ** 2
        P_num = orc.numeric_reflection(fake, energy, fake.grid)
        assert P_num == pytest.approx(exact, rel=2e-2)

    def test_full_case_matches_closed_form(self):
        pp = P.InvariantParams(q=2, r=-2, rho=1, omega=0.25)
        grid = orc.scattering_grid(pp, 5.0)
        P_num = orc.numeric_reflection(pp, 5.0, grid)
        exact = math.sinh(3 * math.pi) ** 2 / math.sinh(5 * math.pi) ** 2
        assert abs(P_num - exact) < 1e-3
        assert P_num == pytest.approx(exact, rel=1e-3)

    def test_confluent_first_phase(self):
        c1 = P.ConfluentFirstParams.from_p(q=2, p=-1, rho=1)
        grid = orc.scattering_grid(c1, 5.0)
        r_num = orc.numeric_reflection_amplitude(c1, 5.0, grid)
        r_closed = sc.reflect_confluent_first(c1, 5.0).r_left
        assert abs(abs(r_num) - 1.0) < 1e-6
        phase_dev = abs(math.remainder(
            math.atan2(r_num.imag, r_num.real)
            - math.atan2(r_closed.imag, r_closed.real), 2.0 * math.pi))
        assert phase_dev < 1e-3

    def test_confluent_second_left_modulus(self):
        c2 = P.ConfluentSecondParams(q=0.125, rho=1)
        grid = orc.scattering_grid(c2, 2.0, step=2e-3, tail_tol=1e-6)
        r_num = orc.numeric_reflection_amplitude(c2, 2.0, grid, tail_tol=1e-6)
        r_closed = sc.reflect_confluent_second(c2, 2.0).r_left
        assert abs(abs(r_num) - abs(r_closed)) < 1e-3

    def test_box_too_small_reported(self):
        pp = P.InvariantParams(q=2, r=-2, rho=1, omega=0.25)
        grid = orc.ZGrid(-6.0, 6.0, 1e-3)
        with pytest.raises(BoxTooSmallError):
            orc.numeric_reflection(pp, 5.0, grid)


class TestResidual:
    FULL = P.InvariantParams(q=2, r=-2, rho=1, omega=1)

    def _x_grid(self, params, lo=-10.0, hi=10.0, n=1000):
        return pot.build_mapping(params, np.linspace(lo, hi, n)).x

    def test_ground_state(self):
        xg = self._x_grid(self.FULL)
        p = wf.Psi(self.FULL, 0.0)
        assert orc.residual_norm(self.FULL, 0.0, p, xg) < 1e-8

    def test_closed_form_excited_state(self):
        xg = self._x_grid(self.FULL)

        def psi_exact(x):
            return 0.5 * x**1.5 * (1 - x) * (1 + x) ** -4

        assert orc.residual_norm(self.FULL, 1.75, psi_exact, xg) < 1e-8

    def test_wrong_energy_detected(self):
        xg = self._x_grid(self.FULL)
        p = wf.Psi(self.FULL, 1.75)
        norm = p.norm()
        assert orc.residual_norm(self.FULL, 1.85,
                                 lambda x: p(x) / norm, xg) > 1e-2

    def test_continuum_state(self):
        xg = self._x_grid(self.FULL, -8.0, 8.0)
        p = wf.Psi(self.FULL, 5.0)
        p.profile(xg)
        assert orc.residual_norm(self.FULL, 5.0, p, xg) < 1e-6


class TestNodeTheorem:
    def test_counts_match_order(self):
        pp = P.InvariantParams(q=2.5, r=-1.4, rho=0.8, omega=1.1)
        from hyperpot import spectrum as sp
        closed = sp.solve_bound_states(pp)
        grid = orc.recommended_grid(pp, closed.energies(), step=2e-3)
        top = min(pp.u_left, pp.u_right)
        res = orc.shoot_eigenvalues(pp, (-0.3, top * (1 - 1e-9)), grid)
        assert [r.node_count for r in res] == list(range(len(res)))
        assert len(res) == len(closed.states)
