"""Gamma machinery and hypergeometric evaluation layer."""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from hyperpot import specfun as sf
from hyperpot.errors import (
    DegenerateParameterError,
    DivergenceError,
    InvalidParameterError,
    PathSingularityError,
    PoleError,
)


def _series_1f2_fraction(z: Fraction, terms: int) -> Fraction:
    # independent oracle: 1F2(1; 2, 2; z) = sum z^n / ((n+1)!)^2 in exact
    # rational arithmetic
    total = Fraction(0)
    for n in range(terms):
        total += z**n / Fraction(math.factorial(n + 1)) ** 2
    return total


# frozen from the 50-term Fraction oracle above at z = 1/4
F12_QUARTER = 1.0642635110080334


class TestLogGamma:
    def test_gamma_one(self):
        assert sf.log_gamma(1.0) == 0.0

    def test_gamma_half(self):
        assert abs(sf.log_gamma(0.5) - 0.5 * math.log(math.pi)) < 1e-15

    def test_gamma_one_plus_i_modulus(self):
        # |Gamma(1+iy)|^2 = pi y / sinh(pi y), evaluated at y = 1
        mod = abs(cmath.exp(sf.log_gamma(1 + 1j)))
        assert abs(mod - math.sqrt(math.pi / math.sinh(math.pi))) < 1e-14

    def test_modulus_identity_sweep(self):
        for y in np.linspace(0.1, 10.0, 240):
            v = abs(cmath.exp(sf.log_gamma(1 + 1j * y))) ** 2
            assert abs(v * math.sinh(math.pi * y) / (math.pi * y) - 1.0) < 1e-12

    def test_recurrence_sweep(self):
        rng = np.random.default_rng(20240601)
        checked = 0
        while checked < 10000:
            z = complex(rng.uniform(-30, 30), rng.uniform(-30, 30))
            if abs(z.imag) < 1e-3 and z.real < 0.5:
                continue
            lhs = cmath.exp(sf.log_gamma(z + 1))
            rhs = z * cmath.exp(sf.log_gamma(z))
            assert abs(lhs - rhs) <= 1e-12 * abs(rhs)
            checked += 1

    def test_poles_raise(self):
        for z in (0.0, -1.0, -7.0):
            with pytest.raises(PoleError):
                sf.log_gamma(z)

    def test_nan_rejected(self):
        with pytest.raises(InvalidParameterError):
            sf.log_gamma(complex(float("nan"), 0.0))

    def test_duplication_formula(self):
        # Gamma(2z) = 2^(2z-1)/sqrt(pi) Gamma(z) Gamma(z+1/2): an identity
        # the Lanczos fit was not built from
        rng = np.random.default_rng(7)
        for _ in range(300):
            z = complex(rng.uniform(0.2, 24.0), rng.uniform(-24.0, 24.0))
            lhs = sf.log_gamma(2 * z)
            rhs = ((2 * z - 1) * math.log(2.0) - 0.5 * math.log(math.pi)
                   + sf.log_gamma(z) + sf.log_gamma(z + 0.5))
            assert abs(cmath.exp(lhs - rhs) - 1.0) < 1e-12


class TestPochhammer:
    def test_zero_order(self):
        assert sf.pochhammer(3.7 + 2j, 0) == 1.0

    def test_factorial(self):
        assert sf.pochhammer(1.0, 4) == 24.0

    def test_negative_integer_hits_zero(self):
        assert sf.pochhammer(-3.0, 5) == 0.0

    def test_gamma_ratio_consistency(self):
        a = 1.3 - 0.7j
        direct = sf.pochhammer(a, 6)
        via_gamma = cmath.exp(sf.log_gamma(a + 6) - sf.log_gamma(a))
        assert abs(direct - via_gamma) < 1e-12 * abs(direct)


class TestSeries:
    def test_argument_zero(self):
        spec = sf.HypSpec((0.3, 1.1, -2.2), (0.7, 1.9), 0.0)
        assert sf.hyp_series(spec) == 1.0

    def test_terminating_two_terms(self):
        spec = sf.HypSpec((-1, 2, 3), (4, 5), 1.0)
        assert sf.hyp_series(spec) == pytest.approx(0.7, abs=1e-15)

    def test_1f2_frozen_value(self):
        oracle = float(_series_1f2_fraction(Fraction(1, 4), 50))
        assert oracle == pytest.approx(F12_QUARTER, abs=1e-16)
        spec = sf.HypSpec((1.0,), (2.0, 2.0), 0.25)
        assert sf.hyp_series(spec) == pytest.approx(F12_QUARTER, rel=1e-14)

    def test_divergence_outside_disk(self):
        with pytest.raises(DivergenceError):
            sf.hyp_series(sf.HypSpec((0.5, 1.0, 1.5), (2.0, 2.5), 1.2))

    def test_terminating_beyond_disk_is_fine(self):
        spec = sf.HypSpec((-4, 1.0, 1.5), (2.0, 2.5), 7.0)
        value = sf.hyp_series(spec)
        # Horner evaluation of the same polynomial
        coeffs = []
        c = 1.0
        for n in range(5):
            coeffs.append(c)
            num = (-4 + n) * (1.0 + n) * (1.5 + n)
            c *= num / ((2.0 + n) * (2.5 + n) * (n + 1))
        horner = 0.0
        for cf in reversed(coeffs):
            horner = horner * 7.0 + cf
        assert value == pytest.approx(horner, rel=4e-16)

    def test_lower_pole_rejected(self):
        with pytest.raises(InvalidParameterError):
            sf.HypSpec((0.5, 1.0), (-2.0, 1.5), 0.1)

    def test_lower_pole_saved_by_termination(self):
        spec = sf.HypSpec((-1.0, 1.0), (-2.0, 1.5), 0.1)
        assert sf.hyp_series(spec) == pytest.approx(1.0 + 0.1 / 3.0, rel=1e-15)


class TestContinuation:
    def test_matches_series_inside_half_radius(self):
        rng = np.random.default_rng(11)
        for _ in range(40):
            upper = tuple(complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
                          for _ in range(3))
            lower = (complex(rng.uniform(0.5, 3), rng.uniform(-1, 1)),
                     complex(rng.uniform(0.5, 3), rng.uniform(-1, 1)))
            z = rng.uniform(-0.45, 0.45)
            spec = sf.HypSpec(upper, lower, z)
            v, _ = sf.hyp_continued(spec, z)
            s = sf.hyp_series(spec)
            assert abs(v - s) <= 1e-10 * max(1.0, abs(s))

    def test_terminating_is_exact_anywhere(self):
        spec = sf.HypSpec((-3, 0.5, 2.0), (1.5, 2.5), 0.0)
        for target in (-250.0, -1.0, 0.3, 40.0):
            v, dv = sf.hyp_continued(spec, target)
            vref, dvref = sf._polynomial_eval(spec, target)
            assert v == vref and dv == dvref

    def test_derivative_matches_shifted_series(self):
        spec = sf.HypSpec((0.4, 1.2, -0.8), (1.1, 2.3), 0.0)
        z = -0.3
        _, dv = sf.hyp_continued(spec, z)
        shifted = sf.HypSpec((1.4, 2.2, 0.2), (2.1, 3.3), z)
        pref = (0.4 * 1.2 * -0.8) / (1.1 * 2.3)
        assert abs(dv - pref * sf.hyp_series(shifted)) < 1e-12

    def test_deep_continuation_against_connection(self):
        # independent route: leading branch data plus correction series
        a, b, c = -2 - 1j, -3 - 3j, -3 + 1j
        d, e = a + 2, 1 - 2j
        spec = sf.HypSpec((a, b, c), (d, e), 0.0)
        v, _ = sf.hyp_continued(spec, -1000.0)
        conn = sf.connection_3f2(a, b, c, d, e).evaluate(1000.0)
        assert abs(v - conn) < 1e-8 * abs(v)

    def test_path_singularity(self):
        spec = sf.HypSpec((0.5, 1.0, 1.5), (2.0, 2.5), 0.0)
        with pytest.raises(PathSingularityError):
            sf.hyp_continued(spec, 3.0)


def _full_case_parameters(rng):
    q = rng.uniform(0.3, 3.0)
    r = rng.uniform(-3.0, -0.3)
    g = rng.uniform(0.3, 3.0)
    eps = max(q * q, r * r / g) * rng.uniform(1.1, 3.0) + rng.uniform(0.05, 0.4)
    sigma = q - r - 1.0
    w1 = -1j * math.sqrt(eps - q * q)
    w2 = -1j * math.sqrt(g * eps - r * r) / math.sqrt(g) * math.sqrt(g)
    a = -q + w1
    b = w1 + w2 - sigma
    c = w1 - w2 - sigma
    return a, b, c, a + 2, 1 + 2 * w1


class TestConnectionFormulas:
    def test_3f2_against_continuation_sweep(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            a, b, c, d, e = _full_case_parameters(rng)
            conn = sf.connection_3f2(a, b, c, d, e)
            v, _ = sf.hyp_continued(sf.HypSpec((a, b, c), (d, e), 0.0), -1000.0)
            assert abs(conn.evaluate(1000.0) - v) <= 1e-4 * abs(v)

    def test_2f2_against_continuation_sweep(self):
        rng = np.random.default_rng(4)
        done = 0
        while done < 100:
            q = rng.uniform(0.3, 3.0)
            p = -rng.uniform(0.2, 2.0)
            eps = q * q * rng.uniform(1.1, 3.0) + rng.uniform(0.03, 0.4)
            # the difference b - a = p eps + 1 is real; keep the draws in
            # the generic (non-integer-difference) region
            if abs(p * eps + 1.0 - round(p * eps + 1.0)) < 0.05:
                continue
            w1 = -1j * math.sqrt(eps - q * q)
            a = -q + w1
            b = a + p * eps + 1.0
            c = a + 2.0
            d = 1 + 2 * w1
            conn = sf.connection_2f2(a, b, c, d)
            v, _ = sf.hyp_continued(sf.HypSpec((a, b), (c, d), 0.0), -1000.0)
            assert abs(conn.evaluate(1000.0) - v) <= 1e-4 * abs(v)
            done += 1

    def test_1f2_against_continuation_sweep(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            q = rng.uniform(0.05, 1.5)
            eps = q * q * rng.uniform(1.2, 4.0) + rng.uniform(0.02, 0.6)
            w1 = -1j * math.sqrt(eps - q * q)
            a = -q + w1
            b = a + 2.0
            c = 1 + 2 * w1
            conn = sf.connection_1f2(a, b, c)
            v, _ = sf.hyp_continued(sf.HypSpec((a,), (b, c), 0.0), -1000.0)
            assert abs(conn.evaluate(1000.0) - v) <= 1e-4 * abs(v)

    def test_3f2_swap_symmetry(self):
        a, b, c, d, e = _full_case_parameters(np.random.default_rng(8))
        t1 = sf.connection_3f2(a, b, c, d, e)
        t2 = sf.connection_3f2(a, c, b, d, e)
        set1 = sorted(((t.exponent, t.coefficient) for t in t1.terms),
                      key=lambda p: (p[0].real, p[0].imag))
        set2 = sorted(((t.exponent, t.coefficient) for t in t2.terms),
                      key=lambda p: (p[0].real, p[0].imag))
        for (e1, c1), (e2, c2) in zip(set1, set2):
            assert abs(e1 - e2) < 1e-14 and abs(c1 - c2) < 1e-12 * max(1, abs(c1))

    def test_3f2_termination_pole_kills_branches(self):
        # b = -n: the a and c branch coefficients carry 1/Gamma(b) = 0 and
        # the surviving branch is the polynomial's leading power
        a, c = -0.5 + 0.0j, -3.0 + 0.4j
        b = -2.0
        conn = sf.connection_3f2(a, b, c, a + 2, 1.7)
        assert conn.terms[0].coefficient == 0
        assert conn.terms[1].coefficient != 0
        assert conn.terms[1].exponent == b

    def test_2f2_termination_kills_exponential(self):
        # a = -n: 1/Gamma(a) = 0 removes the e^-t branch and the polynomial
        # behavior is carried by the (beta x)^n = t^{-a} power branch
        a = -3.0
        b, c, d = 0.7, 1.3, 1.9
        conn = sf.connection_2f2(a, b, c, d)
        exp_terms = [t for t in conn.terms if t.kind == "exponential"]
        assert len(exp_terms) == 1 and exp_terms[0].coefficient == 0
        assert len(conn.power_terms()) == 2
        lead = conn.power_terms()[0]
        assert lead.exponent == a and lead.coefficient != 0

    def test_1f2_eta_value(self):
        a, b, c = 0.3 - 0.2j, 1.4 + 0.1j, 0.9 + 0.5j
        conn = sf.connection_1f2(a, b, c)
        osc = [t for t in conn.terms if t.kind == "oscillatory"]
        assert len(osc) == 2
        eta = -osc[0].exponent
        assert abs(eta - 0.5 * (a - b - c + 0.5)) < 1e-15

    def test_1f2_termination_kills_oscillatory_pair(self):
        conn = sf.connection_1f2(-2.0, 1.3, 0.8)
        osc = [t for t in conn.terms if t.kind == "oscillatory"]
        assert all(t.coefficient == 0 for t in osc)

    def test_degenerate_difference_reported(self):
        # integer a - b puts a numerator gamma at a pole
        with pytest.raises(DegenerateParameterError):
            sf.connection_3f2(0.25, -0.75, 0.6 + 0.3j, 2.25, 1.1)

    def test_branch_count_invariant(self):
        assert len(sf.connection_3f2(0.1j, 0.6j, -0.8j, 2 + 0.1j, 1.3j
                                     ).power_terms()) == 3
        assert len(sf.connection_2f2(0.1j, 0.5 + 0.6j, 2 + 0.1j, 1.2
                                     ).power_terms()) == 2
        assert len(sf.connection_1f2(0.1j, 2 + 0.1j, 1.2).power_terms()) == 1
