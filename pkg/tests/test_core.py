"""Staircase derivative, staircase integral, conjugation, growth function."""

import math
from fractions import Fraction

import numpy as np
import pytest

from fractalcalc import (
    ALPHA_CANTOR,
    CantorSpec,
    ConjugatedFn,
    DomainError,
    GridFunction,
    IdentityMap,
    StaircaseFn,
    conjugate,
    f_alpha_derivative,
    f_alpha_integral,
    fractal_exp,
    stieltjes_sum,
)


@pytest.fixture(scope="module")
def sf():
    return StaircaseFn(CantorSpec())


class TestIntegral:
    def test_staircase_moments(self, sf):
        # oracle: self-similarity recursion m_k = (1/2)(m_k/3^k + sum_j C(k,j) 2^(k-j) m_j / 3^k)
        # gives integral of x dS = 1/2, x^2 dS = 3/8, x^3 dS = 5/16
        assert f_alpha_integral(lambda x: float(x), sf, 0, 1) == pytest.approx(0.5, abs=1e-12)
        assert f_alpha_integral(lambda x: float(x) ** 2, sf, 0, 1) == pytest.approx(0.375, abs=1e-12)
        assert f_alpha_integral(lambda x: float(x) ** 3, sf, 0, 1) == pytest.approx(0.3125, abs=1e-12)

    def test_sine_against_characteristic_function(self, sf):
        # oracle: mpmath, E[sin X] = Im(e^{it/2} prod_k cos(t 3^-k)) at t = 1
        got = f_alpha_integral(lambda x: math.sin(float(x)), sf, 0, 1)
        assert got == pytest.approx(0.44989550021787822, abs=1e-12)
        got = f_alpha_integral(lambda x: math.cos(float(x)), sf, 0, 1)
        assert got == pytest.approx(0.82352818920250782, abs=1e-12)

    def test_polynomial_in_staircase_coordinate(self, sf):
        # integral of S(x)^2 dS(x) over [0,1] is integral of u^2 du = 1/3;
        # the conjugated integrand is exactly u^2 so u-space panels nail it
        f = lambda x: float(sf.eval_exact(x)) ** 2
        got = f_alpha_integral(f, sf, 0, 1, method="gauss")
        assert got == pytest.approx(1.0 / 3.0, abs=1e-14)
        got_default = f_alpha_integral(lambda x: sf.eval(x) ** 2, sf, 0, 1)
        assert got_default == pytest.approx(1.0 / 3.0, abs=1e-7)

    def test_additivity_and_reversed_bounds(self, sf):
        f = lambda x: float(x) ** 2
        whole = f_alpha_integral(f, sf, 0, 1)
        left = f_alpha_integral(f, sf, 0, Fraction(1, 3))
        right = f_alpha_integral(f, sf, Fraction(2, 3), 1)
        assert left + right == pytest.approx(whole, abs=1e-12)
        with pytest.raises(DomainError):
            f_alpha_integral(f, sf, 1, 0)

    def test_gap_contributes_nothing(self, sf):
        got = f_alpha_integral(lambda x: float(x) ** 5, sf, Fraction(1, 3), Fraction(2, 3))
        assert got == pytest.approx(0.0, abs=1e-15)

    def test_tiling_cell(self, sf):
        # over [1, 2] the measure is the unit cell shifted by one:
        # integral of (1 + t)^2 dmu(t) = 1 + 2 m1 + m2 = 1 + 1 + 3/8
        got = f_alpha_integral(lambda x: float(x) ** 2, sf, 1, 2)
        assert got == pytest.approx(2.375, abs=1e-12)

    def test_identity_degeneration(self):
        ident = IdentityMap()
        got = f_alpha_integral(lambda x: float(x) ** 2, ident, 0, 2)
        assert got == pytest.approx(8.0 / 3.0, rel=1e-12)
        with pytest.raises(DomainError):
            f_alpha_integral(lambda x: 1.0, ident, 0, 1, method="measure")

    def test_u_space_methods_agree(self, sf):
        f = lambda x: math.sin(float(x))
        ref = 0.44989550021787822
        assert f_alpha_integral(f, sf, 0, 1, n=2048, method="gauss") == pytest.approx(ref, abs=1e-4)
        assert f_alpha_integral(f, sf, 0, 1, n=4096, method="trapezoid") == pytest.approx(ref, abs=1e-3)

    def test_bad_method(self, sf):
        with pytest.raises(DomainError):
            f_alpha_integral(lambda x: 1.0, sf, 0, 1, method="simpson")


class TestStieltjesSum:
    def test_matches_conjugated_integral(self, sf):
        f = lambda x: float(x) ** 2
        direct = stieltjes_sum(f, sf, 0, 1, n=8192)
        assert direct == pytest.approx(0.375, abs=1e-3)

    def test_constant(self, sf):
        assert stieltjes_sum(lambda x: 1.0, sf, 0, 1, n=256) == pytest.approx(1.0, abs=1e-12)


class TestDerivative:
    def test_power_of_staircase_on_the_set(self, sf):
        # d/dS of S(x)^2 = 2 S(x); at x = 2/3, S = 1/2
        got = f_alpha_derivative(lambda x: float(sf.eval_exact(x)) ** 2, sf, Fraction(2, 3))
        assert got == pytest.approx(1.0, abs=1e-4)

    def test_linear_in_staircase(self, sf):
        got = f_alpha_derivative(lambda x: 3.0 * float(sf.eval_exact(x)), sf, Fraction(1, 3))
        assert got == pytest.approx(3.0, abs=1e-6)

    def test_zero_off_the_set(self, sf):
        assert f_alpha_derivative(lambda x: float(x), sf, Fraction(1, 2)) == 0.0
        assert f_alpha_derivative(lambda x: float(x), sf, Fraction(2, 5)) == 0.0

    def test_identity_degeneration(self):
        ident = IdentityMap()
        got = f_alpha_derivative(lambda x: float(x) ** 3, ident, 0.5)
        assert got == pytest.approx(0.75, abs=1e-8)


class TestFundamentalTheorem:
    def test_derivative_of_running_integral(self, sf):
        # F(x) = integral_0^x S dS = S(x)^2 / 2, so dF/dS = S(x)
        f = lambda t: float(sf.eval_exact(t))
        big_f = lambda x: f_alpha_integral(f, sf, 0, x)
        x = Fraction(1, 3)
        assert f_alpha_derivative(big_f, sf, x, h=1e-5) == pytest.approx(0.5, abs=1e-4)


class TestConjugate:
    def test_pulls_back_through_quantile(self, sf):
        g = conjugate(lambda x: float(x), sf)
        assert isinstance(g, ConjugatedFn)
        assert g(Fraction(1, 2)) == pytest.approx(2.0 / 3.0, abs=1e-15)
        assert g(0.0) == 0.0
        assert g(1.0) == 1.0

    def test_round_trip_on_staircase_values(self, sf):
        g = conjugate(lambda x: float(sf.eval_exact(x)) ** 2, sf)
        assert g(Fraction(1, 4)) == pytest.approx(1.0 / 16.0, abs=1e-12)


class TestFractalExp:
    def test_at_zero(self, sf):
        assert fractal_exp(sf, 0.0) == pytest.approx(1.0)

    def test_decays_through_the_staircase(self, sf):
        # weight exp(-S(t)); S(1/3) = 1/2
        assert fractal_exp(sf, Fraction(1, 3)) == pytest.approx(math.exp(-0.5), rel=1e-12)
        assert fractal_exp(sf, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-12)
        assert fractal_exp(sf, 0.4) == fractal_exp(sf, 0.6)

    def test_identity_degeneration(self):
        assert fractal_exp(IdentityMap(), 2.0) == pytest.approx(math.exp(-2.0), rel=1e-12)


class TestGridFunction:
    def test_validation(self):
        with pytest.raises(ValueError):
            GridFunction(np.array([0.0, 0.0]), np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            GridFunction(np.array([0.0, 1.0]), np.array([1.0]))
        with pytest.raises(ValueError):
            GridFunction(np.array([0.0, 1.0]), np.array([1.0, math.nan]))

    def test_max_abs(self):
        gf = GridFunction(np.array([0.0, 1.0, 2.0]), np.array([1.0, -4.0, 2.0]))
        assert gf.max_abs() == 4.0
        assert len(gf) == 3
