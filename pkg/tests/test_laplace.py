"""Symbolic transform algebra, rule slots, inversion and numerics."""

import math
from fractions import Fraction

import pytest

from fractalcalc import (
    CantorSpec,
    DomainError,
    IdentityMap,
    InverseTerm,
    LaplaceExpr,
    LaplaceTerm,
    StaircaseFn,
    TailBoundError,
    TransformRule,
    apply_rule,
    convolve,
    evaluate_inverse,
    gamma_classical,
    inverse_laplace,
    invert_terms,
    laplace_numeric,
    mittag_leffler,
    solve_resolvent,
    transform_caputo,
    transform_constant,
    transform_power,
    transform_rl_derivative,
    transform_rl_integral,
    unknown_transform,
)


@pytest.fixture(scope="module")
def sf():
    return StaircaseFn(CantorSpec())


def expr_value(expr, sigma):
    return expr.value(sigma)


class TestTermAlgebra:
    def test_power_transform(self):
        e = transform_power(Fraction(1, 2))
        (t,) = e.terms
        assert t.coeff == pytest.approx(gamma_classical(1.5))
        assert t.p == Fraction(-3, 2)
        assert t.is_pure_power

    def test_constant_transform(self):
        (t,) = transform_constant(3.0).terms
        assert t.coeff == 3.0
        assert t.p == Fraction(-1)

    def test_power_transform_rejects_low_exponent(self):
        with pytest.raises(DomainError):
            transform_power(Fraction(-1))

    def test_like_terms_merge(self):
        e = transform_power(1) + transform_power(1)
        assert len(e.terms) == 1
        assert e.terms[0].coeff == pytest.approx(2.0)
        z = e - e
        assert len(z.terms) == 1
        assert z.terms[0].coeff == 0.0

    def test_shift_and_scale(self):
        e = transform_power(2).shifted(Fraction(1, 2)).scaled(-2.0)
        (t,) = e.terms
        assert t.p == Fraction(-5, 2)
        assert t.coeff == pytest.approx(-2.0 * gamma_classical(3.0))

    def test_denominator_validation(self):
        with pytest.raises(DomainError):
            LaplaceTerm(1.0, Fraction(0), Fraction(-1), 1.0)

    def test_value_guards(self):
        t = LaplaceTerm(1.0, Fraction(-1), Fraction(1, 2), 1.0)
        with pytest.raises(DomainError):
            t.value(0.0)
        with pytest.raises(DomainError):
            t.value(1.0)  # sigma^(1/2) - 1 = 0
        assert t.value(4.0) == pytest.approx(0.25)
        with pytest.raises(DomainError):
            unknown_transform().terms[0].value(2.0)


class TestRules:
    def test_integral_rule_shifts_down(self):
        e = transform_rl_integral(transform_power(Fraction(1, 2)), Fraction(1, 2))
        (t,) = e.terms
        assert t.p == Fraction(-2)

    def test_derivative_rule_with_data(self):
        # sigma^beta F - c1 sigma^0 for beta in (0, 1]
        e = transform_rl_derivative(unknown_transform(), Fraction(1, 2), data=(2.0,))
        unknown = [t for t in e.terms if t.unknown]
        known = [t for t in e.terms if not t.unknown]
        assert unknown[0].p == Fraction(1, 2)
        assert known[0].coeff == -2.0
        assert known[0].p == Fraction(0)

    def test_caputo_rule_with_data(self):
        # sigma^beta F - c1 sigma^(beta - 1)
        e = transform_caputo(unknown_transform(), Fraction(1, 2), data=(3.0,))
        known = [t for t in e.terms if not t.unknown]
        assert known[0].coeff == -3.0
        assert known[0].p == Fraction(-1, 2)

    def test_too_much_data_rejected(self):
        with pytest.raises(DomainError):
            transform_caputo(unknown_transform(), Fraction(1, 2), data=(1.0, 2.0))

    def test_apply_rule_dispatch(self):
        e1 = apply_rule(TransformRule.POWER, LaplaceExpr.zero(), Fraction(2))
        assert e1.terms == transform_power(2).terms
        e2 = apply_rule(TransformRule.RL_INTEGRAL, transform_power(0), Fraction(1, 2))
        assert e2.terms[0].p == Fraction(-3, 2)
        e3 = apply_rule(
            TransformRule.CAPUTO_DERIVATIVE, unknown_transform(), Fraction(4, 3), (1.0, 2.0)
        )
        assert len(e3.terms) == 3

    def test_nonpositive_order_rejected(self):
        with pytest.raises(DomainError):
            transform_rl_integral(transform_power(0), Fraction(0))
        with pytest.raises(DomainError):
            transform_rl_derivative(unknown_transform(), -1)


class TestResolventAndInversion:
    def test_resolvent_divides_pure_powers(self):
        r = solve_resolvent(transform_power(0), Fraction(1, 2), -1.0)
        (t,) = r.terms
        assert (t.p, t.q, t.lam) == (Fraction(-1), Fraction(1, 2), -1.0)

    def test_resolvent_rejects_unknown_and_nested(self):
        with pytest.raises(DomainError):
            solve_resolvent(unknown_transform(), Fraction(1, 2), -1.0)
        nested = LaplaceExpr.of(LaplaceTerm(1.0, Fraction(-1), Fraction(1, 2), 1.0))
        with pytest.raises(DomainError):
            solve_resolvent(nested, Fraction(1, 2), -1.0)

    def test_pure_power_round_trip(self):
        for eta in (Fraction(0), Fraction(1, 2), Fraction(2), Fraction(-1, 2)):
            inv = invert_terms(transform_power(eta))
            got = evaluate_inverse(inv, 0.7)
            assert got == pytest.approx(0.7 ** float(eta), rel=1e-12)

    def test_resolvent_inverts_to_ml_term(self):
        # 1 / (sigma (sigma^(1/2) - lam)) pairs with S^(1/2) E_{1/2,3/2}(lam S^(1/2))
        r = solve_resolvent(transform_power(0), Fraction(1, 2), -1.0)
        (term,) = invert_terms(r)
        assert (term.power, term.ml_eta, term.ml_nu) == (
            Fraction(1, 2),
            Fraction(1, 2),
            Fraction(3, 2),
        )
        u = 0.36
        want = math.sqrt(u) * mittag_leffler(0.5, 1.5, -math.sqrt(u))
        assert evaluate_inverse([term], u) == pytest.approx(want, rel=1e-12)

    def test_improper_fraction_rejected(self):
        bad = LaplaceExpr.of(LaplaceTerm(1.0, Fraction(1), Fraction(1, 2), -1.0))
        with pytest.raises(DomainError):
            invert_terms(bad)
        with pytest.raises(DomainError):
            invert_terms(unknown_transform())

    def test_evaluate_inverse_at_zero(self):
        const = invert_terms(transform_constant(2.0))
        assert evaluate_inverse(const, 0.0) == pytest.approx(2.0)
        singular = invert_terms(LaplaceExpr.of(LaplaceTerm(1.0, Fraction(-1, 2))))
        with pytest.raises(DomainError):
            evaluate_inverse(singular, 0.0)

    def test_inverse_laplace_returns_callable(self):
        fn = inverse_laplace(transform_power(2))
        assert fn(0.5) == pytest.approx(0.25, rel=1e-12)


class TestNumericTransform:
    def test_power_against_rule(self, sf):
        # oracle: mpmath, L{S^(1/2)}(2) = Gamma(3/2) 2^(-3/2) = 0.31332853432887506
        got = laplace_numeric(lambda x: sf.eval(x) ** 0.5, sf, 2.0)
        assert got == pytest.approx(0.31332853432887506, rel=1e-10)

    def test_constant(self, sf):
        assert laplace_numeric(lambda x: 1.0, sf, 3.0) == pytest.approx(1.0 / 3.0, rel=1e-10)

    def test_identity_degeneration(self):
        got = laplace_numeric(lambda x: float(x) ** 2, IdentityMap(), 2.0)
        assert got == pytest.approx(0.25, rel=1e-10)

    def test_symbolic_matches_numeric(self, sf):
        for sigma in (1.0, 2.0, 5.0):
            want = expr_value(transform_power(Fraction(2)), sigma)
            got = laplace_numeric(lambda x: sf.eval(x) ** 2, sf, sigma)
            assert got == pytest.approx(want, rel=1e-9)

    def test_sigma_validation(self, sf):
        with pytest.raises(DomainError):
            laplace_numeric(lambda x: 1.0, sf, 0.0)

    def test_tail_bound_guard(self, sf):
        with pytest.raises(TailBoundError):
            laplace_numeric(lambda x: math.exp(2.0 * sf.eval(x)), sf, 1.0)


class TestInversionConsistency:
    def test_resolvent_terms_round_trip_through_numeric(self, sf):
        # invariant: numeric transform of the inverted function returns the
        # expression value, checked at two probe points
        numerator = LaplaceExpr.of(LaplaceTerm(1.0, _p := Fraction(0))) + transform_power(2)
        expr = solve_resolvent(numerator, Fraction(4, 3), -0.5)
        fn = inverse_laplace(expr)
        for sigma in (2.0, 4.0):
            want = expr_value(expr, sigma)
            got = laplace_numeric(lambda x: fn(sf.eval(x)), sf, sigma)
            assert got == pytest.approx(want, rel=1e-3)


class TestConvolution:
    def test_matches_closed_form(self, sf):
        # S * S at a staircase point: (S^1 * S^1)(u) = u^3 / 6
        x = float(sf.quantile_exact(Fraction(1, 2)))
        got = convolve(lambda t: sf.eval(t), lambda t: sf.eval(t), sf, x)
        assert got == pytest.approx(0.5**3 / 6.0, rel=1e-8)

    def test_transform_of_convolution_is_product(self, sf):
        # L{S * S}(sigma) = (Gamma(2) sigma^-2)^2 via the closed cube
        sigma = 2.0
        got = laplace_numeric(lambda x: sf.eval(x) ** 3 / 6.0, sf, sigma)
        want = expr_value(transform_power(1), sigma) ** 2
        assert got == pytest.approx(want, rel=1e-9)

    def test_commutes(self, sf):
        x = float(sf.quantile_exact(Fraction(3, 4)))
        a = convolve(lambda t: sf.eval(t), lambda t: sf.eval(t) ** 2, sf, x)
        b = convolve(lambda t: sf.eval(t) ** 2, lambda t: sf.eval(t), sf, x)
        assert a == pytest.approx(b, rel=1e-8)
