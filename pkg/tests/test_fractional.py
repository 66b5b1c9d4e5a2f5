from __future__ import annotations

import math

import pytest

from mlcorput.errors import DegenerateInput, RegimeError
from mlcorput.fractional import (
    FracSpec, GradedRule, caputo_deriv, caputo_deriv_high, composition_residual, eigen_residual,
    frac_integral, int_by_parts_residual, rl_deriv, semigroup_defect, semigroup_residual,
)
from mlcorput.functions import Interval, affine, bump, constant, gaussian, monomial, polynomial

IV = Interval(0, 1)
S = affine(0, 1)
G = math.gamma


class TestIntegral:
    @pytest.mark.parametrize("a", [0.3, 0.5, 0.9, 1.0])
    def test_constant(self, a):
        x = 0.7
        assert frac_integral(FracSpec(a, S, IV), constant(), x) == pytest.approx(
            x ** a / G(a + 1), rel=1e-12)

    def test_alpha_one_weighted(self):
        phi = polynomial([0, 1, 1])
        f = polynomial([1, 2])
        x = 0.6
        # int_0^x (1+2s)(1+2s) ds
        exact = x + 2 * x ** 2 + 4 * x ** 3 / 3
        assert frac_integral(FracSpec(1.0, phi, IV), f, x) == pytest.approx(exact, rel=1e-12)

    def test_at_a(self):
        assert frac_integral(FracSpec(0.4, S, IV), constant(), 0.0) == 0.0

    def test_right_constant(self):
        x = 0.25
        v = frac_integral(FracSpec(0.6, S, IV, "right"), constant(), x)
        assert v == pytest.approx((1 - x) ** 0.6 / G(1.6), rel=1e-12)

    def test_nonlinear_phi_constant(self):
        # I^alpha_phi 1 = (phi(x)-phi(a))^alpha / Gamma(alpha+1)
        phi = polynomial([0, 1, 1])
        x = 0.8
        v = frac_integral(FracSpec(0.35, phi, IV), constant(), x)
        assert v == pytest.approx((x + x * x) ** 0.35 / G(1.35), rel=1e-11)


class TestCaputo:
    def test_constant(self):
        assert abs(caputo_deriv(FracSpec(0.5, S, IV), constant(3.0), 0.6)) < 1e-15

    @pytest.mark.parametrize("a", [0.2, 0.5, 0.8])
    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_power_rule(self, a, p):
        x = 0.7
        exact = G(p + 1) / G(p + 1 - a) * x ** (p - a)
        assert abs(caputo_deriv(FracSpec(a, S, IV), monomial(1, p), x) - exact) <= 1e-6

    def test_near_one_limit(self):
        # exact value 2/Gamma(2.001); the classical value 2 is approached only at alpha -> 1
        v = caputo_deriv(FracSpec(0.999, S, IV), monomial(1, 2), 1.0)
        assert v == pytest.approx(2.0 / G(2.001), rel=1e-10)
        assert abs(v - 2.0) < 1e-3

    def test_alpha_one_is_classical(self):
        phi = polynomial([0, 1, 1])
        f = monomial(1, 3)
        x = 0.4
        assert caputo_deriv(FracSpec(1.0, phi, IV), f, x) == pytest.approx(
            3 * x * x / (1 + 2 * x), rel=1e-13)

    def test_right_power_rule(self):
        x, a = 0.3, 0.4
        f = polynomial([1, -1])   # 1 - s, so f' = -1
        v = caputo_deriv(FracSpec(a, S, IV, "right"), f, x)
        assert v == pytest.approx((1 - x) ** (1 - a) / G(2 - a), rel=1e-10)

    def test_high_order_matches_power(self):
        # order 1+delta of (s-a)^3: Gamma(4)/Gamma(4-1-delta) x^(2-delta)
        x, order = 0.6, 1.4
        v = caputo_deriv_high(FracSpec(0.7, S, IV), monomial(1, 3), x, order)
        assert v == pytest.approx(G(4) / G(4 - order) * x ** (3 - order), rel=1e-9)

    def test_requires_increasing_phi(self):
        with pytest.raises(DegenerateInput):
            FracSpec(0.5, affine(1, -1), IV)

    def test_order_range(self):
        with pytest.raises(RegimeError):
            FracSpec(1.2, S, IV)


class TestRL:
    def test_constant(self):
        x, a = 0.7, 0.4
        assert rl_deriv(FracSpec(a, S, IV), constant(), x) == pytest.approx(
            x ** (-a) / G(1 - a), rel=1e-10)

    def test_equals_caputo_when_f_a_zero(self):
        sp = FracSpec(0.45, polynomial([0, 1, 0.5]), IV)
        f = polynomial([0, 1, 2])
        assert rl_deriv(sp, f, 0.6) == pytest.approx(caputo_deriv(sp, f, 0.6), rel=1e-13)


class TestEigen:
    def test_zero_lambda(self):
        assert eigen_residual(0.6, S, IV, 0.0, 0.5) == 0.0

    def test_exponential(self):
        assert eigen_residual(1.0, S, IV, 2.0, 0.7) < 1e-6

    def test_nonlinear_phase(self):
        assert eigen_residual(0.7, polynomial([0, 1, 1]), IV, 1.0, 0.5) < 1e-5

    @pytest.mark.parametrize("a", [0.5, 0.7, 0.9])
    @pytest.mark.parametrize("lam", [0.5, 1.0, 5.0])
    def test_matrix(self, a, lam):
        assert eigen_residual(a, polynomial([0, 1, 1]), IV, lam, 0.5) <= 1e-5 * (1 + lam)


class TestSemigroup:
    def test_constant(self):
        assert semigroup_residual(0.6, 0.6, S, constant(2.0), 0.7, IV) < 1e-14

    def test_shipped_case(self):
        assert semigroup_residual(0.6, 0.6, S, monomial(1, 2), 0.7, IV) < 1e-5

    def test_both_sides_power(self):
        from mlcorput.fractional import _semigroup_sides
        lhs, rhs = _semigroup_sides(0.6, 0.6, S, monomial(1, 2), 0.7, IV, GradedRule())
        exact = 2 * 0.7 ** 0.8 / G(1.8)
        assert lhs == pytest.approx(exact, rel=1e-8)
        assert rhs == pytest.approx(exact, rel=1e-8)

    def test_defect_when_slope_at_a_nonzero(self):
        # f = s + s^2 has f'(0) = 1: the residual equals the closed-form defect
        f = polynomial([0, 1, 1])
        r = semigroup_residual(0.6, 0.6, S, f, 0.7, IV)
        d = semigroup_defect(0.6, 0.6, S, f, 0.7, IV)
        assert d == pytest.approx(0.7 ** (-0.2) / G(0.8), rel=1e-12)
        assert r == pytest.approx(abs(d), rel=1e-7)

    def test_nonlinear_phi_defect(self):
        phi = polynomial([0, 1, 1])
        f = polynomial([0, 0, 1, 1])
        r = semigroup_residual(0.7, 0.5, phi, f, 0.6, IV, GradedRule(16))
        assert r < 1e-5
        assert semigroup_defect(0.7, 0.5, phi, f, 0.6, IV) == 0.0

    def test_order_sum_one_rejected(self):
        with pytest.raises(RegimeError):
            semigroup_residual(0.5, 0.5, S, monomial(1, 2), 0.7, IV)


class TestIntegrationByParts:
    def test_shipped_case(self):
        assert int_by_parts_residual(0.5, S, bump(0.5, 0.4), monomial(1, 2), IV) < 1e-4

    def test_constant_g(self):
        assert int_by_parts_residual(0.5, S, polynomial([1, 2]), constant(3.0), IV) < 1e-10

    def test_nonlinear_phi_corrected_form(self):
        phi = polynomial([1, 1, 1])
        r = int_by_parts_residual(0.5, phi, polynomial([1, 2]), polynomial([1, 0, 1]), IV,
                                  GradedRule(16))
        assert r < 1e-8

    def test_unweighted_form_fails_for_nonlinear_phi(self):
        phi = polynomial([1, 1, 1])
        r = int_by_parts_residual(0.5, phi, polynomial([1, 2]), polynomial([1, 0, 1]), IV,
                                  GradedRule(16), form="unweighted")
        assert r > 1e-2

    def test_forms_agree_for_identity_phi_when_bracket_vanishes(self):
        # g(a) = 0 kills the boundary bracket, whose sign is the other discrepancy
        f, g = polynomial([1, 2]), monomial(1, 2)
        assert int_by_parts_residual(0.5, S, f, g, IV, form="unweighted") < 1e-8
        assert int_by_parts_residual(0.5, S, f, polynomial([1, 0, 1]), IV, form="unweighted") > 1e-2


class TestComposition:
    def test_identity_phi(self):
        assert composition_residual(FracSpec(0.6, S, IV), gaussian(0.3, 0.3), 0.8) < 1e-5

    def test_nonlinear_phi(self):
        sp = FracSpec(0.6, polynomial([0, 1, 1]), IV)
        assert composition_residual(sp, polynomial([1, -2, 3]), 0.8, GradedRule(16)) < 1e-5
