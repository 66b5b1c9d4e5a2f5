from __future__ import annotations

import cmath
import math

import mpmath
import numpy as np
import pytest

from mlcorput.errors import DegenerateInput, RegimeError, UnsupportedRegion
from mlcorput.mlf import (
    CLOSED_FORM_CASES, EvalPolicy, MLOrder, euler_decompose, euler_decompose_array,
    ml_closed_form, ml_derivative_identity_residual, ml_eval, ml_eval_detailed, ml_neg_real,
    ml_neg_real_array, ml_real_bounds, ml_series, overlap_discrepancy, recip_gamma,
    sector_bound_ratio,
)
from mlcorput.functions import affine


def mp_ml(alpha, beta, z, dps=50):
    """Independent oracle: direct mpmath summation at high precision."""
    with mpmath.workdps(dps):
        z = mpmath.mpc(z)
        s = mpmath.mpf(0)
        k = 0
        while True:
            t = z ** k * mpmath.rgamma(mpmath.mpf(alpha) * k + mpmath.mpf(beta))
            s += t
            if k > 10 and abs(t) < mpmath.mpf(10) ** (-dps + 5) * (1 + abs(s)):
                break
            k += 1
        return complex(s)


class TestOrder:
    def test_rejects_nonpositive_alpha(self):
        with pytest.raises(RegimeError):
            MLOrder(0.0, 1.0)
        with pytest.raises(RegimeError):
            MLOrder(-1.0, 1.0)

    def test_rejects_nonfinite_beta(self):
        with pytest.raises(RegimeError):
            MLOrder(0.5, math.inf)

    def test_policy_validation(self):
        with pytest.raises(ValueError):
            EvalPolicy(series_tol=0)


class TestRecipGamma:
    @pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -7.0])
    def test_poles_are_zeros(self, x):
        assert recip_gamma(x) == 0.0

    @pytest.mark.parametrize("x", [0.3, 1.0, 2.5, 7.2, -0.5])
    def test_matches_gamma(self, x):
        assert recip_gamma(x) == pytest.approx(1.0 / math.gamma(x), rel=1e-14)


class TestClosedForm:
    def test_cos_zero(self):
        assert abs(ml_closed_form(MLOrder(2, 1), -math.pi ** 2 / 4)) < 1e-15

    def test_e_minus_one(self):
        assert ml_closed_form(MLOrder(1, 2), 1.0) == pytest.approx(math.e - 1, rel=1e-14)

    def test_absent(self):
        assert ml_closed_form(MLOrder(0.3, 0.7), 1.0) is None

    @pytest.mark.parametrize("ab", CLOSED_FORM_CASES)
    def test_against_mpmath(self, ab):
        rng = np.random.default_rng(1)
        for _ in range(6):
            r = rng.uniform(0, 10)
            for z in (complex(-r, 0), complex(0, r), complex(0, -r)):
                cf = ml_closed_form(MLOrder(*ab), z)
                ref = mp_ml(ab[0], ab[1], z)
                assert abs(cf - ref) <= 1e-11 * (1 + abs(ref))

    def test_ten_cases(self):
        assert len(CLOSED_FORM_CASES) == 10


class TestSeries:
    @pytest.mark.parametrize("ab,z", [((0.5, 0.5), -4.0), ((0.4, 0.8), 2j), ((0.3, 0.7), 1 + 1j),
                                      ((1.5, 1.2), -3 + 2j), ((0.8, 2.0), 5.0)])
    def test_against_mpmath(self, ab, z):
        v = ml_series(MLOrder(*ab), z)
        ref = mp_ml(ab[0], ab[1], z)
        assert abs(v - ref) <= 1e-12 * (1 + abs(ref))

    def test_conjugate_symmetry(self):
        o = MLOrder(0.6, 0.9)
        for z in (1 + 2j, -3 + 0.5j, 4j):
            assert abs(ml_series(o, z.conjugate()) - ml_series(o, z).conjugate()) <= 1e-14 * (
                1 + abs(ml_series(o, z)))


class TestNegReal:
    @pytest.mark.parametrize("t", [0.5, 3.0, 10.0, 40.0, 100.0])
    def test_cos(self, t):
        assert ml_neg_real(MLOrder(2, 1), t * t) == pytest.approx(math.cos(t), abs=1e-12)

    @pytest.mark.parametrize("beta", [0.3, 1.0, 2.5])
    def test_zero(self, beta):
        assert ml_neg_real(MLOrder(0.7, beta), 0.0) == pytest.approx(1 / math.gamma(beta), rel=1e-15)

    def test_exp(self):
        assert ml_neg_real(MLOrder(1, 1), 5.0) == pytest.approx(math.exp(-5), rel=1e-13)

    def test_rejects_alpha_above_two(self):
        with pytest.raises(RegimeError):
            ml_neg_real(MLOrder(2.5, 1), 1.0)

    @pytest.mark.parametrize("ab,xs", [((0.8, 1.3), (20.0, 55.0)), ((1.2, 0.7), (20.0, 80.0, 300.0)),
                                       ((1.6, 1.0), (20.0, 100.0, 1000.0))])
    def test_large_x_against_mpmath(self, ab, xs):
        for x in xs:
            v = ml_neg_real(MLOrder(*ab), x)
            ref = mp_ml(ab[0], ab[1], -x, dps=40 + int(x ** (1 / ab[0]) / 2))
            assert abs(v - ref.real) <= 1e-11 * (1 + abs(ref))

    @pytest.mark.parametrize("x", [0.5, 20.0, 80.0, 1e3, 1e5])
    def test_half_order_erfcx(self, x):
        # E_{1/2,1}(-x) = erfcx(x), E_{1/2,1/2}(-x) = 1/sqrt(pi) - x erfcx(x)
        with mpmath.workdps(40):
            ex = mpmath.exp(mpmath.mpf(x) ** 2) * mpmath.erfc(x)
            e2 = float(1 / mpmath.sqrt(mpmath.pi) - x * ex)
        assert ml_neg_real(MLOrder(0.5, 1.0), x) == pytest.approx(float(ex), rel=1e-11)
        assert ml_neg_real(MLOrder(0.5, 0.5), x) == pytest.approx(e2, rel=1e-9, abs=1e-15)

    def test_overlap_band(self):
        for ab in [(0.5, 0.5), (0.9, 1.0), (1.5, 2.0)]:
            assert overlap_discrepancy(MLOrder(*ab)) <= 10 * 1e-12

    def test_array_matches_scalar(self):
        o = MLOrder(0.6, 0.9)
        xs = np.array([0.0, 0.3, 5.0, 30.0, 200.0, 5000.0])
        arr = ml_neg_real_array(o, xs)
        for x, v in zip(xs, arr):
            assert v == pytest.approx(ml_neg_real(o, float(x)), rel=1e-12, abs=1e-15)


class TestEuler:
    def test_zero(self):
        assert euler_decompose(MLOrder(0.4, 0.8), 0.0) == pytest.approx(1 / math.gamma(0.8))

    def test_exp(self):
        v = euler_decompose(MLOrder(1, 1), 1.0)
        assert abs(v - cmath.exp(1j)) < 1e-14

    def test_against_series(self):
        o = MLOrder(0.4, 0.8)
        assert abs(euler_decompose(o, 2.0) - ml_series(o, 2j)) <= 1e-11

    def test_rejects_alpha_above_one(self):
        with pytest.raises(RegimeError):
            euler_decompose(MLOrder(1.5, 1.0), 1.0)

    def test_array_odd_symmetry(self):
        o = MLOrder(0.5, 0.7)
        t = np.linspace(-50, 50, 101)
        v = euler_decompose_array(o, t)
        assert np.max(np.abs(v - np.conj(v[::-1]))) < 1e-14


class TestDispatcher:
    def test_exp_axis(self):
        assert abs(ml_eval(MLOrder(1, 1), 3j) - cmath.exp(3j)) < 1e-14

    def test_neg_real_matches_series(self):
        o = MLOrder(0.5, 0.5)
        assert abs(ml_eval(o, -4.0) - mp_ml(0.5, 0.5, -4.0)) < 1e-13

    def test_unsupported(self):
        with pytest.raises(UnsupportedRegion):
            ml_eval(MLOrder(0.3, 0.7), 1 + 1j, EvalPolicy(switch_radius=1.0))

    def test_backend_label(self):
        assert ml_eval_detailed(MLOrder(0.5, 0.7), 3j).backend.startswith("euler")


class TestBounds:
    def test_collapse_at_zero(self):
        assert ml_real_bounds(MLOrder(0.5, 1), 0.0) == (1.0, 1.0)

    def test_beta_one_example(self):
        lo, hi = ml_real_bounds(MLOrder(0.5, 1), 1.0)
        assert lo == pytest.approx(1 / (1 + math.sqrt(math.pi)), rel=1e-14)
        assert hi == pytest.approx(1 / (1 + 2 / math.sqrt(math.pi)), rel=1e-14)

    def test_beta_above_alpha_example(self):
        g = math.gamma
        lo, hi = ml_real_bounds(MLOrder(0.4, 0.9), 2.0)
        assert lo == pytest.approx(1 / g(0.9) / (1 + g(0.5) / g(0.9) * 2), rel=1e-14)
        assert hi == pytest.approx(1 / g(0.9) / (1 + g(0.9) / g(1.3) * 2), rel=1e-14)

    def test_regime_error(self):
        with pytest.raises(RegimeError):
            ml_real_bounds(MLOrder(1.5, 1.0), 1.0)

    @pytest.mark.parametrize("ab", [(0.5, 1.0), (0.25, 0.25), (0.4, 0.9), (0.5, 2.0)])
    def test_sandwich_where_valid(self, ab):
        o = MLOrder(*ab)
        for x in np.logspace(-2, 3, 25):
            lo, hi = ml_real_bounds(o, float(x))
            v = ml_neg_real(o, float(x))
            assert lo * (1 - 1e-12) <= v <= hi * (1 + 1e-12)

    def test_positivity(self):
        for a in (0.2, 0.35, 0.5):
            for b in (2 * a, 2 * a + 0.3, 1.5):
                xs = np.logspace(-2, np.log10(300.0), 30)
                assert np.all(ml_neg_real_array(MLOrder(2 * a, b), xs) > 0)


class TestSector:
    def test_exp(self):
        assert sector_bound_ratio(MLOrder(1, 1), -10.0) == pytest.approx(11 * math.exp(-10))

    def test_zero(self):
        assert sector_bound_ratio(MLOrder(0.5, 0.7), 0.0) == pytest.approx(1 / math.gamma(0.7))

    def test_bounded_on_imaginary_axis(self):
        o = MLOrder(0.5, 0.5)
        r = [sector_bound_ratio(o, 1j * t) for t in np.logspace(0, 3, 13)]
        assert max(r[-4:]) <= 2 * max(r)
        assert max(r) < 10


class TestDerivativeIdentity:
    def test_exp_case(self):
        r = ml_derivative_identity_residual(MLOrder(1, 1), affine(0, 1), 0.5, 1.0, 1e-4)
        assert r < 1e-8

    def test_fractional_case(self):
        r = ml_derivative_identity_residual(MLOrder(0.6, 0.6), affine(1, 1), 0.5, 3.0, 1e-4)
        assert r < 1e-6

    def test_h_squared(self):
        o = MLOrder(0.6, 0.6)
        r1 = ml_derivative_identity_residual(o, affine(1, 1), 0.5, 3.0, 1e-2)
        r2 = ml_derivative_identity_residual(o, affine(1, 1), 0.5, 3.0, 5e-3)
        assert 3.5 <= r1 / r2 <= 4.5

    def test_zero_lambda(self):
        with pytest.raises(DegenerateInput):
            ml_derivative_identity_residual(MLOrder(0.5, 0.5), affine(0, 1), 0.5, 0.0, 1e-3)
