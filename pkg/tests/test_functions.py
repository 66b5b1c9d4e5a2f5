from __future__ import annotations

import math

import numpy as np
import pytest

from mlcorput.errors import UnknownTheorem
from mlcorput.functions import (
    THEOREM_IDS, FunctionSpec, Interval, affine, bump, check_hypotheses, compute_stats, constant,
    gaussian, invert, monomial, normalize_kth_derivative, polynomial, rescale, shifted_power,
)
from mlcorput.mlf import MLOrder


class TestInterval:
    def test_order(self):
        with pytest.raises(ValueError):
            Interval(1.0, 0.0)

    def test_infinite_flag(self):
        assert not Interval(0.0, math.inf).is_finite
        assert Interval(0.0, 2.0).length == 2.0


class TestEval:
    def test_monomial_derivative(self):
        assert monomial(1, 2).eval(3.0, 1) == 6.0

    def test_affine_second_derivative(self):
        assert affine(2, 1).eval(0.0, 2) == 0.0

    @pytest.mark.parametrize("k", range(4))
    def test_bump_boundary(self, k):
        assert bump(0.5, 0.4).eval(0.1, k) == 0.0
        assert bump(0.5, 0.4).eval(0.9, k) == 0.0

    def test_bump_derivatives_by_difference(self):
        f = bump(0.5, 0.4)
        x, h = 0.63, 1e-5
        for k in range(3):
            fd = (f.eval(x + h, k) - f.eval(x - h, k)) / (2 * h)
            assert f.eval(x, k + 1) == pytest.approx(fd, rel=1e-6)

    def test_gaussian_derivative(self):
        g = gaussian(0.3, 0.5)
        x = 0.8
        u = (x - 0.3) / 0.5
        assert g.eval(x, 1) == pytest.approx(-u / 0.5 * math.exp(-u * u / 2), rel=1e-14)

    def test_shifted_power(self):
        f = shifted_power(2.0, 0.5, 1.0)
        assert f.eval(5.0, 0) == pytest.approx(4.0)
        assert f.eval(5.0, 1) == pytest.approx(0.5)

    def test_polynomial_integral(self):
        assert polynomial([1, 2, 3]).integral(0, 1) == pytest.approx(3.0)

    def test_round_trip(self):
        for f in (affine(2, 1), monomial(1.5, 3), polynomial([1, 0.5, -2]), bump(0.5, 0.4),
                  gaussian(0, 1, 2.0), shifted_power(1, 0.7, 0)):
            assert FunctionSpec.parse(str(f), f.role) == f

    def test_bad_family(self):
        with pytest.raises(ValueError):
            FunctionSpec("sine", (1.0,))

    def test_invert(self):
        phi = polynomial([0, 1, 1])
        y = np.array([0.0, 0.75, 2.0])
        x = invert(phi, y, Interval(0, 1))
        assert np.allclose(phi.eval(x, 0), y, atol=1e-14)


class TestStats:
    def test_bounded_away(self):
        s = compute_stats(affine(2, 1), constant(), Interval(0, 1))
        assert s.inf_abs_phase == pytest.approx(2.0, abs=1e-10)
        assert s.sup_abs_phase == pytest.approx(3.0, abs=1e-10)
        assert s.zeros_of_phase == ()

    def test_linear_zero(self):
        s = compute_stats(affine(0, 1), constant(), Interval(-1, 1))
        assert s.inf_abs_phase <= 1e-10
        assert len(s.zeros_of_phase) == 1 and abs(s.zeros_of_phase[0]) <= 1e-10

    def test_quadratic(self):
        s = compute_stats(monomial(1, 2), constant(), Interval(-1, 1), kmax=3)
        assert s.min_abs_kth_deriv(2) == pytest.approx(2.0)
        assert s.inf_abs_phase <= 1e-10

    def test_stability_under_refinement(self):
        fields = ("inf_abs_phase", "sup_abs_phase", "inf_abs_phase_deriv", "inf_abs_amp",
                  "sup_abs_amp", "amp_L1")
        for phi, amp, iv in [(polynomial([0.3, -1, 1.2]), bump(0.4, 0.5), Interval(-1, 1)),
                             (monomial(1, 3), polynomial([1, 0.5]), Interval(-1, 1))]:
            s1 = compute_stats(phi, amp, iv, grid_n=256)
            s2 = compute_stats(phi, amp, iv, grid_n=1024)
            for f in fields:
                assert abs(getattr(s1, f) - getattr(s2, f)) < 1e-8, f


class TestHypotheses:
    def test_th1_pass(self):
        r = check_hypotheses("th1", affine(2, 1), constant(), Interval(0, 1), MLOrder(0.5, 0.7))
        assert r.passed
        assert "m=2" in str(r)

    def test_th41_alpha(self):
        r = check_hypotheses("th4.1", affine(1, 1), constant(), Interval(0, 1), MLOrder(0.6, 1.5))
        assert not r.passed
        assert any("alpha<=1/2" in c.name for c in r.failures())

    def test_nonstat_gaussian(self):
        r = check_hypotheses("nonstat", affine(0, 1), gaussian(0.5, 0.2), Interval(0, 1),
                             MLOrder(0.95, 1.0))
        assert not r.passed
        assert any("psi^(k)" in c.name for c in r.failures())

    def test_nonstat_bump(self):
        r = check_hypotheses("nonstat", affine(0, 1), bump(0.5, 0.4), Interval(0, 1),
                             MLOrder(0.95, 1.0))
        assert r.passed

    def test_literal_derivative_normalization(self):
        iv = Interval(-1, 1)
        phi = monomial(0.25, 2)
        o = MLOrder(0.5, 0.5)
        assert not check_hypotheses("thm2-3", phi, constant(), iv, o).passed
        phi2, lam2 = normalize_kth_derivative(phi, iv, 2, lam=10.0)
        assert lam2 == pytest.approx(5.0)
        assert check_hypotheses("thm2-3", phi2, constant(), iv, o).passed

    def test_rescale_identity(self):
        phi2, lam2 = rescale(affine(2, 1), 3.0, 4.0)
        assert lam2 * phi2.eval(0.3, 0) == pytest.approx(3.0 * 2.3)

    def test_unknown(self):
        with pytest.raises(UnknownTheorem):
            check_hypotheses("th99", affine(0, 1), constant(), Interval(0, 1), MLOrder(0.5, 0.5))

    def test_registry_size(self):
        assert len(THEOREM_IDS) == 17
