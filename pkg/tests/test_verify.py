from __future__ import annotations

import math

import numpy as np
import pytest

import mlcorput.verify as V
from mlcorput.errors import HypothesisFailure, InsufficientData, MissingStat, NonPositiveValue, UnknownTheorem
from mlcorput.functions import THEOREM_IDS, Interval, affine, compute_stats, constant
from mlcorput.mlf import MLOrder
from mlcorput.quad import IntegralSpec, SweepRow, SweepTable
from mlcorput.verify import (
    REGISTRY, TheoremCase, envelope, fit_decay, fit_points, get_case, riemann_lebesgue_check, run_case,
)

G = math.gamma


def _table(lams, vals):
    return SweepTable([SweepRow(l_, complex(v), 0.0) for l_, v in zip(lams, vals)])


class TestEnvelope:
    def test_th1_example(self):
        st = compute_stats(affine(2, 1), constant(), Interval(0, 1))
        assert envelope("th1", MLOrder(0.5, 0.7), st, 10.0) == pytest.approx(1 / 21, rel=1e-10)

    def test_th41_upper_formula(self):
        st = compute_stats(affine(1, 1), constant(), Interval(0, 1))
        lam = 7.0
        K1 = max(1 / G(0.9), 1 / G(1.3))
        k1 = min(G(0.9) / G(1.7), G(1.3) / G(2.1))
        exact = K1 * 1.0 * (1 + lam * 2.0) / (1 + k1 * lam ** 2 * 1.0)
        assert envelope("th4.1", MLOrder(0.4, 0.9), st, lam) == pytest.approx(exact, rel=1e-10)

    @pytest.mark.parametrize("cid", [c for c in THEOREM_IDS if REGISTRY[c].problem is not None])
    def test_finite_positive_at_zero(self, cid):
        case = REGISTRY[cid]
        sp = case.problem
        st = compute_stats(sp.phase, sp.amp, sp.iv, kmax=5)
        for bound in (("upper", "lower") if case.check_mode == "explicit" else ("upper",)):
            v = envelope(cid, sp.order, st, 0.0, bound=bound)
            assert math.isfinite(v) and v >= 0
            if bound == "upper":
                assert v > 0

    def test_unknown(self):
        with pytest.raises(UnknownTheorem):
            envelope("nosuch", MLOrder(0.5, 0.5), None, 1.0)

    def test_missing_stats(self):
        with pytest.raises(MissingStat):
            envelope("th1", MLOrder(0.5, 0.7), None, 1.0)


class TestFit:
    def test_power_law(self):
        lams = np.logspace(2, 4, 9)
        f = fit_decay(_table(lams, 1 / lams), (1e2, 1e4))
        assert abs(f.slope + 1) <= 1e-12
        assert f.r2 == pytest.approx(1.0)

    def test_log_factor(self):
        lams = np.logspace(2, 4, 9)
        f = fit_decay(_table(lams, lams ** -2 * np.log(2 + lams)), (1e2, 1e4), log_factor=True)
        assert abs(f.slope + 2) <= 1e-3

    def test_insufficient(self):
        with pytest.raises(InsufficientData):
            fit_points([100, 1000, 10000], [1, 2, 3], (1e2, 1e4))

    def test_nonpositive(self):
        lams = list(np.logspace(2, 4, 6))
        with pytest.raises(NonPositiveValue):
            fit_points(lams, [1, 1, 0, 1, 1, 1], (1e2, 1e4))


class TestRegistry:
    def test_ids(self):
        assert tuple(REGISTRY) == THEOREM_IDS

    def test_unknown(self):
        with pytest.raises(UnknownTheorem):
            get_case("nosuch")

    @pytest.mark.parametrize("cid", [c for c in THEOREM_IDS if REGISTRY[c].problem is not None])
    def test_hypotheses_hold(self, cid):
        from mlcorput.functions import check_hypotheses
        c = REGISTRY[cid]
        sp = c.problem
        assert check_hypotheses(cid, sp.phase, sp.amp, sp.iv, sp.order).passed


class TestRunCase:
    def test_th1(self):
        r = run_case(REGISTRY["th1"])
        assert r.passed
        assert r.fit.slope <= -0.95
        assert r.fit.r2 >= 0.9
        assert r.csv().splitlines()[0] == "lambda,abs_I,envelope,ratio"

    def test_th41(self):
        r = run_case(REGISTRY["th4.1"])
        assert r.passed
        assert {e.bound for e in r.envelopes} == {"upper", "lower", "lower_m1_zero"}

    def test_hypothesis_failure_skips_sweep(self, monkeypatch):
        def boom(*a, **k):
            raise AssertionError("sweep must not run")

        monkeypatch.setattr(V, "sweep", boom)
        bad = TheoremCase("th4.1", IntegralSpec(MLOrder(0.6, 1.5), Interval(0, 1), affine(1, 1),
                                                 constant()), check_mode="explicit")
        with pytest.raises(HypothesisFailure):
            run_case(bad)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            TheoremCase("th1", None, check_mode="bogus")


class TestRiemannLebesgue:
    def test_beta_equals_alpha(self):
        from mlcorput.functions import polynomial
        r = riemann_lebesgue_check(MLOrder(0.5, 0.5), polynomial([1, 1]), Interval(1, 2))
        assert r.fit.slope <= -1.9

    def test_qualitative_decay(self):
        r = riemann_lebesgue_check(MLOrder(0.5, 1.0), constant(), Interval(0, 1))
        assert r.abs_values[-1] < 1e-3 * r.abs_values[0]

    def test_no_regime(self):
        with pytest.raises(HypothesisFailure):
            riemann_lebesgue_check(MLOrder(1.0, 0.5), constant(), Interval(1, 2))
