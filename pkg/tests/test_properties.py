"""Property-based checks of numerical invariants."""

from __future__ import annotations

import math

import numpy as np
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from mlcorput.config import Grid, parse_config
from mlcorput.errors import NoConvergence
from mlcorput.functions import FunctionSpec, Interval, affine, polynomial, rescale
from mlcorput.mlf import MLOrder, euler_decompose, ml_neg_real, ml_real_bounds, ml_series
from mlcorput.quad import IntegralSpec
from mlcorput.verify import fit_points

SET = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)


@SET
@given(st.floats(0.3, 1.5), st.floats(0.2, 3.0), finite, finite)
def test_series_conjugate_symmetry(a, b, x, y):
    o = MLOrder(a, b)
    z = complex(x, y)
    v = ml_series(o, z)
    assert abs(ml_series(o, z.conjugate()) - v.conjugate()) <= 1e-14 * (1 + abs(v))


@settings(max_examples=15, deadline=None)
@given(st.floats(0.5, 1.0), st.floats(0.2, 2.5), st.floats(-20, 20))
def test_euler_matches_series(a, b, t):
    o = MLOrder(a, b)
    try:
        s = ml_series(o, 1j * t)
    except NoConvergence:
        assume(False)
    assert abs(euler_decompose(o, t) - s) <= 1e-11 * (1 + abs(s))


@SET
@given(st.floats(0.05, 0.95), st.floats(0.0, 1e3))
def test_sandwich_beta_one(a, x):
    o = MLOrder(a, 1.0)
    lo, hi = ml_real_bounds(o, x)
    v = ml_neg_real(o, x)
    assert lo * (1 - 1e-12) <= v <= hi * (1 + 1e-12)


@SET
@given(st.floats(0.05, 1.0), st.floats(0.05, 2.0), st.floats(0.0, 1e3))
def test_sandwich_beta_above_alpha(a, db, x):
    o = MLOrder(a, a + db)
    lo, hi = ml_real_bounds(o, x)
    v = ml_neg_real(o, x)
    assert lo * (1 - 1e-12) <= v <= hi * (1 + 1e-12)


@SET
@given(st.lists(st.floats(-3, 3, allow_nan=False), min_size=1, max_size=5))
def test_function_spec_round_trip(coeffs):
    f = polynomial(coeffs)
    assert FunctionSpec.parse(str(f)) == f


@SET
@given(st.floats(1e-3, 1e3), st.floats(1.0, 1e3), st.integers(1, 40))
def test_grid_round_trip(lo, span, n):
    g = Grid(log=(lo, lo * span, n))
    assert Grid.parse(str(g)) == g
    pts = g.points()
    assert len(pts) == n and pts[0] == lo and all(q >= p for p, q in zip(pts, pts[1:]))


@SET
@given(st.floats(0.1, 1.0), st.floats(0.1, 3.0), st.floats(-2, 2), st.floats(0.5, 3))
def test_config_round_trip(a, b, c0, c1):
    text = (f"[sweep]\nalpha = {a!r}\nbeta = {b!r}\ninterval = 0, 1\n"
            f"phase = affine({c0!r}, {c1!r})\nlambda_grid = log(1, 100, 5)\nwindow = 1, 100\n")
    cfg = parse_config(text)
    assert parse_config(cfg.to_text()) == cfg


@SET
@given(st.floats(-3, -0.1), st.floats(-5, 5))
def test_fit_recovers_power_law(p, logc):
    lams = np.logspace(2, 4, 9)
    f = fit_points(lams, math.exp(logc) * lams ** p, (1e2, 1e4))
    assert abs(f.slope - p) <= 1e-9


@SET
@given(st.sampled_from([(0.5, 0.7), (0.3, 0.6), (1.0, 1.0)]), st.floats(0.1, 100.0),
       st.floats(0.1, 10.0))
def test_rescaling_leaves_integrand(ab, lam, c):
    a, b = ab
    iv = Interval(0, 1)
    phi = affine(1.0, 2.0)
    phi2, lam2 = rescale(phi, lam, c)
    s1 = IntegralSpec(MLOrder(a, b), iv, phi, polynomial([1.0]))
    s2 = IntegralSpec(MLOrder(a, b), iv, phi2, polynomial([1.0]))
    x = np.linspace(0, 1, 9)
    v1, v2 = s1.integrand(x, lam), s2.integrand(x, lam2)
    assert np.max(np.abs(v1 - v2)) <= 1e-12 * (1 + np.max(np.abs(v1)))
