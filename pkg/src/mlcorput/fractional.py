"""Fractional integrals and derivatives of a function with respect to an increasing phi.

All operators are evaluated after the substitution ``u = phi(s)``, which turns
every kernel into a pure power of ``u``.  The resulting weakly singular
integrals ``int_0^L tau^p (L - tau)^r F(tau) dtau`` are computed by a
two-sided graded product rule: Gauss-Jacobi on the panels touching the
singular endpoints, Gauss-Legendre elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import special

from .errors import DegenerateInput, RegimeError, SingularityFailure
from .functions import FunctionSpec, Interval, compute_stats, constant, invert
from .mlf import DEFAULT_POLICY, EvalPolicy, MLOrder, euler_decompose_array, ml_eval

__all__ = [
    "FracSpec",
    "GradedRule",
    "frac_integral",
    "caputo_deriv",
    "caputo_deriv_high",
    "rl_deriv",
    "eigen_residual",
    "semigroup_residual",
    "semigroup_defect",
    "int_by_parts_residual",
    "composition_residual",
    "PhiDerivative",
    "PhiRatio",
]

_NODES = 16
_PANELS = 64
_REL_TOL = 1e-8
_MAX_DOUBLINGS = 3


# {{{ derived functions


class _Quotient:
    """``N/D`` with derivatives up to order 2 from those of ``N`` and ``D``."""

    def __init__(self, num: Callable, den: Callable) -> None:
        self._n = num
        self._d = den

    def eval(self, x, deriv: int = 0):
        n0, d0 = self._n(x, 0), self._d(x, 0)
        if deriv == 0:
            return n0 / d0
        n1, d1 = self._n(x, 1), self._d(x, 1)
        if deriv == 1:
            return (n1 * d0 - n0 * d1) / (d0 * d0)
        if deriv == 2:
            n2, d2 = self._n(x, 2), self._d(x, 2)
            return (n2 * d0 * d0 - 2 * n1 * d0 * d1 - n0 * d0 * d2 + 2 * n0 * d1 * d1) / d0 ** 3
        raise ValueError("quotient derivatives are provided up to order 2")


class PhiDerivative(_Quotient):
    """First-order phi-derivative ``f'/phi'``."""

    def __init__(self, f, phi: FunctionSpec) -> None:
        super().__init__(lambda x, k: f.eval(x, k + 1), lambda x, k: phi.eval(x, k + 1))


class PhiRatio(_Quotient):
    """``f/phi'``."""

    def __init__(self, f, phi: FunctionSpec) -> None:
        super().__init__(lambda x, k: f.eval(x, k), lambda x, k: phi.eval(x, k + 1))


class _Callable:
    """Wrap a plain vectorized callable as a derivative-free function object."""

    def __init__(self, fn: Callable) -> None:
        self._fn = fn

    def eval(self, x, deriv: int = 0):
        if deriv != 0:
            raise ValueError("plain callables provide values only")
        return self._fn(x)


def _as_fn(f):
    if hasattr(f, "eval"):
        return f
    if callable(f):
        return _Callable(f)
    raise TypeError("expected a FunctionSpec-like object or a callable")


# }}}


# {{{ graded product rule


@dataclass(frozen=True)
class GradedRule:
    """Uniform panels on [0, L]; the two end panels are split geometrically.

    ``ratio`` is the geometric factor and ``levels`` the number of splits;
    the innermost piece at each singular end uses Gauss-Jacobi.
    """

    panels: int = _PANELS
    nodes: int = _NODES
    ratio: float = 0.2
    levels: int = 30

    def __post_init__(self) -> None:
        if self.panels < 2 or self.nodes < 4 or not 0 < self.ratio < 1 or self.levels < 1:
            raise ValueError("invalid graded rule")

    def refined(self) -> GradedRule:
        return GradedRule(2 * self.panels, self.nodes, self.ratio, self.levels)


def _half_rule(p: float, rule: GradedRule) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [0, 1/2] for ``int t^p F``, graded toward 0."""
    n, m = rule.panels, rule.nodes
    xg, wg = np.polynomial.legendre.leggauss(m)
    h = 1.0 / n
    geo = h * rule.ratio ** np.arange(rule.levels, 0, -1)
    edges = np.concatenate([geo, np.arange(1, n // 2 + 1) * h])
    if n % 2:
        edges = np.append(edges, 0.5)
    yj, wj = special.roots_jacobi(m, 0.0, p)
    h0 = edges[0]
    t_in = 0.5 * h0 * (1.0 + yj)
    w_in = wj * (0.5 * h0) ** (1.0 + p)
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    t_out = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    w_out = (half[:, None] * wg[None, :]).ravel() * t_out ** p
    return np.concatenate([t_in, t_out]), np.concatenate([w_in, w_out])


@lru_cache(maxsize=256)
def _unit_rule(p: float, r: float, rule: GradedRule) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0,1] for ``int_0^1 t^p (1-t)^r F(t) dt``."""
    tl, wl = _half_rule(p, rule)
    wl = wl * (1.0 - tl) ** r
    sr, wr = _half_rule(r, rule)
    tr = 1.0 - sr
    wr = wr * tr ** p
    return np.concatenate([tl, tr]), np.concatenate([wl, wr])


def _rule_for(order: float, rule: GradedRule | None) -> GradedRule:
    return rule if rule is not None else GradedRule()


def _weighted(F: Callable, L, p: float, r: float, rule: GradedRule):
    """``int_0^L t^p (L-t)^r F(t) dt``; ``L`` may be an array (vectorized over rows)."""
    t, w = _unit_rule(float(p), float(r), rule)
    L = np.asarray(L, dtype=float)
    if L.ndim == 0:
        if L == 0:
            return 0.0
        vals = F(L * t)
        return L ** (1.0 + p + r) * np.sum(w * vals)
    tt = L[:, None] * t[None, :]
    vals = F(tt)
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(L > 0, L ** (1.0 + p + r), 0.0)
    return scale * np.sum(w[None, :] * vals, axis=1)


def _adaptive(compute: Callable[[GradedRule], complex], rule: GradedRule,
              tol: float = _REL_TOL, what: str = "integral"):
    prev = compute(rule)
    for _ in range(_MAX_DOUBLINGS):
        rule = rule.refined()
        cur = compute(rule)
        if abs(cur - prev) <= tol * max(abs(cur), 1e-14):
            return cur
        prev = cur
    raise SingularityFailure(f"{what}: refinement stalled (last change {abs(cur - prev):.3g})")


# }}}


# {{{ operators


@dataclass(frozen=True)
class FracSpec:
    alpha: float
    phi: FunctionSpec
    iv: Interval
    side: str = "left"

    def __post_init__(self) -> None:
        if not 0 < self.alpha <= 1:
            raise RegimeError(f"operator order must lie in (0,1], got {self.alpha}")
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        if not self.iv.is_finite:
            raise ValueError("fractional operators need a finite interval")
        st = compute_stats(self.phi, constant(), self.iv, grid_n=64, kmax=1)
        xs = np.linspace(self.iv.a, self.iv.b, 65)
        if st.inf_abs_phase_deriv <= 0 or np.any(self.phi.eval(xs, 1) <= 0):
            raise DegenerateInput("phi must be increasing with phi' > 0 on the interval")

    def _check_x(self, x: float) -> None:
        if not self.iv.a <= x <= self.iv.b:
            raise ValueError(f"x={x} outside [{self.iv.a}, {self.iv.b}]")

    def s_of_left(self, x: float, v):
        """Point ``s`` with ``phi(s) = phi(a) + v``."""
        return invert(self.phi, self.phi.eval(self.iv.a, 0) + v, self.iv)

    def s_of_right(self, x: float, t):
        """Point ``s`` with ``phi(s) = phi(x) + t``."""
        return invert(self.phi, self.phi.eval(x, 0) + t, self.iv)

    def span(self, x: float) -> float:
        """``phi(x) - phi(a)`` (left) or ``phi(b) - phi(x)`` (right)."""
        if self.side == "left":
            return float(self.phi.eval(x, 0) - self.phi.eval(self.iv.a, 0))
        return float(self.phi.eval(self.iv.b, 0) - self.phi.eval(x, 0))


def _integral_raw(spec: FracSpec, f, x: float, rule: GradedRule):
    a = spec.alpha
    L = spec.span(x)
    if spec.side == "left":
        V = L
        F = lambda v: f.eval(spec.s_of_left(x, V - v), 0)  # noqa: E731
    else:
        F = lambda t: f.eval(spec.s_of_right(x, t), 0)  # noqa: E731
    # (phi(x)-u)^(alpha-1) written as t^(alpha-1), t the distance from phi(x)
    return _weighted(F, L, a - 1.0, 0.0, rule) / math.gamma(a)


def frac_integral(spec: FracSpec, f, x: float, rule: GradedRule | None = None,
                  tol: float = _REL_TOL):
    """``I^{alpha,phi}`` of ``f`` at ``x`` (left: from ``a``; right: to ``b``)."""
    spec._check_x(x)
    f = _as_fn(f)
    if spec.span(x) == 0:
        return 0.0
    return _adaptive(lambda r: _integral_raw(spec, f, x, r), _rule_for(spec.alpha, rule),
                     tol, "fractional integral")


def _caputo_raw(spec: FracSpec, f, x: float, order: float, rule: GradedRule):
    k = PhiDerivative(f, spec.phi) if not isinstance(f, _Kernel) else f.k
    L = spec.span(x)
    if spec.side == "left":
        F = lambda t: k.eval(spec.s_of_left(x, L - t), 0)  # noqa: E731
        sign = 1.0
    else:
        F = lambda t: k.eval(spec.s_of_right(x, t), 0)  # noqa: E731
        sign = -1.0
    return sign * _weighted(F, L, -order, 0.0, rule) / math.gamma(1.0 - order)


class _Kernel:
    """Marks an already phi-differentiated integrand."""

    def __init__(self, k) -> None:
        self.k = k


def caputo_deriv(spec: FracSpec, f, x: float, rule: GradedRule | None = None,
                 tol: float = _REL_TOL):
    """Caputo derivative of order ``alpha`` with respect to ``phi``.

    Left: ``(1/G(1-a)) int_a^x (phi(x)-phi(s))^(-a) f'(s) ds``;
    right: ``-(1/G(1-a)) int_x^b (phi(s)-phi(x))^(-a) f'(s) ds``.
    At ``alpha = 1`` this is ``+-f'(x)/phi'(x)``.
    """
    spec._check_x(x)
    f = _as_fn(f)
    a = spec.alpha
    if a == 1.0:
        val = PhiDerivative(f, spec.phi).eval(x, 0)
        return val if spec.side == "left" else -val
    if spec.span(x) == 0:
        return 0.0
    return _adaptive(lambda r: _caputo_raw(spec, f, x, a, r), _rule_for(a, rule),
                     tol, "Caputo derivative")


def caputo_deriv_high(spec: FracSpec, f, x: float, order: float,
                      rule: GradedRule | None = None, tol: float = _REL_TOL):
    """Caputo derivative of order ``1 + delta`` (``0 < delta < 1``).

    Taken as the order-``delta`` derivative of the first-order phi-derivative:
    ``f'/phi'`` on the left, ``-f'/phi'`` on the right.
    """
    if not 1.0 < order < 2.0:
        raise RegimeError(f"order must lie in (1,2), got {order}")
    spec._check_x(x)
    f = _as_fn(f)
    delta = order - 1.0
    inner = PhiDerivative(f, spec.phi)
    if spec.side == "right":
        inner = _Scaled(inner, -1.0)
    if spec.span(x) == 0:
        return 0.0
    sub = FracSpec(delta, spec.phi, spec.iv, spec.side)
    kern = _Kernel(PhiDerivative(inner, spec.phi))
    return _adaptive(lambda r: _caputo_raw(sub, kern, x, delta, r), _rule_for(delta, rule),
                     tol, "high-order Caputo derivative")


class _Scaled:
    def __init__(self, f, c: float) -> None:
        self.f, self.c = f, c

    def eval(self, x, deriv: int = 0):
        return self.c * self.f.eval(x, deriv)


def rl_deriv(spec: FracSpec, f, x: float, rule: GradedRule | None = None,
             tol: float = _REL_TOL):
    """Riemann-Liouville derivative via the Caputo relation plus the boundary term."""
    a = spec.alpha
    if a >= 1.0:
        raise RegimeError("the Riemann-Liouville relation is used for alpha < 1 only")
    f = _as_fn(f)
    spec._check_x(x)
    end = spec.iv.a if spec.side == "left" else spec.iv.b
    fe = float(f.eval(end, 0))
    L = spec.span(x)
    if L == 0:
        if fe != 0.0:
            raise DegenerateInput("boundary term diverges at the endpoint when f(endpoint) != 0")
        return 0.0
    return caputo_deriv(spec, f, x, rule, tol) + fe * L ** (-a) / math.gamma(1.0 - a)


# }}}


# {{{ identity residuals


def eigen_residual(alpha: float, phi: FunctionSpec, iv: Interval, lam: float, x: float,
                   rule: GradedRule | None = None,
                   policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """``|D g(x) - i lam g(x)|`` for ``g = E_{alpha,1}(i lam (phi - phi(a))^alpha)``.

    The phi-derivative of ``g`` in the variable ``v = phi(s) - phi(a)`` is
    ``i lam v^(alpha-1) E_{alpha,alpha}(i lam v^alpha)``; the Caputo integral
    then carries the two endpoint weights ``v^(alpha-1)`` and ``(V-v)^(-alpha)``.
    """
    spec = FracSpec(alpha, phi, iv, "left")
    spec._check_x(x)
    if lam == 0:
        return 0.0
    V = spec.span(x)
    g = ml_eval(MLOrder(alpha, 1.0), 1j * lam * V ** alpha, policy)
    if alpha == 1.0:
        lhs = 1j * lam * ml_eval(MLOrder(1.0, 1.0), 1j * lam * V, policy)
        return abs(lhs - 1j * lam * g)
    o = MLOrder(alpha, alpha)

    def compute(r: GradedRule) -> complex:
        F = lambda v: 1j * lam * euler_decompose_array(o, lam * v ** alpha, policy)  # noqa: E731
        return complex(_weighted(F, V, alpha - 1.0, -alpha, r)) / math.gamma(1.0 - alpha)

    lhs = _adaptive(compute, _rule_for(alpha, rule), 1e-10, "eigenfunction derivative")
    return abs(lhs - 1j * lam * g)


def _semigroup_sides(alpha: float, beta: float, phi: FunctionSpec, f, x: float,
                     iv: Interval, rule: GradedRule) -> tuple[float, float]:
    spec = FracSpec(alpha, phi, iv, "left")
    f = _as_fn(f)
    V = spec.span(x)
    gam = 1.0 - beta
    delta = alpha + beta - 1.0
    k = PhiDerivative(f, phi)
    k0 = float(k.eval(iv.a, 0))

    def kprime(v):
        # d/dv of f'/phi' at s(v): (d/ds)/phi'
        s = spec.s_of_left(x, v)
        return k.eval(s, 1) / phi.eval(s, 1)

    # D^alpha D^beta f: inner Caputo is I^gam k; its v-derivative is
    # k(0) v^(gam-1)/G(gam) + I^gam k'
    singular = k0 * V ** (gam - alpha) * special.beta(gam, 1.0 - alpha) / math.gamma(gam)

    def inner(v):
        return _weighted(kprime, v.ravel(), 0.0, gam - 1.0, rule).reshape(v.shape) / math.gamma(gam)

    outer = _weighted(lambda t: inner(V - t), V, -alpha, 0.0, rule)
    lhs = (singular + outer) / math.gamma(1.0 - alpha)
    # order alpha+beta in (1,2): order-delta Caputo of f'/phi'
    rhs = _weighted(lambda t: kprime(V - t), V, -delta, 0.0, rule) / math.gamma(1.0 - delta)
    return float(lhs), float(rhs)


def semigroup_residual(alpha: float, beta: float, phi: FunctionSpec, f, x: float,
                       iv: Interval, rule: GradedRule | None = None) -> float:
    """``|D^alpha D^beta f(x) - D^(alpha+beta) f(x)|`` for ``1 < alpha+beta < 2``."""
    if not (0 < alpha < 1 and 0 < beta < 1 and 1 < alpha + beta < 2):
        raise RegimeError("needs alpha, beta in (0,1) with 1 < alpha+beta < 2")
    r = rule or GradedRule()
    lhs, rhs = _semigroup_sides(alpha, beta, phi, f, x, iv, r)
    return abs(lhs - rhs)


def semigroup_defect(alpha: float, beta: float, phi: FunctionSpec, f, x: float,
                     iv: Interval) -> float:
    """Closed-form value of the composed derivative minus the single one.

    Equals ``(f'(a)/phi'(a)) (phi(x)-phi(a))^(1-alpha-beta) / G(2-alpha-beta)``,
    so the composition rule holds exactly when ``f'(a) = 0``.
    """
    f = _as_fn(f)
    k0 = float(PhiDerivative(f, phi).eval(iv.a, 0))
    V = float(phi.eval(x, 0) - phi.eval(iv.a, 0))
    return k0 * V ** (1.0 - alpha - beta) / math.gamma(2.0 - alpha - beta)


def _caputo_left_many(spec: FracSpec, g, xs: np.ndarray, rule: GradedRule) -> np.ndarray:
    a = spec.alpha
    k = PhiDerivative(g, spec.phi)
    pa = float(spec.phi.eval(spec.iv.a, 0))
    V = spec.phi.eval(xs, 0) - pa
    F = lambda tt: k.eval(invert(spec.phi, pa + (V[:, None] - tt), spec.iv), 0)  # noqa: E731
    return _weighted(F, V, -a, 0.0, rule) / math.gamma(1.0 - a)


def _caputo_right_many(spec: FracSpec, h, xs: np.ndarray, rule: GradedRule) -> np.ndarray:
    a = spec.alpha
    k = PhiDerivative(h, spec.phi)
    px = spec.phi.eval(xs, 0)
    W = float(spec.phi.eval(spec.iv.b, 0)) - px
    F = lambda tt: k.eval(invert(spec.phi, px[:, None] + tt, spec.iv), 0)  # noqa: E731
    return -_weighted(F, W, -a, 0.0, rule) / math.gamma(1.0 - a)


def int_by_parts_residual(alpha: float, phi: FunctionSpec, f, g, iv: Interval,
                          rule: GradedRule | None = None, form: str = "corrected") -> float:
    """Residual of the fractional integration-by-parts identity.

    ``form='corrected'``:
        int f D_{a+} g = int g phi' D_{b-}(f/phi') + [g I^{1-a}_{b-}(f/phi')]_a^b
    ``form='unweighted'`` drops ``phi'`` from the right-hand integral and
    subtracts the boundary bracket instead.
    """
    if not 0 < alpha < 1:
        raise RegimeError("integration by parts is checked for 0 < alpha < 1")
    if form not in ("corrected", "unweighted"):
        raise ValueError("form must be 'corrected' or 'unweighted'")
    f, g = _as_fn(f), _as_fn(g)
    rule = _rule_for(alpha, rule)
    outer_rule = GradedRule(32, _NODES, rule.ratio, rule.levels)
    left = FracSpec(alpha, phi, iv, "left")
    right = FracSpec(alpha, phi, iv, "right")
    h = PhiRatio(f, phi)
    pa, pb = float(phi.eval(iv.a, 0)), float(phi.eval(iv.b, 0))
    U = pb - pa

    def x_of(t):
        return invert(phi, pa + t, iv)

    # int_a^b f(x) D_{a+} g(x) dx = int_0^U f/phi' * D g  du
    def lhs_integrand(t):
        x = x_of(np.ravel(t))
        return (h.eval(x, 0) * _caputo_left_many(left, g, x, rule)).reshape(np.shape(t))

    lhs = _weighted(lhs_integrand, U, 0.0, 0.0, outer_rule)

    hb = float(h.eval(iv.b, 0))
    c1 = 1.0 / math.gamma(1.0 - alpha)

    def rhs_smooth(t):
        x = x_of(np.ravel(t))
        jac = phi.eval(x, 1) if form == "unweighted" else 1.0
        # in u-coordinates dx = du/phi'; the corrected form carries phi' which cancels it
        return (g.eval(x, 0) * _caputo_right_many(right, h, x, rule) / jac).reshape(np.shape(t))

    def rhs_bdry(t):
        x = x_of(np.ravel(t))
        jac = phi.eval(x, 1) if form == "unweighted" else 1.0
        return (g.eval(x, 0) / jac).reshape(np.shape(t))

    rhs = _weighted(rhs_smooth, U, 0.0, 0.0, outer_rule)
    # boundary part of the RL derivative: h(b) (phi(b)-phi(x))^(-alpha)/G(1-alpha)
    rhs += hb * c1 * _weighted(rhs_bdry, U, 0.0, -alpha, outer_rule)
    I_a = _integral_raw(FracSpec(1.0 - alpha, phi, iv, "right"), h, iv.a, rule)
    bracket = 0.0 - float(g.eval(iv.a, 0)) * I_a
    total = rhs + bracket if form == "corrected" else rhs - bracket
    return float(abs(lhs - total))


def composition_residual(spec: FracSpec, f, x: float, rule: GradedRule | None = None) -> float:
    """``|I^alpha(D^alpha f)(x) - (f(x) - f(a))|`` for the left operators."""
    if spec.side != "left":
        raise ValueError("composition check is implemented for the left operators")
    if spec.alpha >= 1.0:
        raise RegimeError("composition check needs alpha < 1")
    f = _as_fn(f)
    rule = _rule_for(spec.alpha, rule)
    pa = float(spec.phi.eval(spec.iv.a, 0))
    V = spec.span(x)

    def F(t):
        s = invert(spec.phi, pa + (V - np.ravel(t)), spec.iv)
        return _caputo_left_many(spec, f, s, rule).reshape(np.shape(t))

    val = _weighted(F, V, spec.alpha - 1.0, 0.0, rule) / math.gamma(spec.alpha)
    return abs(float(val) - (float(f.eval(x, 0)) - float(f.eval(spec.iv.a, 0))))


# }}}
