"""Time-fractional Schroedinger-type demo solved by Fourier-symbol quadrature.

    u(t, x) = int e^{i x xi} E_{alpha,1}(i S(xi) t^alpha) psi_hat(xi) dxi,
    S(xi)   = (xi^2 + mu) / (1 + ell xi^2),
    psi_hat = (1/(2 pi)) int e^{-i y xi} psi(y) dy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .functions import FunctionSpec, gaussian
from .mlf import DEFAULT_POLICY, EvalPolicy, MLOrder, euler_decompose_array
from .output import csv_text

__all__ = [
    "TfpdeParams",
    "symbol",
    "init_transform",
    "solve",
    "sup_norms",
    "dispersive_check",
    "symbol_bounds_ok",
    "SHIPPED_PARAMS",
]


def _default_x() -> tuple[float, ...]:
    return tuple(float(v) for v in np.linspace(-10.0, 10.0, 257))


def _default_t() -> tuple[float, ...]:
    return tuple(float(v) for v in np.logspace(0.0, 3.0, 13))


@dataclass(frozen=True)
class TfpdeParams:
    alpha: float
    ell: float
    mu: float
    init: FunctionSpec = field(default_factory=lambda: gaussian(0.0, 1.0))
    xi_max: float = 12.0
    x_grid: tuple[float, ...] = field(default_factory=_default_x)
    t_grid: tuple[float, ...] = field(default_factory=_default_t)
    xi_panels: int = 256
    nodes: int = 16
    fit_window: tuple[float, float] = (10.0, 1000.0)

    def __post_init__(self) -> None:
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0,1), got {self.alpha}")
        if not (self.ell > 0 and self.mu > 0):
            raise ValueError("ell and mu must be positive")
        if self.init.family != "gaussian":
            raise ValueError("only gaussian initial data (closed-form transform) is supported")
        if self.xi_max <= 0:
            raise ValueError("xi_max must be positive")
        object.__setattr__(self, "x_grid", tuple(float(v) for v in self.x_grid))
        object.__setattr__(self, "t_grid", tuple(float(v) for v in self.t_grid))
        if any(t < 0 for t in self.t_grid):
            raise ValueError("times must be nonnegative")

    @property
    def symbol_range(self) -> tuple[float, float]:
        lo, hi = self.mu, 1.0 / self.ell
        return min(lo, hi), max(lo, hi)


def symbol(params: TfpdeParams, xi):
    xi = np.asarray(xi, dtype=float)
    return (xi * xi + params.mu) / (1.0 + params.ell * xi * xi)


def init_transform(params: TfpdeParams, xi) -> np.ndarray:
    """Closed-form transform of the gaussian initial datum."""
    c, w = params.init.params[0], params.init.params[1]
    amp = params.init.amp
    xi = np.asarray(xi, dtype=float)
    return amp * w * math.sqrt(2.0 * math.pi) / (2.0 * math.pi) \
        * np.exp(-0.5 * (w * xi) ** 2) * np.exp(-1j * c * xi)


def transform_tail(params: TfpdeParams) -> float:
    """Mass of ``|psi_hat|`` outside ``[-xi_max, xi_max]``."""
    w = params.init.params[1]
    return abs(params.init.amp) * math.erfc(w * params.xi_max / math.sqrt(2.0))


def _xi_rule(params: TfpdeParams) -> tuple[np.ndarray, np.ndarray]:
    xg, wg = np.polynomial.legendre.leggauss(params.nodes)
    edges = np.linspace(-params.xi_max, params.xi_max, params.xi_panels + 1)
    h = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    xi = (mid[:, None] + h[:, None] * xg[None, :]).ravel()
    w = (h[:, None] * wg[None, :]).ravel()
    return xi, w


def symbol_bounds_ok(params: TfpdeParams, tol: float = 1e-14) -> bool:
    xi, _ = _xi_rule(params)
    s = symbol(params, xi)
    lo, hi = params.symbol_range
    return bool(np.all(s >= lo * (1 - tol)) and np.all(s <= hi * (1 + tol)))


def solve(params: TfpdeParams, t: float, policy: EvalPolicy = DEFAULT_POLICY) -> np.ndarray:
    """``u(t, x)`` on ``params.x_grid`` (complex)."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    xi, w = _xi_rule(params)
    arg = symbol(params, xi) * t ** params.alpha
    E = euler_decompose_array(MLOrder(params.alpha, 1.0), arg, policy)
    g = w * E * init_transform(params, xi)
    x = np.asarray(params.x_grid)
    return np.exp(1j * np.outer(x, xi)) @ g


def sup_norms(params: TfpdeParams, policy: EvalPolicy = DEFAULT_POLICY) -> list[tuple[float, float]]:
    return [(t, float(np.max(np.abs(solve(params, t, policy))))) for t in params.t_grid]


def sup_norm_csv(rows: list[tuple[float, float]]) -> str:
    return csv_text(["t", "sup_abs_u"], rows)


def dispersive_check(params: TfpdeParams, slope_tol: float = 0.15,
                     policy: EvalPolicy = DEFAULT_POLICY):
    """Fit ``log sup|u|`` against ``log t`` over the fit window; pass iff slope <= -alpha + tol."""
    from .verify import CaseReport, fit_points

    lo, hi = params.symbol_range
    if not lo > 0:
        raise ValueError("needs min{mu, 1/ell} > 0")
    rows = sup_norms(params, policy)
    fit = fit_points([t for t, _ in rows], [s for _, s in rows], params.fit_window, False)
    expected = -params.alpha
    env = [(1.0 + t) ** expected for t, _ in rows]
    u0 = solve(params, 0.0, policy)
    init_err = float(np.max(np.abs(u0 - params.init.eval(np.asarray(params.x_grid), 0))))
    passed = fit.slope <= expected + slope_tol
    notes = [f"u(0)-psi sup error {init_err:.3g}", f"symbol range [{lo:g}, {hi:g}]"]
    return CaseReport(
        case_id="tfpde",
        mode="slope",
        passed=passed,
        lambdas=tuple(t for t, _ in rows),
        abs_values=tuple(s for _, s in rows),
        envelope=tuple(env),
        fit=fit,
        expected_slope=expected,
        observed_M=max(s / e for (_, s), e in zip(rows, env)),
        notes=tuple(notes),
    )


SHIPPED_PARAMS: dict[str, TfpdeParams] = {
    "alpha0.5": TfpdeParams(alpha=0.5, ell=0.5, mu=2.0),
    "alpha0.8": TfpdeParams(alpha=0.8, ell=2.0, mu=1.0),
}
