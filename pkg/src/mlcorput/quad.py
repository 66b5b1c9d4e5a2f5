"""Composite Gauss-Legendre quadrature for oscillatory Mittag-Leffler integrals.

``direct``:        I(lam)  = int_a^b E_{a,b}(i lam phi(x)) psi(x) dx
``shifted_power``: I~(lam) = int_a^b E_{a,b}(i lam (phi(x)-phi(a))^alpha) psi(x) dx
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import MLError, ToleranceNotMet
from .functions import FunctionSpec, Interval, invert
from .mlf import DEFAULT_POLICY, EvalPolicy, MLOrder, euler_decompose_array, recip_gamma

__all__ = [
    "IntegralSpec",
    "QuadPolicy",
    "QuadResult",
    "SweepRow",
    "SweepTable",
    "compute_integral",
    "oracle_integral",
    "sweep",
    "log_grid",
    "zero_lambda_value",
    "panel_count",
]

_CHUNK = 1 << 17
# geometric grading of the first panel for the shifted variant
_GRADE_RATIO = 0.15
_GRADE_LEVELS = 40


@dataclass(frozen=True)
class IntegralSpec:
    order: MLOrder
    iv: Interval
    phase: FunctionSpec
    amp: FunctionSpec
    variant: str = "direct"

    def __post_init__(self) -> None:
        if self.variant not in ("direct", "shifted_power"):
            raise ValueError(f"variant must be 'direct' or 'shifted_power', got {self.variant!r}")
        if not self.iv.is_finite:
            raise ValueError("quadrature needs a finite interval")
        if self.order.alpha > 1:
            raise ValueError("integrand evaluation via the Euler decomposition needs alpha <= 1")
        if self.variant == "shifted_power":
            xs = np.linspace(self.iv.a, self.iv.b, 513)[1:]
            if np.any(self.phase.eval(xs, 1) <= 0):
                raise ValueError("shifted_power variant needs phi increasing on the interval")

    def phase_values(self, x: np.ndarray) -> np.ndarray:
        """The real argument multiplying ``i lam`` in the integrand."""
        phi = self.phase.eval(x, 0)
        if self.variant == "direct":
            return phi
        d = np.maximum(phi - float(self.phase.eval(self.iv.a, 0)), 0.0)
        return d ** self.order.alpha

    def phase_range(self, n: int = 1025) -> float:
        if self.variant == "shifted_power":
            return float(self.phase_values(np.array([self.iv.b]))[0])
        xs = np.linspace(self.iv.a, self.iv.b, n)
        v = self.phase.eval(xs, 0)
        return float(np.max(v) - np.min(v))

    def integrand(self, x: np.ndarray, lam: float,
                  ml_policy: EvalPolicy = DEFAULT_POLICY) -> np.ndarray:
        t = lam * self.phase_values(x)
        return euler_decompose_array(self.order, t, ml_policy) * self.amp.eval(x, 0)


@dataclass(frozen=True)
class QuadPolicy:
    nodes_per_panel: int = 16
    panels_per_unit_phase: float = 4.0
    abs_tol: float = 1e-9
    max_panels: int = 200_000
    ml_policy: EvalPolicy = DEFAULT_POLICY

    def __post_init__(self) -> None:
        if self.nodes_per_panel < 8:
            raise ValueError("nodes_per_panel must be at least 8")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.panels_per_unit_phase <= 0 or self.max_panels < 4:
            raise ValueError("invalid panel settings")


@dataclass(frozen=True)
class QuadResult:
    """Value at the doubled panel count; ``err_est`` is the change from the base count."""

    value: complex
    err_est: float
    panels_used: int


def _breakpoints(spec: IntegralSpec, n: int) -> np.ndarray:
    a, b = spec.iv.a, spec.iv.b
    if spec.variant == "direct":
        return np.linspace(a, b, n + 1)
    # panels uniform in the oscillation variable u=(phi-phi(a))^alpha
    phia = float(spec.phase.eval(a, 0))
    U = spec.phase_range()
    u = np.linspace(0.0, U, n + 1)
    x = invert(spec.phase, phia + u ** (1.0 / spec.order.alpha), spec.iv)
    x[0], x[-1] = a, b
    x = np.maximum.accumulate(x)
    first = a + (x[1] - a) * _GRADE_RATIO ** np.arange(_GRADE_LEVELS, 0, -1)
    return np.concatenate([[a], first, x[1:]])


def _gl_sum(spec: IntegralSpec, edges: np.ndarray, lam: float, policy: QuadPolicy) -> complex:
    xg, wg = np.polynomial.legendre.leggauss(policy.nodes_per_panel)
    h = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    keep = h > 0
    h, mid = h[keep], mid[keep]
    npan = len(h)
    per = max(1, _CHUNK // policy.nodes_per_panel)
    total = 0.0 + 0.0j
    for s in range(0, npan, per):
        hh = h[s:s + per, None]
        x = (mid[s:s + per, None] + hh * xg[None, :]).ravel()
        w = (hh * wg[None, :]).ravel()
        total += complex(np.sum(w * spec.integrand(x, lam, policy.ml_policy)))
    return total


def _amp_floor(spec: IntegralSpec) -> int:
    # localized amplitudes need panels on their own length scale
    if spec.amp.family in ("bump", "gaussian"):
        return math.ceil(8.0 * spec.iv.length / spec.amp.params[1])
    return 4


def panel_count(spec: IntegralSpec, lam: float, policy: QuadPolicy) -> int:
    n = math.ceil(policy.panels_per_unit_phase * lam * spec.phase_range())
    return int(min(max(4, _amp_floor(spec), n), policy.max_panels))


def compute_integral(spec: IntegralSpec, lam: float,
                     policy: QuadPolicy = QuadPolicy()) -> QuadResult:
    """Integrate at the rule's panel count and at twice that; compare.

    Raises ToleranceNotMet (carrying the result) when the two disagree by
    more than ``abs_tol``.
    """
    if lam < 0 or not math.isfinite(lam):
        raise ValueError("lambda must be finite and nonnegative")
    n = panel_count(spec, lam, policy)
    q1 = _gl_sum(spec, _breakpoints(spec, n), lam, policy)
    q2 = _gl_sum(spec, _breakpoints(spec, 2 * n), lam, policy)
    err = abs(q2 - q1)
    res = QuadResult(q2, float(err), 2 * n)
    if not np.isfinite(q2.real) or not np.isfinite(q2.imag):
        raise MLError(f"non-finite integral at lambda={lam}")
    if err > policy.abs_tol:
        raise ToleranceNotMet(
            f"err_est {err:.3g} exceeds abs_tol {policy.abs_tol:.3g} at lambda={lam}", res)
    return res


def oracle_integral(spec: IntegralSpec, lam: float,
                    ml_policy: EvalPolicy = DEFAULT_POLICY) -> complex:
    """Composite trapezoid with one Richardson step (independent of the panel rule).

    The shifted variant is first mapped by ``x = a + L tau^m`` with ``m alpha >= 4``
    so that the endpoint singularity is pushed past the Richardson order.
    """
    a, b = spec.iv.a, spec.iv.b
    L = b - a
    xs = np.linspace(a, b, 2049)
    dphi = float(np.max(np.abs(spec.phase.eval(xs, 1))))
    if spec.variant == "direct":
        m = 1
        stretch = dphi * L
    else:
        m = max(1, math.ceil(4.0 / spec.order.alpha))
        stretch = m * float(spec.phase_values(np.array([b]))[0]) / spec.order.alpha
    n = int(max(16 * lam * L + 4096, 64 * lam * stretch + 4096))
    n += n % 2

    def g(tau: np.ndarray) -> np.ndarray:
        if m == 1:
            return spec.integrand(a + L * tau, lam, ml_policy) * L
        x = a + L * tau ** m
        return spec.integrand(x, lam, ml_policy) * (L * m * tau ** (m - 1))

    def trap(npts: int) -> complex:
        tot = 0.0 + 0.0j
        h = 1.0 / npts
        for s in range(0, npts + 1, _CHUNK):
            idx = np.arange(s, min(npts + 1, s + _CHUNK))
            w = np.where((idx == 0) | (idx == npts), 0.5, 1.0)
            tot += complex(np.sum(w * g(idx * h)))
        return tot * h

    t_fine, t_coarse = trap(n), trap(n // 2)
    return (4.0 * t_fine - t_coarse) / 3.0


def zero_lambda_value(spec: IntegralSpec) -> float:
    """``(1/Gamma(beta)) int psi`` computed analytically where possible."""
    return recip_gamma(spec.order.beta) * spec.amp.integral(spec.iv.a, spec.iv.b)


# {{{ sweeps


@dataclass(frozen=True)
class SweepRow:
    lam: float
    value: complex
    err_est: float
    error: str | None = None

    @property
    def abs(self) -> float:
        return abs(self.value)


@dataclass
class SweepTable:
    rows: list[SweepRow] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([r.lam for r in self.rows])

    @property
    def abs_values(self) -> np.ndarray:
        return np.array([r.abs for r in self.rows])

    @property
    def failures(self) -> list[SweepRow]:
        return [r for r in self.rows if r.error is not None]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda", "re", "im", "abs", "err_est"])
        for r in self.rows:
            w.writerow([repr(float(r.lam)), repr(r.value.real), repr(r.value.imag),
                        repr(r.abs), repr(r.err_est)])
        return buf.getvalue()


def sweep(spec: IntegralSpec, lam_grid: Sequence[float],
          policy: QuadPolicy = QuadPolicy()) -> SweepTable:
    """One row per grid value; failures are recorded and the sweep continues."""
    grid = [float(v) for v in lam_grid]
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("lambda grid must be sorted ascending")
    rows = []
    for lam in grid:
        try:
            r = compute_integral(spec, lam, policy)
            rows.append(SweepRow(lam, r.value, r.err_est))
        except ToleranceNotMet as e:
            r = e.result
            rows.append(SweepRow(lam, r.value, r.err_est, str(e)))
        except (MLError, ValueError) as e:
            rows.append(SweepRow(lam, complex(math.nan, math.nan), math.nan,
                                 f"{type(e).__name__}: {e}"))
    return SweepTable(rows)


def log_grid(lo: float, hi: float, n: int) -> list[float]:
    """``n`` log-spaced points from ``lo`` to ``hi`` inclusive."""
    if n == 1:
        return [float(lo)]
    pts = [min(max(float(v), lo), hi) for v in np.logspace(math.log10(lo), math.log10(hi), n)]
    pts[0], pts[-1] = float(lo), float(hi)
    return pts


def iter_rows(table: SweepTable) -> Iterable[tuple[float, float]]:
    for r in table.rows:
        yield r.lam, r.abs


# }}}
