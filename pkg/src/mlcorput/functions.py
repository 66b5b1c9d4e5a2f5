"""Closed-form phase and amplitude families, domain statistics, hypothesis checks."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial import hermite_e
from numpy.polynomial import polynomial as P
from scipy import optimize

from .errors import UnknownTheorem, UnsupportedDerivative
from .mlf import MLOrder

__all__ = [
    "Interval",
    "FunctionSpec",
    "affine",
    "monomial",
    "polynomial",
    "shifted_power",
    "bump",
    "gaussian",
    "constant",
    "DomainStats",
    "compute_stats",
    "HypothesisReport",
    "check_hypotheses",
    "rescale",
    "normalize_kth_derivative",
    "invert",
    "THEOREM_IDS",
    "ZERO_TOL",
]

ZERO_TOL = 1e-10
_BISECT_ITERS = 60
_FAMILIES = ("affine", "monomial", "polynomial", "shifted_power", "bump", "gaussian")


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self) -> None:
        if not self.a < self.b:
            raise ValueError(f"interval needs a < b, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.a) and math.isfinite(self.b)


# {{{ function families


def _falling(p: float, k: int) -> float:
    out = 1.0
    for j in range(k):
        out *= p - j
    return out


_BUMP_POLY_CACHE: dict[int, np.ndarray] = {0: np.array([1.0])}


def _bump_poly(k: int) -> np.ndarray:
    """Polynomial ``P_k`` with ``d^k/du^k B = P_k(u) (1-u^2)^(-2k) B``."""
    if k in _BUMP_POLY_CACHE:
        return _BUMP_POLY_CACHE[k]
    prev = _bump_poly(k - 1)
    j = k - 1
    one_minus = np.array([1.0, 0.0, -1.0])
    t1 = P.polymul(P.polyder(prev), P.polymul(one_minus, one_minus))
    t2 = P.polymul(np.array([0.0, 4.0 * j]), P.polymul(prev, one_minus))
    t3 = P.polymul(np.array([0.0, -2.0]), prev)
    out = P.polyadd(P.polyadd(t1, t2), t3)
    _BUMP_POLY_CACHE[k] = out
    return out


@dataclass(frozen=True)
class FunctionSpec:
    """A phase or amplitude drawn from a closed-form family.

    Families and parameters:

    ``affine``         ``(c0, c1)``: ``c0 + c1 x``
    ``monomial``       ``(c, k)``: ``c x**k`` with integer ``k >= 0``
    ``polynomial``     ``(c0, c1, ...)``: ascending coefficients
    ``shifted_power``  ``(c, p, shift)``: ``c (x - shift)**p`` for ``x >= shift``
    ``bump``           ``(center, half_width[, amp])``: ``amp exp(1 - 1/(1-u^2))``,
                       ``u = (x - center)/half_width``, zero for ``|u| >= 1``
    ``gaussian``       ``(center, width[, amp])``: ``amp exp(-u^2/2)``
    """

    family: str
    params: tuple[float, ...]
    role: str = "phase"

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown function family {self.family!r}")
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        n = len(params)
        fam = self.family
        if fam in ("affine", "monomial") and n != 2:
            raise ValueError(f"{fam} takes 2 parameters, got {n}")
        if fam == "monomial" and (params[1] < 0 or params[1] != int(params[1])):
            raise ValueError("monomial power must be a nonnegative integer")
        if fam == "polynomial" and n == 0:
            raise ValueError("polynomial needs at least one coefficient")
        if fam == "shifted_power" and n != 3:
            raise ValueError("shifted_power takes (c, exponent, shift)")
        if fam in ("bump", "gaussian"):
            if n not in (2, 3):
                raise ValueError(f"{fam} takes (center, width[, amp])")
            if not params[1] > 0:
                raise ValueError(f"{fam} width must be positive")
        if self.role not in ("phase", "amplitude"):
            raise ValueError(f"role must be 'phase' or 'amplitude', got {self.role!r}")

    # {{{ evaluation

    @property
    def poly_coeffs(self) -> np.ndarray | None:
        fam, p = self.family, self.params
        if fam == "affine":
            return np.array(p)
        if fam == "monomial":
            c = np.zeros(int(p[1]) + 1)
            c[-1] = p[0]
            return c
        if fam == "polynomial":
            return np.array(p)
        return None

    @property
    def max_deriv(self) -> int:
        return 64

    @property
    def amp(self) -> float:
        return self.params[2] if len(self.params) == 3 else 1.0

    def eval(self, x, deriv: int = 0):
        """Exact value of the ``deriv``-th derivative at ``x`` (scalar or array)."""
        if deriv < 0 or deriv > self.max_deriv:
            raise UnsupportedDerivative(
                f"{self.family} supports derivatives up to order {self.max_deriv}")
        scalar = np.ndim(x) == 0
        xa = np.asarray(x, dtype=float)
        out = self._eval(xa, int(deriv))
        return float(out) if scalar else out

    def _eval(self, x: np.ndarray, k: int) -> np.ndarray:
        fam, p = self.family, self.params
        c = self.poly_coeffs
        if c is not None:
            d = P.polyder(c, k) if k > 0 else c
            if d.size == 0:
                return np.zeros_like(x)
            return P.polyval(x, d)
        if fam == "shifted_power":
            cc, e, sh = p
            u = np.maximum(x - sh, 0.0)
            with np.errstate(divide="ignore", invalid="ignore"):
                out = cc * _falling(e, k) * u ** (e - k)
            if e == int(e) and k > e:
                out = np.zeros_like(x)
            return out
        if fam == "bump":
            cen, w = p[0], p[1]
            u = (x - cen) / w
            inside = np.abs(u) < 1.0
            out = np.zeros_like(x)
            ui = u[inside]
            q = 1.0 - ui * ui
            base = np.exp(1.0 - 1.0 / q)
            if k == 0:
                out[inside] = self.amp * base
            else:
                out[inside] = self.amp * P.polyval(ui, _bump_poly(k)) * q ** (-2.0 * k) \
                    * base / w ** k
            return out
        if fam == "gaussian":
            cen, w = p[0], p[1]
            u = (x - cen) / w
            coef = np.zeros(k + 1)
            coef[k] = 1.0
            return self.amp * (-1.0) ** k * hermite_e.hermeval(u, coef) \
                * np.exp(-0.5 * u * u) / w ** k
        raise AssertionError(fam)

    def __call__(self, x):
        return self.eval(x, 0)

    # }}}

    def scaled(self, factor: float) -> FunctionSpec:
        """Return ``factor * self`` in the same family."""
        fam, p = self.family, self.params
        if fam == "affine":
            return FunctionSpec(fam, (p[0] * factor, p[1] * factor), self.role)
        if fam == "monomial":
            return FunctionSpec(fam, (p[0] * factor, p[1]), self.role)
        if fam == "polynomial":
            return FunctionSpec(fam, tuple(c * factor for c in p), self.role)
        if fam == "shifted_power":
            return FunctionSpec(fam, (p[0] * factor, p[1], p[2]), self.role)
        return FunctionSpec(fam, (p[0], p[1], self.amp * factor), self.role)

    def integral(self, a: float, b: float) -> float:
        """Exact ``int_a^b f`` for the polynomial families."""
        c = self.poly_coeffs
        if c is not None:
            ci = P.polyint(c)
            return float(P.polyval(b, ci) - P.polyval(a, ci))
        if self.family == "shifted_power":
            cc, e, sh = self.params
            if a < sh:
                raise ValueError("shifted_power integral needs a >= shift")
            return cc * ((b - sh) ** (e + 1) - (a - sh) ** (e + 1)) / (e + 1)
        raise UnsupportedDerivative(f"no closed-form integral for {self.family}")

    # {{{ serialization

    def __str__(self) -> str:
        return f"{self.family}({', '.join(repr(v) for v in self.params)})"

    @classmethod
    def parse(cls, text: str, role: str = "phase") -> FunctionSpec:
        """Parse ``family(p1, p2, ...)`` as produced by ``str``."""
        m = re.fullmatch(r"\s*([a-z_]+)\s*\((.*)\)\s*", text)
        if m is None:
            raise ValueError(f"cannot parse function spec {text!r}")
        name = m.group(1).replace("-", "_")
        body = m.group(2).strip()
        vals = tuple(float(v) for v in body.split(",")) if body else ()
        return cls(name, vals, role)

    # }}}


def affine(c0: float, c1: float, role: str = "phase") -> FunctionSpec:
    return FunctionSpec("affine", (c0, c1), role)


def constant(c: float = 1.0, role: str = "amplitude") -> FunctionSpec:
    return FunctionSpec("affine", (c, 0.0), role)


def monomial(c: float, k: int, role: str = "phase") -> FunctionSpec:
    return FunctionSpec("monomial", (c, k), role)


def polynomial(coeffs: Sequence[float], role: str = "phase") -> FunctionSpec:
    return FunctionSpec("polynomial", tuple(coeffs), role)


def shifted_power(c: float, exponent: float, shift: float, role: str = "phase") -> FunctionSpec:
    return FunctionSpec("shifted_power", (c, exponent, shift), role)


def bump(center: float, half_width: float, amp: float = 1.0,
         role: str = "amplitude") -> FunctionSpec:
    return FunctionSpec("bump", (center, half_width, amp), role)


def gaussian(center: float, width: float, amp: float = 1.0,
             role: str = "amplitude") -> FunctionSpec:
    return FunctionSpec("gaussian", (center, width, amp), role)


def rescale(phase: FunctionSpec, lam: float, c: float) -> tuple[FunctionSpec, float]:
    """``(phi, lam) -> (phi/c, c lam)``; the integrand is unchanged."""
    if not c > 0:
        raise ValueError("rescaling constant must be positive")
    return phase.scaled(1.0 / c), c * lam


def normalize_kth_derivative(phase: FunctionSpec, iv: Interval, k: int,
                             lam: float = 1.0, grid_n: int = 256) -> tuple[FunctionSpec, float]:
    """Rescale so that ``min |phi^(k)| = 1`` on ``iv``."""
    xs = np.linspace(iv.a, iv.b, grid_n + 1)
    c = float(np.min(np.abs(phase.eval(xs, k))))
    if c == 0:
        raise ValueError(f"phi^({k}) vanishes on the interval; cannot normalize")
    return rescale(phase, lam, c)


def invert(phase: FunctionSpec, y, iv: Interval, tol: float = 1e-14):
    """Solve ``phase(x) = y`` for ``x`` in ``iv`` (``phase`` strictly increasing).

    Closed form for affine and shifted-power phases, bracketed Newton with
    bisection safeguard otherwise.
    """
    scalar = np.ndim(y) == 0
    y = np.asarray(y, dtype=float)
    fam, p = phase.family, phase.params
    if fam == "affine" and p[1] != 0:
        x = (y - p[0]) / p[1]
    elif fam == "shifted_power" and p[0] > 0 and p[1] > 0:
        x = p[2] + np.maximum(y / p[0], 0.0) ** (1.0 / p[1])
    else:
        lo = np.full_like(y, iv.a)
        hi = np.full_like(y, iv.b)
        x = 0.5 * (lo + hi)
        for _ in range(200):
            f = phase.eval(x, 0) - y
            lo = np.where(f < 0, x, lo)
            hi = np.where(f >= 0, x, hi)
            d = phase.eval(x, 1)
            with np.errstate(divide="ignore", invalid="ignore"):
                xn = x - f / d
            bad = ~np.isfinite(xn) | (xn <= lo) | (xn >= hi)
            xn = np.where(bad, 0.5 * (lo + hi), xn)
            if np.all(np.abs(xn - x) <= tol * (1.0 + np.abs(x))):
                x = xn
                break
            x = xn
    x = np.clip(x, iv.a, iv.b)
    return float(x) if scalar else x


# }}}


# {{{ domain statistics


@dataclass(frozen=True)
class DomainStats:
    inf_abs_phase: float
    sup_abs_phase: float
    inf_abs_phase_deriv: float
    inf_abs_amp: float
    sup_abs_amp: float
    amp_L1: float
    zeros_of_phase: tuple[float, ...]
    phase_deriv_monotonic: bool
    kth_deriv_min: tuple[float, ...]
    amp_at_a: float
    amp_at_b: float
    amp_deriv_L1: float
    sup_abs_ratio_deriv: float
    ratio_at_a: float
    ratio_at_b: float
    phase_range: float
    residuals: dict = field(default_factory=dict, compare=False)

    def min_abs_kth_deriv(self, k: int) -> float:
        """``inf |phi^(k)|`` over the interval (``k = 0`` is ``inf |phi|``)."""
        if k >= len(self.kth_deriv_min):
            raise IndexError(f"statistics were computed up to k={len(self.kth_deriv_min) - 1}")
        return self.kth_deriv_min[k]


def _golden_min(f, a: float, m: float, b: float) -> tuple[float, float]:
    res = optimize.minimize_scalar(f, bracket=(a, m, b), method="golden",
                                   options={"xtol": 1e-12})
    x = float(np.clip(res.x, a, b))
    return x, float(f(x))


def _extremum(f, xs: np.ndarray, kind: str) -> tuple[float, float]:
    """Global min (kind='min') or max of ``f`` sampled on ``xs`` then refined."""
    sgn = 1.0 if kind == "min" else -1.0
    g = lambda t: sgn * float(f(t))  # noqa: E731
    vals = sgn * np.asarray(f(xs), dtype=float)
    i = int(np.argmin(vals))
    best_x, best_v = float(xs[i]), float(vals[i])
    if 0 < i < len(xs) - 1:
        try:
            x, v = _golden_min(g, float(xs[i - 1]), float(xs[i]), float(xs[i + 1]))
            if v < best_v:
                best_x, best_v = x, v
        except (ValueError, RuntimeError):
            pass
    return best_x, sgn * best_v


def _bisect(f, lo: float, hi: float) -> float:
    flo = f(lo)
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _find_zeros(fn: FunctionSpec, xs: np.ndarray, zero_tol: float) -> list[float]:
    f = lambda t: float(fn.eval(t, 0))  # noqa: E731
    v = fn.eval(xs, 0)
    zeros: list[float] = []
    for i in range(len(xs)):
        if abs(v[i]) <= zero_tol:
            zeros.append(float(xs[i]))
    for i in range(len(xs) - 1):
        if v[i] * v[i + 1] < 0 and abs(v[i]) > zero_tol and abs(v[i + 1]) > zero_tol:
            zeros.append(_bisect(f, float(xs[i]), float(xs[i + 1])))
    # touching zeros: local minima of |f| that reach zero_tol
    a = np.abs(v)
    for i in range(1, len(xs) - 1):
        if a[i] <= a[i - 1] and a[i] <= a[i + 1] and a[i] > zero_tol:
            try:
                x, val = _golden_min(lambda t: abs(f(t)), float(xs[i - 1]),
                                     float(xs[i]), float(xs[i + 1]))
            except (ValueError, RuntimeError):
                continue
            if val <= zero_tol:
                zeros.append(x)
    zeros.sort()
    out: list[float] = []
    for z in zeros:
        if not out or abs(z - out[-1]) > 1e-8:
            out.append(z)
    return out


def _gl_integral(f, a: float, b: float, breaks: Sequence[float], n: int = 20,
                 panels: int = 64) -> float:
    pts = sorted({a, b, *[c for c in breaks if a < c < b]})
    xg, wg = np.polynomial.legendre.leggauss(n)
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        edges = np.linspace(lo, hi, panels + 1)
        h = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        x = (mid[:, None] + h[:, None] * xg[None, :]).ravel()
        w = (h[:, None] * wg[None, :]).ravel()
        total += float(np.sum(w * f(x)))
    return total


def compute_stats(phase: FunctionSpec, amp: FunctionSpec, iv: Interval,
                  grid_n: int = 256, kmax: int = 4,
                  zero_tol: float = ZERO_TOL) -> DomainStats:
    """Extrema, zeros and norms of ``phase`` and ``amp`` on a finite interval.

    Dense sampling on ``grid_n + 1`` points, golden-section refinement of
    extrema, bisection of sign changes.
    """
    if grid_n < 64:
        raise ValueError("grid_n must be at least 64")
    if not iv.is_finite:
        raise ValueError("statistics need a finite interval")
    xs = np.linspace(iv.a, iv.b, grid_n + 1)
    resid: dict = {}

    zeros = _find_zeros(phase, xs, zero_tol)
    absphi = lambda t: np.abs(phase.eval(t, 0))  # noqa: E731
    _, inf_phi = _extremum(absphi, xs, "min")
    if zeros:
        resid["phase_at_zeros"] = max(abs(phase.eval(z, 0)) for z in zeros)
        inf_phi = 0.0
    _, sup_phi = _extremum(absphi, xs, "max")
    _, phi_min = _extremum(lambda t: phase.eval(t, 0), xs, "min")
    _, phi_max = _extremum(lambda t: phase.eval(t, 0), xs, "max")

    kmins = []
    for k in range(kmax + 1):
        dk = lambda t, k=k: np.abs(phase.eval(t, k))  # noqa: E731
        sign_change = np.any(np.diff(np.sign(phase.eval(xs, k))) != 0) if k > 0 else bool(zeros)
        _, vmin = _extremum(dk, xs, "min")
        kmins.append(0.0 if sign_change else vmin)

    d2 = phase.eval(xs, 2)
    monotone = bool(np.all(d2 >= -1e-12) or np.all(d2 <= 1e-12))

    absamp = lambda t: np.abs(amp.eval(t, 0))  # noqa: E731
    _, inf_amp = _extremum(absamp, xs, "min")
    amp_vals = amp.eval(xs, 0)
    if np.any(np.diff(np.sign(amp_vals)) != 0):
        inf_amp = 0.0
    _, sup_amp = _extremum(absamp, xs, "max")
    amp_zeros = _find_zeros(amp, xs, zero_tol)
    amp_L1 = _gl_integral(absamp, iv.a, iv.b, amp_zeros)
    damp_zeros = _find_zeros(FunctionSpecDeriv(amp, 1), xs, zero_tol) \
        if amp.family not in ("bump",) else []
    amp_deriv_L1 = _gl_integral(lambda t: np.abs(amp.eval(t, 1)), iv.a, iv.b, damp_zeros)

    def ratio_deriv(t):
        d1 = phase.eval(t, 1)
        return (amp.eval(t, 1) * d1 - amp.eval(t, 0) * phase.eval(t, 2)) / (d1 * d1)

    if kmins[1] > 0:
        _, sup_rd = _extremum(lambda t: np.abs(ratio_deriv(t)), xs, "max")
        ra = float(amp.eval(iv.a, 0) / phase.eval(iv.a, 1))
        rb = float(amp.eval(iv.b, 0) / phase.eval(iv.b, 1))
    else:
        sup_rd, ra, rb = math.inf, math.inf, math.inf

    return DomainStats(
        inf_abs_phase=float(inf_phi),
        sup_abs_phase=float(sup_phi),
        inf_abs_phase_deriv=float(kmins[1]),
        inf_abs_amp=float(inf_amp),
        sup_abs_amp=float(sup_amp),
        amp_L1=float(amp_L1),
        zeros_of_phase=tuple(zeros),
        phase_deriv_monotonic=monotone,
        kth_deriv_min=tuple(float(v) for v in kmins),
        amp_at_a=float(amp.eval(iv.a, 0)),
        amp_at_b=float(amp.eval(iv.b, 0)),
        amp_deriv_L1=float(amp_deriv_L1),
        sup_abs_ratio_deriv=float(sup_rd),
        ratio_at_a=ra,
        ratio_at_b=rb,
        phase_range=float(phi_max - phi_min),
        residuals=resid,
    )


class FunctionSpecDeriv:
    """Derivative view of a family member, usable where ``eval`` is expected."""

    def __init__(self, fn: FunctionSpec, order: int) -> None:
        self.fn = fn
        self.order = order

    def eval(self, x, deriv: int = 0):
        return self.fn.eval(x, deriv + self.order)


# }}}


# {{{ hypothesis checks


THEOREM_IDS: tuple[str, ...] = (
    "th1", "th1.2", "th1.3i", "th1.3ii", "th1.3+i", "th1.3+ii", "th1.3+iii",
    "th2", "th2.1", "cor2.1", "thm2-3", "cor2.2", "nonstat", "th4.1", "th4.2",
    "rl-lemma", "tfpde",
)


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    passed: bool
    measured: str


@dataclass(frozen=True)
class HypothesisReport:
    theorem_id: str
    checks: tuple[HypothesisCheck, ...]
    k: int | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[HypothesisCheck]:
        return [c for c in self.checks if not c.passed]

    def __str__(self) -> str:
        lines = [f"{self.theorem_id}: {'pass' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'ok' if c.passed else '!!'}] {c.name}: {c.measured}")
        return "\n".join(lines)


def _smallest_k(stats: DomainStats, kmax: int) -> int | None:
    for k in range(2, kmax + 1):
        if stats.kth_deriv_min[k] >= 1.0 - 1e-12:
            return k
    return None


def check_hypotheses(theorem_id: str, phase: FunctionSpec, amp: FunctionSpec,
                     iv: Interval, order: MLOrder, *, n_nonstat: int = 2,
                     variant: str = "default", grid_n: int = 256,
                     stats: DomainStats | None = None) -> HypothesisReport:
    """Mechanical check of one estimate's hypotheses.

    ``variant='m1_zero'`` selects the lower bounds that need a vanishing
    phase (the companion checks of the explicit-envelope cases).
    """
    if theorem_id not in THEOREM_IDS:
        raise UnknownTheorem(theorem_id)
    a, b = order.alpha, order.beta
    if stats is None:
        stats = compute_stats(phase, amp, iv, grid_n=grid_n, kmax=5)
    checks: list[HypothesisCheck] = []

    def add(name: str, ok: bool, measured: str) -> None:
        checks.append(HypothesisCheck(name, bool(ok), measured))

    m = stats.inf_abs_phase
    dmin = stats.inf_abs_phase_deriv
    nz = len(stats.zeros_of_phase)
    amp_is_one = amp.family == "affine" and amp.params == (1.0, 0.0)
    k_found = None

    if theorem_id in ("th1", "th1.2", "th2.1", "cor2.1", "rl-lemma"):
        if theorem_id == "rl-lemma":
            ok = (0 < a < 1 and b > 0) or (a == 1 and b > 1)
            add("0<alpha<1, beta>0 or alpha=1, beta>1", ok, f"alpha={a}, beta={b}")
        else:
            add("0<alpha<1", 0 < a < 1, f"alpha={a}")
            add("beta>0", b > 0, f"beta={b}")
    if theorem_id in ("th1.3i", "th1.3ii", "th1.3+i", "th1.3+ii", "th1.3+iii",
                      "thm2-3", "cor2.2"):
        add("0<alpha<1", 0 < a < 1, f"alpha={a}")
        add("beta=alpha", b == a, f"beta={b}")

    if theorem_id == "th1":
        add("m=inf|phi|>0", m > 0, f"m={m:.6g}")
    elif theorem_id == "th1.2":
        add("phi monotonic (phi' keeps sign)", dmin > 0, f"inf|phi'|={dmin:.6g}")
        add("m=inf|phi'|>0", dmin > 0, f"inf|phi'|={dmin:.6g}")
        add("finitely many zeros", nz < 64, f"zeros={list(stats.zeros_of_phase)}")
    elif theorem_id in ("th1.3i", "th1.3ii"):
        add("phi' monotonic", stats.phase_deriv_monotonic, "sign of phi'' constant")
        d1 = min(float(np.min(phase.eval(np.linspace(iv.a, iv.b, grid_n + 1), 1))), math.inf)
        add("phi'>=1", d1 >= 1.0 - 1e-12, f"min phi'={d1:.6g}")
        if theorem_id == "th1.3ii":
            add("m=inf|phi|>0", m > 0, f"m={m:.6g}")
    elif theorem_id in ("th1.3+i", "th1.3+ii", "th1.3+iii"):
        add("phi'!=0", dmin > 0, f"inf|phi'|={dmin:.6g}")
        if theorem_id == "th1.3+ii":
            ok = abs(stats.amp_at_a) <= ZERO_TOL and abs(stats.amp_at_b) <= ZERO_TOL
            add("psi(a)=psi(b)=0", ok, f"psi(a)={stats.amp_at_a:.3g}, psi(b)={stats.amp_at_b:.3g}")
        if theorem_id == "th1.3+iii":
            add("phi!=0", m > 0, f"m={m:.6g}")
    elif theorem_id == "th2":
        add("alpha=1", a == 1.0, f"alpha={a}")
        add("beta>1", b > 1, f"beta={b}")
        add("m=inf|phi|>0", m > 0, f"m={m:.6g}")
    elif theorem_id in ("th2.1", "cor2.1", "thm2-3", "cor2.2"):
        k_found = _smallest_k(stats, len(stats.kth_deriv_min) - 1)
        add("|phi^(k)|>=1 for some k>=2", k_found is not None,
            "k=" + (str(k_found) if k_found else "none") + ", mins="
            + ", ".join(f"{v:.3g}" for v in stats.kth_deriv_min[2:]))
        if theorem_id in ("th2.1", "cor2.1"):
            add("finitely many zeros", nz < 64, f"zeros={len(stats.zeros_of_phase)}")
        if theorem_id in ("th2.1", "thm2-3"):
            add("psi=1", amp_is_one, str(amp))
    elif theorem_id == "nonstat":
        N = n_nonstat
        add("beta=1", b == 1.0, f"beta={b}")
        add("N-1<N alpha<N", N - 1 < N * a < N, f"N={N}, N alpha={N * a:.6g}")
        xs = np.linspace(iv.a, iv.b, grid_n + 1)
        add("phi increasing, phi'!=0", float(np.min(phase.eval(xs, 1))) > 0,
            f"min phi'={float(np.min(phase.eval(xs, 1))):.6g}")
        worst = max(max(abs(amp.eval(iv.a, k)), abs(amp.eval(iv.b, k))) for k in range(N))
        add("psi^(k)(a)=psi^(k)(b)=0, k<N", worst <= ZERO_TOL, f"max endpoint |psi^(k)|={worst:.3g}")
    elif theorem_id in ("th4.1", "th4.2"):
        if theorem_id == "th4.1":
            add("0<alpha<=1/2", 0 < a <= 0.5, f"alpha={a}")
            add("beta>2 alpha", b > 2 * a, f"beta={b}")
        else:
            add("0<alpha<1/2", 0 < a < 0.5, f"alpha={a}")
            add("beta=2 alpha", abs(b - 2 * a) <= 1e-14, f"beta={b}")
        add("finite interval", iv.is_finite, f"[{iv.a}, {iv.b}]")
        add("m2=inf|psi|>0", stats.inf_abs_amp > 0, f"m2={stats.inf_abs_amp:.6g}")
        if variant == "m1_zero":
            add("m1=inf|phi|=0", m == 0.0, f"m1={m:.6g}")
        else:
            add("m1=inf|phi|>0", m > 0, f"m1={m:.6g}")
        add("psi real, one sign; phi one sign",
            stats.inf_abs_amp > 0 and (variant == "m1_zero" or m > 0),
            "needed for the pointwise lower bounds")
    elif theorem_id == "tfpde":
        add("0<alpha<1", 0 < a < 1, f"alpha={a}")
        add("beta=1", b == 1.0, f"beta={b}")
    return HypothesisReport(theorem_id, tuple(checks), k_found)


# }}}
