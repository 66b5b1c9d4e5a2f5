"""Two-parameter Mittag-Leffler function on the imaginary and negative real axes.

The function is

    E_{a,b}(z) = sum_{k>=0} z**k / Gamma(a*k + b).

Three backends are combined:

* a wide-precision power series (mpmath) with adaptive working precision,
* exact closed forms for the classical parameter pairs,
* the large-argument expansion on the negative real axis for ``0 < a <= 2``.

Imaginary-axis values are reduced to the negative real axis by the
fractional Euler decomposition

    E_{a,b}(i t) = E_{2a,b}(-t**2) + i t E_{2a,a+b}(-t**2).

The switch between series and expansion is made in the scaled variable
``s = x**(1/a)``: the peak series term is about ``exp(s)`` and the expansion
error about ``exp(-s)``, so both depend on ``s`` only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import mpmath as mp
import numpy as np
from scipy import fft, special

from .errors import DegenerateInput, NoConvergence, RegimeError, UnsupportedRegion

__all__ = [
    "MLOrder",
    "EvalPolicy",
    "MLValue",
    "DEFAULT_POLICY",
    "recip_gamma",
    "ml_series",
    "ml_closed_form",
    "ml_neg_real",
    "ml_neg_real_array",
    "euler_decompose",
    "euler_decompose_array",
    "ml_eval",
    "ml_eval_detailed",
    "ml_real_bounds",
    "sector_bound_ratio",
    "ml_derivative_identity_residual",
    "overlap_discrepancy",
    "CLOSED_FORM_CASES",
]

_LN10 = math.log(10.0)


# {{{ parameter types


@dataclass(frozen=True)
class MLOrder:
    """Parameter pair ``(alpha, beta)`` of :math:`E_{\\alpha,\\beta}`."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        a, b = float(self.alpha), float(self.beta)
        if not (math.isfinite(a) and a > 0):
            raise RegimeError(f"alpha must be positive and finite: {self.alpha!r}")
        if not math.isfinite(b):
            raise RegimeError(f"beta must be finite: {self.beta!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def is_corput_regime(self) -> bool:
        """Imaginary-axis estimates apply (``0 < alpha <= 1``)."""
        return self.alpha <= 1.0

    @property
    def is_optimal_bound_regime(self) -> bool:
        """After index doubling the inner orders are completely monotone."""
        return self.alpha <= 0.5


@dataclass(frozen=True)
class EvalPolicy:
    """Accuracy and backend-switch settings.

    ``switch_radius`` is compared with the scaled argument ``|z|**(1/alpha)``.
    ``asym_terms`` caps the number of terms of the large-argument expansion;
    the actual count is the optimal truncation at the switch point.
    """

    series_tol: float = 1e-12
    max_terms: int = 10000
    switch_radius: float = 60.0
    asym_terms: int = 400
    accum_precision: int = 60

    def __post_init__(self) -> None:
        if not self.series_tol > 0:
            raise ValueError("series_tol must be positive")
        if self.max_terms < 8:
            raise ValueError("max_terms must be at least 8")
        if not self.switch_radius > 0:
            raise ValueError("switch_radius must be positive")
        if self.asym_terms < 1:
            raise ValueError("asym_terms must be at least 1")
        if self.accum_precision < 16:
            raise ValueError("accum_precision must be at least 16 digits")


DEFAULT_POLICY = EvalPolicy()


class MLValue(NamedTuple):
    value: complex
    backend: str
    err_est: float


# }}}


# {{{ gamma helpers


def recip_gamma(x: float) -> float:
    """Return ``1/Gamma(x)``; exactly zero at the poles of Gamma."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        return 0.0
    return float(special.rgamma(x))


def _log_abs_rgamma(y: float) -> float:
    if y <= 0 and y == math.floor(y):
        return -math.inf
    return -math.lgamma(y)


def _log_rgamma_envelope(y: float) -> float:
    # smooth upper bound for log|1/Gamma(y)|, used to plan truncations
    if y < 0.5:
        return math.lgamma(1.0 - y) - math.log(math.pi)
    return -math.lgamma(y)


# }}}


# {{{ wide-precision series


def _series_plan(alpha: float, beta: float, r: float, digits: float,
                 max_terms: int) -> tuple[int, float]:
    """Choose a term count so the tail is ``digits`` decades below ``min(peak, 1)``.

    Returns ``(K, log10_peak)``.
    """
    if r == 0.0:
        return 0, _log_abs_rgamma(beta) / _LN10 if beta > 0 else 0.0
    lr = math.log(r)
    peak = -math.inf
    k = 0
    while True:
        t = k * lr + _log_rgamma_envelope(alpha * k + beta)
        peak = max(peak, t)
        y = alpha * k + beta
        # absolute target: cancellation can leave a value far below the peak
        if y > 2.0 and t < min(peak, 0.0) - digits * _LN10:
            # past the peak: ratio of consecutive terms is decreasing
            ratio = lr + math.lgamma(y) - math.lgamma(y + alpha)
            if ratio < -0.1:
                return k, peak / _LN10
        k += 1
        if k > max_terms:
            raise NoConvergence(
                f"series for E_{{{alpha},{beta}}} needs more than {max_terms} terms "
                f"at |z|={r:.6g}")


def _tail_log_bound(alpha: float, beta: float, r: float, k: int) -> float:
    """log of a bound for ``sum_{j>k} |z|**j/|Gamma(alpha j + beta)|``."""
    if r == 0.0:
        return -math.inf
    lr = math.log(r)
    y = alpha * (k + 1) + beta
    t = (k + 1) * lr - math.lgamma(y)
    ratio = math.exp(lr + math.lgamma(y) - math.lgamma(y + alpha))
    if ratio >= 1.0:
        return math.inf
    return t - math.log1p(-ratio)


@lru_cache(maxsize=256)
def _series_coeffs(alpha: float, beta: float, nterms: int, dps: int) -> tuple:
    with mp.workdps(dps):
        a = mp.mpf(alpha)
        b = mp.mpf(beta)
        return tuple(mp.rgamma(a * k + b) for k in range(nterms))


def _quantize(n: float, step: int) -> int:
    return int(step * math.ceil(max(n, 1) / step))


def _horner_mp(coeffs: tuple, z, K: int):
    s = mp.mpf(0)
    for k in range(K, -1, -1):
        s = s * z + coeffs[k]
    return s


def _series_eval(alpha: float, beta: float, z: complex,
                 policy: EvalPolicy) -> tuple[complex, float]:
    """Sum the series in wide precision; returns ``(value, relative error bound)``."""
    r = abs(z)
    extra = 0.0
    for _ in range(6):
        digits = policy.accum_precision + extra
        K, log10_peak = _series_plan(alpha, beta, r, digits, policy.max_terms)
        dps = _quantize(digits + max(log10_peak, 0.0) + 10, 8)
        ncoef = _quantize(K + 1, 64)
        coeffs = _series_coeffs(alpha, beta, ncoef, dps)
        with mp.workdps(dps):
            if z.imag == 0.0:
                zz = mp.mpf(z.real)
            else:
                zz = mp.mpc(z.real, z.imag)
            s = _horner_mp(coeffs, zz, K)
            val = complex(s)
        absval = abs(val)
        log_tail = _tail_log_bound(alpha, beta, r, K) / _LN10
        log_round = log10_peak - dps + math.log10(K + 1)
        log_err = max(log_tail, log_round)
        if absval > 0:
            rel = 10.0 ** (log_err - math.log10(absval))
        else:
            rel = math.inf
        if rel <= 1e-3 * policy.series_tol:
            return val, rel
        # the value is much smaller than the planned accuracy: widen
        if absval > 0:
            extra += max(8.0, log_err - math.log10(absval) + math.log10(1e3 / policy.series_tol) + 4)
        else:
            extra += 20.0
    raise NoConvergence(f"series for E_{{{alpha},{beta}}}({z}) failed to reach tolerance")


def ml_series(order: MLOrder, z: complex, policy: EvalPolicy = DEFAULT_POLICY) -> complex:
    """Power-series value of ``E_{alpha,beta}(z)`` accumulated in wide precision.

    Raises
    ------
    NoConvergence
        If more than ``policy.max_terms`` terms would be needed.
    """
    z = complex(z)
    val, _ = _series_eval(order.alpha, order.beta, z, policy)
    return val


# }}}


# {{{ closed forms


def _near_int(x: float) -> int | None:
    n = round(x)
    return int(n) if abs(x - n) < 1e-14 else None


def _poly_dps(z: complex, m: int) -> int:
    # digits lost to cancellation in z**(-m) * (f(z) - Taylor polynomial)
    r = abs(z)
    return 30 + (int(m * max(0.0, -math.log10(r))) + 1 if r > 0 else 0)


def _closed_form_kind(alpha: float, beta: float) -> tuple[str, int] | None:
    if alpha == 0.5 and beta == 1.0:
        return ("erfc", 0)
    if alpha == 1.0:
        m = _near_int(beta)
        if m is None:
            return None
        if m == 1:
            return ("exp", 0)
        if m >= 2:
            return ("exp_tail", m)
        return ("exp_neg", -m)
    if alpha == 2.0:
        m = _near_int(beta)
        if m is None:
            return None
        if m == 1:
            return ("cosh", 0)
        if m == 2:
            return ("sinhc", 0)
        if m >= 3 and m % 2 == 1:
            return ("cosh_tail", (m - 1) // 2)
        if m >= 4 and m % 2 == 0:
            return ("sinh_tail", m // 2)
        if m <= 0 and m % 2 == 0:
            return ("sinh_neg", -m // 2)
        if m <= -1:
            return ("cosh_neg", (1 - m) // 2)
    return None


def ml_closed_form(order: MLOrder, z: complex) -> complex | None:
    """Exact elementary expression for the classical ``(alpha, beta)`` pairs.

    Returns ``None`` when the pair has no closed form here. The square root
    is the principal branch.
    """
    kind = _closed_form_kind(order.alpha, order.beta)
    if kind is None:
        return None
    name, m = kind
    z = complex(z)

    if name == "erfc":
        # exp(z^2) erfc(-z) = w(-i z) with w the Faddeeva function
        return complex(special.wofz(-1j * z))
    if name == "exp":
        return cmath.exp(z)
    if name == "exp_neg":
        # E_{1,-m}(z) = z^(m+1) e^z
        return z ** (m + 1) * cmath.exp(z)
    if name == "cosh":
        return cmath.cosh(cmath.sqrt(z))
    if name == "sinhc":
        if z == 0:
            return 1.0 + 0j
        w = cmath.sqrt(z)
        return cmath.sinh(w) / w
    if name == "sinh_neg":
        # E_{2,-2m}(z) = z^(m+1/2) sinh(sqrt z)
        w = cmath.sqrt(z)
        return w ** (2 * m + 1) * cmath.sinh(w)
    if name == "cosh_neg":
        # E_{2,1-2m}(z) = z^m cosh(sqrt z)
        return z ** m * cmath.cosh(cmath.sqrt(z))

    if z == 0:
        return complex(recip_gamma(order.beta))
    with mp.workdps(_poly_dps(z, 2 * m)):
        zz = mp.mpc(z.real, z.imag)
        if name == "exp_tail":
            # E_{1,m}(z) = z^(1-m) (e^z - sum_{k<m-1} z^k/k!)
            s = mp.exp(zz) - sum(zz ** k / mp.factorial(k) for k in range(m - 1))
            out = s * zz ** (1 - m)
        elif name == "cosh_tail":
            # E_{2,2m+1}(z) = z^(-m) (cosh sqrt z - sum_{k<m} z^k/(2k)!)
            w = mp.sqrt(zz)
            s = mp.cosh(w) - sum(zz ** k / mp.factorial(2 * k) for k in range(m))
            out = s * zz ** (-m)
        else:
            # E_{2,2m}(z) = w^(1-2m) (sinh w - sum_{k<m-1} w^(2k+1)/(2k+1)!), w = sqrt z
            w = mp.sqrt(zz)
            s = mp.sinh(w) - sum(w ** (2 * k + 1) / mp.factorial(2 * k + 1)
                                 for k in range(m - 1))
            out = s * w ** (1 - 2 * m)
        return complex(out)


#: one representative ``(alpha, beta)`` for each closed-form family
CLOSED_FORM_CASES: tuple[tuple[float, float], ...] = (
    (1.0, 1.0),
    (0.5, 1.0),
    (1.0, 3.0),
    (2.0, 1.0),
    (2.0, 2.0),
    (2.0, 5.0),
    (2.0, 6.0),
    (1.0, -2.0),
    (2.0, -4.0),
    (2.0, -3.0),
)


# }}}


# {{{ negative real axis


class _AsymPlan(NamedTuple):
    coeffs: np.ndarray  # 1/Gamma(beta - alpha k), k = 1..N
    x_switch: float
    err_at_switch: float


@lru_cache(maxsize=256)
def _asym_plan(alpha: float, beta: float, switch_radius: float,
               cap: int, tol: float = 1e-17) -> _AsymPlan:
    """Optimal truncation of the algebraic tail at the switch point."""
    xs = switch_radius ** alpha
    lx = math.log(xs)
    env = [-k * lx + _log_rgamma_envelope(beta - alpha * k) for k in range(1, cap + 2)]
    cand = []
    for k in range(1, min(cap, 6) + 1):
        v = -k * lx + _log_abs_rgamma(beta - alpha * k)
        if v > -math.inf:
            cand.append(v)
        if len(cand) == 2:
            break
    if alpha >= 1.0:
        cand.append((1.0 - beta) / alpha * lx + switch_radius * math.cos(math.pi / alpha))
    scale = max(cand) if cand else 0.0

    n_use = 0
    best = math.inf
    for k in range(1, cap + 1):
        v = env[k - 1]
        if k > 2 and v > best + 1e-12:
            break  # terms started growing
        best = min(best, v)
        n_use = k
        if v < scale + math.log(tol):
            break
    with mp.workdps(30):
        a = mp.mpf(alpha)
        b = mp.mpf(beta)
        c = np.array([float(mp.rgamma(b - a * k)) for k in range(1, n_use + 1)])
    err = math.exp(env[n_use]) if n_use < len(env) else math.inf
    return _AsymPlan(c, xs, err)


def _exp_part(alpha: float, beta: float, x):
    """Exponentially small saddle contribution on the negative axis (alpha >= 1)."""
    s = x ** (1.0 / alpha)
    if alpha == 1.0:
        # both saddles sit on the Stokes line; each counts with weight 1/2
        return x ** (1.0 - beta) * np.exp(-s) * np.cos(math.pi * (1.0 - beta))
    th = math.pi / alpha
    return (2.0 / alpha) * x ** ((1.0 - beta) / alpha) * np.exp(s * math.cos(th)) \
        * np.cos(s * math.sin(th) + math.pi * (1.0 - beta) / alpha)


def _asym_eval(alpha: float, beta: float, x, plan: _AsymPlan):
    x = np.asarray(x, dtype=float)
    y = -1.0 / x
    acc = np.zeros_like(x)
    for c in plan.coeffs[::-1]:
        acc = acc * y + c
    val = -acc * y
    if alpha >= 1.0:
        val = val + _exp_part(alpha, beta, x)
    return val


def _check_neg_real(order: MLOrder, x: float) -> None:
    if order.alpha > 2.0:
        raise RegimeError(f"negative-axis backend needs alpha <= 2, got {order.alpha}")
    if not x >= 0:
        raise ValueError(f"x must be nonnegative, got {x}")


def _neg_real_detail(order: MLOrder, x: float, policy: EvalPolicy) -> tuple[float, str, float]:
    _check_neg_real(order, x)
    a, b = order.alpha, order.beta
    if x == 0.0:
        return recip_gamma(b), "series", 0.0
    s = x ** (1.0 / a)
    if s <= policy.switch_radius:
        val, rel = _series_eval(a, b, complex(-x, 0.0), policy)
        return val.real, "series", rel * abs(val.real)
    plan = _asym_plan(a, b, float(policy.switch_radius), int(policy.asym_terms))
    val = float(_asym_eval(a, b, x, plan))
    n = len(plan.coeffs)
    err = math.exp(-(n + 1) * math.log(x) + _log_rgamma_envelope(b - a * (n + 1)))
    return val, "asymptotic", err


def ml_neg_real(order: MLOrder, x: float, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Value of ``E_{alpha,beta}(-x)`` for ``x >= 0`` and ``0 < alpha <= 2``.

    Uses the wide-precision series for ``x**(1/alpha) <= switch_radius`` and
    the large-argument expansion beyond it.
    """
    return _neg_real_detail(order, float(x), policy)[0]


def overlap_discrepancy(order: MLOrder, policy: EvalPolicy = DEFAULT_POLICY,
                        npoints: int = 12) -> float:
    """Largest ``|series - expansion| / (1 + |value|)`` over ``s`` in ``[R/2, R]``."""
    a, b = order.alpha, order.beta
    R = float(policy.switch_radius)
    plan = _asym_plan(a, b, R, int(policy.asym_terms))
    worst = 0.0
    for s in np.linspace(R / 2, R, npoints):
        x = float(s) ** a
        ser, _ = _series_eval(a, b, complex(-x, 0.0), policy)
        asy = float(_asym_eval(a, b, x, plan))
        worst = max(worst, abs(ser.real - asy) / (1.0 + abs(ser.real)))
    return worst


# {{{ fast tables


def _cheb_coeffs(v: np.ndarray) -> np.ndarray:
    """Interpolation coefficients at first-kind Chebyshev nodes ``cos(pi (j+1/2)/n)``."""
    n = len(v)
    c = fft.dct(v, type=2) / n
    c[0] *= 0.5
    return c


class _ChebTable:
    """Piecewise Chebyshev interpolant of ``E(-x)`` on ``[0, R**alpha]``.

    Panel breakpoints are uniform in ``s = x**(1/alpha)``, so each panel
    holds a bounded number of oscillations. Node values come from the
    wide-precision series.
    """

    def __init__(self, alpha: float, beta: float, policy: EvalPolicy,
                 ds: float = 2.0, deg: int = 28) -> None:
        self.alpha = alpha
        self.beta = beta
        R = float(policy.switch_radius)
        self.x_max = R ** alpha
        n = max(1, int(math.ceil(R / ds)))
        s_edges = np.linspace(0.0, R, n + 1)
        edges = list(s_edges ** alpha)

        t = np.cos(np.pi * (np.arange(deg + 1) + 0.5) / (deg + 1))
        xs_all = []
        for lo, hi in zip(edges[:-1], edges[1:]):
            xs_all.append(0.5 * (lo + hi) + 0.5 * (hi - lo) * t)
        values = _series_many(alpha, beta, np.concatenate(xs_all), policy)
        vals = values.reshape(len(edges) - 1, deg + 1)
        scale = max(1.0, float(np.max(np.abs(vals))))

        panels: list[tuple[float, float, np.ndarray]] = []
        pending = [(lo, hi, v) for lo, hi, v in zip(edges[:-1], edges[1:], vals)]
        while pending:
            lo, hi, v = pending.pop()
            c = _cheb_coeffs(v)
            if np.max(np.abs(c[-3:])) <= 2e-16 * scale or hi - lo < 1e-6:
                panels.append((lo, hi, c))
                continue
            mid = 0.5 * (lo + hi)
            for a_, b_ in ((lo, mid), (mid, hi)):
                xx = 0.5 * (a_ + b_) + 0.5 * (b_ - a_) * t
                pending.append((a_, b_, _series_many(alpha, beta, xx, policy)))
        panels.sort(key=lambda p: p[0])
        self.lo = np.array([p[0] for p in panels])
        self.hi = np.array([p[1] for p in panels])
        self.coeffs = np.array([p[2] for p in panels]).T.copy()  # (deg+1, npanels)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.lo, x, side="right") - 1
        idx = np.clip(idx, 0, len(self.lo) - 1)
        lo = self.lo[idx]
        hi = self.hi[idx]
        t = (2.0 * x - lo - hi) / (hi - lo)
        c = self.coeffs
        b1 = np.zeros_like(t)
        b2 = np.zeros_like(t)
        t2 = 2.0 * t
        for k in range(c.shape[0] - 1, 0, -1):
            b1, b2 = c[k][idx] + t2 * b1 - b2, b1
        return c[0][idx] + t * b1 - b2


def _series_many(alpha: float, beta: float, xs: np.ndarray, policy: EvalPolicy) -> np.ndarray:
    """Real series values at many points sharing one coefficient table."""
    xs = np.asarray(xs, dtype=float)
    xmax = float(np.max(xs)) if xs.size else 0.0
    digits = policy.accum_precision
    K, log10_peak = _series_plan(alpha, beta, xmax, digits, policy.max_terms)
    dps = _quantize(digits + max(log10_peak, 0.0) + 10, 8)
    coeffs = _series_coeffs(alpha, beta, _quantize(K + 1, 64), dps)
    out = np.empty_like(xs)
    with mp.workdps(dps):
        for i, x in enumerate(xs):
            out[i] = float(_horner_mp(coeffs, mp.mpf(-float(x)), K))
    return out


@lru_cache(maxsize=64)
def _table(alpha: float, beta: float, policy: EvalPolicy) -> _ChebTable:
    return _ChebTable(alpha, beta, policy)


def ml_neg_real_array(order: MLOrder, x, policy: EvalPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Vectorized ``E_{alpha,beta}(-x)``.

    Uses a cached piecewise Chebyshev table below the switch point and the
    large-argument expansion above it.
    """
    a, b = order.alpha, order.beta
    if a > 2.0:
        raise RegimeError(f"negative-axis backend needs alpha <= 2, got {a}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or not np.all(np.isfinite(x)):
        raise ValueError("x must be finite and nonnegative")
    table = _table(a, b, policy)
    out = np.empty_like(x)
    near = x <= table.x_max
    if np.any(near):
        out[near] = table(x[near])
    far = ~near
    if np.any(far):
        plan = _asym_plan(a, b, float(policy.switch_radius), int(policy.asym_terms))
        out[far] = _asym_eval(a, b, x[far], plan)
    return out


# }}}

# }}}


# {{{ imaginary axis


def _check_euler(order: MLOrder) -> None:
    if not order.alpha <= 1.0:
        raise RegimeError(f"Euler decomposition needs 0 < alpha <= 1, got {order.alpha}")


def euler_decompose(order: MLOrder, t: float, policy: EvalPolicy = DEFAULT_POLICY) -> complex:
    """``E_{alpha,beta}(i t)`` as ``E_{2a,b}(-t^2) + i t E_{2a,a+b}(-t^2)``."""
    _check_euler(order)
    t = float(t)
    a, b = order.alpha, order.beta
    x = t * t
    re = ml_neg_real(MLOrder(2 * a, b), x, policy)
    im = t * ml_neg_real(MLOrder(2 * a, a + b), x, policy)
    return complex(re, im)


def euler_decompose_array(order: MLOrder, t, policy: EvalPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Vectorized :func:`euler_decompose` built on the table backend."""
    _check_euler(order)
    t = np.asarray(t, dtype=float)
    a, b = order.alpha, order.beta
    x = t * t
    re = ml_neg_real_array(MLOrder(2 * a, b), x, policy)
    im = t * ml_neg_real_array(MLOrder(2 * a, a + b), x, policy)
    return re + 1j * im


# }}}


# {{{ dispatcher


def ml_eval_detailed(order: MLOrder, z: complex,
                     policy: EvalPolicy = DEFAULT_POLICY) -> MLValue:
    """Evaluate ``E_{alpha,beta}(z)`` and report the backend used."""
    z = complex(z)
    a, b = order.alpha, order.beta

    val = ml_closed_form(order, z)
    if val is not None:
        out = MLValue(val, "closed_form", 4e-16 * abs(val))
    elif z.real == 0.0 and a <= 1.0:
        t = z.imag
        x = t * t
        re, k1, e1 = _neg_real_detail(MLOrder(2 * a, b), x, policy)
        im, k2, e2 = _neg_real_detail(MLOrder(2 * a, a + b), x, policy)
        backend = "euler/" + (k1 if k1 == k2 else f"{k1}+{k2}")
        out = MLValue(complex(re, t * im), backend, e1 + abs(t) * e2)
    elif z.imag == 0.0 and z.real <= 0.0 and a <= 2.0:
        re, kind, err = _neg_real_detail(order, -z.real, policy)
        out = MLValue(complex(re, 0.0), kind, err)
    elif abs(z) ** (1.0 / a) <= policy.switch_radius:
        val, rel = _series_eval(a, b, z, policy)
        out = MLValue(val, "series", rel * abs(val))
    else:
        raise UnsupportedRegion(
            f"z={z} is off the supported axes and beyond the series radius")
    if not (math.isfinite(out.value.real) and math.isfinite(out.value.imag)):
        raise UnsupportedRegion(f"E_{{{a},{b}}}({z}) overflows double precision")
    return out


def ml_eval(order: MLOrder, z: complex, policy: EvalPolicy = DEFAULT_POLICY) -> complex:
    """Evaluate ``E_{alpha,beta}(z)`` by the most reliable available backend.

    Order of preference: closed form, Euler decomposition (imaginary axis),
    negative-axis backend, power series.
    """
    return ml_eval_detailed(order, z, policy).value


# }}}


# {{{ bounds and identities


def ml_real_bounds(order: MLOrder, x: float) -> tuple[float, float]:
    """Two-sided rational bounds for ``E_{alpha,beta}(-x)``, ``x >= 0``.

    Three parameter regimes are recognised, in this order:

    * ``beta = 1``, ``0 < alpha < 1``:
      ``1/(1 + Gamma(1-a) x) <= E <= 1/(1 + x/Gamma(1+a))``;
    * ``beta = alpha < 1``: squared rational bounds for ``Gamma(a) E``;
    * ``0 < alpha <= 1``, ``beta > alpha``: rational bounds for ``Gamma(b) E``.

    The returned pair bounds ``E`` itself.
    """
    a, b = order.alpha, order.beta
    x = float(x)
    if not x >= 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    G = math.gamma
    if b == 1.0 and 0 < a < 1:
        return 1.0 / (1.0 + G(1 - a) * x), 1.0 / (1.0 + x / G(1 + a))
    if b == a and 0 < a < 1:
        lo = 1.0 / (1.0 + math.sqrt(G(1 - a) / G(1 + a)) * x) ** 2
        hi = 1.0 / (1.0 + math.sqrt(G(1 + a) / G(1 + 2 * a)) * x) ** 2
        return lo / G(a), hi / G(a)
    if 0 < a <= 1 and b > a:
        lo = 1.0 / (1.0 + G(b - a) / G(b) * x)
        hi = 1.0 / (1.0 + G(b) / G(b + a) * x)
        return lo / G(b), hi / G(b)
    raise RegimeError(f"no rational bound is known for (alpha, beta) = ({a}, {b})")


def sector_bound_ratio(order: MLOrder, z: complex,
                       policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """``|E_{alpha,beta}(z)| (1 + |z|)``; stays bounded inside the decay sector."""
    if not 0 < order.alpha < 2:
        raise RegimeError("sector bound needs 0 < alpha < 2")
    z = complex(z)
    return abs(ml_eval(order, z, policy)) * (1.0 + abs(z))


def ml_derivative_identity_residual(order: MLOrder, phase, x: float, lam: float,
                                    h: float,
                                    policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Residual of ``E_{a,a}(i lam phi) = a/(i lam phi') d/dx E_{a,1}(i lam phi)``.

    ``phase`` is any object with ``eval(x, deriv)``. The derivative is the
    central difference with step ``h``, so the residual is ``O(h**2)``.
    """
    a = order.alpha
    if not 0 < a <= 1:
        raise RegimeError("derivative identity is checked for 0 < alpha <= 1")
    if lam == 0:
        raise DegenerateInput("lambda must be nonzero")
    dphi = phase.eval(x, 1)
    if dphi == 0:
        raise DegenerateInput(f"phase derivative vanishes at x={x}")
    o1 = MLOrder(a, 1.0)
    oa = MLOrder(a, a)

    def F(s: float) -> complex:
        return ml_eval(o1, 1j * lam * phase.eval(s, 0), policy)

    lhs = ml_eval(oa, 1j * lam * phase.eval(x, 0), policy)
    diff = (F(x + h) - F(x - h)) / (2.0 * h)
    return abs(lhs - a / (1j * lam * dphi) * diff)


# }}}

