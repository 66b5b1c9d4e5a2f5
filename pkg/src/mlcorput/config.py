"""Experiment configuration: line-oriented ``key = value`` with ``[section]`` headers.

Sections and keys (all optional sections may be omitted):

    [sweep]   theorem, alpha, beta, interval, phase, amplitude, variant,
              lambda_grid, window, log_factor
    [pde]     alpha, ell, mu, init, xi_max, x_grid, t_grid, xi_panels, nodes, fit_window
    [quad]    nodes_per_panel, panels_per_unit_phase, abs_tol, max_panels
    [ml]      series_tol, max_terms, switch_radius, asym_terms, accum_precision
    [output]  dir, name, svg

Grids are either ``log(start, stop, points)`` or an explicit comma list
(possibly empty). Functions are written ``family(p1, p2, ...)``.
"""

from __future__ import annotations

import configparser
import math
import re
from dataclasses import dataclass, field
from typing import Any

from .errors import ConfigError, MLError
from .functions import FunctionSpec, Interval, check_hypotheses, THEOREM_IDS
from .mlf import EvalPolicy, MLOrder
from .quad import IntegralSpec, QuadPolicy, log_grid

__all__ = ["Grid", "SweepConfig", "PdeConfig", "OutputConfig", "ExperimentConfig",
           "parse_config", "load_config"]


# {{{ value codecs


def _float(text: str, key: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {text!r}") from None
    if not math.isfinite(v):
        raise ConfigError(f"{key}: value must be finite")
    return v


def _int(text: str, key: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {text!r}") from None


def _bool(text: str, key: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "1", "on"):
        return True
    if t in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {text!r}")


def _floats(text: str, key: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(_float(p.strip(), key) for p in text.split(","))


def _pair(text: str, key: str) -> tuple[float, float]:
    v = _floats(text, key)
    if len(v) != 2:
        raise ConfigError(f"{key}: expected two numbers")
    return v[0], v[1]


def _fmt_floats(vals) -> str:
    return ", ".join(repr(float(v)) for v in vals)


def _function(text: str, key: str, role: str) -> FunctionSpec:
    try:
        return FunctionSpec.parse(text, role)
    except ValueError as e:
        raise ConfigError(f"{key}: {e}") from None


@dataclass(frozen=True)
class Grid:
    """Explicit list of points or a log-spaced ``(start, stop, points)`` triple."""

    values: tuple[float, ...] = ()
    log: tuple[float, float, int] | None = None

    def points(self) -> list[float]:
        if self.log is not None:
            return log_grid(*self.log)
        return list(self.values)

    def __str__(self) -> str:
        if self.log is not None:
            lo, hi, n = self.log
            return f"log({float(lo)!r}, {float(hi)!r}, {int(n)})"
        return _fmt_floats(self.values)

    @classmethod
    def parse(cls, text: str, key: str = "grid") -> Grid:
        m = re.fullmatch(r"\s*log\s*\((.*)\)\s*", text)
        if m is None:
            return cls(values=_floats(text, key))
        parts = [p.strip() for p in m.group(1).split(",")]
        if len(parts) != 3:
            raise ConfigError(f"{key}: log grid needs start, stop, points")
        lo, hi, n = _float(parts[0], key), _float(parts[1], key), _int(parts[2], key)
        if not (0 < lo <= hi) or n < 1:
            raise ConfigError(f"{key}: log grid needs 0 < start <= stop and points >= 1")
        return cls(log=(lo, hi, n))


# }}}


# {{{ sections


@dataclass(frozen=True)
class SweepConfig:
    alpha: float
    beta: float
    interval: tuple[float, float]
    phase: FunctionSpec
    amplitude: FunctionSpec
    lambda_grid: Grid
    variant: str = "direct"
    theorem: str | None = None
    window: tuple[float, float] | None = None
    log_factor: bool = False

    def integral_spec(self) -> IntegralSpec:
        return IntegralSpec(MLOrder(self.alpha, self.beta), Interval(*self.interval),
                            self.phase, self.amplitude, self.variant)


@dataclass(frozen=True)
class PdeConfig:
    alpha: float
    ell: float
    mu: float
    init: FunctionSpec | None = None
    xi_max: float | None = None
    x_grid: Grid | None = None
    t_grid: Grid | None = None
    xi_panels: int | None = None
    nodes: int | None = None
    fit_window: tuple[float, float] | None = None

    def params(self):
        from .tfpde import TfpdeParams

        kw: dict[str, Any] = {"alpha": self.alpha, "ell": self.ell, "mu": self.mu}
        for f in ("init", "xi_max", "xi_panels", "nodes", "fit_window"):
            v = getattr(self, f)
            if v is not None:
                kw[f] = v
        if self.x_grid is not None:
            kw["x_grid"] = tuple(self.x_grid.points())
        if self.t_grid is not None:
            kw["t_grid"] = tuple(self.t_grid.points())
        return TfpdeParams(**kw)


@dataclass(frozen=True)
class OutputConfig:
    dir: str | None = None
    name: str = "sweep"
    svg: bool = True


# key -> (decoder, encoder); None values are omitted on output
_SWEEP_KEYS = {
    "theorem": (lambda t, k: t.strip(), str),
    "alpha": (_float, repr),
    "beta": (_float, repr),
    "interval": (_pair, _fmt_floats),
    "phase": (lambda t, k: _function(t, k, "phase"), str),
    "amplitude": (lambda t, k: _function(t, k, "amplitude"), str),
    "variant": (lambda t, k: t.strip(), str),
    "lambda_grid": (Grid.parse, str),
    "window": (_pair, _fmt_floats),
    "log_factor": (_bool, lambda v: "true" if v else "false"),
}
_PDE_KEYS = {
    "alpha": (_float, repr),
    "ell": (_float, repr),
    "mu": (_float, repr),
    "init": (lambda t, k: _function(t, k, "amplitude"), str),
    "xi_max": (_float, repr),
    "x_grid": (Grid.parse, str),
    "t_grid": (Grid.parse, str),
    "xi_panels": (_int, str),
    "nodes": (_int, str),
    "fit_window": (_pair, _fmt_floats),
}
_OUTPUT_KEYS = {
    "dir": (lambda t, k: t.strip(), str),
    "name": (lambda t, k: t.strip(), str),
    "svg": (_bool, lambda v: "true" if v else "false"),
}
_QUAD_KEYS = {"nodes_per_panel": _int, "panels_per_unit_phase": _float, "abs_tol": _float,
              "max_panels": _int}
_ML_KEYS = {"series_tol": _float, "max_terms": _int, "switch_radius": _float,
            "asym_terms": _int, "accum_precision": _int}


@dataclass(frozen=True)
class ExperimentConfig:
    sweep: SweepConfig | None = None
    pde: PdeConfig | None = None
    quad: QuadPolicy = field(default_factory=QuadPolicy)
    ml: EvalPolicy = field(default_factory=EvalPolicy)
    output: OutputConfig = field(default_factory=OutputConfig)

    def quad_policy(self) -> QuadPolicy:
        return QuadPolicy(self.quad.nodes_per_panel, self.quad.panels_per_unit_phase,
                          self.quad.abs_tol, self.quad.max_panels, self.ml)

    def to_text(self) -> str:
        """Serialize; ``parse_config(cfg.to_text()) == cfg``."""
        out: list[str] = []

        def section(name: str, obj, codecs) -> None:
            out.append(f"[{name}]")
            for key, (_, enc) in codecs.items():
                v = getattr(obj, key)
                if v is not None:
                    out.append(f"{key} = {enc(v)}")
            out.append("")

        if self.sweep is not None:
            section("sweep", self.sweep, _SWEEP_KEYS)
        if self.pde is not None:
            section("pde", self.pde, _PDE_KEYS)
        out.append("[quad]")
        out += [f"{k} = {getattr(self.quad, k)!r}" for k in _QUAD_KEYS]
        out.append("")
        out.append("[ml]")
        out += [f"{k} = {getattr(self.ml, k)!r}" for k in _ML_KEYS]
        out.append("")
        section("output", self.output, _OUTPUT_KEYS)
        return "\n".join(out)


# }}}


# {{{ parsing


def _decode(sec: configparser.SectionProxy, codecs: dict) -> dict[str, Any]:
    unknown = sorted(set(sec.keys()) - set(codecs))
    if unknown:
        raise ConfigError(f"[{sec.name}]: unknown key(s) {', '.join(unknown)}")
    out = {}
    for key, raw in sec.items():
        dec = codecs[key][0] if isinstance(codecs[key], tuple) else codecs[key]
        out[key] = dec(raw, f"[{sec.name}] {key}")
    return out


def _require(d: dict, keys: tuple[str, ...], section: str) -> None:
    missing = [k for k in keys if k not in d]
    if missing:
        raise ConfigError(f"[{section}]: missing key(s) {', '.join(missing)}")


def _validate_sweep(sc: SweepConfig) -> None:
    try:
        spec = sc.integral_spec()
    except (MLError, ValueError) as e:
        raise ConfigError(f"[sweep]: {e}") from None
    pts = sc.lambda_grid.points()
    if any(v < 0 for v in pts):
        raise ConfigError("[sweep] lambda_grid: values must be nonnegative")
    if any(b < a for a, b in zip(pts, pts[1:])):
        raise ConfigError("[sweep] lambda_grid: values must be ascending")
    if sc.window is not None and not 0 < sc.window[0] < sc.window[1]:
        raise ConfigError("[sweep] window: need 0 < lo < hi")
    if sc.theorem is not None:
        if sc.theorem not in THEOREM_IDS:
            raise ConfigError(f"[sweep] theorem: unknown id {sc.theorem!r}")
        if sc.theorem not in ("rl-lemma", "tfpde"):
            rep = check_hypotheses(sc.theorem, spec.phase, spec.amp, spec.iv, spec.order)
            if not rep.passed:
                raise ConfigError(f"[sweep]: hypotheses of {sc.theorem} fail:\n{rep}")


def parse_config(text: str) -> ExperimentConfig:
    cp = configparser.ConfigParser(interpolation=None, strict=True, empty_lines_in_values=False,
                                   default_section="\x00defaults")
    try:
        cp.read_string(text)
    except configparser.Error as e:
        raise ConfigError(f"malformed config: {e}") from None
    known = {"sweep", "pde", "quad", "ml", "output"}
    extra = sorted(set(cp.sections()) - known)
    if extra:
        raise ConfigError(f"unknown section(s) {', '.join(extra)}")
    kw: dict[str, Any] = {}
    if cp.has_section("sweep"):
        d = _decode(cp["sweep"], _SWEEP_KEYS)
        _require(d, ("alpha", "beta", "interval", "phase", "lambda_grid"), "sweep")
        d.setdefault("amplitude", FunctionSpec("polynomial", (1.0,), "amplitude"))
        if d.get("variant", "direct") not in ("direct", "shifted_power"):
            raise ConfigError("[sweep] variant: expected direct or shifted_power")
        kw["sweep"] = SweepConfig(**d)
        _validate_sweep(kw["sweep"])
    if cp.has_section("pde"):
        d = _decode(cp["pde"], _PDE_KEYS)
        _require(d, ("alpha", "ell", "mu"), "pde")
        kw["pde"] = PdeConfig(**d)
        try:
            kw["pde"].params()
        except (MLError, ValueError) as e:
            raise ConfigError(f"[pde]: {e}") from None
    try:
        if cp.has_section("quad"):
            kw["quad"] = QuadPolicy(**_decode(cp["quad"], _QUAD_KEYS))
        if cp.has_section("ml"):
            kw["ml"] = EvalPolicy(**_decode(cp["ml"], _ML_KEYS))
    except ValueError as e:
        raise ConfigError(str(e)) from None
    if cp.has_section("output"):
        kw["output"] = OutputConfig(**_decode(cp["output"], _OUTPUT_KEYS))
    return ExperimentConfig(**kw)


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    return parse_config(text)


# }}}
