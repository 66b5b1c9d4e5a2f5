"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or config error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .errors import ConfigError, HypothesisFailure, MLError, RegimeError, UnknownTheorem, UnsupportedRegion
from .output import loglog_svg, out_dir, write_text

__all__ = ["main", "build_parser", "parse_complex"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class _Usage(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Accepts ``1.5``, ``-2+3i``, ``0+1j``, ``2i``."""
    t = text.strip().replace(" ", "").replace("I", "i").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise _Usage(f"cannot parse complex number {text!r}") from None


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


# {{{ subcommands


def cmd_ml_eval(args: argparse.Namespace) -> int:
    from .mlf import MLOrder, ml_eval_detailed

    z = parse_complex(args.z)
    try:
        res = ml_eval_detailed(MLOrder(args.alpha, args.beta), z)
    except (RegimeError, UnsupportedRegion) as e:
        _err(str(e))
        return EXIT_USAGE
    v = res.value
    print(f"re = {v.real!r}")
    print(f"im = {v.imag!r}")
    print(f"backend = {res.backend}")
    print(f"err_est = {res.err_est:.3g}")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    from .config import load_config
    from .quad import sweep
    from .verify import fit_decay

    cfg = load_config(args.config)
    if cfg.sweep is None:
        raise ConfigError("config has no [sweep] section")
    sc = cfg.sweep
    table = sweep(sc.integral_spec(), sc.lambda_grid.points(), cfg.quad_policy())
    dest = out_dir(args.out or cfg.output.dir)
    path = write_text(dest / f"{cfg.output.name}.csv", table.to_csv())
    print(f"wrote {path} ({len(table)} rows)")
    if cfg.output.svg and len(table):
        write_text(dest / f"{cfg.output.name}.svg",
                   loglog_svg([("|I|", list(table.lambdas), list(table.abs_values))],
                              title=cfg.output.name))
    if table.failures:
        for r in table.failures:
            _err(f"quadrature failed at lambda={r.lam!r}: {r.error}")
        return EXIT_NUMERIC
    if sc.window is not None and len(table):
        fit = fit_decay(table, sc.window, sc.log_factor)
        print(f"slope = {fit.slope:+.6f} (window [{fit.window[0]:g}, {fit.window[1]:g}], "
              f"{fit.npoints} points, r2 = {fit.r2:.6f})")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    from .functions import THEOREM_IDS
    from .verify import get_case, run_case, summary_text, write_case_artifacts

    ids = list(THEOREM_IDS) if args.ids == ["all"] else list(args.ids)
    for i in ids:
        try:
            get_case(i)
        except UnknownTheorem:
            raise _Usage(f"unknown case id {i!r}; known: {', '.join(THEOREM_IDS)}") from None
    dest = out_dir(args.out)
    reports = []
    for i in ids:
        rep = run_case(get_case(i))
        write_case_artifacts(rep, dest, svg=not args.no_svg)
        print(rep.summary_line(), flush=True)
        if args.verbose:
            for n in rep.notes:
                print(f"    {n}")
        reports.append(rep)
    text = summary_text(reports)
    write_text(dest / "summary.txt", text)
    print(text.splitlines()[-1])
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_pde(args: argparse.Namespace) -> int:
    from .tfpde import SHIPPED_PARAMS, dispersive_check, sup_norm_csv

    runs = []
    if args.config:
        from .config import load_config

        cfg = load_config(args.config)
        if cfg.pde is None:
            raise ConfigError("config has no [pde] section")
        runs.append((cfg.output.name, cfg.pde.params()))
        dest = out_dir(args.out or cfg.output.dir)
    else:
        names = list(SHIPPED_PARAMS) if args.params == "all" else [args.params]
        runs = [(f"tfpde_{n}", SHIPPED_PARAMS[n]) for n in names]
        dest = out_dir(args.out)
    ok = True
    for name, params in runs:
        rep = dispersive_check(params)
        rows = list(zip(rep.lambdas, rep.abs_values))
        write_text(dest / f"{name}.csv", sup_norm_csv(rows))
        write_text(dest / f"{name}.svg",
                   loglog_svg([("sup|u|", rep.lambdas, rep.abs_values),
                               ("(1+t)^-alpha", rep.lambdas, rep.envelope)],
                              title=name, xlabel="t", ylabel="sup|u|"))
        print(f"{name}: slope = {rep.fit.slope:+.4f} (need <= {rep.expected_slope + 0.15:+.3f}) "
              f"{'PASS' if rep.passed else 'FAIL'}; {'; '.join(rep.notes)}")
        ok &= rep.passed
    return EXIT_OK if ok else EXIT_FAIL


# }}}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse already exits 2; keep stderr format uniform
        self.print_usage(sys.stderr)
        _err(message)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mlcorput",
                description="Mittag-Leffler oscillatory integrals: evaluation, sweeps, decay checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ml = sub.add_parser("ml", help="Mittag-Leffler function utilities")
    mls = ml.add_subparsers(dest="ml_command", required=True, parser_class=_Parser)
    ev = mls.add_parser("eval", help="evaluate E_{alpha,beta}(z)")
    ev.add_argument("--alpha", type=float, required=True)
    ev.add_argument("--beta", type=float, required=True)
    ev.add_argument("--z", required=True, help="complex argument, e.g. 0+1i")
    ev.set_defaults(func=cmd_ml_eval)

    sw = sub.add_parser("sweep", help="lambda sweep from a config file")
    sw.add_argument("config")
    sw.add_argument("--out", help="output directory (overrides MLF_OUT_DIR)")
    sw.set_defaults(func=cmd_sweep)

    ve = sub.add_parser("verify", help="run registry cases")
    ve.add_argument("ids", nargs="+", help="case ids or 'all'")
    ve.add_argument("--out", help="output directory (overrides MLF_OUT_DIR)")
    ve.add_argument("--no-svg", action="store_true")
    ve.add_argument("-v", "--verbose", action="store_true")
    ve.set_defaults(func=cmd_verify)

    pd = sub.add_parser("pde", help="dispersive decay demo")
    pd.add_argument("config", nargs="?")
    pd.add_argument("--params", default="all", choices=["alpha0.5", "alpha0.8", "all"])
    pd.add_argument("--out", help="output directory (overrides MLF_OUT_DIR)")
    pd.set_defaults(func=cmd_pde)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (_Usage, ConfigError, UnknownTheorem, RegimeError) as e:
        _err(str(e))
        return EXIT_USAGE
    except HypothesisFailure as e:
        _err(str(e))
        return EXIT_FAIL
    except MLError as e:
        _err(f"numerical failure: {e}")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
