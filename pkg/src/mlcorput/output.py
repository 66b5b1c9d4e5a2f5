"""CSV and SVG writers shared by the verification runner and the CLI."""

from __future__ import annotations

import csv
import io
import math
import os
from pathlib import Path
from typing import Sequence

__all__ = ["csv_text", "write_text", "loglog_svg", "out_dir"]


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    """Full-precision CSV (``repr`` floats, '.' radix, '\\n' line ends)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(header))
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def out_dir(explicit: str | None = None) -> Path:
    """Output directory: explicit argument, else ``MLF_OUT_DIR``, else ``./mlf_out``."""
    return Path(explicit or os.environ.get("MLF_OUT_DIR") or "mlf_out")


_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def loglog_svg(series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
               title: str = "", xlabel: str = "lambda", ylabel: str = "|I|",
               width: int = 800, height: int = 600) -> str:
    """Log-log polyline plot; non-positive points are skipped."""
    pts = [(lbl, [(x, y) for x, y in zip(xs, ys)
                  if x > 0 and y > 0 and math.isfinite(x) and math.isfinite(y)])
           for lbl, xs, ys in series]
    allx = [math.log10(x) for _, p in pts for x, _ in p]
    ally = [math.log10(y) for _, p in pts for _, y in p]
    if not allx:
        allx, ally = [0.0, 1.0], [0.0, 1.0]
    x0, x1 = min(allx), max(allx)
    y0, y1 = min(ally), max(ally)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1
    ml, mr, mt, mb = 80, 20, 40, 60
    pw, ph = width - ml - mr, height - mt - mb

    def X(v: float) -> float:
        return ml + (math.log10(v) - x0) / (x1 - x0) * pw

    def Y(v: float) -> float:
        return mt + (1 - (math.log10(v) - y0) / (y1 - y0)) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
           f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
           f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" font-size="16">{title}</text>',
           f'<text x="{width / 2:.1f}" y="{height - 16}" text-anchor="middle" '
           f'font-size="14">{xlabel}</text>',
           f'<text x="20" y="{height / 2:.1f}" text-anchor="middle" font-size="14" '
           f'transform="rotate(-90 20 {height / 2:.1f})">{ylabel}</text>']
    for d in range(math.floor(x0), math.ceil(x1) + 1):
        if x0 <= d <= x1:
            px = ml + (d - x0) / (x1 - x0) * pw
            out.append(f'<line x1="{px:.2f}" y1="{mt + ph}" x2="{px:.2f}" y2="{mt + ph + 6}" '
                       f'stroke="black"/>')
            out.append(f'<text x="{px:.2f}" y="{mt + ph + 22}" text-anchor="middle" '
                       f'font-size="12">1e{d}</text>')
    for d in range(math.floor(y0), math.ceil(y1) + 1):
        if y0 <= d <= y1:
            py = mt + (1 - (d - y0) / (y1 - y0)) * ph
            out.append(f'<line x1="{ml - 6}" y1="{py:.2f}" x2="{ml}" y2="{py:.2f}" stroke="black"/>')
            out.append(f'<text x="{ml - 10}" y="{py + 4:.2f}" text-anchor="end" '
                       f'font-size="12">1e{d}</text>')
    for i, (lbl, p) in enumerate(pts):
        if not p:
            continue
        color = _COLORS[i % len(_COLORS)]
        coords = " ".join(f"{X(x):.2f},{Y(y):.2f}" for x, y in p)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{coords}"/>')
        out.append(f'<text x="{ml + 10}" y="{mt + 20 + 18 * i}" fill="{color}" '
                   f'font-size="13">{lbl}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
