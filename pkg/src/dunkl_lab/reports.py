"""CSV and SVG report writers.

Floats are written with 17 significant digits so that a value read back is the
same double.  Every CSV has a header row; the fixed schemas are listed in SCHEMAS.
"""
from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

SCHEMAS = {
    "survival": ["t", "mc_tail", "mc_se", "analytic_tail", "z_score"],
    "trajectory": ["t", "x1", "...", "xm", "hit_wall", "hit_time"],
    "density_slice": ["coord", "value_series", "value_determinantal", "rel_err"],
    "verify": ["check", "status", "detail"],
    "laguerre_map": ["component", "ks_statistic", "p_value"],
    "coupling": ["root", "dt", "samples", "violations", "fraction", "max_excess"],
}


def report_schema() -> dict:
    """Column names of every CSV the harness writes (trajectory expands x1..xm)."""
    return {k: list(v) for k, v in SCHEMAS.items()}


def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if np.isnan(v):
            return "nan"
        return format(v, ".17g")
    return str(v)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(csv_text(header, rows), encoding="utf-8")
    return path


def trajectory_header(m: int) -> list[str]:
    return ["t"] + [f"x{i + 1}" for i in range(m)] + ["hit_wall", "hit_time"]


def trajectory_rows(traj) -> list[list]:
    wall, when = traj.hit if traj.hit else ("", float("nan"))
    return [[t, *x, wall, when] for t, x in zip(traj.times, traj.states)]


def survival_rows(curve, analytic) -> list[list]:
    analytic = np.asarray(analytic, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = (curve.survival - analytic) / curve.se
    return [list(r) for r in zip(curve.times, curve.survival, curve.se, analytic, z)]


def svg_lines(series: dict, title: str = "", xlabel: str = "", ylabel: str = "",
              width: int = 640, height: int = 400) -> str:
    """Minimal SVG line chart; ``series`` maps a label to (x, y) arrays."""
    pad = 50
    xs = np.concatenate([np.asarray(x, dtype=float) for x, _ in series.values()])
    ys = np.concatenate([np.asarray(y, dtype=float) for _, y in series.values()])
    ok = np.isfinite(xs) & np.isfinite(ys)
    x0, x1 = (xs[ok].min(), xs[ok].max()) if ok.any() else (0.0, 1.0)
    y0, y1 = (ys[ok].min(), ys[ok].max()) if ok.any() else (0.0, 1.0)
    x1 = x1 if x1 > x0 else x0 + 1
    y1 = y1 if y1 > y0 else y0 + 1

    def px(x, y):
        return (pad + (x - x0) / (x1 - x0) * (width - 2 * pad),
                height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad))

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect width="{width}" height="{height}" fill="white"/>',
           f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
           f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
           f'<text x="{width / 2}" y="{pad / 2}" text-anchor="middle" font-size="14">{title}</text>',
           f'<text x="{width / 2}" y="{height - 10}" text-anchor="middle" font-size="12">{xlabel}</text>',
           f'<text x="12" y="{height / 2}" font-size="12" transform="rotate(-90 12 {height / 2})" '
           f'text-anchor="middle">{ylabel}</text>',
           f'<text x="{pad}" y="{height - pad + 15}" font-size="10">{x0:.3g}</text>',
           f'<text x="{width - pad}" y="{height - pad + 15}" font-size="10" text-anchor="end">{x1:.3g}</text>',
           f'<text x="{pad - 5}" y="{height - pad}" font-size="10" text-anchor="end">{y0:.3g}</text>',
           f'<text x="{pad - 5}" y="{pad + 4}" font-size="10" text-anchor="end">{y1:.3g}</text>']
    for i, (label, (x, y)) in enumerate(series.items()):
        c = colors[i % len(colors)]
        pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in (px(u, v) for u, v in zip(x, y))
                       if np.isfinite(a) and np.isfinite(b))
        out.append(f'<polyline fill="none" stroke="{c}" stroke-width="1.5" points="{pts}"/>')
        out.append(f'<text x="{width - pad - 5}" y="{pad + 15 * (i + 1)}" font-size="11" fill="{c}" '
                   f'text-anchor="end">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, series: dict, **kw) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(svg_lines(series, **kw), encoding="utf-8")
    return path
