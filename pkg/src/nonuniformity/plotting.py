"""Minimal dependency-free SVG output for Lorenz curves and rate experiments."""
from __future__ import annotations

from typing import Sequence

from .lorenz import LorenzCurve
from .smoothing import RateExperiment

SIZE = 400
MARGIN = 40
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _xy(u: float, v: float, ymax: float = 1.0) -> tuple[str, str]:
    px = MARGIN + u * SIZE
    py = MARGIN + SIZE - (v / ymax) * SIZE
    return f"{px:.2f}", f"{py:.2f}"


def _frame(title: str) -> list[str]:
    total = SIZE + 2 * MARGIN
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">',
        f"<title>{title}</title>",
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="none" stroke="black"/>',
    ]


def render_curves_svg(curves: Sequence[tuple[str, LorenzCurve]]) -> str:
    """Curves on the unit square with the diagonal for reference and elbow markers."""
    out = _frame("Lorenz curves")
    x0, y0 = _xy(0, 0)
    x1, y1 = _xy(1, 1)
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="gray" stroke-dasharray="4 4"/>')
    for k, (label, curve) in enumerate(curves):
        color = COLORS[k % len(COLORS)]
        pts = [_xy(float(u), float(v)) for u, v in curve.breakpoints]
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="'
                   + " ".join(f"{a},{b}" for a, b in pts) + '"/>')
        out += [f'<circle cx="{a}" cy="{b}" r="3" fill="{color}"/>' for a, b in pts]
        lx, ly = MARGIN + 10, MARGIN + 20 + 18 * k
        out.append(f'<text x="{lx}" y="{ly}" fill="{color}" font-size="13">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_rate_svg(exp: RateExperiment) -> str:
    """Ratio ``m_n / n`` against ``n`` with the predicted rate as a dashed line."""
    out = _frame(f"{exp.regime} experiment")
    n_max = max(n for n, _, _ in exp.rows)
    ymax = max([exp.predicted_rate, *(r for _, _, r in exp.rows)]) * 1.1 or 1.0
    pts = [_xy(n / n_max, r, ymax) for n, _, r in exp.rows]
    out.append('<polyline fill="none" stroke="#1f77b4" stroke-width="2" points="'
               + " ".join(f"{a},{b}" for a, b in pts) + '"/>')
    a0, b0 = _xy(0, exp.predicted_rate, ymax)
    a1, b1 = _xy(1, exp.predicted_rate, ymax)
    out.append(f'<line x1="{a0}" y1="{b0}" x2="{a1}" y2="{b1}" stroke="#d62728" stroke-dasharray="4 4"/>')
    out.append(f'<text x="{MARGIN + 10}" y="{MARGIN + 20}" font-size="13">m_n/n vs n (n = 1..{n_max})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
