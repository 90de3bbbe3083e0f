"""Standalone SVG rendering of topic sentiment TFNs. No dependencies."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

PALETTE = [
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#17becf",
    "#e377c2",
]

WIDTH = 880
HEIGHT = 460
MARGIN_LEFT = 60
MARGIN_RIGHT = 240
MARGIN_TOP = 40
MARGIN_BOTTOM = 60


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def emit_tfn_svg(
    reports: Sequence,
    path: str | Path,
    selection: Sequence[int] | None = None,
    ramp: float = 0.2,
) -> Path:
    """Write one SVG with a labeled membership triangle per selected topic.

    ``selection`` lists topic ids (default: every report). The x axis spans
    at least [-1, 1], widened to cover every drawn support; dashed vertical
    reference lines mark -ramp, 0 and +ramp. Returns the output path.
    """
    by_id = {r.topic_id: r for r in reports}
    if selection is None:
        selected = list(reports)
    else:
        selected = []
        for topic_id in selection:
            if topic_id not in by_id:
                raise ValueError(f"unknown topic id {topic_id}")
            selected.append(by_id[topic_id])
    if not selected:
        raise ValueError("no topics selected for the SVG")

    x_lo = min(-1.0, min(r.tfn.a for r in selected))
    x_hi = max(1.0, max(r.tfn.b for r in selected))
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(x: float) -> float:
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return MARGIN_TOP + (1.0 - y) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
    ]

    # Axes.
    parts.append(
        f'<line x1="{px(x_lo):.2f}" y1="{py(0):.2f}" x2="{px(x_hi):.2f}" y2="{py(0):.2f}" '
        'stroke="#000000" stroke-width="1.5"/>'
    )
    parts.append(
        f'<line x1="{px(x_lo):.2f}" y1="{py(0):.2f}" x2="{px(x_lo):.2f}" y2="{py(1):.2f}" '
        'stroke="#000000" stroke-width="1.5"/>'
    )
    for y in (0.5, 1.0):
        parts.append(
            f'<text x="{px(x_lo) - 8:.2f}" y="{py(y) + 4:.2f}" text-anchor="end" '
            f'font-size="11" font-family="sans-serif">{y:g}</text>'
        )

    # Reference lines at -ramp, 0, +ramp.
    for x_ref in (-ramp, 0.0, ramp):
        parts.append(
            f'<line x1="{px(x_ref):.2f}" y1="{py(0):.2f}" x2="{px(x_ref):.2f}" y2="{py(1):.2f}" '
            'stroke="#999999" stroke-width="1" stroke-dasharray="4 3"/>'
        )
        parts.append(
            f'<text x="{px(x_ref):.2f}" y="{py(0) + 16:.2f}" text-anchor="middle" '
            f'font-size="11" font-family="sans-serif">{x_ref:g}</text>'
        )
    for x_tick in (-1.0, 1.0):
        if x_lo <= x_tick <= x_hi:
            parts.append(
                f'<text x="{px(x_tick):.2f}" y="{py(0) + 16:.2f}" text-anchor="middle" '
                f'font-size="11" font-family="sans-serif">{x_tick:g}</text>'
            )

    # One triangle polyline per topic plus a legend entry.
    legend_x = WIDTH - MARGIN_RIGHT + 20
    for i, report in enumerate(selected):
        color = PALETTE[i % len(PALETTE)]
        t = report.tfn
        points = f"{px(t.a):.2f},{py(0):.2f} {px(t.m):.2f},{py(1):.2f} {px(t.b):.2f},{py(0):.2f}"
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{points}"/>'
        )
        terms = ", ".join(term for term, _ in report.top_terms[:3]) or f"topic {report.topic_id}"
        ly = MARGIN_TOP + 14 + i * 20
        parts.append(
            f'<line x1="{legend_x}" y1="{ly - 4}" x2="{legend_x + 18}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="3"/>'
        )
        parts.append(
            f'<text x="{legend_x + 24}" y="{ly}" font-size="12" font-family="sans-serif">'
            f"{report.topic_id}: {_escape(terms)}</text>"
        )

    parts.append("</svg>")
    path = Path(path)
    path.write_text("\n".join(parts) + "\n", encoding="utf-8")
    return path
