"""ASCII and SVG renderings of a map."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from ..board import MapState
from ..terrain import TerrainType

FORMATS = ("ascii", "svg")


def render_ascii(m: MapState) -> str:
    lines = []
    for r, row in enumerate(m.rows()):
        indent = " " if r % 2 else ""
        lines.append(indent + " ".join(t.code for t in row))
    return "\n".join(lines) + "\n"


def hex_center(row: int, col: int, size: float):
    """Pixel center of a pointy-top hex; odd rows sit half a hex to the right."""
    w = math.sqrt(3) * size
    x = w * (col + 0.5 * (row % 2)) + w / 2
    y = 1.5 * size * row + size
    return x, y


def hex_corners(cx: float, cy: float, size: float):
    return [
        (cx + size * math.cos(math.radians(60 * k - 30)), cy + size * math.sin(math.radians(60 * k - 30)))
        for k in range(6)
    ]


def render_svg(m: MapState, size: float = 30.0, labels: bool = True, title: str = "") -> str:
    w = math.sqrt(3) * size
    width = w * (max(m.layout.row_lengths) + 0.5)
    height = 1.5 * size * (m.layout.rows - 1) + 2 * size
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}">',
    ]
    if title:
        parts.append(f"<title>{escape(title)}</title>")
    for c in m.layout.coords():
        t = m[c]
        cx, cy = hex_center(c.row, c.col, size)
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in hex_corners(cx, cy, size))
        parts.append(
            f'<polygon class="hex" data-row="{c.row}" data-col="{c.col}" points="{pts}" '
            f'fill="{t.color}" stroke="#333333" stroke-width="1"/>'
        )
        if labels:
            ink = "#ffffff" if t in (TerrainType.SWAMP, TerrainType.LAKES, TerrainType.WASTELAND) else "#000000"
            parts.append(
                f'<text x="{cx:.2f}" y="{cy:.2f}" font-size="{size * 0.5:.1f}" text-anchor="middle" '
                f'dominant-baseline="central" fill="{ink}">{t.code}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render(m: MapState, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return render_ascii(m)
    if fmt == "svg":
        return render_svg(m)
    raise ValueError(f"unknown render format {fmt!r}; expected one of {FORMATS}")
