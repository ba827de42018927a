"""Minimal SVG and CSV output for sampled clover curves."""

from __future__ import annotations

import csv
import io
from itertools import groupby

from .clover import CloverPoint

__all__ = ["curve_csv", "curve_svg", "CURVE_CSV_HEADER"]

CURVE_CSV_HEADER = ("theta", "r", "x", "y")
VIEWBOX = "-1.1 -1.1 2.2 2.2"


def curve_svg(points: list[CloverPoint], m: int) -> str:
    """One stroke-only ``<path>`` per leaf, y axis pointing up."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{VIEWBOX}" '
        'width="440" height="440">',
        f"<title>{m}-clover</title>",
        '<g transform="scale(1,-1)" fill="none" stroke="black" stroke-width="0.01">',
    ]
    for leaf, group in groupby(points, key=lambda p: p.leaf):
        coords = [f"{p.x:.12f},{p.y:.12f}" for p in group]
        d = "M " + " L ".join(coords) + " Z"
        lines.append(f'<path data-leaf="{leaf}" d="{d}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def curve_csv(points: list[CloverPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CURVE_CSV_HEADER)
    for p in points:
        writer.writerow([repr(p.angle), repr(p.radius), repr(p.x), repr(p.y)])
    return buf.getvalue()
