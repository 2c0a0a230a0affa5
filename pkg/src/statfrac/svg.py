"""Dependency-free SVG rendering of construction levels.

One horizontal bar row per level, level 0 on top, x spanning [0, 1] in user
units.  Degenerate intervals get a minimum visible width.
"""

from __future__ import annotations

from typing import Sequence

from .intervals import IntervalSet

_MIN_WIDTH = 0.0015
_FILL = "#1f6fb4"


def levels_svg(levels: Sequence[IntervalSet], comment: str | None = None) -> str:
    rows = len(levels)
    if rows == 0:
        raise ValueError("need at least one level to draw")
    row_h = 1.0 / rows
    parts = ['<?xml version="1.0" encoding="UTF-8"?>']
    if comment is not None:
        parts.append(f"<!-- {comment.replace('--', '- -')} -->")
    parts.append(
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1" '
        'preserveAspectRatio="none" width="640" height="320">'
    )
    for row, level in enumerate(levels):
        y = row * row_h + 0.1 * row_h
        h = 0.8 * row_h
        for lo, hi in level:
            x = float(lo)
            w = max(float(hi) - float(lo), _MIN_WIDTH)
            parts.append(
                f'<rect x="{x:.6g}" y="{y:.6g}" width="{w:.6g}" height="{h:.6g}" fill="{_FILL}"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
