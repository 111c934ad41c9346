"""Deterministic SVG rendering of 2D bodies, points, and halfspace boundaries.

The viewBox is the joint bounding box plus a 5% margin; input order fixes the
element order, and coordinates are printed at 12 significant digits, so equal
inputs give byte-identical documents.  The y axis is flipped so larger y is
drawn upward.
"""

from __future__ import annotations

from fractions import Fraction

from .geometry import ConvexBody, GeometryError, Halfspace, rot90

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(x) -> str:
    return f"{float(Fraction(x)):.12g}"


def _is_point(obj) -> bool:
    return isinstance(obj, tuple) and len(obj) == 2 and not isinstance(obj[0], tuple)


def _bbox(objects):
    xs, ys = [], []
    for obj in objects:
        if isinstance(obj, ConvexBody):
            if obj.is_empty or not obj.has_vertices():
                continue
            for v in obj.vertices:
                xs.append(Fraction(v[0]))
                ys.append(Fraction(v[1]))
        elif _is_point(obj):
            xs.append(Fraction(obj[0]))
            ys.append(Fraction(obj[1]))
    if not xs:
        return Fraction(0), Fraction(0), Fraction(1), Fraction(1)
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    w = max(x1 - x0, Fraction(1, 100))
    h = max(y1 - y0, Fraction(1, 100))
    mx, my = w * Fraction(1, 20), h * Fraction(1, 20)
    return x0 - mx, y0 - my, w + 2 * mx, h + 2 * my


def _halfspace_segment(h: Halfspace, x0, y0, w, hgt):
    """Boundary line of the halfspace clipped to the view window."""
    n = h.normal
    d = rot90(n)
    nn = n[0] * n[0] + n[1] * n[1]
    base = (Fraction(h.offset * n[0], nn), Fraction(h.offset * n[1], nn))
    span = 2 * (w + hgt)
    a = (base[0] - span * d[0], base[1] - span * d[1])
    b = (base[0] + span * d[0], base[1] + span * d[1])
    return a, b


def render_svg(objects, styles=None) -> str:
    """styles: per-object dicts with optional fill/stroke/opacity keys."""
    objects = list(objects)
    for obj in objects:
        if isinstance(obj, ConvexBody) and obj.dim != 2:
            raise GeometryError("svg rendering is 2D only")
    x0, y0, w, h = _bbox(objects)
    r = min(w, h) * Fraction(1, 100)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(x0)} {_fmt(-y0 - h)} '
        f'{_fmt(w)} {_fmt(h)}">',
        '<g transform="scale(1,-1)">',
    ]
    for i, obj in enumerate(objects):
        style = (styles[i] if styles and i < len(styles) else None) or {}
        stroke = style.get("stroke", PALETTE[i % len(PALETTE)])
        fill = style.get("fill", "none")
        opacity = style.get("opacity", "1")
        common = f'stroke="{stroke}" fill="{fill}" opacity="{opacity}"'
        if isinstance(obj, ConvexBody):
            if obj.is_empty or not obj.has_vertices():
                if not obj.is_empty:
                    for hs in obj.halfspaces:
                        a, b = _halfspace_segment(hs, x0, y0, w, h)
                        parts.append(
                            f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" '
                            f'x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" {common} '
                            'stroke-width="0.5%"/>'
                        )
                continue
            pts = " ".join(f"{_fmt(v[0])},{_fmt(v[1])}" for v in obj.vertices)
            if len(obj.vertices) == 1:
                v = obj.vertices[0]
                parts.append(
                    f'<circle cx="{_fmt(v[0])}" cy="{_fmt(v[1])}" r="{_fmt(r)}" '
                    f'{common}/>'
                )
            else:
                parts.append(f'<polygon points="{pts}" {common} stroke-width="0.5%"/>')
        elif _is_point(obj):
            parts.append(
                f'<circle cx="{_fmt(obj[0])}" cy="{_fmt(obj[1])}" r="{_fmt(r)}" '
                f'{common}/>'
            )
        elif isinstance(obj, Halfspace):
            a, b = _halfspace_segment(obj, x0, y0, w, h)
            parts.append(
                f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" '
                f'x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" {common} stroke-width="0.5%"/>'
            )
        else:
            raise GeometryError(f"cannot render {type(obj).__name__}")
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
