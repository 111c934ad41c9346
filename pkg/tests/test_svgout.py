"""SVG output: structure, determinism, and coordinate handling."""

from fractions import Fraction as F

import pytest

from quanthelly.geometry import ConvexBody, GeometryError, Halfspace, convex_hull
from quanthelly.svgout import render_svg


def tri():
    return convex_hull([(0, 0), (4, 0), (0, 3)])


def test_svg_basic_polygon():
    doc = render_svg([tri()])
    assert doc.startswith("<?xml")
    assert "<svg" in doc and doc.rstrip().endswith("</svg>")
    assert "<polygon" in doc
    assert doc.endswith("\n")


def test_svg_deterministic():
    objs = [tri(), convex_hull([(1, 1), (2, 1), (1, 2)])]
    assert render_svg(objs) == render_svg(objs)


def test_svg_point_rendered_as_circle():
    p = ConvexBody.from_points([(F(1, 2), F(1, 2))])
    doc = render_svg([tri(), p])
    assert "<circle" in doc


def test_svg_bare_tuple_point():
    doc = render_svg([tri(), (1, 1)])
    assert "<circle" in doc


def test_svg_halfspace_line():
    doc = render_svg([tri(), Halfspace.make((1, 0), 2)])
    assert "<line" in doc


def test_svg_styles_override():
    doc = render_svg([tri()], [{"stroke": "#123456"}])
    assert "#123456" in doc


def test_svg_y_axis_flipped():
    # y-up data must render through a flip transform
    doc = render_svg([tri()])
    assert 'transform="scale(1,-1)"' in doc


def test_svg_rejects_3d():
    cube = convex_hull([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
    with pytest.raises(GeometryError):
        render_svg([cube])


def test_svg_rational_coordinates_no_fractions_leak():
    body = convex_hull([(F(1, 3), 0), (F(2, 3), 0), (F(1, 2), F(1, 7))])
    doc = render_svg([body])
    assert "Fraction" not in doc
    assert "/" not in doc.split("viewBox")[1].split('"')[1]
