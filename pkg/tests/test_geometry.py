"""Incidence geometry helpers: planes, lines, transversals, quadrics."""
from fractions import Fraction

import pytest

from birat3d.errors import ComplexTransversals, DegenerateConfiguration
from birat3d.geometry import (Conic, Line, Point, common_point_of_lines,
                              line_conic_points, line_of_planes,
                              pencil_degenerate_members,
                              plane_through_line_and_point,
                              plane_through_points, plucker_quadric,
                              plucker_to_line, point_of_planes, quadric_rank,
                              quadric_through_lines, second_quadric_point,
                              span_plane, split_rank2_quadric,
                              transversals_of_four_lines)
from birat3d.mpoly import P3Form
from birat3d.scalars import context_for

F = Fraction
CTX = context_for([F(0)])


def _pt(*coords):
    return Point(tuple(F(c) for c in coords))


def _line(p, q):
    return Line(_pt(*p), _pt(*q))


def test_plane_through_points_cube_face():
    plane = plane_through_points(
        [_pt(1, 0, 0, 0), _pt(1, 0, 1, 0), _pt(1, 0, 0, 1)], CTX)
    assert CTX.proportional(plane.coeffs, (F(0), F(1), F(0), F(0)))


def test_plane_point_round_trip():
    p1 = P3Form.linear((F(1), F(2), F(0), F(-1)))
    p2 = P3Form.linear((F(0), F(1), F(1), F(0)))
    p3 = P3Form.linear((F(2), F(0), F(1), F(1)))
    pt = point_of_planes(p1, p2, p3, CTX)
    for p in (p1, p2, p3):
        assert p.value(pt.coords) == 0


def test_line_of_planes_lies_in_both():
    p1 = P3Form.linear((F(1), F(2), F(0), F(-1)))
    p2 = P3Form.linear((F(0), F(1), F(1), F(0)))
    line = line_of_planes(p1, p2, CTX)
    for mult in ((F(1), F(0)), (F(0), F(1)), (F(2), F(-3))):
        pt = line.point_at(*mult)
        assert p1.value(pt.coords) == 0 and p2.value(pt.coords) == 0


def test_plucker_round_trip():
    line = _line((1, 0, 2, -1), (0, 1, 1, 3))
    p = line.plucker()
    assert plucker_quadric(p) == 0
    again = plucker_to_line(p, CTX)
    assert again.same_as(line, CTX)


def test_line_incidences():
    e1 = _line((1, 0, 0, 0), (1, 1, 0, 0))
    e2 = _line((1, 0, 0, 0), (1, 0, 1, 0))
    skew = _line((1, 0, 0, 1), (1, 0, 1, 1))
    assert e1.meets(e2, CTX)
    assert not e1.meets(skew, CTX)
    assert e1.contains(_pt(1, 5, 0, 0), CTX)
    hit = e1.intersect(e2, CTX)
    assert CTX.proportional(hit.coords, (F(1), F(0), F(0), F(0)))


def test_span_plane_and_common_point():
    e1 = _line((1, 0, 0, 0), (1, 1, 0, 0))
    e2 = _line((1, 0, 0, 0), (1, 0, 1, 0))
    plane = span_plane(e1, e2, CTX)
    assert CTX.proportional(plane.coeffs, (F(0), F(0), F(0), F(1)))
    apex = common_point_of_lines([e1, e2], CTX)
    assert CTX.proportional(apex.coords, (F(1), F(0), F(0), F(0)))


def test_plane_through_line_and_point():
    line = _line((1, 0, 0, 0), (1, 1, 0, 0))
    plane = plane_through_line_and_point(line, _pt(1, 0, 1, 0), CTX)
    assert plane.value((F(1), F(7), F(0), F(0))) == 0
    assert plane.value((F(1), F(0), F(1), F(0))) == 0
    assert plane.value((F(1), F(0), F(0), F(1))) != 0


def test_transversals_of_generic_lines():
    """Two opposite cube edges plus two diagonals: re-verify incidences."""
    lines = [_line((1, 0, 0, 0), (1, 1, 0, 0)),
             _line((1, 0, 1, 1), (1, 1, 1, 2)),
             _line((1, 0, 0, 2), (1, 1, 1, 0)),
             _line((1, 1, 0, 3), (1, 0, 2, 1))]
    result = transversals_of_four_lines(lines, CTX)
    assert not result.infinite
    assert len(result.lines) == 2
    for t in result.lines:
        for given in lines:
            assert t.meets(given, CTX)
    assert result.lines[0].same_as(result.lines[1], CTX) is False


def _segre_rulings():
    # lines x2 = n*x0, x3 = n*x1 on the quadric x0*x3 = x1*x2
    return [_line((1, 0, 0, 0), (0, 1, 0, 0)),
            _line((1, 0, 1, 0), (0, 1, 0, 1)),
            _line((1, 0, 2, 0), (0, 1, 0, 2)),
            _line((1, 0, 3, 0), (0, 1, 0, 3))]


def test_transversals_infinite_family():
    """Four rulings of x0*x3 = x1*x2 share the complementary family."""
    result = transversals_of_four_lines(_segre_rulings(), CTX)
    assert result.infinite
    assert result.quadric is not None
    assert CTX.proportional(
        result.quadric.coeffs,
        (0, 0, 0, 1, 0, -1, 0, 0, 0, 0))


def test_transversals_complex_pair():
    # the fourth line misses the real points of the ruled quadric
    lines = _segre_rulings()[:3] + [_line((1, 0, 0, -1), (0, 1, 1, 0))]
    with pytest.raises(ComplexTransversals):
        transversals_of_four_lines(lines, CTX)


def test_quadric_rank_and_split():
    # x1*x2 = 0 is the plane pair {x1 = 0} + {x2 = 0}
    q = P3Form.quadratic((F(0), F(0), F(0), F(0), F(0),
                          F(1), F(0), F(0), F(0), F(0)))
    assert quadric_rank(q, CTX) == 2
    h1, h2 = split_rank2_quadric(q, CTX)
    for h in (h1, h2):
        assert CTX.proportional(h.coeffs, (0, 1, 0, 0)) or \
            CTX.proportional(h.coeffs, (0, 0, 1, 0))
    assert not CTX.proportional(h1.coeffs, h2.coeffs)


def test_line_conic_points_on_coordinate_conic():
    """The conic x1*x2 + x1*x3 + x2*x3 in the plane 3*x0 = x1 + x2 + x3."""
    conic = Conic(P3Form.linear((F(3), F(-1), F(-1), F(-1))),
                  P3Form.quadratic((F(0), F(0), F(0), F(0), F(0),
                                    F(1), F(1), F(0), F(1), F(0))))
    # the chord x2 = x3 meets it at the x1-axis trace and at (1,-1,2,2)
    chord = _line((1, 3, 0, 0), (1, -1, 2, 2))
    pts = line_conic_points(chord, conic, CTX)
    coords = sorted(tuple(p.coords) for p in pts)
    assert len(pts) == 2
    assert any(CTX.proportional(p.coords, (1, 3, 0, 0)) for p in pts)
    assert any(CTX.proportional(p.coords, (1, -1, 2, 2)) for p in pts)


def test_second_quadric_point():
    quad = P3Form.quadratic((F(0), F(0), F(0), F(0), F(0),
                             F(1), F(1), F(0), F(1), F(0)))
    start = _pt(1, 3, 0, 0)     # on the quadric
    other = _pt(1, 1, 1, 1)     # off it, fixing the secant direction
    second = second_quadric_point(start, other, quad, CTX)
    assert second is not None
    assert quad.value(second.coords) == 0
    assert not CTX.proportional(second.coords, start.coords)


def test_quadric_through_lines():
    rulings = _segre_rulings()[:3]
    quad, dim = quadric_through_lines(rulings, CTX)
    assert quad is not None and dim == 1
    assert quadric_rank(quad, CTX) == 4
    for line in rulings:
        for mult in ((F(1), F(0)), (F(0), F(1)), (F(1), F(1)), (F(2), F(1))):
            assert quad.value(line.point_at(*mult).coords) == 0


def test_pencil_degenerate_members():
    # pencil of x1*x2 and x0*x3: degenerate members are plane pairs
    q0 = P3Form.quadratic((F(0), F(0), F(0), F(0), F(0),
                           F(1), F(0), F(0), F(0), F(0)))
    q1 = P3Form.quadratic((F(0), F(0), F(0), F(1), F(0),
                           F(0), F(0), F(0), F(0), F(0)))
    members = pencil_degenerate_members(q0, q1, CTX)
    assert members
    for member in members:
        assert member.rank <= 2
        assert quadric_rank(member.quadric, CTX) == member.rank
