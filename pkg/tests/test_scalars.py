"""Exact/float scalar contexts and the shared linear algebra kernel."""
from fractions import Fraction

import pytest

from birat3d.scalars import (context_for, parse_scalar, primitive,
                             scale_first_one, scalar_to_json)

F = Fraction


def test_parse_scalar_keeps_strings_and_ints_exact():
    assert parse_scalar("3/4") == F(3, 4)
    assert isinstance(parse_scalar("3/4"), F)
    assert parse_scalar("0.16") == F(4, 25)
    assert parse_scalar(5) == F(5)
    assert parse_scalar("-11/20") == F(-11, 20)


def test_parse_scalar_passes_floats_through():
    x = parse_scalar(0.5)
    assert isinstance(x, float) and x == 0.5


def test_scalar_json_round_trip():
    for s in (F(3, 4), F(-7), F(0), F(22, 7)):
        assert parse_scalar(scalar_to_json(s)) == s
    assert scalar_to_json(0.25) == 0.25


def test_context_exactness():
    assert context_for([F(1), F(2, 3)]).exact
    assert not context_for([F(1), 0.5]).exact


def test_det_and_rank():
    ctx = context_for([F(0)])
    assert ctx.det([[F(1), F(2)], [F(3), F(4)]]) == F(-2)
    assert ctx.rank([[F(1), F(0), F(1)],
                     [F(0), F(1), F(1)],
                     [F(1), F(1), F(2)]]) == 2


def test_nullspace_finds_the_face_plane_covector():
    # three corners of the x1 = 0 cube face
    ctx = context_for([F(0)])
    rows = [[F(1), F(0), F(0), F(0)],
            [F(1), F(0), F(1), F(0)],
            [F(1), F(0), F(0), F(1)]]
    kernel = ctx.nullspace(rows, 4)
    assert len(kernel) == 1
    assert ctx.proportional(kernel[0], (F(0), F(1), F(0), F(0)))


def test_solve_exact():
    ctx = context_for([F(0)])
    sol = ctx.solve([[F(2), F(1)], [F(1), F(-1)]], [F(5), F(1)])
    assert sol == (F(2), F(1))


def test_solve_overdetermined_consistency():
    ctx = context_for([F(0)])
    rows = [[F(1), F(0)], [F(0), F(1)], [F(1), F(1)]]
    assert ctx.solve_overdetermined(rows, [F(2), F(3), F(5)]) == (F(2), F(3))
    assert ctx.solve_overdetermined(rows, [F(2), F(3), F(6)]) is None


def test_proportional():
    ctx = context_for([F(0)])
    assert ctx.proportional((F(2), F(4), F(0)), (F(1), F(2), F(0)))
    assert not ctx.proportional((F(2), F(4), F(1)), (F(1), F(2), F(0)))
    assert not ctx.proportional((F(0), F(0)), (F(1), F(0)))


def test_primitive_and_scale_first_one():
    ctx = context_for([F(0)])
    assert primitive((F(2, 3), F(-4, 3))) == (F(1), F(-2))
    assert scale_first_one((F(0), F(3), F(6)), ctx) == (F(0), F(1), F(2))


def test_float_context_tolerates_roundoff():
    ctx = context_for([0.5])
    assert ctx.proportional((0.3, 0.6), (0.1, 0.2 + 1e-14))
    assert ctx.is_zero(1e-13, 1.0)
    assert not ctx.is_zero(1e-3, 1.0)
