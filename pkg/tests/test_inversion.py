"""Closed-form inverses, base loci, and evaluation round trips."""
from fractions import Fraction

import pytest

from birat3d.birationality import synthesize_weights
from birat3d.errors import NotBirational
from birat3d.inversion import (base_locus, eval_inverse, eval_map, invert,
                               verify_inverse)

import fixturedata as fx

F = Fraction


def test_cube_inverse_is_the_affine_chart(cube):
    data = invert(cube)
    inv = data.inverse
    assert inv.degrees == (1, 1, 1)
    expected = (((F(1), F(-1), F(0), F(0)), (F(0), F(1), F(0), F(0))),
                ((F(1), F(0), F(-1), F(0)), (F(0), F(0), F(1), F(0))),
                ((F(1), F(0), F(0), F(-1)), (F(0), F(0), F(0), F(1))))
    got = tuple(tuple(form.coeffs for form in pair) for pair in inv.pairs)
    assert got == expected
    assert data.pencils == {} and data.reference == {}
    assert verify_inverse(cube, inv)


def test_verify_rejects_a_wrong_inverse(cube):
    data = invert(cube)
    pairs = list(data.inverse.pairs)
    pairs[0] = (pairs[0][1], pairs[0][0])
    import dataclasses
    broken = dataclasses.replace(data.inverse, pairs=tuple(pairs))
    assert not verify_inverse(cube, broken)


def test_cube_eval_centroid(cube):
    pt = eval_map(cube, ((F(1), F(1)), (F(1), F(1)), (F(1), F(1))))
    ctx = cube.ctx()
    assert ctx.proportional(pt, (F(1), F(1, 2), F(1, 2), F(1, 2)))
    back = eval_inverse(invert(cube).inverse, pt)
    assert back == ((F(1), F(1)), (F(1), F(1)), (F(1), F(1)))


def test_bernstein_cube_agrees_with_the_monomial_patch(cube, bernstein_cube):
    ctx = bernstein_cube.ctx()
    corner = eval_map(bernstein_cube, ((F(1), F(0)),) * 3)
    assert ctx.proportional(corner, (F(1), F(0), F(0), F(0)))
    # the two bases describe the same multilinear interpolant
    for params in (((F(1), F(1)),) * 3,
                   ((F(1), F(3)), (F(2), F(1)), (F(5), F(-1)))):
        a = eval_map(cube, params)
        b = eval_map(bernstein_cube, params)
        assert ctx.proportional(a, b)
    data = invert(bernstein_cube)
    mid = eval_map(bernstein_cube, ((F(1), F(1)),) * 3)
    back = eval_inverse(data.inverse, mid)
    assert all(ctx.proportional(p, (F(1), F(1))) for p in back)


def test_bernstein_pyramid_round_trip(pyramid_net):
    from birat3d.jsonio import net_from_json
    doc = dict(fx.PYRAMID_NET_JSON, basis="bernstein")
    net = synthesize_weights(net_from_json(doc), fx.PYRAMID_FACTORS)
    data = invert(net)
    assert data.inverse.basis == "bernstein"
    assert verify_inverse(net, data.inverse)
    ctx = net.ctx()
    for params in (((F(1), F(2)), (F(3), F(-1)), (F(2), F(5))),
                   ((F(1), F(0)), (F(1), F(1)), (F(4), F(1)))):
        pt = eval_map(net, params)
        back = eval_inverse(data.inverse, pt)
        assert all(ctx.proportional(p, q) for p, q in zip(params, back))


def test_cube_base_loci(cube):
    data = invert(cube)
    fwd = data.base_ideal
    assert fwd.labels == ("curve",)
    degrees = sorted(g.degree for g in fwd.components[0])
    assert degrees == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    ctx = cube.ctx()
    for g in fwd.components[0]:
        assert ctx.proportional(g.coeffs, (F(1),) * len(g.coeffs))
    inv = data.base_inverse
    assert inv.labels == ("s", "t", "u")
    # each inverse component is the pencil of the axis' two face planes
    from birat3d.controlnet import classification_of
    faces = classification_of(cube).faces
    for axis, comp in enumerate(inv.components):
        assert tuple(f.coeffs for f in comp) == (
            faces[2 * axis].form.coeffs, faces[2 * axis + 1].form.coeffs)
    assert base_locus(cube).labels == fwd.labels


def test_unit_weight_pyramid_has_no_inverse(pyramid_net):
    with pytest.raises(NotBirational):
        invert(pyramid_net)


def test_pyramid_inverse_round_trip(pyramid_birational):
    net = pyramid_birational
    data = invert(net)
    assert data.inverse.degrees == (1, 1, 2)
    ctx = net.ctx()
    assert {k: len(v) for k, v in data.pencils.items()} == {
        "s": 1, "t": 1, "u": 1}
    assert ctx.proportional(data.pencils["s"][0], (F(1), F(-2)))
    assert ctx.proportional(data.pencils["t"][0], (F(1), F(-2)))
    assert ctx.proportional(data.pencils["u"][0], (F(143), F(-918)))
    assert set(data.reference) == {"base_plane", "conic_plane", "cone"}
    assert verify_inverse(net, data.inverse)
    assert data.base_ideal.labels == ("point", "curve")
    assert data.base_inverse.labels == ("s", "t", "C")
    for params in (((F(2), F(3)), (F(-1), F(4)), (F(5), F(1))),
                   ((F(1), F(0)), (F(0), F(1)), (F(1), F(1))),
                   ((F(7), F(-2)), (F(3), F(5)), (F(-1), F(-6)))):
        pt = eval_map(net, params)
        back = eval_inverse(data.inverse, pt)
        assert all(ctx.proportional(p, q) for p, q in zip(params, back))


def test_scaffold_inverse_round_trip(scaffold_net):
    net = synthesize_weights(scaffold_net, ((F(1), F(1)),) * 3)
    data = invert(net)
    assert data.inverse.degrees == (1, 2, 2)
    assert {k: len(v) for k, v in data.pencils.items()} == {
        "s": 2, "t": 1, "u": 1}
    assert "quadric" in data.reference
    assert verify_inverse(net, data.inverse)
    assert data.base_ideal.labels == ("point_0", "point_1", "curve")
    ctx = net.ctx()
    for params in (((F(1), F(2)), (F(3), F(1)), (F(-1), F(5))),
                   ((F(4), F(-3)), (F(2), F(7)), (F(1), F(1)))):
        pt = eval_map(net, params)
        back = eval_inverse(data.inverse, pt)
        assert all(ctx.proportional(p, q) for p, q in zip(params, back))


def test_tripod_inverse_round_trip(tripod_net):
    net = synthesize_weights(tripod_net, ((F(1), F(2)), (F(2), F(1)),
                                          (F(3), F(1))))
    data = invert(net)
    assert data.inverse.degrees == (2, 2, 2)
    assert {k: len(v) for k, v in data.pencils.items()} == {
        "s": 2, "t": 2, "u": 2}
    assert set(data.reference) >= {"conic_plane", "cone"}
    assert verify_inverse(net, data.inverse)
    assert data.base_ideal.labels == ("point", "fat_point")
    assert data.base_inverse.labels == ("s", "t", "u", "C")
    ctx = net.ctx()
    for params in (((F(1), F(1)), (F(1), F(1)), (F(1), F(1))),
                   ((F(2), F(-1)), (F(1), F(3)), (F(5), F(2)))):
        pt = eval_map(net, params)
        back = eval_inverse(data.inverse, pt)
        assert all(ctx.proportional(p, q) for p, q in zip(params, back))


def test_invert_reuses_a_supplied_report(pyramid_birational):
    from birat3d.birationality import is_birational
    report = is_birational(pyramid_birational)
    data = invert(pyramid_birational, report)
    assert data.report is report
    assert verify_inverse(pyramid_birational, data.inverse)
