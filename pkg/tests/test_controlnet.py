"""Control nets: indexing, face surfaces, and class recognition."""
from fractions import Fraction

import pytest

from birat3d import ControlNet, net_index
from birat3d.controlnet import (boundary_surface, check_nondegenerate,
                                classification_of, permute_net,
                                unpermute_triple)
from birat3d.errors import DegenerateFace
from birat3d.jsonio import net_from_json

import fixturedata as fx

F = Fraction


def test_net_index_is_k_fastest():
    assert [net_index(i, j, k) for i in range(2) for j in range(2)
            for k in range(2)] == list(range(8))


def test_point_and_weight_lookup(cube):
    assert cube.point(1, 0, 1).coords == (F(1), F(1), F(0), F(1))
    assert cube.weight(1, 1, 1) == F(1)


def test_cube_classifies_hexahedral(cube):
    cls = classification_of(cube)
    assert cls.class_name == "hexahedral"
    assert cls.degrees == (1, 1, 1)
    assert cls.axis is None
    # face planes are scaled so the linear part leads with one
    assert cls.faces[0].form.coeffs == (F(0), F(1), F(0), F(0))
    assert cls.faces[1].form.coeffs == (F(-1), F(1), F(0), F(0))
    assert all(face.rank == 3 for face in cls.faces)


def test_bernstein_cube_matches_monomial_classification(cube, bernstein_cube):
    a = classification_of(cube)
    b = classification_of(bernstein_cube)
    assert b.class_name == "hexahedral"
    assert [f.form.coeffs for f in a.faces] == [f.form.coeffs
                                                for f in b.faces]


def test_pyramid_classifies_with_axis_and_apex(pyramid_net):
    cls = classification_of(pyramid_net)
    assert cls.class_name == "pyramidal"
    assert cls.degrees == (1, 1, 2)
    assert cls.axis == 2
    ctx = pyramid_net.ctx()
    assert ctx.proportional(cls.geometry.apex.coords, fx.PYRAMID_APEX)
    # the u-faces are genuine quadrics, the others planes
    assert [f.rank for f in cls.faces] == [3, 3, 3, 3, 4, 4]


def test_scaffold_classifies(scaffold_net):
    cls = scaffold_net.classification
    assert cls.class_name == "scaffold"
    assert cls.degrees == (1, 2, 2)
    assert cls.axis == 0


def test_constructed_tripod_carries_its_classification(tripod_net):
    cls = classification_of(tripod_net)
    assert cls.class_name == "tripod"
    assert cls.degrees == (2, 2, 2)
    assert cls.geometry.apex.coords == (F(1), F(0), F(0), F(0))


def test_with_weights_preserves_carried_classification(tripod_net):
    reweighted = tripod_net.with_weights([F(1)] * 7 + [F(2)])
    assert classification_of(reweighted).class_name == "tripod"
    assert reweighted.weight(1, 1, 1) == F(2)


def test_reweighting_refreshes_quadric_faces(pyramid_net, pyramid_birational):
    unit = classification_of(pyramid_net)
    synth = classification_of(pyramid_birational)
    ctx = pyramid_net.ctx()
    # the planar faces are weight-independent ...
    for n in range(4):
        assert ctx.proportional(unit.faces[n].form.coeffs,
                                synth.faces[n].form.coeffs)
    # ... the quadric faces move with the weights
    assert not ctx.proportional(unit.faces[4].form.coeffs,
                                synth.faces[4].form.coeffs)


def test_check_nondegenerate_cube(cube):
    rep = check_nondegenerate(cube)
    assert rep.ok and rep.violations == ()
    assert len(rep.surfaces) == 6


def test_degenerate_face_is_reported():
    pts = [[1, 0, 0, 0], [1, 0, 0, 1], [1, 0, 0, 2], [1, 0, 0, 3],
           [1, 1, 0, 0], [1, 1, 0, 1], [1, 1, 1, 0], [1, 1, 1, 1]]
    net = net_from_json({"basis": "monomial", "index_order": "k-fastest",
                         "points": pts, "weights": [1] * 8})
    rep = check_nondegenerate(net)
    assert not rep.ok
    assert any("sigma0" in v for v in rep.violations)
    with pytest.raises(DegenerateFace):
        boundary_surface(net, 0, 0)


def test_boundary_surface_matches_classification(cube):
    cls = classification_of(cube)
    for axis in range(3):
        for side in range(2):
            face = boundary_surface(cube, axis, side)
            assert face.form.coeffs == cls.faces[2 * axis + side].form.coeffs


def test_permute_net_round_trip(pyramid_net):
    perm = (2, 0, 1)
    permuted = permute_net(pyramid_net, perm)
    cls = classification_of(permuted)
    assert cls.class_name == "pyramidal"
    # the quadric axis follows the permutation: u moves to slot perm.index(2)
    assert cls.axis == perm.index(2)
    assert unpermute_triple(("a", "b", "c"), perm) != ("a", "b", "c")
    assert unpermute_triple([0, 1, 2], (0, 1, 2)) == (0, 1, 2)


def test_unclassified_net_reports_diagnostics():
    pts = [[1, 0, 0, 0], [1, 0, 0, 1], [1, 0, 1, 0], [1, 0, 2, 3],
           [1, 1, 0, 0], [1, 1, 0, 1], [1, 1, 1, 0], [1, 3, 1, 5]]
    net = net_from_json({"basis": "monomial", "index_order": "k-fastest",
                         "points": pts, "weights": [1] * 8})
    cls = classification_of(net)
    assert cls.class_name == "unclassified"
    assert cls.diagnostics
