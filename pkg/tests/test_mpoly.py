"""Multihomogeneous polynomials, exact division, and space forms."""
from fractions import Fraction

import pytest

from birat3d.errors import NotDivisible
from birat3d.jsonio import net_from_json
from birat3d.mpoly import MPoly, P3Form, divide_exact, sym_product

import fixturedata as fx

F = Fraction


def _var(axis, index):
    return MPoly.variable(axis, index, exact=True)


def test_variable_and_eval():
    s1 = _var(0, 1)
    t0 = _var(1, 0)
    p = s1 * t0
    assert p.degree == (1, 1, 0)
    assert p.eval(((F(2), F(3)), (F(5), F(7)), (F(1), F(0)))) == F(15)


def test_arithmetic_collects_terms():
    s0, s1 = _var(0, 0), _var(0, 1)
    p = (s0 + s1) * (s0 + s1)
    # degree grows multiplicatively along the axis
    assert p.degree == (2, 0, 0)
    assert p.coeff(1, 0, 0) == F(2)


def test_cube_map_polynomials_factor():
    """The unit cube's coordinates are products of the axis sums."""
    cube = net_from_json(fx.CUBE_JSON)
    f0, f1, f2, f3 = cube.map_polynomials()
    s0, s1 = _var(0, 0), _var(0, 1)
    t0, t1 = _var(1, 0), _var(1, 1)
    u0, u1 = _var(2, 0), _var(2, 1)
    assert f0.same_as((s0 + s1) * (t0 + t1) * (u0 + u1))
    assert f1.same_as(s1 * (t0 + t1) * (u0 + u1))
    assert f2.same_as((s0 + s1) * t1 * (u0 + u1))
    assert f3.same_as((s0 + s1) * (t0 + t1) * u1)


def test_face_plane_pullback_on_cube():
    """sigma1 = (-1,1,0,0) pulls back to -s0 (t0+t1)(u0+u1)."""
    cube = net_from_json(fx.CUBE_JSON)
    fs = cube.map_polynomials()
    sigma1 = P3Form.linear((F(-1), F(1), F(0), F(0)))
    pulled = sigma1.apply(fs)
    s0 = _var(0, 0)
    t0, t1 = _var(1, 0), _var(1, 1)
    u0, u1 = _var(2, 0), _var(2, 1)
    assert pulled.same_as((s0 * (t0 + t1) * (u0 + u1)).scale(F(-1)))


def test_divide_exact_round_trip():
    s0, s1 = _var(0, 0), _var(0, 1)
    t0, t1 = _var(1, 0), _var(1, 1)
    num = (s0 + s1.scale(F(2))) * (t0.scale(F(3)) + t1)
    den = s0 + s1.scale(F(2))
    assert divide_exact(num, den).same_as(t0.scale(F(3)) + t1)


def test_divide_exact_rejects_non_factor():
    s0, s1 = _var(0, 0), _var(0, 1)
    t0, t1 = _var(1, 0), _var(1, 1)
    num = s0 * t0 + s1 * t1
    with pytest.raises(NotDivisible):
        divide_exact(num, s0 + s1)


def test_bernstein_constant_coefficients_give_a_constant_map():
    """All-equal Bernstein data collapses every coordinate to a constant."""
    v = (F(1), F(2), F(3), F(4))
    doc = {"basis": "bernstein", "index_order": "k-fastest",
           "points": [list(v)] * 8, "weights": [1] * 8}
    net = net_from_json(doc)
    fs = net.map_polynomials()
    for n in range(4):
        ratio = fs[n].coeffs
        # every coefficient site carries v_n times the same positive pattern
        base = fs[0].coeffs
        assert all(c * v[0] == b * v[n] for c, b in zip(ratio, base))


def test_permute_axes_round_trip():
    s1, t0, u1 = _var(0, 1), _var(1, 0), _var(2, 1)
    p = s1 * t0 * u1 + s1.scale(F(2)) * t0 * _var(2, 0)
    q = p.permute_axes((2, 0, 1))
    assert q.permute_axes((1, 2, 0)).same_as(p)


def test_sym_product_is_symmetric():
    a = P3Form.linear((F(1), F(2), F(0), F(-1)))
    b = P3Form.linear((F(0), F(1), F(1), F(3)))
    assert sym_product(a, b).coeffs == sym_product(b, a).coeffs


def test_quadratic_matrix_value_agree():
    coeffs = tuple(F(n + 1) for n in range(10))
    q = P3Form.quadratic(coeffs)
    m = q.matrix()
    for pt in ((F(1), F(0), F(2), F(-1)), (F(1), F(1), F(1), F(1)),
               (F(0), F(3), F(-2), F(5))):
        direct = q.value(pt)
        viamat = sum(pt[i] * m[i][j] * pt[j] for i in range(4)
                     for j in range(4))
        assert direct == viamat


def test_from_matrix_round_trip():
    coeffs = (F(1), F(2), F(0), F(-3), F(4), F(1), F(0), F(2), F(5), F(-1))
    q = P3Form.quadratic(coeffs)
    again = P3Form.from_matrix(q.matrix())
    assert again.coeffs == coeffs


def test_linear_form_value():
    f = P3Form.linear((F(3), F(-1), F(-1), F(-1)))
    assert f.value((F(1), F(1), F(1), F(1))) == F(0)
    assert f.value((F(1), F(0), F(0), F(0))) == F(3)
