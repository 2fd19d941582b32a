"""Delta tensors, rank-one factoring, and the birationality report."""
import itertools
import random
from fractions import Fraction

import pytest

from birat3d.birationality import (best_rank_one, canonical_variant_key,
                                   delta_variants, distance_to_birationality,
                                   is_birational, is_rank_one,
                                   rank_one_factor, synthesize_weights,
                                   syzygy_matrix, tensor_from_fn,
                                   weight_tensor, _pairing_delta)
from birat3d.controlnet import classification_of
from birat3d.errors import (DegenerateWeights, NotRankOne, QuadricBoundary,
                            ZeroPairing)
from birat3d.scalars import context_for

import fixturedata as fx

F = Fraction


def _det3(rows):
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def test_cube_delta_is_all_ones(cube):
    variants = delta_variants(cube)
    assert set(variants) == {"main"}
    main = variants[canonical_variant_key("hexahedral")]
    cls = classification_of(cube)
    planes = [f.form.coeffs for f in cls.faces]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                oracle = _det3([planes[i][1:], planes[2 + j][1:],
                                planes[4 + k][1:]])
                assert main.tensor[i][j][k] == oracle == F(1)


def test_pyramid_delta_matches_base_plane_pairings(pyramid_net):
    main = delta_variants(pyramid_net)["main"]
    for (i, j, k), value in fx.PYRAMID_DELTA.items():
        assert main.tensor[i][j][k] == value
    # reference plane pairs to the reciprocal entries by construction
    for i in range(2):
        for j in range(2):
            for k in range(2):
                v = main.reference.value(pyramid_net.point(i, j, k).coords)
                assert v * main.tensor[i][j][k] == F(1)


def test_scaffold_and_tripod_variant_keys(scaffold_net, tripod_net):
    assert set(delta_variants(scaffold_net)) == {"y0", "y1", "z0", "z1"}
    assert set(delta_variants(tripod_net)) == {"p1", "p2", "p3"}
    assert canonical_variant_key("scaffold") == "y0"
    assert canonical_variant_key("tripod") == "p1"


def test_rank_one_factor_exact():
    t = tensor_from_fn(lambda i, j, k: F(-6) * F(2)**i * F(3)**j * F(5)**k)
    factors = rank_one_factor(t)
    assert factors.pairs == ((F(1), F(2)), (F(1), F(3)), (F(1), F(5)))
    assert factors.scale == F(-6)
    rebuilt = tensor_from_fn(lambda i, j, k: factors.scale
                             * factors.pairs[0][i] * factors.pairs[1][j]
                             * factors.pairs[2][k])
    assert rebuilt == t


def test_rank_one_factor_rejects_higher_rank():
    diag = tensor_from_fn(lambda i, j, k: F(1) if i == j == k else F(0))
    with pytest.raises(NotRankOne):
        rank_one_factor(diag)
    with pytest.raises(NotRankOne):
        rank_one_factor(tensor_from_fn(lambda i, j, k: F(0)))


def _oracle_rank_one(t):
    """Reconstruct pairs from a pivot entry and compare the outer product."""
    sites = [(i, j, k) for i in range(2) for j in range(2) for k in range(2)]
    pivots = [s for s in sites if t[s[0]][s[1]][s[2]] != 0]
    if not pivots:
        return False
    i0, j0, k0 = pivots[0]
    a = (t[0][j0][k0], t[1][j0][k0])
    b = (t[i0][0][k0], t[i0][1][k0])
    c = (t[i0][j0][0], t[i0][j0][1])
    piv = t[i0][j0][k0]
    return all(t[i][j][k] * piv * piv == a[i] * b[j] * c[k]
               for (i, j, k) in sites)


def test_is_rank_one_agrees_with_reconstruction_oracle():
    rng = random.Random(20240817)
    ctx = context_for([F(1)])
    seen = {True: 0, False: 0}
    for _ in range(120):
        if rng.random() < 0.5:
            pairs = [(F(rng.randint(-3, 3)), F(rng.randint(-3, 3)))
                     for _ in range(3)]
            t = tensor_from_fn(lambda i, j, k: pairs[0][i] * pairs[1][j]
                               * pairs[2][k])
        else:
            t = tensor_from_fn(
                lambda i, j, k: F(rng.randint(-4, 4), rng.randint(1, 3)))
        expected = _oracle_rank_one(t)
        assert is_rank_one(t, ctx) == expected
        seen[expected] += 1
        if expected:
            factors = rank_one_factor(t)
            rebuilt = tensor_from_fn(
                lambda i, j, k: factors.scale * factors.pairs[0][i]
                * factors.pairs[1][j] * factors.pairs[2][k])
            assert rebuilt == t
        else:
            with pytest.raises(NotRankOne):
                rank_one_factor(t)
    assert seen[True] > 10 and seen[False] > 10


def test_cube_syzygy_matrix():
    from birat3d.jsonio import net_from_json
    cube = net_from_json(fx.CUBE_JSON)
    data = syzygy_matrix(cube, 0)
    assert data.matrix == ((F(1),) * 4, (F(-1),) * 4)
    assert data.alpha == (F(1), F(1))
    # scaling a supplied form rescales the pair the opposite way
    cls = classification_of(cube)
    from birat3d.mpoly import P3Form
    tripled = P3Form.linear([F(3) * c for c in cls.faces[0].form.coeffs])
    scaled = syzygy_matrix(cube, 0, forms=(tripled, cls.faces[1].form))
    ctx = cube.ctx()
    assert ctx.proportional(scaled.alpha, (F(1), F(3)))


def test_syzygy_matrix_requires_plane_faces(pyramid_net):
    with pytest.raises(QuadricBoundary):
        syzygy_matrix(pyramid_net, 2)
    assert syzygy_matrix(pyramid_net, 0).matrix is not None


def test_zero_pairing_detected(cube):
    cls = classification_of(cube)
    with pytest.raises(ZeroPairing):
        _pairing_delta(cube, cls.faces[0].form, cube.ctx())


def test_synthesize_weights_round_trip(pyramid_net):
    net = synthesize_weights(pyramid_net, fx.PYRAMID_FACTORS)
    main = delta_variants(net)["main"]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                a, b, c = fx.PYRAMID_FACTORS
                assert net.weight(i, j, k) == (a[i] * b[j] * c[k]
                                               * main.tensor[i][j][k])
    report = is_birational(net)
    assert report.birational and report.consistent
    factors = report.factors
    ctx = net.ctx()
    for pair, expected in zip(factors.pairs, fx.PYRAMID_FACTORS):
        assert ctx.proportional(pair, expected)


def test_synthesize_weights_rejects_zero_factor(pyramid_net):
    with pytest.raises(DegenerateWeights):
        synthesize_weights(pyramid_net, ((F(1), F(0)), (F(1), F(1)),
                                         (F(1), F(1))))


def test_unit_weight_pyramid_is_not_birational(pyramid_net):
    report = is_birational(pyramid_net)
    assert not report.birational
    assert report.classification.class_name == "pyramidal"
    assert distance_to_birationality(pyramid_net) > 0


def test_weight_tensor_is_weights_over_delta(pyramid_net):
    main = delta_variants(pyramid_net)["main"]
    w = weight_tensor(pyramid_net, main.tensor)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                assert w[i][j][k] == F(1) / main.tensor[i][j][k]


def test_distance_value_is_stable(pyramid_net):
    d = distance_to_birationality(pyramid_net)
    assert d == pytest.approx(0.09251752146296692, abs=1e-9)
    assert distance_to_birationality(pyramid_net) == d


def test_best_rank_one_is_deterministic(pyramid_net):
    main = delta_variants(pyramid_net)["main"]
    w = weight_tensor(pyramid_net, main.tensor)
    a = best_rank_one(w)
    b = best_rank_one(w)
    assert a.pairs == b.pairs and a.residual == b.residual
    assert a.lam == pytest.approx(2.161797462903371, abs=1e-9)
    assert a.distance == pytest.approx(0.09251752146296692, abs=1e-9)
    flat = [a.pairs[0][i] * a.pairs[1][j] * a.pairs[2][k]
            for i in range(2) for j in range(2) for k in range(2)]
    entries = [float(w[i][j][k]) for i in range(2) for j in range(2)
               for k in range(2)]
    resid = sum((x - y) ** 2 for x, y in zip(flat, entries)) ** 0.5
    assert resid == pytest.approx(a.residual, abs=1e-9)


def test_best_rank_one_diagonal_tensor():
    diag = tensor_from_fn(lambda i, j, k: 1.0 if i == j == k else 0.0)
    approx = best_rank_one(diag)
    assert approx.residual == pytest.approx(1.0, abs=1e-6)
    assert approx.distance == pytest.approx(2 ** -0.5, abs=1e-6)


def test_scaffold_variants_consistent(scaffold_net):
    net = synthesize_weights(scaffold_net, ((F(1), F(1)),) * 3)
    report = is_birational(net)
    assert report.birational and report.consistent
    assert set(report.variants) == {"y0", "y1", "z0", "z1"}
    ctx = net.ctx()
    # pairs shared by two variants agree projectively even though each
    # variant carries its own reference scaling
    for (k1, s1), (k2, s2) in [(("y0", 0), ("z0", 0)), (("y0", 2), ("y1", 2)),
                               (("z0", 1), ("z1", 1))]:
        assert ctx.proportional(report.variants[k1].factors.pairs[s1],
                                report.variants[k2].factors.pairs[s2])


def test_tripod_variants_consistent(tripod_net):
    net = synthesize_weights(tripod_net, ((F(1), F(2)), (F(2), F(1)),
                                          (F(1), F(1))))
    report = is_birational(net)
    assert report.birational and report.consistent
    assert set(report.variants) == {"p1", "p2", "p3"}
