"""Shared fixtures: the example nets, constructed and ready to probe."""
import pytest

from birat3d import construct, parse_construction_spec, synthesize_weights
from birat3d.jsonio import net_from_json

import fixturedata as fx


@pytest.fixture
def cube():
    return net_from_json(fx.CUBE_JSON)


@pytest.fixture
def bernstein_cube():
    return net_from_json(fx.BERNSTEIN_CUBE_JSON)


@pytest.fixture
def pyramid_net():
    return net_from_json(fx.PYRAMID_NET_JSON)


@pytest.fixture
def pyramid_birational(pyramid_net):
    return synthesize_weights(pyramid_net, fx.PYRAMID_FACTORS)


@pytest.fixture
def tripod_net():
    return construct(parse_construction_spec(fx.TRIPOD_SPEC_JSON))


@pytest.fixture
def scaffold_net():
    return construct(parse_construction_spec(fx.SCAFFOLD_SPEC_JSON))
