import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from horndiv.modules import Submodule, TorsionModule
from horndiv.rings import ZZ_RING

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def partitions_st(max_len=4, max_part=3):
    return st.lists(st.integers(1, max_part), min_size=1, max_size=max_len).map(
        lambda xs: tuple(sorted(xs, reverse=True)))


@st.composite
def module_pairs(draw, atoms=(2,), max_len=4, max_part=3, ngens=3):
    parts = {a: draw(partitions_st(max_len, max_part)) for a in atoms}
    M = TorsionModule.from_partitions(ZZ_RING, parts)
    bound = 1
    for t in M.theta:
        bound = max(bound, ZZ_RING.from_exponents(t))
    k = draw(st.integers(0, ngens))
    gens = [[draw(st.integers(0, bound - 1)) for _ in range(M.N)] for _ in range(k)]
    return M, Submodule(M, gens)


@pytest.fixture
def rng():
    return random.Random(12345)
