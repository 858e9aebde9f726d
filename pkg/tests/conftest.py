import random

import pytest
from hypothesis import settings, strategies as st

from hskernel import DiffOp, Ideal, PolyRing, hs_from_images

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("repo")

CHARS = (2, 3, 5, 0)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
chars = st.sampled_from(CHARS)


def rng_ring(seed, char, max_vars=3):
    rng = random.Random(seed)
    return rng, PolyRing.of(char, rng.randint(1, max_vars))


@pytest.fixture
def R2():
    """k[x1, x2, x3] in characteristic 2, the ring of the cusp example."""
    return PolyRing.of(2, ["x1", "x2", "x3"])


@pytest.fixture
def F(R2):
    return R2.parse("x1^2 + x2^3 + x3^2")


@pytest.fixture
def J(F):
    return Ideal([F])


@pytest.fixture
def delta(R2):
    return DiffOp.parse(R2, "x2^2*D[0,0,1]")


@pytest.fixture
def Phi4(R2):
    return hs_from_images(R2, [
        ["x1", "0", "0", "0", "0"],
        ["x2", "0", "x2^2", "0", "x2^3"],
        ["x3", "x2^2", "0", "0", "0"],
    ])


@pytest.fixture
def Dpp(R2):
    return hs_from_images(R2, [
        ["x1", "0", "1", "0"],
        ["x2", "0", "0", "0"],
        ["x3", "0", "0", "0"],
    ])
