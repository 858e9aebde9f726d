import math
import random

import pytest
from hypothesis import given

from hskernel import (
    DiffOp,
    MultiDerivation,
    OrderError,
    PolyRing,
    coeff_extract,
    commutator,
    divided_power,
    md_eval,
    op_apply,
    op_compose,
    sder_poisson,
    shuffle,
    theta,
    zeta,
)
from hskernel import multiindex as mi
from hskernel.config import DeskScaleError
from hskernel.graded_dual import theta_alternating
from hskernel.hs import random_hs
from hskernel.oracles import (
    divided_power_by_enumeration,
    divided_power_by_factorial,
    shuffle_by_subsets,
)
from hskernel.randgen import random_derivation, random_diffop, random_poly
from hskernel.verify import _random_md

from conftest import chars, rng_ring, seeds


def dual(R, i):
    """The degree-1 element dual to dx_i."""
    return MultiDerivation.from_derivation(DiffOp.partial(R, i))


def test_md_eval_examples():
    R = PolyRing.of(0, 3)
    d = random_derivation(random.Random(2), R)
    u = zeta(MultiDerivation.from_derivation(d), 2)
    x = R.gens
    assert md_eval(u, [x[0], x[2]]) == op_apply(d, x[0]) * op_apply(d, x[2])
    assert md_eval(MultiDerivation.const(R.parse("x1 + 2")), []) == R.parse("x1 + 2")
    assert md_eval(u, [x[1], R.const(5)]).is_zero()
    with pytest.raises(ValueError):
        md_eval(u, [x[0]])


def test_shuffle_examples():
    R = PolyRing.of(3, 2)
    rng = random.Random(4)
    d1, d2 = random_derivation(rng, R), random_derivation(rng, R)
    u, v = MultiDerivation.from_derivation(d1), MultiDerivation.from_derivation(d2)
    x1, x2 = R.gens
    expect = op_apply(d1, x1) * op_apply(d2, x2) + op_apply(d1, x2) * op_apply(d2, x1)
    assert shuffle(u, v)(x1, x2) == expect
    assert shuffle(u, MultiDerivation.one(R)) == u
    S = PolyRing.of(2, 1)
    e = dual(S, 0)
    assert shuffle(e, e)[(2,)].is_zero()
    assert shuffle_by_subsets(e, e)[(2,)].is_zero()


def test_divided_power_examples():
    R = PolyRing.of(0, 2)
    d = random_derivation(random.Random(9), R)
    u = MultiDerivation.from_derivation(d)
    assert divided_power(u, 0) == MultiDerivation.one(R)
    assert divided_power(u, 1) == u
    r2 = divided_power(u, 2)
    a, b = (op_apply(d, x) for x in R.gens)
    assert r2[(1, 1)] == a * b
    assert r2[(2, 0)] == a ** 2 and r2[(0, 2)] == b ** 2
    with pytest.raises(ValueError):
        divided_power(MultiDerivation.one(R), 2)


def test_enumeration_oracle_cap():
    R = PolyRing.of(0, 1)
    u = dual(R, 0)
    with pytest.raises(DeskScaleError):
        divided_power_by_enumeration(u, 9)


def test_zeta_examples():
    R = PolyRing.of(2, 3)
    d = MultiDerivation.from_derivation(DiffOp.parse(R, "x2^2*D[0,0,1]"))
    assert zeta(d, 0) == MultiDerivation.one(R)
    assert zeta(MultiDerivation.zero(R, 1), 3).is_zero()
    assert zeta(d, 2)[(0, 0, 2)] == R.parse("x2^4")


def test_theta_examples():
    R = PolyRing.of(0, 2)
    a = R.parse("x1^2 + 3*x2")
    assert theta(DiffOp.mult(a), 0) == MultiDerivation.const(a)
    d = random_derivation(random.Random(1), R)
    assert theta(d, 1) == MultiDerivation.from_derivation(d)
    S = PolyRing.of(0, ["x"])
    t = theta(DiffOp.delta(S, (2,)), 2)
    assert t[(2,)] == S.one()
    x = S.gen(0)
    assert theta_alternating(DiffOp.delta(S, (2,)), [x, x]) == S.one()
    with pytest.raises(OrderError):
        theta(DiffOp.delta(S, (3,)), 2)
    assert theta(DiffOp.delta(S, (1,)), 2).is_zero()


def test_sder_poisson_examples():
    R = PolyRing.of(0, 2)
    rng = random.Random(6)
    d1, d2 = random_derivation(rng, R), random_derivation(rng, R)
    u, v = MultiDerivation.from_derivation(d1), MultiDerivation.from_derivation(d2)
    assert sder_poisson(u, v) == MultiDerivation.from_derivation(commutator(d1, d2))
    h = _random_md(rng, R, 2)
    a = R.parse("x1*x2 + x2^2")
    ha = sder_poisson(h, MultiDerivation.const(a))
    for i, x in enumerate(R.gens):
        assert ha[mi.unit(2, i)] == md_eval(h, [x, a])
    with pytest.raises(ValueError):
        sder_poisson(MultiDerivation.one(R), MultiDerivation.one(R))


def test_rendering():
    R = PolyRing.of(2, 3)
    d = MultiDerivation.from_derivation(DiffOp.parse(R, "x2^2*D[0,0,1] + x1*D[1,0,0]"))
    assert str(zeta(d, 2)) == "deg 2:\n  dx^[2,0,0] -> x1^2\n  dx^[1,0,1] -> x1*x2^2\n  dx^[0,0,2] -> x2^4"


@given(seeds, chars)
def test_shuffle_algebra(seed, char):
    rng, R = rng_ring(seed, char)
    i, j, k = (rng.randint(0, 3) for _ in range(3))
    u, v, w = _random_md(rng, R, i), _random_md(rng, R, j), _random_md(rng, R, k)
    assert shuffle(u, v) == shuffle(v, u)
    assert shuffle(shuffle(u, v), w) == shuffle(u, shuffle(v, w))
    assert shuffle(u, MultiDerivation.one(R)) == u
    a = random_poly(rng, R, 2, 2)
    v2 = _random_md(rng, R, j)
    assert shuffle(u, v + v2) == shuffle(u, v) + shuffle(u, v2)
    assert shuffle(u.scale(a), v) == shuffle(u, v).scale(a)


@pytest.mark.parametrize("char", [2, 3, 5, 0])
def test_shuffle_oracle_500(char):
    rng = random.Random(77 + char)
    for _ in range(500):
        R = PolyRing.of(char, rng.randint(1, 3))
        u, v = _random_md(rng, R, rng.randint(0, 3)), _random_md(rng, R, rng.randint(0, 3))
        assert shuffle(u, v) == shuffle_by_subsets(u, v)
        assert shuffle(u, v) == shuffle(v, u)


@given(seeds, chars)
def test_md_eval_is_symmetric(seed, char):
    rng, R = rng_ring(seed, char)
    r = rng.randint(1, 3)
    u = _random_md(rng, R, r)
    fs = [random_poly(rng, R, 2, 2) for _ in range(r)]
    gs = list(fs)
    rng.shuffle(gs)
    assert md_eval(u, fs) == md_eval(u, gs)


@given(seeds, chars)
def test_divided_power_oracles(seed, char):
    rng, R = rng_ring(seed, char)
    d = rng.randint(1, 2)
    i = rng.randint(0, 8 // d)
    u = _random_md(rng, R, d)
    rho = divided_power(u, i)
    assert rho == divided_power_by_enumeration(u, i)
    if char == 0 or char > i:
        assert rho == divided_power_by_factorial(u, i)


@given(seeds, chars)
def test_zeta_exponential_type(seed, char):
    rng, R = rng_ring(seed, char)
    d = MultiDerivation.from_derivation(random_derivation(rng, R))
    i, j = rng.randint(0, 3), rng.randint(0, 3)
    assert shuffle(zeta(d, i), zeta(d, j)) == zeta(d, i + j) * math.comb(i + j, i)


@given(seeds, chars)
def test_theta_multiplicative(seed, char):
    rng, R = rng_ring(seed, char)
    n = rng.randint(0, 4)
    m = rng.randint(0, 5 - n)
    P, Q = random_diffop(rng, R, n), random_diffop(rng, R, m)
    assert theta(op_compose(P, Q), n + m) == shuffle(theta(P, n), theta(Q, m))


@given(seeds, chars)
def test_theta_injectivity_witness(seed, char):
    rng, R = rng_ring(seed, char)
    n = rng.randint(1, 4)
    P = random_diffop(rng, R, n - 1)
    if rng.random() < 0.5:
        P = P + random_diffop(rng, R, n, exact_order=True)
    if theta(P, n).is_zero():
        Q = coeff_extract(lambda f: op_apply(P, f), n, R)
        assert Q.is_zero() or Q.order() <= n - 1
    else:
        assert P.order() == n


@given(seeds, chars)
def test_theta_zeta_diagram(seed, char):
    rng, R = rng_ring(seed, char)
    m = rng.randint(1, 5)
    D = random_hs(rng, R, m, 2)
    d1 = MultiDerivation.from_derivation(D.component(1))
    for n in range(m + 1):
        assert theta(D.component(n), n) == zeta(d1, n)


@given(seeds, chars)
def test_theta_poisson_compatibility(seed, char):
    rng, R = rng_ring(seed, char)
    r, s = rng.randint(1, 3), rng.randint(0, 3)
    P, Q = random_diffop(rng, R, r), random_diffop(rng, R, s)
    assert theta(commutator(P, Q), r + s - 1) == sder_poisson(theta(P, r), theta(Q, s))
