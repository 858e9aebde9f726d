import random

import pytest
from hypothesis import given

from hskernel import (
    DiffOp,
    NotAnOperator,
    OrderError,
    PolyRing,
    bracket,
    coeff_extract,
    commutator,
    delta_apply,
    iterated_bracket,
    op_apply,
    op_compose,
    poisson,
    symbol,
)
from hskernel import multiindex as mi
from hskernel.diffop import Symbol
from hskernel.hs import random_hs
from hskernel.oracles import compose_by_extract
from hskernel.randgen import random_diffop, random_poly

from conftest import chars, rng_ring, seeds

QQ1 = PolyRing.of(0, ["x"])


def test_delta_apply_examples():
    R = PolyRing.of(0, 2)
    x1, x2 = R.gens
    assert delta_apply((0, 1), x1 * x2 ** 2) == 2 * x1 * x2
    R2 = PolyRing.of(2, 2)
    assert delta_apply((0, 1), R2.gen(0) * R2.gen(1) ** 2).is_zero()
    assert delta_apply((1, 1), x1 * x2) == R.one()


def test_op_apply_cusp_components(R2, Phi4):
    D2 = DiffOp.parse(R2, "x2^4*D[0,0,2] + x2^2*D[0,1,0]")
    x2, x3 = R2.gen(1), R2.gen(2)
    assert op_apply(D2, x3 ** 2) == x2 ** 4 == Phi4.phi(x3 ** 2)[2]
    D3 = DiffOp.parse(R2, "x2^6*D[0,0,3] + x2^4*D[0,1,1]")
    assert op_apply(D3, x2 * x3) == x2 ** 4 == Phi4.phi(x2 * x3)[3]
    f = R2.parse("x1*x2 + x3^3")
    assert op_apply(DiffOp.identity(R2), f) == f


def test_compose_examples():
    R = PolyRing.of(0, 2)
    assert op_compose(DiffOp.delta(R, (1, 0)), DiffOp.delta(R, (0, 1))) == DiffOp.delta(R, (1, 1))
    for char in (0, 2):
        S = PolyRing.of(char, 2)
        P = DiffOp.partial(S, 0)
        assert op_compose(P, P) == DiffOp.partial(S, 0, 2, coeff=2)
    assert op_compose(DiffOp.partial(PolyRing.of(2, 2), 0), DiffOp.partial(PolyRing.of(2, 2), 0)).is_zero()
    x = QQ1.gen(0)
    P = op_compose(DiffOp.parse(QQ1, "x*D[1]"), DiffOp.parse(QQ1, "D[1]"))
    assert P == DiffOp.parse(QQ1, "x*D[1]*D[1]")
    # checked independently on monomials
    assert P == DiffOp.parse(QQ1, "2*x*D[2]")
    for k in range(1, 7):
        assert op_apply(P, x ** k) == k * (k - 1) * x ** (k - 1)


def test_bracket_examples():
    x = QQ1.gen(0)
    assert bracket(DiffOp.delta(QQ1, (1,)), x) == DiffOp.identity(QQ1)
    a = DiffOp.mult(QQ1.parse("x^2 + 1"))
    assert bracket(a, x + 3).is_zero()
    # [D^(2), x] = D^(1): (D^(2) o x)(x^k) = C(k+1, 2) x^(k-1), x D^(2)(x^k) = C(k, 2) x^(k-1)
    B = bracket(DiffOp.delta(QQ1, (2,)), x)
    assert B == DiffOp.delta(QQ1, (1,))
    for k in range(1, 8):
        assert op_apply(B, x ** k) == k * x ** (k - 1)
    assert iterated_bracket(DiffOp.delta(QQ1, (2,)), [x, x]) == DiffOp.identity(QQ1)


def test_coeff_extract_examples(R2, Phi4):
    P = coeff_extract(lambda f: delta_apply((1, 0, 2), f), 3, R2)
    assert P == DiffOp.delta(R2, (1, 0, 2))
    D2 = coeff_extract(lambda f: Phi4.phi(f)[2], 2, R2)
    assert str(D2) == "x2^2*D[0,1,0] + x2^4*D[0,0,2]"
    D4 = coeff_extract(lambda f: Phi4.phi(f)[4], 4, R2)
    assert D4 == DiffOp.parse(R2, "x2^8*D[0,0,4] + x2^6*D[0,1,2] + x2^4*D[0,2,0] + x2^3*D[0,1,0]")


def test_coeff_extract_rejects_higher_order(R2):
    with pytest.raises(NotAnOperator):
        coeff_extract(lambda f: delta_apply((0, 0, 3), f), 2, R2)


def test_symbol_examples():
    R = PolyRing.of(0, 3)
    S = symbol(DiffOp.delta(R, (1, 0, 2)), 3)
    assert S.principal == {(1, 0, 2): R.one()}
    D = DiffOp.delta(QQ1, (1,))
    xD = DiffOp.parse(QQ1, "x*D[1]")
    assert poisson(symbol(D, 1), symbol(xD, 1)) == symbol(D, 1)
    assert poisson(symbol(xD, 1), symbol(xD, 1)).is_zero()
    with pytest.raises(OrderError):
        symbol(DiffOp.delta(QQ1, (2,)), 1)


def test_diffop_rendering(R2):
    assert str(DiffOp.parse(R2, "x2^4*D[0,0,2] + x2^2*D[0,1,0]")) == "x2^2*D[0,1,0] + x2^4*D[0,0,2]"
    assert str(DiffOp.parse(R2, "D[1,0,0] + x1 + (x1 + x2)*D[0,0,1]")) == "x1 + D[1,0,0] + (x1 + x2)*D[0,0,1]"
    assert str(DiffOp.zero(R2)) == "0"


def test_parse_arity_mismatch(R2):
    with pytest.raises(ValueError, match="length 2"):
        DiffOp.parse(R2, "D[1,0]")


@given(seeds, chars)
def test_compose_is_composition(seed, char):
    rng, R = rng_ring(seed, char)
    P = random_diffop(rng, R, rng.randint(0, 4))
    Q = random_diffop(rng, R, rng.randint(0, 4))
    f = random_poly(rng, R, 3, 4)
    assert op_apply(op_compose(P, Q), f) == op_apply(P, op_apply(Q, f))


@pytest.mark.parametrize("char", [2, 3, 0])
def test_compose_soundness_500(char):
    rng = random.Random(500 + char)
    for _ in range(500):
        R = PolyRing.of(char, rng.randint(1, 3))
        P = random_diffop(rng, R, rng.randint(0, 4), max_terms=3)
        Q = random_diffop(rng, R, rng.randint(0, 4), max_terms=3)
        f = random_poly(rng, R, 3, 4)
        assert op_apply(op_compose(P, Q), f) == op_apply(P, op_apply(Q, f))


@given(seeds, chars)
def test_compose_matches_extraction_oracle(seed, char):
    rng, R = rng_ring(seed, char)
    P = random_diffop(rng, R, rng.randint(0, 3))
    Q = random_diffop(rng, R, rng.randint(0, 3))
    assert op_compose(P, Q) == compose_by_extract(P, Q)


@given(seeds, chars)
def test_symbol_product_ignores_lower_order(seed, char):
    rng, R = rng_ring(seed, char)
    r, s = rng.randint(1, 3), rng.randint(1, 3)
    P = random_diffop(rng, R, r)
    Q = random_diffop(rng, R, s)
    P2 = P + random_diffop(rng, R, r - 1)
    Q2 = Q + random_diffop(rng, R, s - 1)
    assert symbol(op_compose(P, Q), r + s) == symbol(op_compose(P2, Q2), r + s)
    assert symbol(op_compose(P, Q), r + s) == symbol(P, r) * symbol(Q, s)


@given(seeds, chars)
def test_symbol_rule_two(seed, char):
    rng, R = rng_ring(seed, char)
    a = rng.choice(mi.of_degree(R.n, rng.randint(0, 3)))
    b = rng.choice(mi.of_degree(R.n, rng.randint(0, 3)))
    Sa = Symbol(R, sum(a), {a: R.one()})
    Sb = Symbol(R, sum(b), {b: R.one()})
    g = mi.add(a, b)
    from hskernel.field import binom_int
    assert Sa * Sb == Symbol(R, sum(g), {g: R.const(binom_int(g, a))})


@given(seeds, chars)
def test_bracket_drops_order(seed, char):
    rng, R = rng_ring(seed, char)
    d = rng.randint(0, 4)
    P = random_diffop(rng, R, d)
    B = bracket(P, random_poly(rng, R, 3, 2))
    assert B.is_zero() or B.order() <= max(d - 1, 0) and (d > 0 or B.is_zero())


@given(seeds, chars)
def test_coeff_extract_roundtrip(seed, char):
    rng, R = rng_ring(seed, char)
    d = rng.randint(0, 5)
    P = random_diffop(rng, R, d, max_terms=3)
    assert coeff_extract(lambda f: op_apply(P, f), d, R) == P


@given(seeds, chars)
def test_poisson_representative_independent(seed, char):
    rng, R = rng_ring(seed, char)
    r, s = rng.randint(1, 3), rng.randint(0, 3)
    P, Q = random_diffop(rng, R, r), random_diffop(rng, R, s)
    P2 = P + random_diffop(rng, R, r - 1)
    Q2 = Q + random_diffop(rng, R, s - 1) if s else Q
    assert poisson(symbol(P, r), symbol(Q, s)) == poisson(symbol(P2, r), symbol(Q2, s))


@given(seeds, chars)
def test_bracket_lemma_for_hs(seed, char):
    """[...[D_m, x_1], ..., x_k] = sum_j (sum over alpha in N^k, |alpha| = m - j, alpha_i > 0, of prod D_alpha_i(x_i)) D_j."""
    rng, R = rng_ring(seed, char)
    m = rng.randint(1, 4)
    D = random_hs(rng, R, m, max_terms=2)
    k = rng.randint(1, m)
    xs = [random_poly(rng, R, 2, 2) for _ in range(k)]
    lhs = iterated_bracket(D.component(m), xs)
    rhs = DiffOp.zero(R)
    for j in range(m - k + 1):
        c = R.zero()
        for alpha in mi.of_degree(k, m - j):
            if min(alpha) == 0:
                continue
            term = R.one()
            for a, x in zip(alpha, xs):
                term = term * D.apply(a, x)
            c = c + term
        rhs = rhs + D.component(j).left_mul(c)
    assert lhs == rhs


@given(seeds, chars)
def test_iterated_bracket_symmetric(seed, char):
    rng, R = rng_ring(seed, char)
    d = rng.randint(1, 4)
    P = random_diffop(rng, R, d)
    xs = [random_poly(rng, R, 2, 2) for _ in range(d)]
    ys = list(xs)
    rng.shuffle(ys)
    assert iterated_bracket(P, xs) == iterated_bracket(P, ys)
    assert iterated_bracket(P, xs).order() in (None, 0)


def test_commutator_is_antisymmetric():
    rng = random.Random(7)
    R = PolyRing.of(3, 2)
    P, Q = random_diffop(rng, R, 2), random_diffop(rng, R, 3)
    assert commutator(P, Q) == -commutator(Q, P)
