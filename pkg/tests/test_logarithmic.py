import random

import pytest
from hypothesis import given

from hskernel import (
    DeskScaleError,
    DiffOp,
    Ideal,
    NotLogarithmic,
    PolyRing,
    UnsupportedIdeal,
    hs_compose,
    hs_from_images,
    hs_of_derivation,
    hs_scale,
    hs_truncate,
    induced_on_quotient,
    is_log_derivation,
    is_log_hs,
    obstruction_ideal,
    obstruction_step,
    step_integrate,
    taylor_hs,
    transfer_integral,
)
from hskernel.groebner import buchberger, divide
from hskernel.hs import random_hs
from hskernel.logarithmic import log_failures
from hskernel.randgen import random_poly

from conftest import chars, rng_ring, seeds


def ncd(n=4, k=3, char=0):
    R = PolyRing.of(char, n)
    F = R.one()
    for x in R.gens[:k]:
        F = F * x
    return R, Ideal([F])


# ideals

def test_membership_examples(R2, F):
    assert Ideal([F]).member(F)
    O = Ideal([R2.parse("x2^2"), F])
    assert not O.member(R2.one())
    assert [str(g) for g in O.groebner()] == ["x2^2", "x1^2 + x3^2"]
    R, J = ncd()
    g = random_poly(random.Random(3), R, 3, 3)
    assert J.member(J.generators[0] * g)


def test_obstruction_ideal_of_cusp(F):
    O = obstruction_ideal(F)
    assert not O.member(F.ring.one())
    assert O.member(F.ring.parse("x2^2*x3 + x1^2 + x3^2"))


def test_groebner_pair_cap():
    R = PolyRing.of(0, 3)
    gens = [R.parse("x1^3 - x2*x3"), R.parse("x2^3 - x1*x3"), R.parse("x3^3 - x1*x2")]
    with pytest.raises(DeskScaleError):
        buchberger(gens, max_pairs=2)


@given(seeds, chars)
def test_groebner_cofactors(seed, char):
    rng, R = rng_ring(seed, char)
    gens = [random_poly(rng, R, 3, 2, allow_zero=False) for _ in range(rng.randint(1, 3))]
    basis, cof = buchberger(gens)
    for g, c in zip(basis, cof):
        acc = R.zero()
        for cl, gl in zip(c, gens):
            acc = acc + cl * gl
        assert acc == g
    J = Ideal(gens)
    f = random_poly(rng, R, 4, 3)
    c, r = J.divide(f)
    acc = r
    for cl, gl in zip(c, gens):
        acc = acc + cl * gl
    assert acc == f
    assert J.reduce(r) == r
    assert J.member(f) == J.reduce(f).is_zero()


@given(seeds, chars)
def test_reduce_is_linear_mod_ideal(seed, char):
    rng, R = rng_ring(seed, char)
    J = Ideal([random_poly(rng, R, 3, 2, allow_zero=False) for _ in range(2)])
    f, g, h = (random_poly(rng, R, 3, 3) for _ in range(3))
    a = random_poly(rng, R, 1, 0)
    assert J.reduce(f + a * g) == J.reduce(J.reduce(f) + a * J.reduce(g))
    assert J.reduce(f + h * J.generators[0]) == J.reduce(f)


@given(seeds, chars)
def test_membership_presentation_independent(seed, char):
    rng, R = rng_ring(seed, char)
    g1, g2 = (random_poly(rng, R, 3, 2, allow_zero=False) for _ in range(2))
    c = random_poly(rng, R, 2, 1)
    u = R.field(rng.randrange(1, 5) if char == 0 else rng.randrange(1, char))
    # unimodular change of generators: (g1, g2) -> (u g1, g2 + c g1)
    J1, J2 = Ideal([g1, g2]), Ideal([g1 * u, g2 + c * g1])
    probes = [random_poly(rng, R, 3, 3) for _ in range(4)] + [g1 * random_poly(rng, R, 2, 1) + g2]
    assert [J1.member(p) for p in probes] == [J2.member(p) for p in probes]


@pytest.mark.parametrize("char", [2, 3, 5, 0])
def test_principal_route_matches_groebner_500(char):
    rng = random.Random(31 + char)
    for _ in range(500):
        R = PolyRing.of(char, rng.randint(1, 3))
        F = random_poly(rng, R, 3, 2, allow_zero=False)
        f = F * random_poly(rng, R, 3, 2) if rng.random() < 0.5 else random_poly(rng, R, 4, 3)
        J = Ideal([F])
        assert J.member(f, "principal") == J.member(f, "groebner")


# logarithmic predicates

def test_cusp_predicates(R2, J, delta, Phi4, Dpp):
    assert is_log_derivation(delta, J)
    assert is_log_hs(Phi4, J) and is_log_hs(Phi4, J, method="components")
    assert is_log_hs(Dpp, J)


def test_ncd_families():
    R, J = ncd()
    for m in range(1, 9):
        for i in range(3):
            assert is_log_hs(hs_scale(R.gen(i), taylor_hs(R, i, m)), J)
        assert is_log_hs(taylor_hs(R, 3, m), J)
    assert not is_log_hs(taylor_hs(R, 0, 2), J)


def test_lift_of_dpp_never_logarithmic(R2, J):
    rng = random.Random(8)
    for _ in range(20):
        # G_4 = D[2,0,0] + delta' for a random derivation delta'
        a = [random_poly(rng, R2, 3, 3) for _ in range(3)]
        images = [["x1", "0", "1", "0", a[0]], ["x2", "0", "0", "0", a[1]], ["x3", "0", "0", "0", a[2]]]
        D = hs_from_images(R2, images)
        G4 = D.component(4)
        assert G4 - DiffOp.delta(R2, (2, 0, 0)) == DiffOp.zero(R2) + sum(
            (DiffOp.partial(R2, i, coeff=a[i]) for i in range(3)), DiffOp.zero(R2))
        assert not is_log_hs(D, J)
        fails = log_failures(D, J)
        assert [i for i, _, _ in fails] == [4]


@given(seeds, chars)
def test_log_hs_methods_agree(seed, char):
    rng, R = rng_ring(seed, char)
    F = random_poly(rng, R, 2, 2, allow_zero=False)
    J = Ideal([F])
    D = random_hs(rng, R, rng.randint(1, 3), 2)
    if rng.random() < 0.5:
        D = hs_scale(F, D)
    assert is_log_hs(D, J) == is_log_hs(D, J, method="components")


# obstruction and stepping

def test_obstruction_examples(R2, J, Dpp, Phi4):
    rep = obstruction_step(Dpp, J)
    assert not rep.ok and rep.obstruction_poly == R2.one()
    assert rep.render() == "step 4: BLOCKED (obstruction NF: 1)"
    Dp = hs_compose(hs_truncate(Phi4, 3), Dpp)
    assert is_log_hs(Dp, J)
    assert obstruction_step(Dp, J).obstruction_poly == R2.one()
    for m in (1, 2, 3):
        rep = obstruction_step(hs_truncate(Phi4, m), J)
        assert rep.ok and is_log_hs(rep.extended, J)


def test_obstruction_needs_principal_and_log(R2, F, Phi4):
    with pytest.raises(UnsupportedIdeal):
        obstruction_step(Phi4, Ideal([F, R2.gen(0)]))
    with pytest.raises(NotLogarithmic):
        obstruction_step(taylor_hs(R2, 0, 2), Ideal([F]))


def test_step_integrate_examples(R2, J, delta):
    R = PolyRing.of(0, 2)
    Jn = Ideal([R.parse("x1*x2")])
    bad = step_integrate(DiffOp.partial(R, 0), Jn, 6)
    assert not bad.ok
    assert bad.render().splitlines() == [
        "step 1: BLOCKED (obstruction NF: x2)",
        "greedy path blocked (this does not show the derivation is not integrable)",
    ]
    good = step_integrate(DiffOp.parse(R, "x1*D[1,0]"), Jn, 6)
    assert good.ok and len(good.reports) == 6 and good.final.length == 6
    tr = step_integrate(delta, J, 2)
    assert tr.render() == "step 1: OK (correction: 0)\nstep 2: OK (correction: x2^2*D[0,1,0])"
    assert tr.final.component(2) == DiffOp.parse(R2, "x2^4*D[0,0,2] + x2^2*D[0,1,0]")


def test_ncd_step_integrate_to_eight():
    R, J = ncd()
    for start in (DiffOp.parse(R, "x1*D[1,0,0,0]"), DiffOp.delta(R, (0, 0, 0, 1))):
        tr = step_integrate(start, J, 8)
        assert tr.ok and [r.step for r in tr.reports] == list(range(1, 9))


@given(seeds, chars)
def test_obstruction_soundness(seed, char):
    rng, R = rng_ring(seed, char)
    F = random_poly(rng, R, 3, 3, allow_zero=False)
    J = Ideal([F])
    # a logarithmic start: F times anything, plus the Euler-type derivation if F is homogeneous
    D = hs_scale(F, random_hs(rng, R, rng.randint(1, 3), 2))
    rep = obstruction_step(D, J)
    if rep.ok:
        assert is_log_hs(rep.extended, J)
        assert hs_truncate(rep.extended, D.length) == D


# quotient derivations and transfer

def test_fingerprints(R2, F, J, delta):
    assert induced_on_quotient(delta, J) == (R2.zero(), R2.zero(), R2.parse("x2^2"))
    shifted = delta + DiffOp.partial(R2, 0, coeff=F)
    assert induced_on_quotient(shifted, J) == induced_on_quotient(delta, J)
    assert all(p.is_zero() for p in induced_on_quotient(DiffOp.zero(R2), J))
    with pytest.raises(NotLogarithmic):
        induced_on_quotient(DiffOp.partial(R2, 1), J)


def test_transfer_integral(R2, F, J, delta, Phi4):
    rng = random.Random(21)
    for _ in range(5):
        other = delta + sum((DiffOp.partial(R2, i, coeff=F * random_poly(rng, R2, 2, 1)) for i in range(3)),
                            DiffOp.zero(R2))
        assert induced_on_quotient(other, J) == induced_on_quotient(delta, J)
        E = transfer_integral(Phi4, other, J)
        assert E.length == 4
        assert E.component(1) == other
        assert is_log_hs(E, J)
    with pytest.raises(NotLogarithmic):
        transfer_integral(Phi4, DiffOp.zero(R2), J)
