"""Seeded property suites: the library's theorems checked on random instances.

Every suite takes a ``random.Random`` and a case count and returns a
``SuiteResult``; case k always uses the coefficient field FIELD_CHARS[k % 4]
so the same seed gives the same report.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List

from . import multiindex as mi
from .diffop import DiffOp, commutator, iterated_bracket, op_compose, poisson, symbol
from .graded_dual import MultiDerivation, divided_power, sder_poisson, shuffle, theta, zeta
from .groebner import Ideal
from .hs import (
    HSDerivation,
    hs_compose,
    hs_inverse,
    hs_scale,
    hs_truncate,
    identity_hs,
    is_exponential_type,
    random_hs,
    total_symbol,
    validate_leibniz,
)
from .oracles import (
    compose_by_extract,
    divided_power_by_enumeration,
    divided_power_by_factorial,
    inverse_components,
    shuffle_by_subsets,
)
from .poly import PolyRing
from .randgen import FIELD_CHARS, random_derivation, random_diffop, random_poly
from .series import TruncSeries


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return self.cases - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{self.name:<28} {self.cases:>6} {self.passed:>6} {len(self.failures):>6}  {status}"


def _ring(rng: random.Random, k: int, max_vars: int = 3) -> PolyRing:
    return PolyRing.of(FIELD_CHARS[k % len(FIELD_CHARS)], rng.randint(1, max_vars))


def _run(name: str, cases: int, rng: random.Random, case: Callable[[random.Random, int], List[str]]) -> SuiteResult:
    res = SuiteResult(name)
    for k in range(cases):
        res.cases += 1
        bad = case(rng, k)
        if bad:
            res.failures.append(f"case {k}: " + ", ".join(bad))
    return res


# theta is multiplicative

def _theta_case(rng, k):
    R = _ring(rng, k)
    n = rng.randint(0, 5)
    m = rng.randint(0, 5 - n)
    P = random_diffop(rng, R, n, exact_order=True)
    Q = random_diffop(rng, R, m, exact_order=True)
    lhs = theta(op_compose(P, Q), n + m)
    rhs = shuffle(theta(P, n), theta(Q, m))
    return [] if lhs == rhs else ["theta(PQ) != theta(P)*theta(Q)"]


def theta_multiplicativity(rng, cases) -> SuiteResult:
    return _run("theta-multiplicative", cases, rng, _theta_case)


# theta o total symbol = zeta o D_1

def _diagram_case(rng, k):
    R = _ring(rng, k)
    m = rng.randint(1, 5)
    D = random_hs(rng, R, m, max_terms=2, max_deg=2)
    d1 = MultiDerivation.from_derivation(D.component(1))
    bad = []
    for n in range(m + 1):
        if theta(D.component(n), n) != zeta(d1, n):
            bad.append(f"theta(D_{n}) != zeta_{n}(D_1)")
        if n >= 1:
            coords = [rng.randrange(R.n) for _ in range(n)]
            xs = [R.gen(c) for c in coords]
            B = iterated_bracket(D.component(n), xs)
            expect = R.one()
            for x in xs:
                expect = expect * D.apply(1, x)
            if B != DiffOp.mult(expect):
                bad.append(f"bracket lemma fails at n={n}")
    return bad


def commutative_diagram(rng, cases) -> SuiteResult:
    return _run("theta-zeta-diagram", cases, rng, _diagram_case)


# divided power axioms

PD_GRID = [(c, d, i, j) for c in FIELD_CHARS for d in (1, 2) for i in range(4) for j in range(4)]


def _random_md(rng, R, d, nonzero=False):
    return MultiDerivation(R, d, {a: random_poly(rng, R, 2, 1, allow_zero=not nonzero) for a in mi.of_degree(R.n, d)})


def _pd_case(rng, k):
    c, d, i, j = PD_GRID[k % len(PD_GRID)]
    R = PolyRing.of(c, rng.randint(1, 2 if d == 2 else 3))
    u = _random_md(rng, R, d, nonzero=True)
    v = _random_md(rng, R, d, nonzero=True)
    one = MultiDerivation.one(R)
    bad = []
    # 1
    if divided_power(u, 0) != one or divided_power(u, 1) != u or (i >= 1 and divided_power(u, i).degree < 1):
        bad.append("axiom 1")
    # 2
    lhs = divided_power(u + v, i)
    rhs = MultiDerivation.zero(R, i * d)
    for a in range(i + 1):
        rhs = rhs + shuffle(divided_power(u, a), divided_power(v, i - a))
    if lhs != rhs:
        bad.append("axiom 2")
    # 3, with a scalar of degree 0 and of degree 1
    for lam in (MultiDerivation.const(random_poly(rng, R, 2, 1, allow_zero=False)), _random_md(rng, R, 1, nonzero=True)):
        if divided_power(shuffle(lam, u), i) != shuffle(lam ** i, divided_power(u, i)):
            bad.append(f"axiom 3 (scalar degree {lam.degree})")
    # 4
    if shuffle(divided_power(u, i), divided_power(u, j)) != divided_power(u, i + j) * math.comb(i + j, i):
        bad.append("axiom 4")
    # 5
    if j >= 1:
        coeff = math.factorial(i * j) // (math.factorial(i) * math.factorial(j) ** i)
        if divided_power(divided_power(u, j), i) != divided_power(u, i * j) * coeff:
            bad.append("axiom 5")
    return bad


def divided_power_axioms(rng, cases) -> SuiteResult:
    return _run("divided-power-axioms", cases, rng, _pd_case)


# Hasse-Schmidt group and total symbols

def _hs_case(rng, k):
    R = _ring(rng, k)
    m = rng.randint(1, 4)
    D, E, F = (random_hs(rng, R, m, max_terms=2, max_deg=2) for _ in range(3))
    Id = identity_hs(R, m)
    bad = []
    DE = hs_compose(D, E)
    if hs_compose(DE, F) != hs_compose(D, hs_compose(E, F)):
        bad.append("associativity")
    if hs_compose(D, Id) != D or hs_compose(Id, D) != D:
        bad.append("identity")
    Dinv = hs_inverse(D)
    if hs_compose(D, Dinv) != Id or hs_compose(Dinv, D) != Id:
        bad.append("inverse")
    if Dinv.components() != inverse_components(D):
        bad.append("inverse vs component triangle")
    dc, ec, dec = D.components(), E.components(), DE.components()
    for n in range(m + 1):
        conv = DiffOp.zero(R)
        for i in range(n + 1):
            conv = conv + op_compose(dc[i], ec[n - i])
        if dec[n] != conv:
            bad.append(f"component law n={n}")
    SD, SE = total_symbol(D), total_symbol(E)
    if total_symbol(DE) != SD * SE:
        bad.append("total symbol homomorphism")
    if not is_exponential_type(SD):
        bad.append("exponential type")
    mp = rng.randint(1, m)
    if total_symbol(hs_truncate(D, mp)) != SD.truncate(mp):
        bad.append("truncation square")
    if hs_truncate(DE, mp) != hs_compose(hs_truncate(D, mp), hs_truncate(E, mp)):
        bad.append("truncation homomorphism")
    a = random_poly(rng, R, 2, 1)
    if total_symbol(hs_scale(a, D)) != SD.scale(a):
        bad.append("scaled total symbol")
    if hs_truncate(hs_scale(a, D), mp) != hs_scale(a, hs_truncate(D, mp)):
        bad.append("scale commutes with truncation")
    K = HSDerivation(R, [TruncSeries(R, [s[0], R.zero()] + list(s.coeffs[2:])) for s in D.images])
    if not total_symbol(K).is_one():
        bad.append("D_1 = 0 gives total symbol 1")
    pairs = [(random_poly(rng, R, 2, 2), random_poly(rng, R, 2, 2)) for _ in range(2)]
    if not validate_leibniz(D, pairs):
        bad.append("Leibniz")
    return bad


def hs_group(rng, cases) -> SuiteResult:
    return _run("hs-group-total-symbol", cases, rng, _hs_case)


# oracle equivalences

def _compose_oracle_case(rng, k):
    R = _ring(rng, k)
    P = random_diffop(rng, R, rng.randint(0, 3))
    Q = random_diffop(rng, R, rng.randint(0, 3))
    return [] if op_compose(P, Q) == compose_by_extract(P, Q) else ["compose vs extract"]


def _membership_case(rng, k):
    R = _ring(rng, k)
    F = random_poly(rng, R, 3, 2, allow_zero=False)
    if rng.random() < 0.5:
        f = F * random_poly(rng, R, 3, 2)
    else:
        f = random_poly(rng, R, 4, 3)
    J = Ideal([F])
    return [] if J.member(f, "principal") == J.member(f, "groebner") else ["principal vs groebner"]


def _shuffle_case(rng, k):
    R = _ring(rng, k)
    i, j = rng.randint(0, 3), rng.randint(0, 3)
    u, v = _random_md(rng, R, i), _random_md(rng, R, j)
    return [] if shuffle(u, v) == shuffle_by_subsets(u, v) else ["shuffle vs subsets"]


def _dp_case(rng, k):
    R = PolyRing.of(0, rng.randint(1, 3))
    d = rng.randint(1, 2)
    i = rng.randint(0, 8 // d)
    u = _random_md(rng, R, d)
    bad = []
    rho = divided_power(u, i)
    if rho != divided_power_by_factorial(u, i):
        bad.append("divided power vs u^i/i!")
    if i * d <= 6 and rho != divided_power_by_enumeration(u, i):
        bad.append("divided power vs set partitions")
    return bad


def oracle_equivalences(rng, cases) -> List[SuiteResult]:
    return [
        _run("oracle:compose-vs-extract", cases, rng, _compose_oracle_case),
        _run("oracle:principal-vs-groebner", cases, rng, _membership_case),
        _run("oracle:shuffle-vs-subsets", cases, rng, _shuffle_case),
        _run("oracle:divpow-vs-factorial", cases, rng, _dp_case),
    ]


# Poisson compatibility (checked, not assumed)

def _poisson_case(rng, k):
    R = _ring(rng, k)
    r, s = rng.randint(0, 3), rng.randint(0, 3)
    if r + s == 0:
        s = 1
    P = random_diffop(rng, R, r, exact_order=True)
    Q = random_diffop(rng, R, s, exact_order=True)
    bad = []
    lhs = theta(commutator(P, Q), r + s - 1)
    if lhs != sder_poisson(theta(P, r), theta(Q, s)):
        bad.append("theta{P,Q} != {theta P, theta Q}")
    # representative independence of the symbol bracket
    P2 = P + random_diffop(rng, R, max(r - 1, 0)) if r >= 1 else P
    if poisson(symbol(P, r), symbol(Q, s)) != poisson(symbol(P2, r), symbol(Q, s)):
        bad.append("poisson depends on representative")
    return bad


def poisson_compatibility(rng, cases) -> SuiteResult:
    return _run("theta-poisson", cases, rng, _poisson_case)


def run_all(seed: int = 42, cases: int = 200) -> List[SuiteResult]:
    rng = random.Random(seed)
    results = [
        theta_multiplicativity(rng, cases),
        commutative_diagram(rng, cases),
        divided_power_axioms(rng, cases),
        hs_group(rng, cases),
        poisson_compatibility(rng, cases),
    ]
    results.extend(oracle_equivalences(rng, cases))
    return results


def render_table(results: List[SuiteResult]) -> str:
    head = f"{'suite':<28} {'cases':>6} {'passed':>6} {'failed':>6}"
    lines = [head, "-" * len(head)]
    lines.extend(r.line() for r in results)
    for r in results:
        for f in r.failures[:5]:
            lines.append(f"  {r.name}: {f}")
    return "\n".join(lines)


def summary_json(results: List[SuiteResult]) -> Dict[str, dict]:
    return {r.name: {"cases": r.cases, "passed": r.passed, "failures": r.failures} for r in results}
