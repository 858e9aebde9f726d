"""Buchberger's algorithm (grevlex) with cofactor tracking, and ideals."""

from __future__ import annotations

import threading
from typing import List, Optional, Sequence, Tuple

from . import multiindex as mi
from .config import LIMITS, DeskScaleError
from .poly import NotDivisible, Poly, PolyRing, exact_divide


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def divide(f: Poly, basis: Sequence[Poly]) -> Tuple[List[Poly], Poly]:
    """Multivariate division: f = sum q_k basis[k] + r, r fully reduced."""
    ring = f.ring
    field = ring.field
    lead = [(g.leading_monomial(), field.inv(g.leading_coeff())) if g else None for g in basis]
    quotients: List[dict] = [{} for _ in basis]
    remainder: dict = {}
    p = f
    while p.terms:
        lm = p.leading_monomial()
        lc = p.terms[lm]
        for k, entry in enumerate(lead):
            if entry is None:
                continue
            glm, ginv = entry
            if mi.leq(glm, lm):
                shift = tuple(x - y for x, y in zip(lm, glm))
                c = field.reduce(lc * ginv)
                q = quotients[k]
                q[shift] = q.get(shift, 0) + c
                p = p - basis[k].mul_monomial(shift, c)
                break
        else:
            remainder[lm] = lc
            p = Poly(ring, {a: c for a, c in p.terms.items() if a != lm})
    return [Poly.from_raw(ring, q) for q in quotients], Poly.from_raw(ring, remainder)


def buchberger(generators: Sequence[Poly], max_pairs: Optional[int] = None):
    """Groebner basis plus, for each element, its cofactors on ``generators``.

    Returns (basis, cofactors) with basis[k] = sum_l cofactors[k][l] * generators[l].
    """
    if not generators:
        raise ValueError("an ideal needs at least one generator")
    ring: PolyRing = generators[0].ring
    field = ring.field
    cap = LIMITS.max_pairs if max_pairs is None else max_pairs
    ngen = len(generators)
    zero = ring.zero()

    basis: List[Poly] = []
    cof: List[List[Poly]] = []

    def add(g: Poly, c: List[Poly]):
        inv = field.inv(g.leading_coeff())
        basis.append(g.scale(inv))
        cof.append([x.scale(inv) for x in c])

    def reduce_with_cofactors(f: Poly, fc: List[Poly]):
        q, r = divide(f, basis)
        out = list(fc)
        for k, qk in enumerate(q):
            if qk:
                out = [a - qk * b for a, b in zip(out, cof[k])]
        return r, out

    pairs = []
    for l, g in enumerate(generators):
        if g.is_zero():
            continue
        unitvec = [ring.one() if j == l else zero for j in range(ngen)]
        r, rc = reduce_with_cofactors(g, unitvec)
        if r:
            for k in range(len(basis)):
                pairs.append((k, len(basis)))
            add(r, rc)

    processed = 0
    while pairs:
        # normal selection strategy: smallest lcm first
        pairs.sort(key=lambda ij: mi.grevlex_key(_lcm(basis[ij[0]].leading_monomial(),
                                                        basis[ij[1]].leading_monomial())))
        i, j = pairs.pop(0)
        processed += 1
        if processed > cap:
            raise DeskScaleError(f"Groebner computation exceeded {cap} pairs")
        gi, gj = basis[i], basis[j]
        a, b = gi.leading_monomial(), gj.leading_monomial()
        lcm = _lcm(a, b)
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue  # coprime leading monomials reduce to zero
        si = tuple(x - y for x, y in zip(lcm, a))
        sj = tuple(x - y for x, y in zip(lcm, b))
        s = gi.mul_monomial(si) - gj.mul_monomial(sj)
        sc = [x.mul_monomial(si) - y.mul_monomial(sj) for x, y in zip(cof[i], cof[j])]
        r, rc = reduce_with_cofactors(s, sc)
        if r:
            for k in range(len(basis)):
                pairs.append((k, len(basis)))
            add(r, rc)

    # drop elements whose leading monomial is divisible by another's
    keep = []
    for k, g in enumerate(basis):
        lm = g.leading_monomial()
        redundant = False
        for l, h in enumerate(basis):
            if l == k:
                continue
            hl = h.leading_monomial()
            if mi.leq(hl, lm) and (hl != lm or l < k):
                redundant = True
                break
        if not redundant:
            keep.append(k)
    return [basis[k] for k in keep], [cof[k] for k in keep]


class Ideal:
    """J = (generators) in k[x1..xn] with a write-once Groebner cache."""

    def __init__(self, generators: Sequence[Poly]):
        generators = [g for g in generators]
        if not generators:
            raise ValueError("an ideal needs at least one generator")
        ring = generators[0].ring
        self.ring = ring
        self.generators = [ring(g) for g in generators]
        self._gb = None
        self._lock = threading.Lock()

    @classmethod
    def principal(cls, f: Poly) -> "Ideal":
        return cls([f])

    @property
    def is_principal(self) -> bool:
        return len(self.generators) == 1

    def _compute(self):
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    nonzero = [g for g in self.generators if g]
                    if not nonzero:
                        self._gb = ([], [])
                    else:
                        self._gb = buchberger(self.generators)
        return self._gb

    def groebner(self) -> List[Poly]:
        return list(self._compute()[0])

    def reduce(self, f: Poly) -> Poly:
        """Grevlex normal form modulo the ideal."""
        basis = self._compute()[0]
        return divide(self.ring(f), basis)[1]

    def divide(self, f: Poly) -> Tuple[List[Poly], Poly]:
        """Cofactors c_l on the generators and remainder r with f = sum c_l g_l + r."""
        basis, cof = self._compute()
        q, r = divide(self.ring(f), basis)
        out = [self.ring.zero()] * len(self.generators)
        for k, qk in enumerate(q):
            if qk:
                out = [a + qk * b for a, b in zip(out, cof[k])]
        return out, r

    def member(self, f: Poly, route: str = "auto") -> bool:
        f = self.ring(f)
        if route == "principal" or (route == "auto" and self.is_principal):
            if not self.is_principal:
                raise ValueError("principal route needs a single generator")
            g = self.generators[0]
            if g.is_zero():
                return f.is_zero()
            try:
                exact_divide(f, g)
            except NotDivisible:
                return False
            return True
        return self.reduce(f).is_zero()

    def __contains__(self, f) -> bool:
        return self.member(f)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def groebner(I: Ideal) -> List[Poly]:
    return I.groebner()


def reduce(f: Poly, I: Ideal) -> Poly:
    return I.reduce(f)


def member(f: Poly, I: Ideal) -> bool:
    return I.member(f)
