"""Seeded random generators for the property suites."""

from __future__ import annotations

import random

from . import multiindex as mi
from .diffop import DiffOp
from .poly import Poly, PolyRing


def random_coeff(rng: random.Random, ring: PolyRing):
    p = ring.characteristic
    if p:
        return rng.randrange(1, p)
    c = rng.choice([1, 1, 1, -1, 2, -2, 3])
    if rng.random() < 0.15:
        return ring.field(c) / rng.choice([2, 3])
    return ring.field(c)


def random_poly(rng: random.Random, ring: PolyRing, max_terms: int = 3, max_deg: int = 2,
                allow_zero: bool = True) -> Poly:
    nterms = rng.randint(0 if allow_zero else 1, max_terms)
    raw = {}
    for _ in range(nterms):
        d = rng.randint(0, max_deg)
        alpha = rng.choice(mi.of_degree(ring.n, d))
        raw[alpha] = raw.get(alpha, 0) + random_coeff(rng, ring)
    p = Poly.from_raw(ring, raw)
    if not allow_zero and p.is_zero():
        return ring.one()
    return p


def random_diffop(rng: random.Random, ring: PolyRing, order: int, max_terms: int = 4,
                  coeff_terms: int = 2, coeff_deg: int = 2, exact_order: bool = False) -> DiffOp:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        alpha = rng.choice(mi.of_degree(ring.n, rng.randint(0, order)))
        terms[alpha] = random_poly(rng, ring, coeff_terms, coeff_deg, allow_zero=False)
    if exact_order:
        alpha = rng.choice(mi.of_degree(ring.n, order))
        terms[alpha] = random_poly(rng, ring, coeff_terms, coeff_deg, allow_zero=False)
    return DiffOp(ring, terms)


def random_derivation(rng: random.Random, ring: PolyRing, coeff_terms: int = 2, coeff_deg: int = 2) -> DiffOp:
    terms = {}
    for i in range(ring.n):
        if rng.random() < 0.7:
            terms[mi.unit(ring.n, i)] = random_poly(rng, ring, coeff_terms, coeff_deg)
    return DiffOp(ring, terms)


FIELD_CHARS = (2, 3, 5, 0)


def random_ring(rng: random.Random, characteristic: int, max_vars: int = 3) -> PolyRing:
    return PolyRing.of(characteristic, rng.randint(1, max_vars))
