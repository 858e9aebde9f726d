"""Brute-force reference routes, kept independent of the fast implementations."""

from __future__ import annotations

import math
from itertools import combinations
from typing import List

from . import multiindex as mi
from .config import LIMITS, DeskScaleError
from .diffop import DiffOp, coeff_extract, op_apply, op_compose
from .graded_dual import MultiDerivation, md_eval
from .hs import HSDerivation
from .poly import Poly


def binom_factorial(beta, alpha) -> int:
    out = 1
    for b, a in zip(beta, alpha):
        out *= math.factorial(b) // (math.factorial(a) * math.factorial(b - a))
    return out


def compose_by_extract(P: DiffOp, Q: DiffOp) -> DiffOp:
    """P o Q recovered from its action on monomials."""
    d = (P.order() or 0) + (Q.order() or 0)
    return coeff_extract(lambda f: op_apply(P, op_apply(Q, f)), d, P.ring)


def shuffle_by_subsets(u: MultiDerivation, v: MultiDerivation) -> MultiDerivation:
    """sum over L subset [i+j], #L = i, of u(x_L) v(x_L') on coordinate tuples."""
    ring = u.ring
    i, j = u.degree, v.degree
    values = {}
    for gamma in mi.of_degree(ring.n, i + j):
        xs = [ring.gen(k) for k in mi.coordinates(gamma)]
        total = ring.zero()
        for L in combinations(range(i + j), i):
            rest = [xs[k] for k in range(i + j) if k not in L]
            total = total + md_eval(u, [xs[k] for k in L]) * md_eval(v, rest)
        values[gamma] = total
    return MultiDerivation(ring, i + j, values)


def _set_partitions(items: List[int], d: int):
    """Unordered partitions of ``items`` into blocks of size d."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for others in combinations(rest, d - 1):
        block = (first,) + others
        remaining = [x for x in rest if x not in others]
        for tail in _set_partitions(remaining, d):
            yield [block] + tail


def divided_power_by_enumeration(u: MultiDerivation, i: int) -> MultiDerivation:
    """rho_{i,d}(u) by enumerating partitions of the labelled positions [id]."""
    d = u.degree
    ring = u.ring
    if i * d > LIMITS.max_partition_size:
        raise DeskScaleError(f"set-partition enumeration of size {i * d} exceeds {LIMITS.max_partition_size}")
    if i == 0:
        return MultiDerivation.one(ring)
    values = {}
    for gamma in mi.of_degree(ring.n, i * d):
        coords = mi.coordinates(gamma)
        total = ring.zero()
        for part in _set_partitions(list(range(i * d)), d):
            prod = ring.one()
            for block in part:
                prod = prod * u[mi.from_coordinates(ring.n, [coords[k] for k in block])]
            total = total + prod
        values[gamma] = total
    return MultiDerivation(ring, i * d, values)


def divided_power_by_factorial(u: MultiDerivation, i: int) -> MultiDerivation:
    """u^{*i} / i!, only meaningful when i! is invertible."""
    field = u.ring.field
    return (u ** i).scale(u.ring.const(field.inv(field(math.factorial(i)))))


def inverse_components(D: HSDerivation) -> List[DiffOp]:
    """E with D o E = Id solved on the component triangle: E_n = -sum_{i>=1} D_i o E_{n-i}."""
    comps = D.components()
    E = [DiffOp.identity(D.ring)]
    for n in range(1, D.length + 1):
        acc = DiffOp.zero(D.ring)
        for i in range(1, n + 1):
            acc = acc + op_compose(comps[i], E[n - i])
        E.append(-acc)
    return E


def substitute_naive(f: Poly, images) -> "list[Poly]":
    """Expand f(images) coefficient by coefficient without power caching."""
    ring = f.ring
    m = images[0].order
    out = [ring.zero() for _ in range(m + 1)]
    for alpha, c in f.terms.items():
        term = [ring.const(c)] + [ring.zero()] * m
        for j, e in enumerate(alpha):
            for _ in range(e):
                nxt = [ring.zero()] * (m + 1)
                for a in range(m + 1):
                    if term[a].is_zero():
                        continue
                    for b in range(m + 1 - a):
                        nxt[a + b] = nxt[a + b] + term[a] * images[j][b]
                term = nxt
        out = [x + y for x, y in zip(out, term)]
    return out
