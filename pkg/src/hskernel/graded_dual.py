"""Symmetric multiderivations of a free ring, i.e. the graded dual of Sym(Omega).

A degree-r element is stored by its values on the basis monomials
dx^alpha = prod dx_i^alpha_i of Sym^r Omega.  The product is the shuffle
product, which carries divided powers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence

from . import multiindex as mi
from .diffop import DiffOp, OrderError, iterated_bracket, op_apply
from .field import binom_int
from .poly import ContextMismatch, Poly, PolyRing


class ThetaMismatch(AssertionError):
    """The bracket and alternating-sum formulas for theta disagreed."""


class MultiDerivation:
    __slots__ = ("ring", "degree", "values")

    def __init__(self, ring: PolyRing, degree: int, values: Dict[tuple, Poly]):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        self.ring = ring
        self.degree = degree
        self.values = {tuple(a): p for a, p in values.items() if not p.is_zero()}
        for a in self.values:
            if sum(a) != degree or len(a) != ring.n:
                raise ValueError(f"basis index {a} does not have degree {degree}")

    @classmethod
    def const(cls, a: Poly) -> "MultiDerivation":
        return cls(a.ring, 0, {mi.zero(a.ring.n): a})

    @classmethod
    def one(cls, ring: PolyRing) -> "MultiDerivation":
        return cls.const(ring.one())

    @classmethod
    def zero(cls, ring: PolyRing, degree: int) -> "MultiDerivation":
        return cls(ring, degree, {})

    @classmethod
    def from_derivation(cls, delta: DiffOp) -> "MultiDerivation":
        """Degree-1 element with value delta(x_i) on dx_i."""
        ring = delta.ring
        return cls(ring, 1, {mi.unit(ring.n, i): op_apply(delta, x) for i, x in enumerate(ring.gens)})

    def __getitem__(self, alpha) -> Poly:
        return self.values.get(tuple(alpha), self.ring.zero())

    def is_zero(self) -> bool:
        return not self.values

    def _check(self, other: "MultiDerivation"):
        if not isinstance(other, MultiDerivation):
            raise TypeError(f"expected MultiDerivation, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ContextMismatch(f"{other.ring!r} vs {self.ring!r}")

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            raise ValueError("only homogeneous elements of equal degree can be added")
        out = dict(self.values)
        for a, p in other.values.items():
            out[a] = out[a] + p if a in out else p
        return MultiDerivation(self.ring, self.degree, out)

    def __neg__(self):
        return MultiDerivation(self.ring, self.degree, {a: -p for a, p in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "MultiDerivation":
        a = self.ring(a)
        return MultiDerivation(self.ring, self.degree, {al: a * p for al, p in self.values.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        return shuffle(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiDerivation.one(self.ring)
        for _ in range(k):
            out = shuffle(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiDerivation):
            return NotImplemented
        return self.ring == other.ring and self.degree == other.degree and self.values == other.values

    def __hash__(self):
        return hash((self.degree, frozenset(self.values.items())))

    def __call__(self, *fs: Poly) -> Poly:
        return md_eval(self, fs)

    def __str__(self):
        lines = [f"deg {self.degree}:"]
        for a in sorted(self.values, key=mi.grevlex_key, reverse=True):
            lines.append(f"  dx^[{','.join(str(e) for e in a)}] -> {self.values[a]}")
        return "\n".join(lines)

    def __repr__(self):
        return f"MultiDerivation(degree={self.degree}, {len(self.values)} values)"


def md_eval(u: MultiDerivation, fs: Sequence[Poly]) -> Poly:
    """u(f_1, ..., f_r) via d f_j = sum_i (df_j/dx_i) dx_i and multilinearity."""
    fs = [u.ring(f) for f in fs]
    if len(fs) != u.degree:
        raise ValueError(f"degree-{u.degree} multiderivation evaluated on {len(fs)} arguments")
    ring = u.ring
    # acc[alpha]: coefficient of dx^alpha in d f_1 ... d f_j
    acc: Dict[tuple, Poly] = {mi.zero(ring.n): ring.one()}
    for f in fs:
        partials = [f.partial(i) for i in range(ring.n)]
        nxt: Dict[tuple, Poly] = {}
        for alpha, c in acc.items():
            for i, df in enumerate(partials):
                if df.is_zero():
                    continue
                beta = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
                term = c * df
                nxt[beta] = nxt[beta] + term if beta in nxt else term
        acc = nxt
    out = ring.zero()
    for alpha, c in acc.items():
        v = u.values.get(alpha)
        if v is not None:
            out = out + c * v
    return out


def shuffle(u: MultiDerivation, v: MultiDerivation) -> MultiDerivation:
    """(u * v)(dx^gamma) = sum_{alpha + beta = gamma} C(gamma, alpha) u(dx^alpha) v(dx^beta)."""
    u._check(v)
    ring = u.ring
    acc: Dict[tuple, Dict[tuple, object]] = {}
    for a, p in u.values.items():
        for b, q in v.values.items():
            g = tuple(x + y for x, y in zip(a, b))
            c = binom_int(g, a)
            if not c:
                continue
            slot = acc.setdefault(g, {})
            for e, w in (p * q).terms.items():
                slot[e] = slot.get(e, 0) + w * c
    return MultiDerivation(ring, u.degree + v.degree, {g: Poly.from_raw(ring, raw) for g, raw in acc.items()})


def _block_multisets(gamma, blocks, i, start=0):
    """Non-decreasing choices of i block indices (into ``blocks``) summing to gamma."""
    if i == 0:
        if not any(gamma):
            yield ()
        return
    for k in range(start, len(blocks)):
        b = blocks[k]
        if mi.leq(b, gamma):
            rest = tuple(x - y for x, y in zip(gamma, b))
            for tail in _block_multisets(rest, blocks, i - 1, k):
                yield (k,) + tail


def partition_count(gamma, chosen) -> int:
    """Number of partitions of the labelled positions of gamma into blocks of the given types."""
    num = 1
    for e in gamma:
        num *= math.factorial(e)
    den = 1
    for b in chosen:
        for e in b:
            den *= math.factorial(e)
    counts: Dict[tuple, int] = {}
    for b in chosen:
        counts[b] = counts.get(b, 0) + 1
    for c in counts.values():
        den *= math.factorial(c)
    q, r = divmod(num, den)
    assert r == 0
    return q


def divided_power(u: MultiDerivation, i: int) -> MultiDerivation:
    """rho_{i,d}(u): sum over unordered partitions of the dx-factors into i blocks of size d."""
    d = u.degree
    if d < 1:
        raise ValueError("divided powers are defined on elements of positive degree")
    if i < 0:
        raise ValueError("power must be non-negative")
    ring = u.ring
    if i == 0:
        return MultiDerivation.one(ring)
    if i == 1:
        return u
    blocks = [b for b in mi.of_degree(ring.n, d) if b in u.values]
    values = {}
    for gamma in mi.of_degree(ring.n, i * d):
        raw: Dict[tuple, object] = {}
        for choice in _block_multisets(gamma, blocks, i):
            chosen = [blocks[k] for k in choice]
            c = partition_count(gamma, chosen)
            if ring.field.reduce(c) == 0:
                continue
            prod = ring.one()
            for b in chosen:
                prod = prod * u.values[b]
            for e, w in prod.terms.items():
                raw[e] = raw.get(e, 0) + w * c
        val = Poly.from_raw(ring, raw)
        if val:
            values[gamma] = val
    return MultiDerivation(ring, i * d, values)


def zeta(delta: MultiDerivation, r: int) -> MultiDerivation:
    """zeta_r(delta)(dx^alpha) = prod_i delta(x_i)^alpha_i."""
    if delta.degree != 1:
        raise ValueError("zeta is defined on degree-1 elements")
    ring = delta.ring
    if r == 0:
        return MultiDerivation.one(ring)
    dvals = [delta[mi.unit(ring.n, i)] for i in range(ring.n)]
    values = {}
    for alpha in mi.of_degree(ring.n, r):
        p = ring.one()
        for v, e in zip(dvals, alpha):
            if e:
                p = p * v ** e
        values[alpha] = p
    return MultiDerivation(ring, r, values)


def theta_alternating(P: DiffOp, xs: Sequence[Poly]) -> Poly:
    """sum_{L subset [n]} (-1)^#L x_L P(x_{L'})."""
    ring = P.ring
    n = len(xs)
    out = ring.zero()
    for mask in range(1 << n):
        xl = ring.one()
        xr = ring.one()
        for k in range(n):
            if mask >> k & 1:
                xl = xl * xs[k]
            else:
                xr = xr * xs[k]
        term = xl * op_apply(P, xr)
        out = out - term if bin(mask).count("1") % 2 else out + term
    return out


def theta(P: DiffOp, n: int, check: bool = True) -> MultiDerivation:
    """theta_n(sigma_n(P)) as a degree-n multiderivation.

    Each basis value is the order-0 operator left by bracketing P with the
    coordinates of dx^gamma; with ``check`` the alternating-sum formula is
    evaluated too and must agree.
    """
    order = P.order()
    if order is not None and order > n:
        raise OrderError(f"operator of order {order} has no degree-{n} symbol")
    ring = P.ring
    z = mi.zero(ring.n)
    values = {}
    for gamma in mi.of_degree(ring.n, n):
        xs = [ring.gen(k) for k in mi.coordinates(gamma)]
        B = iterated_bracket(P, xs)
        if B.order() not in (None, 0):
            raise OrderError(f"iterated bracket left an operator of order {B.order()}")
        val = B.coeff(z)
        if check:
            alt = theta_alternating(P, xs)
            if alt != val:
                raise ThetaMismatch(f"theta formulas disagree on dx^{list(gamma)}: {val} vs {alt}")
        values[gamma] = val
    return MultiDerivation(ring, n, values)


def sder_poisson(h: MultiDerivation, g: MultiDerivation) -> MultiDerivation:
    """Homogeneous bracket of degree r + s - 1 extending the Lie bracket of derivations."""
    h._check(g)
    r, s = h.degree, g.degree
    if r + s == 0:
        raise ValueError("bracket of two degree-0 elements is undefined")
    ring = h.ring
    N = r + s - 1
    values = {}
    for gamma in mi.of_degree(ring.n, N):
        xs = [ring.gen(k) for k in mi.coordinates(gamma)]
        idx = range(N)
        out = ring.zero()
        if s <= N:
            for L in combinations(idx, s):
                rest = [xs[k] for k in idx if k not in L]
                inner = md_eval(g, [xs[k] for k in L])
                out = out + md_eval(h, rest + [inner])
        if r <= N:
            for M in combinations(idx, r):
                rest = [xs[k] for k in idx if k not in M]
                inner = md_eval(h, [xs[k] for k in M])
                out = out - md_eval(g, rest + [inner])
        values[gamma] = out
    return MultiDerivation(ring, N, values)


def exponential_family(delta: MultiDerivation, m: int) -> List[MultiDerivation]:
    return [zeta(delta, r) for r in range(m + 1)]
