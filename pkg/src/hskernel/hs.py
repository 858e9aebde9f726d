"""Hasse-Schmidt derivations of k[x1..xn], stored by coordinate images.

A HS derivation D = (Id, D_1, ..., D_m) corresponds to the k-algebra map
Phi: R -> R[t]/(t^{m+1}), Phi(f) = sum D_i(f) t^i, which is determined by
the images of the coordinates.  Components D_i are recovered as Taylor-basis
operators on demand.
"""

from __future__ import annotations

import json
import math
import random
import threading
from typing import List, Optional, Sequence

from . import multiindex as mi
from .config import check_length
from .diffop import DiffOp, Symbol, op_apply, op_compose, symbol
from .field import binom_int
from .poly import ContextMismatch, Poly, PolyRing
from .series import TruncSeries, substitute


class InvalidHS(ValueError):
    pass


class NotIntegrable(ValueError):
    """The divided-power formula delta^i / i! is unavailable in this characteristic."""


class HSDerivation:
    __slots__ = ("ring", "images", "_components", "_lock")

    def __init__(self, ring: PolyRing, images: Sequence[TruncSeries]):
        images = tuple(images)
        if len(images) != ring.n:
            raise InvalidHS(f"expected {ring.n} coordinate images, got {len(images)}")
        m = images[0].order
        if m < 1:
            raise InvalidHS("length must be at least 1")
        check_length(m)
        for j, s in enumerate(images):
            if s.ring != ring:
                raise ContextMismatch(f"image {j} lives in {s.ring!r}")
            if s.order != m:
                raise InvalidHS("all images must have the same truncation order")
            if s[0] != ring.gen(j):
                raise InvalidHS(f"t^0 coefficient of image {j} is {s[0]}, expected {ring.names[j]}")
        self.ring = ring
        self.images = images
        self._components: Optional[List[DiffOp]] = None
        self._lock = threading.Lock()

    @property
    def length(self) -> int:
        return self.images[0].order

    def __eq__(self, other):
        return isinstance(other, HSDerivation) and self.ring == other.ring and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def phi(self, f: Poly) -> TruncSeries:
        """Phi(f) = sum_i D_i(f) t^i."""
        return substitute(self.ring(f), self.images)

    def apply(self, i: int, f: Poly) -> Poly:
        """D_i(f) read off the substitution."""
        return self.phi(f)[i]

    def components(self) -> List[DiffOp]:
        """[D_0, ..., D_m] as Taylor-basis operators (computed once)."""
        if self._components is None:
            with self._lock:
                if self._components is None:
                    self._components = _extract_components(self)
        return self._components

    def component(self, i: int) -> DiffOp:
        return self.components()[i]

    def __str__(self):
        rows = [f"{name} -> {s}" for name, s in zip(self.ring.names, self.images)]
        return f"HS(length {self.length}: " + "; ".join(rows) + ")"

    __repr__ = __str__

    def to_json(self) -> dict:
        return {"length": self.length, "images": [[str(c) for c in s.coeffs] for s in self.images]}

    @classmethod
    def from_json(cls, ring: PolyRing, data: dict) -> "HSDerivation":
        m = int(data["length"])
        images = []
        for j, row in enumerate(data["images"]):
            if len(row) != m + 1:
                raise InvalidHS(f"image {j} has {len(row)} coefficients, expected {m + 1}")
            images.append(TruncSeries(ring, [ring.parse(c) for c in row]))
        return cls(ring, images)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _extract_components(D: HSDerivation) -> List[DiffOp]:
    # One substitution per monomial of degree <= m feeds every component at once;
    # the inversion formula is the same one coeff_extract uses.
    ring, m = D.ring, D.length
    values = {gamma: D.phi(ring.monomial(gamma)) for gamma in mi.up_to_degree(ring.n, m)}
    comps = [DiffOp.identity(ring)]
    for i in range(1, m + 1):
        terms = {}
        for alpha in mi.up_to_degree(ring.n, i):
            raw = {}
            for beta in mi.below(alpha):
                c = binom_int(alpha, beta) * (-1) ** sum(beta)
                v = values[tuple(x - y for x, y in zip(alpha, beta))][i]
                for e, w in v.terms.items():
                    g = tuple(x + y for x, y in zip(e, beta))
                    raw[g] = raw.get(g, 0) + w * c
            coeff = Poly.from_raw(ring, raw)
            if coeff:
                terms[alpha] = coeff
        comps.append(DiffOp(ring, terms))
    return comps


def hs_from_images(ring: PolyRing, images) -> HSDerivation:
    """Build from TruncSeries or from lists of polys/strings per coordinate."""
    series = []
    for s in images:
        if isinstance(s, TruncSeries):
            series.append(s)
        else:
            series.append(TruncSeries(ring, [ring(c) for c in s]))
    return HSDerivation(ring, series)


def hs_component(D: HSDerivation, i: int) -> DiffOp:
    return D.component(i)


def identity_hs(ring: PolyRing, m: int) -> HSDerivation:
    return HSDerivation(ring, [TruncSeries.constant(x, m) for x in ring.gens])


def taylor_hs(ring: PolyRing, i: int, m: int) -> HSDerivation:
    """The family (Id, D_1^(i), D_2^(i), ...): x_i -> x_i + t."""
    images = [TruncSeries.constant(x, m) for x in ring.gens]
    images[i] = TruncSeries(ring, [ring.gen(i), ring.one()] + [ring.zero()] * (m - 1))
    return HSDerivation(ring, images)


def hs_of_derivation(delta: DiffOp) -> HSDerivation:
    """The length-1 HS derivation (Id, delta)."""
    ring = delta.ring
    _check_derivation(delta)
    return HSDerivation(ring, [TruncSeries(ring, [x, op_apply(delta, x)]) for x in ring.gens])


def _check_derivation(delta: DiffOp):
    order = delta.order()
    if order is not None and order > 1:
        raise InvalidHS(f"operator of order {order} is not a derivation")
    if not delta.coeff(mi.zero(delta.ring.n)).is_zero():
        raise InvalidHS("a derivation must kill constants")


def _same_shape(D: HSDerivation, E: HSDerivation):
    if D.ring != E.ring:
        raise ContextMismatch(f"{D.ring!r} vs {E.ring!r}")
    if D.length != E.length:
        raise InvalidHS(f"lengths {D.length} and {E.length} differ")


def extend_phi(D: HSDerivation, s: TruncSeries) -> TruncSeries:
    """The t-linear extension sum_k Phi(s_k) t^k, truncated at the order of D."""
    m = D.length
    out = TruncSeries.constant(D.ring.zero(), m)
    for k, c in enumerate(s.coeffs[: m + 1]):
        if c:
            out = out + D.phi(c).shift(k)
    return out


def hs_compose(D: HSDerivation, E: HSDerivation) -> HSDerivation:
    """D o E, with (D o E)_n = sum_{i+j=n} D_i o E_j."""
    _same_shape(D, E)
    return HSDerivation(D.ring, [extend_phi(D, s) for s in E.images])


def hs_inverse(D: HSDerivation) -> HSDerivation:
    """Solve psi_n = -sum_{k<n} D_{n-k}(psi_k) coordinate by coordinate."""
    ring, m = D.ring, D.length
    images = []
    for x in ring.gens:
        psi = [x]
        for n in range(1, m + 1):
            acc = ring.zero()
            for k in range(n):
                if psi[k]:
                    acc = acc + D.phi(psi[k])[n - k]
            psi.append(-acc)
        images.append(TruncSeries(ring, psi))
    return HSDerivation(ring, images)


def hs_truncate(D: HSDerivation, m: int) -> HSDerivation:
    if m > D.length:
        raise InvalidHS(f"cannot truncate length {D.length} to {m}")
    if m < 1:
        raise InvalidHS("truncation length must be at least 1")
    return HSDerivation(D.ring, [s.truncate(m) for s in D.images])


def hs_scale(a: Poly, D: HSDerivation) -> HSDerivation:
    """a . D, with components a^r D_r."""
    a = D.ring(a)
    images = []
    for s in D.images:
        images.append(TruncSeries(D.ring, [c * a ** r for r, c in enumerate(s.coeffs)]))
    return HSDerivation(D.ring, images)


def canonical_lift(D: HSDerivation) -> HSDerivation:
    """Extend every coordinate image by a zero t^{m+1} coefficient."""
    check_length(D.length + 1)
    return HSDerivation(D.ring, [s.extend(D.length + 1) for s in D.images])


def char0_integral(delta: DiffOp, m: int) -> HSDerivation:
    """The integral with components delta^i / i!; needs m! invertible."""
    ring = delta.ring
    _check_derivation(delta)
    if not ring.field.factorial_invertible(m):
        raise NotIntegrable(f"{m}! is not invertible in characteristic {ring.characteristic}")
    check_length(m)
    images = []
    for x in ring.gens:
        coeffs = [x]
        cur = x
        for i in range(1, m + 1):
            cur = op_apply(delta, cur)
            coeffs.append(cur * ring.field.inv(ring.field(math.factorial(i))))
        images.append(TruncSeries(ring, coeffs))
    return HSDerivation(ring, images)


def validate_leibniz(D: HSDerivation, pairs) -> bool:
    """D_i(fg) = sum_{r+s=i} D_r(f) D_s(g) on the given pairs, via the components."""
    comps = D.components()
    for f, g in pairs:
        fv = [op_apply(P, f) for P in comps]
        gv = [op_apply(P, g) for P in comps]
        for i, P in enumerate(comps):
            rhs = D.ring.zero()
            for r in range(i + 1):
                rhs = rhs + fv[r] * gv[i - r]
            if op_apply(P, f * g) != rhs:
                return False
    return True


class TotalSymbol:
    """sum_i sigma_i(D_i) t^i in (gr Diff)[t]/(t^{m+1})."""

    __slots__ = ("ring", "slots")

    def __init__(self, ring: PolyRing, slots: Sequence[Symbol]):
        self.ring = ring
        self.slots = tuple(slots)
        for i, s in enumerate(self.slots):
            if s.degree != i:
                raise ValueError(f"slot {i} holds a symbol of degree {s.degree}")

    @property
    def length(self) -> int:
        return len(self.slots) - 1

    def __getitem__(self, i):
        return self.slots[i]

    def __eq__(self, other):
        return isinstance(other, TotalSymbol) and self.slots == other.slots

    def __mul__(self, other: "TotalSymbol") -> "TotalSymbol":
        out = []
        for n in range(self.length + 1):
            acc = None
            for i in range(n + 1):
                term = self.slots[i] * other.slots[n - i]
                acc = term if acc is None else acc + term
            out.append(acc)
        return TotalSymbol(self.ring, out)

    def scale(self, a: Poly) -> "TotalSymbol":
        """Module action a . R(t) = R(a t)."""
        return TotalSymbol(self.ring, [s.scale(a ** i) for i, s in enumerate(self.slots)])

    def truncate(self, m: int) -> "TotalSymbol":
        return TotalSymbol(self.ring, self.slots[: m + 1])

    def is_one(self) -> bool:
        return self.slots[0] == Symbol.unit(self.ring) and all(s.is_zero() for s in self.slots[1:])

    def __str__(self):
        return " + ".join(f"{s}*t^{i}" for i, s in enumerate(self.slots))


def total_symbol(D: HSDerivation) -> TotalSymbol:
    return TotalSymbol(D.ring, [symbol(P, i) for i, P in enumerate(D.components())])


def is_exponential_type(series, one=None) -> bool:
    """R_0 = 1 and C(i+j, i) R_{i+j} = R_i R_j for all i + j <= m.

    Accepts a TotalSymbol or any sequence of graded elements supporting
    ``*`` (the algebra product) and ``* int``.
    """
    slots = series.slots if isinstance(series, TotalSymbol) else list(series)
    if isinstance(series, TotalSymbol):
        one = Symbol.unit(series.ring)
    if one is not None and slots[0] != one:
        return False
    m = len(slots) - 1
    for i in range(1, m + 1):
        for j in range(i, m + 1 - i):
            if slots[i + j] * math.comb(i + j, i) != slots[i] * slots[j]:
                return False
    return True


def random_hs(rng: random.Random, ring: PolyRing, m: int, max_terms: int = 3, max_deg: int = 2) -> HSDerivation:
    """Any choice of coordinate images defines a HS derivation of a free ring."""
    from .randgen import random_poly

    images = []
    for x in ring.gens:
        coeffs = [x] + [random_poly(rng, ring, max_terms, max_deg) for _ in range(m)]
        images.append(TruncSeries(ring, coeffs))
    return HSDerivation(ring, images)
