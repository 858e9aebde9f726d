"""Truncated power series R[t]/(t^{m+1}) and substitution homomorphisms."""

from __future__ import annotations

from typing import Dict, List, Sequence

from .poly import ContextMismatch, Poly, PolyRing, poly_sum


class TruncSeries:
    """sum_{i<=m} c_i t^i with polynomial coefficients; immutable."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs: Sequence[Poly]):
        if not coeffs:
            raise ValueError("a truncated series needs at least the t^0 coefficient")
        self.ring = ring
        self.coeffs = tuple(ring(c) for c in coeffs)

    @classmethod
    def constant(cls, f: Poly, m: int) -> "TruncSeries":
        z = f.ring.zero()
        return cls(f.ring, [f] + [z] * m)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Poly:
        return self.coeffs[i]

    def _check(self, other: "TruncSeries"):
        if not isinstance(other, TruncSeries):
            raise TypeError(f"expected TruncSeries, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ContextMismatch(f"{other.ring!r} vs {self.ring!r}")
        if other.order != self.order:
            raise ContextMismatch(f"truncation orders {self.order} and {other.order} differ")

    def __add__(self, other):
        self._check(other)
        return TruncSeries(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return TruncSeries(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncSeries(self.ring, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Poly):
            return TruncSeries(self.ring, [a * other for a in self.coeffs])
        self._check(other)
        m = self.order
        out = []
        for k in range(m + 1):
            out.append(poly_sum(self.ring, (self.coeffs[i] * other.coeffs[k - i] for i in range(k + 1)
                                            if self.coeffs[i] and other.coeffs[k - i])))
        return TruncSeries(self.ring, out)

    def __pow__(self, k: int):
        result = TruncSeries.constant(self.ring.one(), self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def truncate(self, m: int) -> "TruncSeries":
        if m > self.order:
            raise ValueError(f"cannot truncate order {self.order} to {m}")
        return TruncSeries(self.ring, self.coeffs[: m + 1])

    def extend(self, m: int) -> "TruncSeries":
        """Pad with zero coefficients up to order m."""
        if m < self.order:
            raise ValueError(f"cannot extend order {self.order} to {m}")
        return TruncSeries(self.ring, self.coeffs + (self.ring.zero(),) * (m - self.order))

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by t^k, truncating."""
        z = self.ring.zero()
        return TruncSeries(self.ring, ([z] * k + list(self.coeffs))[: self.order + 1])

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = str(c)
            if i == 0:
                parts.append(cs)
            else:
                tp = "t" if i == 1 else f"t^{i}"
                parts.append(f"({cs})*{tp}" if c.nterms > 1 else (tp if cs == "1" else f"{cs}*{tp}"))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"TruncSeries({str(self)!r}, order={self.order})"


def substitute(f: Poly, images: Sequence[TruncSeries]) -> TruncSeries:
    """Image of f under the k-algebra map x_j -> images[j]."""
    ring = f.ring
    if len(images) != ring.n:
        raise ContextMismatch(f"{len(images)} images for {ring.n} variables")
    m = images[0].order
    for s in images:
        if s.ring != ring or s.order != m:
            raise ContextMismatch("images must share ring and truncation order")
    powers: List[Dict[int, TruncSeries]] = [{} for _ in range(ring.n)]

    def power(j: int, e: int) -> TruncSeries:
        cache = powers[j]
        if e not in cache:
            if e == 0:
                cache[e] = TruncSeries.constant(ring.one(), m)
            elif e == 1:
                cache[e] = images[j]
            else:
                cache[e] = power(j, e - 1) * images[j]
        return cache[e]

    acc: List[Dict[tuple, object]] = [dict() for _ in range(m + 1)]
    for alpha, c in f.terms.items():
        term = None
        for j, e in enumerate(alpha):
            if e:
                term = power(j, e) if term is None else term * power(j, e)
        if term is None:
            acc[0][alpha] = acc[0].get(alpha, 0) + c
            continue
        for k, p in enumerate(term.coeffs):
            slot = acc[k]
            for b, d in p.terms.items():
                slot[b] = slot.get(b, 0) + c * d
    return TruncSeries(ring, [Poly.from_raw(ring, a) for a in acc])


def truncate_all(images: Sequence[TruncSeries], m: int) -> List[TruncSeries]:
    return [s.truncate(m) for s in images]
