"""Sparse multivariate polynomials over GF(p) or QQ."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence

from . import multiindex as mi
from .config import check_vars
from .field import Field, field_for
from .parsing import parse_expression


class ContextMismatch(TypeError):
    pass


class NotDivisible(ArithmeticError):
    pass


class PolyRing:
    """k[x1..xn] with a fixed variable naming."""

    def __init__(self, field: Field, names: Sequence[str] | int):
        if isinstance(names, int):
            names = [f"x{i + 1}" for i in range(names)]
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        check_vars(len(names))
        self.field = field
        self.names = names
        self.n = len(names)
        self._index = {name: i for i, name in enumerate(names)}

    @classmethod
    def of(cls, characteristic: int, names: Sequence[str] | int) -> "PolyRing":
        return cls(field_for(characteristic), names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.names == other.names

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.names)})"

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {mi.zero(self.n): c} if c != 0 else {})

    def monomial(self, alpha, c=1) -> "Poly":
        c = self.field(c)
        return Poly(self, {tuple(alpha): c} if c != 0 else {})

    def gen(self, i: int) -> "Poly":
        return self.monomial(mi.unit(self.n, i))

    @property
    def gens(self):
        return [self.gen(i) for i in range(self.n)]

    def var(self, name: str) -> "Poly":
        return self.gen(self._index[name])

    def index(self, name: str) -> int:
        return self._index[name]

    def parse(self, text: str) -> "Poly":
        return parse_expression(str(text), self.const, self.var)

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring != self:
                raise ContextMismatch(f"{value.ring!r} vs {self!r}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)


class Poly:
    """Immutable sparse polynomial: a map exponent tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[tuple, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_raw(cls, ring: PolyRing, raw: Dict[tuple, object]) -> "Poly":
        """Reduce raw accumulated coefficients and drop zeros."""
        red = ring.field.reduce
        terms = {}
        for a, c in raw.items():
            c = red(c)
            if c != 0:
                terms[a] = c
        return cls(ring, terms)

    # ring structure

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ContextMismatch(f"{other.ring!r} vs {self.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        raw = dict(self.terms)
        for a, c in other.terms.items():
            raw[a] = raw.get(a, 0) + c
        return Poly.from_raw(self.ring, raw)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.field.reduce
        return Poly(self.ring, {a: red(-c) for a, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(self.ring.field(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero()
        raw: Dict[tuple, object] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                e = tuple(x + y for x, y in zip(a, b))
                raw[e] = raw.get(e, 0) + c * d
        return Poly.from_raw(self.ring, raw)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        if c == 0:
            return self.ring.zero()
        return Poly.from_raw(self.ring, {a: v * c for a, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(a) == 0 for a in self.terms)

    def degree(self) -> Optional[int]:
        """Total degree; ``None`` stands for minus infinity (zero polynomial)."""
        if not self.terms:
            return None
        return max(sum(a) for a in self.terms)

    def coeff(self, alpha) -> object:
        return self.terms.get(tuple(alpha), self.ring.field.zero)

    def constant_term(self):
        return self.coeff(mi.zero(self.ring.n))

    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=mi.grevlex_key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: mi.grevlex_key(t[0]), reverse=True)

    def partial(self, i: int) -> "Poly":
        """d/dx_i (0-based index)."""
        raw = {}
        for a, c in self.terms.items():
            if a[i]:
                b = a[:i] + (a[i] - 1,) + a[i + 1:]
                raw[b] = raw.get(b, 0) + c * a[i]
        return Poly.from_raw(self.ring, raw)

    def mul_monomial(self, alpha, c=1) -> "Poly":
        return Poly.from_raw(
            self.ring, {tuple(x + y for x, y in zip(a, alpha)): v * c for a, v in self.terms.items()}
        )

    # rendering

    def _monomial_str(self, a) -> str:
        parts = []
        for name, e in zip(self.ring.names, a):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        render = self.ring.field.render
        out = []
        for a, c in self.sorted_terms():
            negative = self.ring.characteristic == 0 and c < 0
            mag = -c if negative else c
            mono = self._monomial_str(a)
            if not mono:
                body = render(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{render(mag)}*{mono}"
            if not out:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r})"

    @property
    def nterms(self) -> int:
        return len(self.terms)


def exact_divide(f: Poly, g: Poly) -> Poly:
    """Return q with f = q*g, or raise NotDivisible.

    Long division where every reduction uses the grevlex leading term of g;
    if g divides f, the leading term of each remainder is divisible by it.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    f = g._coerce(f)
    field = f.ring.field
    lm_g = g.leading_monomial()
    inv_lc = field.inv(g.terms[lm_g])
    q_raw: Dict[tuple, object] = {}
    r = f
    while r.terms:
        lm_r = r.leading_monomial()
        if not mi.leq(lm_g, lm_r):
            raise NotDivisible(f"{g} does not divide {f}")
        shift = mi.sub(lm_r, lm_g)
        c = field.reduce(r.terms[lm_r] * inv_lc)
        q_raw[shift] = q_raw.get(shift, 0) + c
        r = r - g.mul_monomial(shift, c)
    return Poly.from_raw(f.ring, q_raw)


def divides(g: Poly, f: Poly) -> bool:
    try:
        exact_divide(f, g)
    except NotDivisible:
        return False
    return True


def poly_sum(ring: PolyRing, polys: Iterable[Poly]) -> Poly:
    raw: Dict[tuple, object] = {}
    for p in polys:
        for a, c in p.terms.items():
            raw[a] = raw.get(a, 0) + c
    return Poly.from_raw(ring, raw)
