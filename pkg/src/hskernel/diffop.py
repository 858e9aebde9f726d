"""Differential operators on k[x1..xn] written in the Taylor basis.

Every operator is stored as P = sum_alpha a_alpha * D[alpha] with left
polynomial coefficients, where D[alpha](x^beta) = C(beta, alpha) x^(beta - alpha).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, Optional, Sequence

from . import multiindex as mi
from .field import binom_int
from .parsing import parse_expression
from .poly import ContextMismatch, Poly, PolyRing


class NotAnOperator(ValueError):
    """A black box disagreed with its reconstructed Taylor-basis expansion."""


class OrderError(ValueError):
    pass


def delta_apply(alpha, f: Poly) -> Poly:
    """D[alpha](f), extended linearly from monomials."""
    alpha = tuple(alpha)
    raw: Dict[tuple, object] = {}
    for beta, c in f.terms.items():
        if not mi.leq(alpha, beta):
            continue
        b = binom_int(beta, alpha)
        if b:
            gamma = tuple(x - y for x, y in zip(beta, alpha))
            raw[gamma] = raw.get(gamma, 0) + c * b
    return Poly.from_raw(f.ring, raw)


class DiffOp:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[tuple, Poly]):
        self.ring = ring
        self.terms = {tuple(a): p for a, p in terms.items() if not p.is_zero()}
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, ring: PolyRing) -> "DiffOp":
        return cls(ring, {})

    @classmethod
    def identity(cls, ring: PolyRing) -> "DiffOp":
        return cls.mult(ring.one())

    @classmethod
    def mult(cls, a: Poly) -> "DiffOp":
        """The order-0 operator f -> a*f."""
        return cls(a.ring, {mi.zero(a.ring.n): a})

    @classmethod
    def delta(cls, ring: PolyRing, alpha, coeff=None) -> "DiffOp":
        alpha = tuple(alpha)
        if len(alpha) != ring.n:
            raise ValueError(f"multi-index {list(alpha)} has length {len(alpha)}, ring has {ring.n} variables")
        coeff = ring.one() if coeff is None else ring(coeff)
        return cls(ring, {alpha: coeff})

    @classmethod
    def partial(cls, ring: PolyRing, i: int, e: int = 1, coeff=None) -> "DiffOp":
        """coeff * D_e^(i), i.e. the Taylor operator of order e in variable i (0-based)."""
        return cls.delta(ring, mi.unit(ring.n, i, e), coeff)

    @classmethod
    def parse(cls, ring: PolyRing, text: str) -> "DiffOp":
        """Parse e.g. ``"x2^4*D[0,0,2] + x2^2*D[0,1,0]"``; juxtaposed factors compose."""
        return parse_expression(
            str(text),
            lambda c: cls.mult(ring.const(c)),
            lambda name: cls.mult(ring.var(name)),
            lambda idx: cls.delta(ring, idx),
        )

    # structure

    def order(self) -> Optional[int]:
        """max |alpha|; ``None`` for the zero operator."""
        if not self.terms:
            return None
        return max(sum(a) for a in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, alpha) -> Poly:
        return self.terms.get(tuple(alpha), self.ring.zero())

    def _coerce(self, other) -> "DiffOp":
        if isinstance(other, DiffOp):
            if other.ring != self.ring:
                raise ContextMismatch(f"{other.ring!r} vs {self.ring!r}")
            return other
        if isinstance(other, Poly):
            return DiffOp.mult(self.ring(other))
        if isinstance(other, (int, Fraction)):
            return DiffOp.mult(self.ring.const(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for a, p in other.terms.items():
            out[a] = out[a] + p if a in out else p
        return DiffOp(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp(self.ring, {a: -p for a, p in self.terms.items()})

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
        """Composition self o other (a Poly acts as multiplication)."""
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return op_compose(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return op_compose(other, self)

    def __pow__(self, k: int):
        result = DiffOp.identity(self.ring)
        for _ in range(k):
            result = op_compose(result, self)
        return result

    def left_mul(self, a: Poly) -> "DiffOp":
        """a * P (coefficient-wise)."""
        return DiffOp(self.ring, {al: a * p for al, p in self.terms.items()})

    def scale(self, c) -> "DiffOp":
        c = self.ring.field(c)
        return DiffOp(self.ring, {al: p.scale(c) for al, p in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (Poly, int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __call__(self, f: Poly) -> Poly:
        return op_apply(self, f)

    def slice(self, d: int) -> Dict[tuple, Poly]:
        return {a: p for a, p in self.terms.items() if sum(a) == d}

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for alpha in sorted(self.terms, key=mi.order_key):
            p = self.terms[alpha]
            negative = False
            if p.nterms > 1:
                cs = f"({p})" if sum(alpha) else str(p)
            else:
                (beta, c), = p.terms.items()
                if self.ring.characteristic == 0 and c < 0:
                    negative = True
                    p = -p
                cs = str(p)
            if sum(alpha) == 0:
                body = cs
            else:
                op = "D[" + ",".join(str(e) for e in alpha) + "]"
                body = op if cs == "1" else f"{cs}*{op}"
            if not out:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"DiffOp({str(self)!r})"


def op_apply(P: DiffOp, f: Poly) -> Poly:
    f = P.ring(f)
    raw: Dict[tuple, object] = {}
    for alpha, a in P.terms.items():
        d = delta_apply(alpha, f)
        if d.is_zero():
            continue
        for gamma, c in (a * d).terms.items():
            raw[gamma] = raw.get(gamma, 0) + c
    return Poly.from_raw(P.ring, raw)


def op_compose(P: DiffOp, Q: DiffOp) -> DiffOp:
    """P o Q in the Taylor basis.

    Uses D[alpha] o b = sum_{sigma + rho = alpha} D[sigma](b) D[rho] and
    D[rho] o D[beta] = C(rho + beta, rho) D[rho + beta].
    """
    if P.ring != Q.ring:
        raise ContextMismatch(f"{P.ring!r} vs {Q.ring!r}")
    ring = P.ring
    acc: Dict[tuple, Dict[tuple, object]] = {}
    dcache: Dict[tuple, Poly] = {}
    for alpha, a in P.terms.items():
        for sigma in mi.below(alpha):
            rho = tuple(x - y for x, y in zip(alpha, sigma))
            for beta, b in Q.terms.items():
                key = (sigma, beta)
                db = dcache.get(key)
                if db is None:
                    db = dcache[key] = delta_apply(sigma, b)
                if db.is_zero():
                    continue
                gamma = tuple(x + y for x, y in zip(rho, beta))
                mult = binom_int(gamma, beta)
                if not mult:
                    continue
                slot = acc.setdefault(gamma, {})
                for e, c in (a * db).terms.items():
                    slot[e] = slot.get(e, 0) + c * mult
    return DiffOp(ring, {g: Poly.from_raw(ring, raw) for g, raw in acc.items()})


def bracket(P: DiffOp, a: Poly) -> DiffOp:
    """[P, a] = P o a - a o P."""
    a = P.ring(a)
    m = DiffOp.mult(a)
    return op_compose(P, m) - op_compose(m, P)


def commutator(P: DiffOp, Q: DiffOp) -> DiffOp:
    return op_compose(P, Q) - op_compose(Q, P)


def iterated_bracket(P: DiffOp, xs: Sequence[Poly]) -> DiffOp:
    """[[...[[P, x_d], x_{d-1}], ..., x_2], x_1]: the last entry is bracketed first."""
    for x in reversed(list(xs)):
        P = bracket(P, x)
    return P


def coeff_extract(
    black_box: Callable[[Poly], Poly],
    d: int,
    ring: PolyRing,
    check: bool = True,
) -> DiffOp:
    """Recover the Taylor-basis expansion of a k-linear operator of order <= d.

    a_alpha = sum_{beta <= alpha} C(alpha, beta) (-1)^|beta| x^beta P(x^(alpha - beta)).
    With ``check`` the result is re-applied to every monomial of degree d + 1
    and compared against the black box.
    """
    values: Dict[tuple, Poly] = {}

    def value(gamma):
        if gamma not in values:
            values[gamma] = ring(black_box(ring.monomial(gamma)))
        return values[gamma]

    terms = {}
    for alpha in mi.up_to_degree(ring.n, d):
        raw: Dict[tuple, object] = {}
        for beta in mi.below(alpha):
            c = binom_int(alpha, beta) * (-1) ** sum(beta)
            v = value(tuple(x - y for x, y in zip(alpha, beta)))
            for e, w in v.terms.items():
                g = tuple(x + y for x, y in zip(e, beta))
                raw[g] = raw.get(g, 0) + w * c
        coeff = Poly.from_raw(ring, raw)
        if coeff:
            terms[alpha] = coeff
    P = DiffOp(ring, terms)
    if check:
        for gamma in mi.of_degree(ring.n, d + 1):
            mono = ring.monomial(gamma)
            if op_apply(P, mono) != ring(black_box(mono)):
                raise NotAnOperator(f"black box is not an operator of order <= {d} (fails on {mono})")
    return P


class Symbol:
    """sigma_d(P): the degree-d slice of an operator of order <= d.

    A representative operator is kept for the Poisson bracket; equality
    compares degree and principal slice only.
    """

    __slots__ = ("ring", "degree", "principal", "rep")

    def __init__(self, ring: PolyRing, degree: int, principal: Dict[tuple, Poly], rep: Optional[DiffOp] = None):
        self.ring = ring
        self.degree = degree
        self.principal = {a: p for a, p in principal.items() if not p.is_zero()}
        if any(sum(a) != degree for a in self.principal):
            raise ValueError("principal slice has a term of the wrong degree")
        self.rep = rep if rep is not None else DiffOp(ring, self.principal)

    @classmethod
    def unit(cls, ring: PolyRing) -> "Symbol":
        return cls(ring, 0, {mi.zero(ring.n): ring.one()})

    def is_zero(self) -> bool:
        return not self.principal

    def __eq__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        return self.ring == other.ring and self.degree == other.degree and self.principal == other.principal

    def __hash__(self):
        return hash((self.degree, frozenset(self.principal.items())))

    def __add__(self, other: "Symbol") -> "Symbol":
        if other.degree != self.degree:
            raise ValueError("can only add symbols of equal degree")
        out = dict(self.principal)
        for a, p in other.principal.items():
            out[a] = out[a] + p if a in out else p
        return Symbol(self.ring, self.degree, out, self.rep + other.rep)

    def __mul__(self, other):
        """Product in gr Diff: sigma^(a) sigma^(b) = C(a+b, a) sigma^(a+b)."""
        if isinstance(other, int):
            return self.scale(self.ring.const(other))
        if isinstance(other, Poly):
            return self.scale(other)
        ring = self.ring
        acc: Dict[tuple, Dict[tuple, object]] = {}
        for a, p in self.principal.items():
            for b, q in other.principal.items():
                g = tuple(x + y for x, y in zip(a, b))
                c = binom_int(g, a)
                if not c:
                    continue
                slot = acc.setdefault(g, {})
                for e, v in (p * q).terms.items():
                    slot[e] = slot.get(e, 0) + v * c
        return Symbol(ring, self.degree + other.degree,
                      {g: Poly.from_raw(ring, raw) for g, raw in acc.items()},
                      op_compose(self.rep, other.rep))

    __rmul__ = __mul__

    def scale(self, a: Poly) -> "Symbol":
        return Symbol(self.ring, self.degree, {al: a * p for al, p in self.principal.items()},
                      self.rep.left_mul(a))

    def as_diffop(self) -> DiffOp:
        return DiffOp(self.ring, self.principal)

    def __str__(self):
        return f"sigma_{self.degree}({DiffOp(self.ring, self.principal)})"

    __repr__ = __str__


def symbol(P: DiffOp, d: int) -> Symbol:
    order = P.order()
    if order is not None and order > d:
        raise OrderError(f"operator of order {order} has no symbol of degree {d}")
    return Symbol(P.ring, d, P.slice(d), P)


def poisson(S: Symbol, T: Symbol) -> Symbol:
    """{sigma_r(P), sigma_s(Q)} = sigma_{r+s-1}([P, Q]) computed on representatives."""
    if S.degree + T.degree == 0:
        raise ValueError("Poisson bracket of two degree-0 symbols lands in degree -1")
    return symbol(commutator(S.rep, T.rep), S.degree + T.degree - 1)


def op_sum(ring: PolyRing, ops: Iterable[DiffOp]) -> DiffOp:
    out = DiffOp.zero(ring)
    for P in ops:
        out = out + P
    return out
