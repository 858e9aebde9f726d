"""Exact coefficient fields: the prime fields GF(p) and the rationals.

Field elements are plain Python numbers (``int`` residues for GF(p),
``fractions.Fraction`` for QQ); the field object owns the arithmetic
that keeps them canonical.
"""

from __future__ import annotations

import math
from fractions import Fraction


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of GF(p) and QQ."""

    characteristic: int

    def __call__(self, value):
        raise NotImplementedError

    def reduce(self, c):
        """Bring the result of raw ``+ - *`` back into canonical form."""
        raise NotImplementedError

    def inv(self, c):
        raise NotImplementedError

    def div(self, a, b):
        return self.reduce(a * self.inv(b))

    def render(self, c) -> str:
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def factorial_invertible(self, m: int) -> bool:
        """True when m! is a unit of the field."""
        return self.characteristic == 0 or self.characteristic > m


class GF(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"characteristic must be 0 or prime, got {p}")
        self.p = p
        self.characteristic = p

    def __call__(self, value):
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        return int(value) % self.p

    def reduce(self, c):
        return c % self.p

    def inv(self, c):
        c %= self.p
        if c == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return pow(c, -1, self.p)

    def render(self, c) -> str:
        return str(c)

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class Rationals(Field):
    characteristic = 0

    def __call__(self, value):
        return Fraction(value)

    def reduce(self, c):
        return c

    def inv(self, c):
        if c == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return 1 / Fraction(c)

    def render(self, c) -> str:
        c = Fraction(c)
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = Rationals()


def field_for(characteristic: int) -> Field:
    if characteristic == 0:
        return QQ
    return GF(characteristic)


def binom_int(beta, alpha) -> int:
    """Product of entry-wise binomial coefficients over the integers."""
    out = 1
    for b, a in zip(beta, alpha):
        if a > b:
            return 0
        out *= math.comb(b, a)
    return out


def binom(beta, alpha, field: Field):
    """C(beta, alpha) mapped into ``field``; requires alpha <= beta."""
    return field(binom_int(beta, alpha))


def binom_lucas(b: int, a: int, p: int) -> int:
    """C(b, a) mod p digit by digit (Lucas)."""
    out = 1
    while b or a:
        bd, ad = b % p, a % p
        if ad > bd:
            return 0
        out = out * math.comb(bd, ad) % p
        b //= p
        a //= p
    return out
