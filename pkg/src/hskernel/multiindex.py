"""Multi-indices in N^n, stored as plain tuples of ints."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Tuple

MultiIndex = Tuple[int, ...]


def zero(n: int) -> MultiIndex:
    return (0,) * n


def unit(n: int, i: int, e: int = 1) -> MultiIndex:
    """e at position i (0-based), zero elsewhere."""
    return tuple(e if j == i else 0 for j in range(n))


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    out = tuple(x - y for x, y in zip(a, b))
    if min(out, default=0) < 0:
        raise ValueError(f"{b} is not <= {a}")
    return out


def leq(b: MultiIndex, a: MultiIndex) -> bool:
    """Entry-wise partial order b <= a."""
    return all(x <= y for x, y in zip(b, a))


def grevlex_key(a: MultiIndex):
    """Sort key: larger key means larger monomial, x1 > x2 > ... > xn."""
    return (sum(a), tuple(-e for e in reversed(a)))


def order_key(a: MultiIndex):
    """Key used to list operator terms: |a| first, then grevlex descending."""
    return (sum(a), tuple(e for e in reversed(a)))


@lru_cache(maxsize=None)
def of_degree(n: int, d: int) -> Tuple[MultiIndex, ...]:
    """All alpha in N^n with |alpha| = d, grevlex descending."""
    if n == 0:
        return ((),) if d == 0 else ()
    out = []
    for first in range(d, -1, -1):
        for rest in of_degree(n - 1, d - first):
            out.append((first,) + rest)
    out.sort(key=grevlex_key, reverse=True)
    return tuple(out)


def up_to_degree(n: int, d: int) -> Iterator[MultiIndex]:
    for k in range(d + 1):
        yield from of_degree(n, k)


def below(a: MultiIndex) -> Iterator[MultiIndex]:
    """All b <= a."""
    if not a:
        yield ()
        return
    for head in range(a[0] + 1):
        for rest in below(a[1:]):
            yield (head,) + rest


def coordinates(a: MultiIndex) -> Tuple[int, ...]:
    """The multiset of variable indices encoded by a, e.g. (2,0,1) -> (0,0,2)."""
    out = []
    for i, e in enumerate(a):
        out.extend([i] * e)
    return tuple(out)


def from_coordinates(n: int, idx) -> MultiIndex:
    out = [0] * n
    for i in idx:
        out[i] += 1
    return tuple(out)
