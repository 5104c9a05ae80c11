"""Down-sets of positive lattice points and the generator sets built on them.

Points live in (Z_{>0})^n with the componentwise order.  The generator
sets of Veronese subrings and Segre products are compositions, so
most of this module is composition enumeration plus explicit down-set
materialization.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .combinatorics import binomial

DEFAULT_POINT_CAP = 10**7

Point = tuple[int, ...]


class EnumerationCapError(RuntimeError):
    """Raised when a down-set would exceed the configured size cap."""


def compositions(total: int, parts: int) -> Iterator[Point]:
    """Positive ``parts``-tuples summing to ``total``, in lexicographic order."""
    if parts <= 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def box(a: Point) -> Iterator[Point]:
    """All positive points below ``a``."""
    return itertools.product(*(range(1, x + 1) for x in a))


def _check_points(points: Iterable[Sequence[int]]) -> tuple[Point, ...]:
    pts = tuple(tuple(int(c) for c in p) for p in points)
    if not pts:
        raise ValueError("point set must be nonempty")
    arity = len(pts[0])
    if arity == 0 or any(len(p) != arity for p in pts):
        raise ValueError("points must share a positive arity")
    if any(c < 1 for p in pts for c in p):
        raise ValueError("coordinates must be positive")
    return pts


@dataclass(frozen=True)
class DownSet:
    generated_from: tuple[Point, ...]
    members: frozenset[Point] = field(repr=False)

    @property
    def arity(self) -> int:
        return len(self.generated_from[0])

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.members

    def level_census(self) -> dict[int, int]:
        """|H_l| keyed by raw coordinate sum l."""
        return dict(sorted(Counter(sum(p) for p in self.members).items()))

    def h_vector(self) -> list[int]:
        """h_l = |H_{l + arity}| for l = 0 .. max level."""
        census = self.level_census()
        top = max(census) - self.arity
        return [census.get(l + self.arity, 0) for l in range(top + 1)]

    def is_down_closed(self) -> bool:
        for p in self.members:
            for j, c in enumerate(p):
                if c > 1 and p[:j] + (c - 1,) + p[j + 1:] not in self.members:
                    return False
        return True


def down_set(T: Iterable[Sequence[int]], cap: int = DEFAULT_POINT_CAP) -> DownSet:
    """I(T): every positive point componentwise below some element of T."""
    pts = _check_points(T)
    members: set[Point] = set()
    for a in pts:
        if math.prod(a) > cap:
            raise EnumerationCapError(f"box below {a} exceeds cap {cap}")
        members.update(box(a))
        if len(members) > cap:
            raise EnumerationCapError(f"down-set exceeds cap {cap}")
    return DownSet(pts, frozenset(members))


def level_census(D: DownSet) -> dict[int, int]:
    return D.level_census()


def veronese_generators(n: int, d: int) -> list[Point]:
    """Minimal interior lattice points of the Veronese cone: positive d-tuples
    with coordinate sum n * ceil(d / n)."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    total = n * (-(-d // n))
    return list(compositions(total, d))


def veronese_generator_count(n: int, d: int) -> int:
    return binomial(n * (-(-d // n)) - 1, d - 1)


def segre_factor(r_i: int, r_t: int) -> list[Point]:
    """Positive (r_i + 1)-tuples summing to r_t + 1."""
    if r_i > r_t:
        raise ValueError(f"factor size {r_i} exceeds the largest size {r_t}")
    return list(compositions(r_t + 1, r_i + 1))


def _check_ascending(r: Sequence[int]) -> tuple[int, ...]:
    r = tuple(int(x) for x in r)
    if len(r) < 2:
        raise ValueError("a Segre product needs at least two factors")
    if any(x < 1 for x in r):
        raise ValueError("factor sizes must be positive")
    if any(a > b for a, b in zip(r, r[1:])):
        raise ValueError(f"factor sizes must be ascending, got {r}")
    return r


def segre_generators(r: Sequence[int]) -> list[tuple[Point, ...]]:
    """The product set F_1 x ... x F_{t-1}; its elements index the canonical
    generators of the Segre product."""
    r = _check_ascending(r)
    factors = [segre_factor(ri, r[-1]) for ri in r[:-1]]
    return list(itertools.product(*factors))


def segre_embedding(k: Sequence[Point], r: Sequence[int]) -> Point:
    """The lattice point in Z^d attached to k: the first r_i entries of each
    block, then r_t ones, then r_t + 1."""
    r = _check_ascending(r)
    out: list[int] = []
    for block, ri in zip(k, r[:-1]):
        out.extend(block[:ri])
    out.extend([1] * r[-1])
    out.append(r[-1] + 1)
    return tuple(out)


def product_down_set(T: Iterable[Sequence[Point]]) -> frozenset[tuple[Point, ...]]:
    """I(T) inside the product of the block orders."""
    members: set[tuple[Point, ...]] = set()
    for k in T:
        members.update(itertools.product(*(tuple(box(block)) for block in k)))
    return frozenset(members)


def product_downset_census(T: Iterable[Sequence[Point]], r: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Counts of c in I(T) keyed by the block sums (|c_1|, ..., |c_{t-1}|)."""
    _check_ascending(r)
    T = [tuple(tuple(b) for b in k) for k in T]
    if not T:
        raise ValueError("T must be nonempty")
    census = Counter(tuple(sum(b) for b in c) for c in product_down_set(T))
    return dict(sorted(census.items()))
