"""F-signatures, generalized F-signatures and dual F-signatures of Veronese
subrings and Segre products of polynomial rings."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .combinatorics import binomial, eulerian, factorial
from .staircase import (
    box,
    down_set,
    product_down_set,
    segre_generators,
    veronese_generators,
)
from .volume import band_polytope, band_volume

DEFAULT_SUBSET_CAP = 20

CLOSED_FORM = "closed_form"
UPPER_BOUND = "upper_bound"
BRUTE_FORCE = "brute_force"

# equality_case reasons
TAIL_EQUAL = "r_2 = ... = r_t"
TWO_VALUED = "r_i in {r_1, r_1 + 1}"


class SubsetCapExceeded(RuntimeError):
    """The generator set is too large for exhaustive subset search."""


@dataclass(frozen=True)
class SegreParams:
    r: tuple[int, ...]

    def __post_init__(self):
        r = tuple(int(x) for x in self.r)
        object.__setattr__(self, "r", r)
        if len(r) < 2:
            raise ValueError("a Segre product needs t >= 2 factors")
        if any(x < 1 for x in r):
            raise ValueError("factor sizes must be positive")
        if any(a > b for a, b in zip(r, r[1:])):
            raise ValueError(f"factor sizes must be ascending, got {r}")

    @property
    def t(self) -> int:
        return len(self.r)

    @property
    def d(self) -> int:
        return sum(self.r) + 1


@dataclass(frozen=True)
class Veronese:
    n: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError("n and d must be positive")


Family = Union[Veronese, SegreParams]


@dataclass(frozen=True)
class SignatureReport:
    value: Fraction
    method: str
    witness: tuple | None = None
    certificates: tuple[str, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class ConjectureReport:
    params: SegreParams
    upper_bound: Fraction
    brute_force_min: Fraction
    equal: bool
    witness: tuple


# ---------------------------------------------------------------------------
# class sets
# ---------------------------------------------------------------------------

def _pairwise_ok(z, r) -> bool:
    for i, j in itertools.permutations(range(len(z)), 2):
        if not -r[j] <= z[i] - z[j] <= r[i]:
            return False
    return True


def in_conic_classes(p: SegreParams, z: Sequence[int]) -> bool:
    r, rt = p.r, p.r[-1]
    if len(z) != p.t - 1:
        return False
    return all(-rt <= zi <= r[i] for i, zi in enumerate(z)) and _pairwise_ok(z, r)


def conic_classes(p: SegreParams) -> list[tuple[int, ...]]:
    """Class vectors z whose divisorial ideal is conic."""
    rt = p.r[-1]
    ranges = [range(-rt, ri + 1) for ri in p.r[:-1]]
    return [z for z in itertools.product(*ranges) if _pairwise_ok(z, p.r)]


def dual_classes(p: SegreParams) -> list[tuple[int, ...]]:
    """The class vectors summed over in the dual F-signature upper bound."""
    rt = p.r[-1]
    ranges = [range(-rt + ri, 1) for ri in p.r[:-1]]
    return [z for z in itertools.product(*ranges) if _pairwise_ok(z, p.r)]


def level_vectors(p: SegreParams) -> list[tuple[int, ...]]:
    """Block-sum vectors l with r_i + 1 <= l_i <= r_t + 1."""
    rt = p.r[-1]
    return list(itertools.product(*(range(ri + 1, rt + 2) for ri in p.r[:-1])))


def slice_class(c: Sequence[Sequence[int]], p: SegreParams) -> tuple[int, ...]:
    """Class vector of the slice Q_c: block sums shifted by -(r_t + 1)."""
    return tuple(sum(ci) - p.r[-1] - 1 for ci in c)


# ---------------------------------------------------------------------------
# generalized F-signatures
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _gen_cached(r: tuple[int, ...], z: tuple[int, ...]) -> Fraction:
    return band_volume(band_polytope(r, z))


def gen_f_signature(p: SegreParams, z: Sequence[int]) -> Fraction:
    z = tuple(z)
    if not in_conic_classes(p, z):
        return Fraction(0)
    return _gen_cached(p.r, z)


def f_signature(p: SegreParams) -> Fraction:
    return gen_f_signature(p, (0,) * (p.t - 1))


def eulerian_gen_f_signature(r1: int, r2: int, z: int) -> Fraction:
    """Two-factor cell volume A(z + r_2, d) / d!."""
    d = r1 + r2 + 1
    return Fraction(eulerian(z + r2, d), factorial(d))


# ---------------------------------------------------------------------------
# closed forms and bounds
# ---------------------------------------------------------------------------

def veronese_dual(n: int, d: int) -> SignatureReport:
    Veronese(n, d)
    return SignatureReport(Fraction(-(-d // n), d), CLOSED_FORM)


def equality_case(p: SegreParams) -> tuple[bool, str | None]:
    """Whether the Segre upper bound is known to be attained, and why."""
    r = p.r
    if all(x == r[1] for x in r[1:]):
        return True, TAIL_EQUAL
    if all(x in (r[0], r[0] + 1) for x in r):
        return True, TWO_VALUED
    return False, None


def segre_upper_bound_value(p: SegreParams) -> Fraction:
    rt = p.r[-1]
    total = Fraction(0)
    for z in dual_classes(p):
        weight = Fraction(1)
        for ri, zi in zip(p.r, z):
            weight *= Fraction(binomial(rt + zi, ri), binomial(rt, ri))
        total += weight * gen_f_signature(p, z)
    return total


def segre_upper_bound(p: SegreParams) -> SignatureReport:
    value = segre_upper_bound_value(p)
    holds, reason = equality_case(p)
    if holds:
        return SignatureReport(value, CLOSED_FORM, None, (f"equality: {reason}",))
    return SignatureReport(value, UPPER_BOUND)


def eulerian_dual_closed_form(r1: int, r2: int) -> Fraction:
    """Dual F-signature of the two-factor Segre product via Eulerian numbers."""
    if not 1 <= r1 <= r2:
        raise ValueError("need 1 <= r1 <= r2")
    d = r1 + r2 + 1
    num = sum(binomial(l, r1) * eulerian(l, d) for l in range(r1, r2 + 1))
    return Fraction(num, binomial(r2, r1) * factorial(d))


# ---------------------------------------------------------------------------
# exhaustive minimization
# ---------------------------------------------------------------------------

def generators(family: Family) -> list:
    if isinstance(family, Veronese):
        return veronese_generators(family.n, family.d)
    return segre_generators(family.r)


def smirnov_tucker_objective(family: Family, T: Sequence) -> Fraction:
    """Normalized union volume for one nonempty subset T of generators.

    Recomputed from scratch, independent of the bitmask search.
    """
    T = list(T)
    if not T:
        raise ValueError("T must be nonempty")
    if isinstance(family, Veronese):
        return Fraction(len(down_set(T)), family.n * len(T))
    total = sum(
        (gen_f_signature(family, slice_class(c, family)) for c in product_down_set(T)),
        Fraction(0),
    )
    return total / len(T)


def _masks(family: Family, gens: list):
    """Bitmask of each generator's down-set over a shared universe, plus a
    list of (weight, mask) pairs so that the union volume of a mask M is
    sum(weight * popcount(M & mask))."""
    if isinstance(family, Veronese):
        universe = sorted(down_set(gens).members)
        index = {pt: i for i, pt in enumerate(universe)}
        masks = [sum(1 << index[b] for b in box(a)) for a in gens]
        return masks, [(Fraction(1), (1 << len(universe)) - 1)]
    universe = sorted(product_down_set(gens))
    index = {c: i for i, c in enumerate(universe)}
    masks = [
        sum(1 << index[c] for c in itertools.product(*(tuple(box(b)) for b in k)))
        for k in gens
    ]
    by_class: dict[tuple, int] = {}
    for c, i in index.items():
        z = slice_class(c, family)
        by_class[z] = by_class.get(z, 0) | (1 << i)
    weights = [(gen_f_signature(family, z), m) for z, m in sorted(by_class.items())]
    return masks, weights


def smirnov_tucker_min(family: Family, subset_cap: int = DEFAULT_SUBSET_CAP) -> SignatureReport:
    """Exhaustive minimum of the normalized union volume over all nonempty
    subsets of canonical generators.

    Subsets are visited by size, then lexicographically; the first subset
    reaching the minimum is the witness.
    """
    gens = generators(family)
    if len(gens) > subset_cap:
        raise SubsetCapExceeded(
            f"{len(gens)} generators exceed the subset cap {subset_cap}; "
            "use the closed form or the upper bound instead"
        )
    masks, weights = _masks(family, gens)
    scale = family.n if isinstance(family, Veronese) else 1
    best: Fraction | None = None
    witness: tuple = ()
    count = 0
    for size in range(1, len(gens) + 1):
        for combo in itertools.combinations(range(len(gens)), size):
            count += 1
            union = 0
            for i in combo:
                union |= masks[i]
            vol = sum((w * (union & m).bit_count() for w, m in weights), Fraction(0))
            value = vol / (scale * size)
            if best is None or value < best:
                best, witness = value, combo
    witness_pts = tuple(gens[i] for i in witness)
    certs = [f"exhaustive over {count} subsets"]
    if smirnov_tucker_objective(family, witness_pts) != best:
        raise AssertionError("witness does not reproduce the minimum")
    certs.append("witness re-evaluated")
    return SignatureReport(best, BRUTE_FORCE, witness_pts, tuple(certs))


def conjecture_probe(p: SegreParams, subset_cap: int = DEFAULT_SUBSET_CAP) -> ConjectureReport:
    bound = segre_upper_bound_value(p)
    brute = smirnov_tucker_min(p, subset_cap)
    return ConjectureReport(p, bound, brute.value, bound == brute.value, brute.witness)


def segre_generator_count(p: SegreParams) -> int:
    rt = p.r[-1]
    return math.prod(binomial(rt, ri) for ri in p.r[:-1])
