"""Macaulay representations and O-sequences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinatorics import binomial


@dataclass(frozen=True)
class BinomialRepresentation:
    """f = C(n_i, i) + C(n_{i-1}, i-1) + ... + C(n_{i-j}, i-j).

    ``terms`` holds the pairs (n_k, k) with k descending from ``index``.
    """

    index: int
    terms: tuple[tuple[int, int], ...]

    def value(self) -> int:
        return sum(binomial(n, k) for n, k in self.terms)

    def is_valid(self) -> bool:
        ks = [k for _, k in self.terms]
        ns = [n for n, _ in self.terms]
        if not self.terms or ks[0] != self.index:
            return False
        if ks != list(range(self.index, self.index - len(ks), -1)):
            return False
        if any(a <= b for a, b in zip(ns, ns[1:])):
            return False
        return ns[-1] >= ks[-1] >= 1


def represent(f: int, i: int) -> BinomialRepresentation:
    """Greedy i-binomial (Macaulay) representation of f."""
    if f <= 0 or i <= 0:
        raise ValueError(f"represent needs f >= 1 and i >= 1, got f={f}, i={i}")
    terms = []
    rest = f
    k = i
    while rest > 0:
        # largest n with C(n, k) <= rest; n >= k since C(k, k) = 1 <= rest
        n = k
        while binomial(n + 1, k) <= rest:
            n += 1
        terms.append((n, k))
        rest -= binomial(n, k)
        k -= 1
    return BinomialRepresentation(i, tuple(terms))


def upper_shift(f: int, i: int) -> int:
    """f^<i>: the Macaulay bound on the next level."""
    return sum(binomial(n + 1, k + 1) for n, k in represent(f, i).terms)


def lower_shift(f: int, i: int) -> int:
    """f^(i): sum of C(n_k, k+1) over the representation."""
    return sum(binomial(n, k + 1) for n, k in represent(f, i).terms)


def is_o_sequence(h: Sequence[int]) -> tuple[bool, int | None]:
    """Check Macaulay's criterion.

    Returns ``(True, None)`` or ``(False, index)`` where ``index`` is the
    first position that violates h_0 = 1 or 0 <= h_{i+1} <= h_i^<i>.
    """
    h = list(h)
    if not h or h[0] != 1:
        return False, 0
    for i in range(len(h) - 1):
        nxt = h[i + 1]
        if nxt < 0:
            return False, i + 1
        if i == 0:
            # h_1 counts variables and is unconstrained
            continue
        bound = upper_shift(h[i], i) if h[i] > 0 else 0
        if nxt > bound:
            return False, i + 1
    return True, None


def key_lemma_ratios(h: Sequence[int], n: int) -> list[tuple[Fraction, Fraction]]:
    """Pairs (h_i / h_s, C(n+i, i) / C(n+s, s)) for i = 0..s."""
    s = len(h) - 1
    denom = binomial(n + s, s)
    return [(Fraction(h[i], h[s]), Fraction(binomial(n + i, i), denom)) for i in range(s + 1)]


def key_lemma_check(h: Sequence[int], n: int) -> bool:
    """True iff h_i / h_s >= C(n+i, i) / C(n+s, s) for every i.

    ``h`` must be a valid O-sequence of positive entries with h_1 <= n + 1.
    """
    h = list(h)
    ok, where = is_o_sequence(h)
    if not ok:
        raise ValueError(f"not an O-sequence (violation at index {where}): {h}")
    if any(x <= 0 for x in h):
        raise ValueError("key lemma needs strictly positive entries")
    if n <= 0:
        raise ValueError("n must be positive")
    if len(h) > 1 and h[1] > n + 1:
        raise ValueError(f"h_1 = {h[1]} exceeds n + 1 = {n + 1}")
    return all(lhs >= rhs for lhs, rhs in key_lemma_ratios(h, n))
