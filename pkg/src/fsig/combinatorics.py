"""Exact integer and rational primitives.

Binomials, factorials, Eulerian numbers, and the Irwin-Hall distribution
function as an exact piecewise polynomial.  Rationals are
:class:`fractions.Fraction` throughout; nothing in the package rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

Rational = Fraction

# A polynomial is a tuple of coefficients, constant term first.
Poly = tuple


def binomial(n: int, k: int) -> int:
    """C(n, k), with 0 whenever k < 0, n < 0 or k > n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def factorial(n: int) -> int:
    return math.factorial(n)


@lru_cache(maxsize=None)
def _eulerian_row(n: int) -> tuple[int, ...]:
    if n == 1:
        return (1,)
    prev = _eulerian_row(n - 1)
    row = []
    for k in range(n):
        stay = (k + 1) * prev[k] if k < n - 1 else 0
        move = (n - k) * prev[k - 1] if k >= 1 else 0
        row.append(stay + move)
    return tuple(row)


def eulerian(k: int, n: int) -> int:
    """Number of permutations of 1..n with exactly k descents.

    Zero outside 0 <= k <= n-1.
    """
    if n <= 0:
        raise ValueError(f"eulerian requires n >= 1, got n={n}")
    if k < 0 or k >= n:
        return 0
    return _eulerian_row(n)[k]


# ---------------------------------------------------------------------------
# univariate polynomials over Q
# ---------------------------------------------------------------------------

def _trim(coeffs: list) -> Poly:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(Fraction(c) for c in coeffs) if coeffs else (Fraction(0),)


def poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, tuple(-c for c in q))


def poly_scale(p: Poly, c) -> Poly:
    return _trim([c * a for a in p])


def poly_mul(p: Poly, q: Poly) -> Poly:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def poly_eval(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_translate(p: Poly, c) -> Poly:
    """Coefficients of u -> p(u + c)."""
    out = [Fraction(0)] * len(p)
    c = Fraction(c)
    for k, a in enumerate(p):
        if a == 0:
            continue
        # (u + c)^k = sum_j C(k, j) c^(k-j) u^j
        for j in range(k + 1):
            out[j] += a * binomial(k, j) * c ** (k - j)
    return _trim(out)


def poly_derivative(p: Poly) -> Poly:
    return _trim([k * p[k] for k in range(1, len(p))])


def poly_integrate(p: Poly, a, b) -> Fraction:
    """Exact definite integral of p over [a, b]."""
    a, b = Fraction(a), Fraction(b)
    total = Fraction(0)
    for k, c in enumerate(p):
        if c:
            total += c * (b ** (k + 1) - a ** (k + 1)) / (k + 1)
    return total


# ---------------------------------------------------------------------------
# piecewise polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PiecewisePolynomial:
    """Piecewise polynomial on [breakpoints[0], breakpoints[-1]].

    ``pieces[j]`` is valid on [breakpoints[j], breakpoints[j+1]].  Outside
    the domain the function is extended by the constants ``left`` and
    ``right``, which is what a distribution function needs.
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Poly, ...]
    left: Fraction = Fraction(0)
    right: Fraction = Fraction(0)

    def __post_init__(self):
        if len(self.pieces) != len(self.breakpoints) - 1:
            raise ValueError("need exactly one piece per interval")
        if any(a >= b for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def piece_on(self, a, b) -> Poly:
        """The polynomial that agrees with self on [a, b].

        [a, b] must not straddle an interior breakpoint.
        """
        a, b = Fraction(a), Fraction(b)
        lo, hi = self.domain
        if b <= lo:
            return (self.left,)
        if a >= hi:
            return (self.right,)
        for j in range(len(self.pieces)):
            if self.breakpoints[j] <= a and b <= self.breakpoints[j + 1]:
                return self.pieces[j]
        raise ValueError(f"[{a}, {b}] straddles a breakpoint")

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        lo, hi = self.domain
        if x < lo:
            return self.left
        if x > hi:
            return self.right
        for j, p in enumerate(self.pieces):
            if x <= self.breakpoints[j + 1]:
                return poly_eval(p, x)
        raise AssertionError("unreachable")

    def shifted(self, c) -> "PiecewisePolynomial":
        """The function v -> self(v + c)."""
        c = Fraction(c)
        return PiecewisePolynomial(
            tuple(b - c for b in self.breakpoints),
            tuple(poly_translate(p, c) for p in self.pieces),
            self.left,
            self.right,
        )

    def __sub__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        cuts = sorted(set(self.breakpoints) | set(other.breakpoints))
        pieces = tuple(
            poly_sub(self.piece_on(a, b), other.piece_on(a, b))
            for a, b in zip(cuts, cuts[1:])
        )
        return PiecewisePolynomial(
            tuple(cuts), pieces, self.left - other.left, self.right - other.right
        )

    def derivative(self) -> "PiecewisePolynomial":
        return PiecewisePolynomial(
            self.breakpoints,
            tuple(poly_derivative(p) for p in self.pieces),
            Fraction(0),
            Fraction(0),
        )

    def is_continuous(self) -> bool:
        for j in range(1, len(self.pieces)):
            x = self.breakpoints[j]
            if poly_eval(self.pieces[j - 1], x) != poly_eval(self.pieces[j], x):
                return False
        return True


@lru_cache(maxsize=None)
def irwin_hall_cdf(m: int) -> PiecewisePolynomial:
    """CDF of the sum of m independent uniform [0, 1] variables.

    On [j, j+1] the CDF is (1/m!) sum_{i<=j} (-1)^i C(m, i) (v - i)^m.
    Extended by 0 to the left of 0 and by 1 to the right of m.
    """
    if m <= 0:
        raise ValueError(f"irwin_hall_cdf requires m >= 1, got m={m}")
    scale = Fraction(1, factorial(m))
    pieces = []
    acc: Poly = (Fraction(0),)
    for j in range(m):
        # (v - j)^m
        term = poly_translate((Fraction(0),) * m + (Fraction(1),), -j)
        acc = poly_add(acc, poly_scale(term, (-1) ** j * binomial(m, j)))
        pieces.append(poly_scale(acc, scale))
    return PiecewisePolynomial(
        tuple(Fraction(j) for j in range(m + 1)),
        tuple(pieces),
        Fraction(0),
        Fraction(1),
    )


def irwin_hall_pdf(m: int) -> PiecewisePolynomial:
    return irwin_hall_cdf(m).derivative()


def cube_slice_volume(m: int, k: int) -> Fraction:
    """Volume of {x in [0,1]^m : k <= sum(x) <= k+1}, equal to A(k, m)/m!."""
    F = irwin_hall_cdf(m)
    return F(k + 1) - F(k)


def integrate_product(factors: Sequence[PiecewisePolynomial], a: int, b: int) -> Fraction:
    """Exact integral over [a, b] of the product of piecewise polynomials
    whose breakpoints are all integers."""
    total = Fraction(0)
    for k in range(a, b):
        prod: Poly = (Fraction(1),)
        for f in factors:
            prod = poly_mul(prod, f.piece_on(k, k + 1))
            if prod == (0,):
                break
        total += poly_integrate(prod, k, k + 1)
    return total
