"""Exact volumes of cube-slice polytopes.

Two independent routes:

* :func:`band_volume` integrates the polytope block by block.  After the
  substitution x = -y every variable is uniform on [0, 1].  Let v be the
  sum over the shared block (r_t + 1 coordinates) and s_i the sum over
  private block i.  A band constraint  lo <= y_d + sum y_t - sum y_i <= hi
  reads  v + lo <= s_i <= v + hi,  and the private blocks are disjoint, so

      Vol = int_0^{r_t+1} f(v) prod_i [F_{r_i}(v + hi_i) - F_{r_i}(v + lo_i)] dv

  with F_m the Irwin-Hall CDF and f its density.  Every factor is a
  piecewise polynomial with integer breakpoints, so the integral is exact.

* :func:`oracle_volume` works on any bounded H-polytope of small
  dimension via Lasserre's recursion over facets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .combinatorics import integrate_product, irwin_hall_cdf, irwin_hall_pdf

ORACLE_DIM_CAP = 6


@dataclass(frozen=True)
class BandPolytope:
    """Box [-1, 0]^d cut by one unit-width band per private block.

    ``bands[i] = (lo, hi)`` constrains  y_d + sum_j y_{t,j} - sum_j y_{i,j}
    to [lo, hi].
    """

    shared_block_size: int
    private_block_sizes: tuple[int, ...]
    bands: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.shared_block_size < 1:
            raise ValueError("shared block must be nonempty")
        if len(self.bands) != len(self.private_block_sizes):
            raise ValueError(
                f"{len(self.private_block_sizes)} private blocks but {len(self.bands)} bands"
            )
        if any(r < 1 for r in self.private_block_sizes):
            raise ValueError("private blocks must be nonempty")
        for lo, hi in self.bands:
            if hi != lo + 1:
                raise ValueError(f"band ({lo}, {hi}) does not have width 1")

    @property
    def dimension(self) -> int:
        return self.shared_block_size + sum(self.private_block_sizes)


def band_polytope(r: Sequence[int], z: Sequence[int]) -> BandPolytope:
    """The cell of the unit-cube decomposition labelled by class vector z
    for the Segre product with factor sizes r."""
    r, z = tuple(r), tuple(z)
    if len(z) != len(r) - 1:
        raise ValueError(f"class vector needs {len(r) - 1} entries, got {len(z)}")
    return BandPolytope(r[-1] + 1, r[:-1], tuple((zi - 1, zi) for zi in z))


def band_volume(P: BandPolytope) -> Fraction:
    m = P.shared_block_size
    factors = [irwin_hall_pdf(m)]
    for size, (lo, hi) in zip(P.private_block_sizes, P.bands):
        F = irwin_hall_cdf(size)
        factors.append(F.shifted(hi) - F.shifted(lo))
    return integrate_product(factors, 0, m)


# ---------------------------------------------------------------------------
# generic oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HPolytope:
    """{x : row . x <= bound for every (row, bound)}."""

    dimension: int
    halfspaces: tuple[tuple[tuple[Fraction, ...], Fraction], ...]

    @classmethod
    def from_rows(cls, dimension: int, rows) -> "HPolytope":
        hs = []
        for row, bound in rows:
            row = tuple(Fraction(c) for c in row)
            if len(row) != dimension:
                raise ValueError("row length does not match dimension")
            hs.append((row, Fraction(bound)))
        return cls(dimension, tuple(hs))

    def intersect(self, other: "HPolytope") -> "HPolytope":
        if other.dimension != self.dimension:
            raise ValueError("dimension mismatch")
        return HPolytope(self.dimension, self.halfspaces + other.halfspaces)

    def contains(self, x) -> bool:
        return all(sum(a * xi for a, xi in zip(row, x)) <= b for row, b in self.halfspaces)


class UnboundedPolytopeError(ValueError):
    pass


def _is_bounded(P: HPolytope) -> bool:
    A = np.array([[float(c) for c in row] for row, _ in P.halfspaces])
    b = np.array([float(bd) for _, bd in P.halfspaces])
    for j in range(P.dimension):
        for sign in (1.0, -1.0):
            c = np.zeros(P.dimension)
            c[j] = -sign
            res = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * P.dimension, method="highs")
            if res.status == 3:
                return False
            if res.status == 2:
                # empty is bounded
                return True
    return True


def _normalize(cons, free):
    """Drop constant rows, scale each row so its first free coefficient has
    absolute value 1, and keep the tightest bound per direction.

    Returns None when some constant row is infeasible.
    """
    best: dict[tuple, Fraction] = {}
    for row, b in cons:
        lead = next((row[j] for j in free if row[j] != 0), None)
        if lead is None:
            if b < 0:
                return None
            continue
        scale = abs(lead)
        key = tuple(c / scale for c in row)
        bound = b / scale
        if key not in best or bound < best[key]:
            best[key] = bound
    return tuple(sorted(best.items()))


def _lasserre(cons, free: tuple[int, ...], memo) -> Fraction:
    cons = _normalize(cons, free)
    if cons is None:
        return Fraction(0)
    key = (free, cons)
    if key in memo:
        return memo[key]
    if len(free) == 1:
        (j,) = free
        lo = hi = None
        for row, b in cons:
            if row[j] > 0:
                hi = b / row[j] if hi is None else min(hi, b / row[j])
            else:
                lo = b / row[j] if lo is None else max(lo, b / row[j])
        if lo is None or hi is None:
            raise UnboundedPolytopeError("unbounded one-dimensional face")
        result = max(Fraction(0), hi - lo)
        memo[key] = result
        return result

    total = Fraction(0)
    for idx, (row, b) in enumerate(cons):
        if b == 0:
            # the hyperplane passes through the origin: zero height
            continue
        k = next(j for j in free if row[j] != 0)
        ak = row[k]
        sub = []
        for jdx, (other, ob) in enumerate(cons):
            if jdx == idx:
                continue
            factor = other[k] / ak
            if factor:
                other = tuple(o - factor * a for o, a in zip(other, row))
                ob = ob - factor * b
            sub.append((other, ob))
        rest = tuple(j for j in free if j != k)
        # |ak| == 1 after normalization
        total += b * _lasserre(sub, rest, memo)
    result = total / len(free)
    memo[key] = result
    return result


def oracle_volume(P: HPolytope, dim_cap: int = ORACLE_DIM_CAP) -> Fraction:
    """Exact volume by recursive facet decomposition.

    Each facet a.x = b contributes (b / |a_k|) * vol(projection of the facet
    onto the coordinates other than x_k), with x_k eliminated exactly; the
    sum over facets is divided by the dimension.
    """
    if P.dimension > dim_cap:
        raise ValueError(f"oracle limited to dimension {dim_cap}, got {P.dimension}")
    if not _is_bounded(P):
        raise UnboundedPolytopeError("polytope is unbounded")
    return _lasserre(P.halfspaces, tuple(range(P.dimension)), {})


def union_volume(polys: Sequence[HPolytope], dim_cap: int = ORACLE_DIM_CAP) -> Fraction:
    """Volume of a union by inclusion-exclusion over intersections."""
    total = Fraction(0)
    for size in range(1, len(polys) + 1):
        sign = 1 if size % 2 else -1
        for combo in itertools.combinations(polys, size):
            inter = combo[0]
            for Q in combo[1:]:
                inter = inter.intersect(Q)
            total += sign * oracle_volume(inter, dim_cap)
    return total


# ---------------------------------------------------------------------------
# H-descriptions of the Segre polytopes
# ---------------------------------------------------------------------------
# Coordinate order: y_{1,1..r_1}, ..., y_{t,1..r_t}, y_d.

def _layout(r: Sequence[int]):
    blocks, start = [], 0
    for ri in r:
        blocks.append(list(range(start, start + ri)))
        start += ri
    return blocks, start  # start == d - 1 is the index of y_d


def _row(d: int, coeffs: dict[int, int]):
    row = [0] * d
    for j, c in coeffs.items():
        row[j] += c
    return tuple(row)


def _between(d, coeffs, lo, hi):
    """lo <= form <= hi as two halfspaces."""
    return [(_row(d, coeffs), hi), (_row(d, {j: -c for j, c in coeffs.items()}), -lo)]


def band_hpolytope(r: Sequence[int], z: Sequence[int]) -> HPolytope:
    """The cell polytope written directly in the y coordinates."""
    blocks, yd = _layout(r)
    d = yd + 1
    rows = []
    for j in range(d):
        rows += _between(d, {j: 1}, -1, 0)
    for i, zi in enumerate(z):
        form = {yd: 1}
        for j in blocks[-1]:
            form[j] = form.get(j, 0) + 1
        for j in blocks[i]:
            form[j] = form.get(j, 0) - 1
        rows += _between(d, form, zi - 1, zi)
    return HPolytope.from_rows(d, rows)


def slice_hpolytope(c: Sequence[Sequence[int]], r: Sequence[int]) -> HPolytope:
    """The slice Q_c of the union of generator polytopes indexed by c in I(T)."""
    blocks, yd = _layout(r)
    d = yd + 1
    rows = []
    for i, ci in enumerate(c):
        for j, col in enumerate(blocks[i]):
            rows += _between(d, {col: 1}, ci[j] - 1, ci[j])
        form = {yd: 1}
        for col in blocks[i]:
            form[col] = -1
        rows += _between(d, form, ci[-1] - 1, ci[-1])
    for col in blocks[-1]:
        rows += _between(d, {col: 1}, 0, 1)
    form = {yd: 1}
    for col in blocks[-1]:
        form[col] = -1
    rows += _between(d, form, 0, 1)
    return HPolytope.from_rows(d, rows)


def generator_hpolytope(k: Sequence[Sequence[int]], r: Sequence[int]) -> HPolytope:
    """P_k: the cone intersected with (k~ - cone)."""
    blocks, yd = _layout(r)
    d = yd + 1
    rows = []
    for i, ki in enumerate(k):
        for j, col in enumerate(blocks[i]):
            rows += _between(d, {col: 1}, 0, ki[j])
        form = {yd: 1}
        for col in blocks[i]:
            form[col] = -1
        rows += _between(d, form, 0, ki[-1])
    for col in blocks[-1]:
        rows += _between(d, {col: 1}, 0, 1)
    form = {yd: 1}
    for col in blocks[-1]:
        form[col] = -1
    rows += _between(d, form, 0, 1)
    return HPolytope.from_rows(d, rows)
