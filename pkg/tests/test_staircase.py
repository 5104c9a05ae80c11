import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from fsig.combinatorics import binomial
from fsig.staircase import (
    EnumerationCapError,
    compositions,
    down_set,
    product_down_set,
    product_downset_census,
    segre_embedding,
    segre_factor,
    segre_generators,
    veronese_generator_count,
    veronese_generators,
)


def test_down_set_examples():
    D = down_set([(2, 1, 1), (1, 2, 1), (1, 1, 2)])
    assert D.members == {(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2)}
    assert D.level_census() == {3: 1, 4: 3}
    assert D.h_vector() == [1, 3]
    assert down_set([(1, 1, 1)]).members == {(1, 1, 1)}
    assert len(down_set([(2, 2)])) == 4
    assert down_set([(1, 1)]).level_census() == {2: 1}


def test_down_set_errors():
    with pytest.raises(ValueError):
        down_set([])
    with pytest.raises(ValueError):
        down_set([(1, 2), (1, 1, 1)])
    with pytest.raises(ValueError):
        down_set([(0, 2)])
    with pytest.raises(EnumerationCapError):
        down_set([(100, 100)], cap=1000)


points = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.tuples(*[st.integers(1, 5)] * n), min_size=1, max_size=5)
)


@given(points)
@settings(max_examples=100)
def test_down_set_is_closed_and_exact(T):
    D = down_set(T)
    assert D.is_down_closed()
    assert len(D) == sum(D.level_census().values())
    brute = {
        b
        for b in itertools.product(*(range(1, 6) for _ in T[0]))
        if any(all(x <= y for x, y in zip(b, a)) for a in T)
    }
    assert D.members == brute


@pytest.mark.parametrize("n,d,size,total", [(2, 3, 3, 4), (1, 5, 1, 5), (3, 4, 10, 6)])
def test_veronese_generators(n, d, size, total):
    G = veronese_generators(n, d)
    assert len(G) == size == veronese_generator_count(n, d)
    assert all(sum(a) == total and len(a) == d for a in G)


def test_veronese_levels_are_binomial():
    for n in range(1, 5):
        for d in range(1, 6):
            G = veronese_generators(n, d)
            s = n * (-(-d // n)) - d
            h = down_set(G).h_vector()
            assert h == [binomial(d + l - 1, l) for l in range(s + 1)]


def test_segre_factor():
    assert segre_factor(1, 2) == [(1, 2), (2, 1)]
    assert segre_factor(3, 3) == [(1, 1, 1, 1)]
    F = segre_factor(2, 3)
    assert len(F) == 3 and all(sum(k) == 4 for k in F)
    with pytest.raises(ValueError):
        segre_factor(3, 2)
    for ri in range(1, 5):
        for rt in range(ri, 6):
            assert len(segre_factor(ri, rt)) == binomial(rt, ri)


def test_segre_generators_and_embedding():
    F = segre_generators((1, 2))
    assert F == [((1, 2),), ((2, 1),)]
    assert [segre_embedding(k, (1, 2)) for k in F] == [(1, 1, 1, 3), (2, 1, 1, 3)]
    assert len(segre_generators((1, 1))) == 1
    assert len(segre_generators((2, 2, 2))) == 1
    with pytest.raises(ValueError):
        segre_generators((2, 1))


def test_product_census_examples():
    F = segre_generators((1, 2))
    assert product_downset_census(F, (1, 2)) == {(2,): 1, (3,): 2}
    assert product_downset_census(segre_generators((1, 1)), (1, 1)) == {(2,): 1}
    assert product_downset_census([((1, 2),)], (1, 2)) == {(2,): 1, (3,): 1}
    with pytest.raises(ValueError):
        product_downset_census([], (1, 2))


def _subsets(F):
    for size in range(1, len(F) + 1):
        yield from itertools.combinations(F, size)


def test_product_down_set_containment():
    for r in [(1, 1, 2), (1, 2, 2), (1, 1, 1, 2), (2, 2, 3), (1, 2, 2, 2)]:
        F = segre_generators(r)
        tail_singletons = all(len(segre_factor(ri, r[-1])) == 1 for ri in r[1:-1])
        for T in _subsets(F):
            I = product_down_set(T)
            projections = [sorted({k[i] for k in T}) for i in range(len(r) - 1)]
            prod = set(itertools.product(*(sorted(down_set(p).members) for p in projections)))
            assert I <= prod
            if tail_singletons:
                assert I == prod
        full = product_down_set(F)
        factors = [sorted(down_set(segre_factor(ri, r[-1])).members) for ri in r[:-1]]
        assert full == set(itertools.product(*factors))


def test_compositions_count():
    for total in range(1, 9):
        for parts in range(1, total + 1):
            assert len(list(compositions(total, parts))) == binomial(total - 1, parts - 1)
