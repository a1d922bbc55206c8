import itertools
import json

import pytest
from hypothesis import given
import hypothesis.strategies as st

from jumpfree.lattice import (Cube, CubeNotContained, Domain, DomainError, cap_cube,
                              cap_restrict, enumerate_order_types, is_capped_by,
                              order_equivalent, rank_vector, set_max, surjection_count)

from conftest import domains, points


def sort_then_index(x):
    distinct = sorted(set(x))
    return tuple(distinct.index(v) for v in x)


def pairwise_equivalent(x, y):
    idx = range(len(x))
    less = lambda z: {(i, j) for i in idx for j in idx if z[i] < z[j]}
    same = lambda z: {(i, j) for i in idx for j in idx if z[i] == z[j]}
    return less(x) == less(y) and same(x) == same(y)


def test_rank_vector_examples():
    assert rank_vector((3, 8, 5, 3, 8)) == (0, 2, 1, 0, 2)
    assert rank_vector((5, 5)) == (0, 0)
    assert rank_vector((9, 2, 7)) == sort_then_index((9, 2, 7)) == (2, 0, 1)


def test_rank_vector_rejects_empty():
    with pytest.raises(ValueError):
        rank_vector(())


@given(st.lists(st.integers(0, 50), min_size=1, max_size=6))
def test_rank_vector_matches_oracle_and_is_idempotent(x):
    r = rank_vector(x)
    assert r == sort_then_index(x)
    assert rank_vector(r) == r
    assert set(r) == set(range(max(r) + 1))


def test_order_equivalent_examples():
    assert order_equivalent((3, 8, 5, 3, 8), (1, 9, 4, 1, 9))
    assert pairwise_equivalent((3, 8, 5, 3, 8), (1, 9, 4, 1, 9))
    assert order_equivalent((4,), (4,))
    assert not order_equivalent((1, 2), (2, 1))
    with pytest.raises(ValueError):
        order_equivalent((1, 2), (1, 2, 3))


@given(points(3, 4), points(3, 4), points(3, 4))
def test_order_equivalence_is_an_equivalence(x, y, z):
    assert order_equivalent(x, x)
    assert order_equivalent(x, y) == order_equivalent(y, x)
    assert order_equivalent(x, y) == pairwise_equivalent(x, y)
    if order_equivalent(x, y) and order_equivalent(y, z):
        assert order_equivalent(x, z)


def brute_surjections(k, j):
    return sum(1 for f in itertools.product(range(j), repeat=k) if len(set(f)) == j)


def brute_class_count(k):
    # classes of {0..k-1}^k under the pairwise definition, no rank vectors involved
    reps = []
    for t in itertools.product(range(k), repeat=k):
        if not any(pairwise_equivalent(t, r) for r in reps):
            reps.append(t)
    return len(reps)


@pytest.mark.parametrize("k,j,expected", [(2, 1, 1), (2, 2, 2), (3, 2, 6), (3, 3, 6), (4, 2, 14)])
def test_surjection_count(k, j, expected):
    assert surjection_count(k, j) == expected == brute_surjections(k, j)


def test_surjection_count_edges():
    assert surjection_count(2, 3) == 0
    with pytest.raises(ValueError):
        surjection_count(0, 1)


@pytest.mark.parametrize("k,expected", [(1, 1), (2, 3), (3, 13), (4, 75)])
def test_order_type_counts(k, expected):
    types = enumerate_order_types(k)
    assert len(types) == expected == brute_class_count(k)
    assert len(types) == sum(surjection_count(k, j) for j in range(1, k + 1))
    if k >= 2:
        assert len(types) < k ** k
    assert all(rank_vector(t) == t for t in types)


def test_order_types_k1_and_cap():
    assert enumerate_order_types(1) == {(0,)}
    with pytest.raises(ValueError):
        enumerate_order_types(5)


def test_domain_validation():
    with pytest.raises(DomainError):
        Domain([(1, 2), (1, 2, 3)])
    with pytest.raises(DomainError):
        Domain([(-1, 2)])
    with pytest.raises(DomainError):
        Domain([(1 << 63, 0)])
    D = Domain([(3, 5), (1, 1)])
    assert D.field == {1, 3, 5}
    assert D.sorted == ((1, 1), (3, 5))


def test_set_max_examples():
    assert set_max(Domain([(1, 2), (3, 0), (2, 3)])) == (3, {(3, 0), (2, 3)})
    assert set_max(Domain([(4, 9)])) == (9, {(4, 9)})
    E = Cube((2, 4), 2)
    assert set_max(E.points) == (4, {(2, 4), (4, 2), (4, 4)})
    with pytest.raises(DomainError):
        set_max([])


@given(domains())
def test_set_max_matches_linear_scan(D):
    best = -1
    for z in D.points:
        best = max(best, max(z))
    assert set_max(D) == (best, {z for z in D.points if max(z) == best})


def test_cube():
    E = Cube((4, 2), 3)
    assert E.base == (2, 4) and E.p == 2 and len(E.points) == 8
    with pytest.raises(DomainError):
        Cube((2, 2), 2)


def test_capped_by():
    E = Cube((7, 11), 2)
    D = E.as_domain()
    assert is_capped_by(D, E)
    assert not is_capped_by(D.union([(12, 0)]), E)
    assert not is_capped_by(D.union([(11, 0)]), E)
    assert is_capped_by(D.union([(3, 10), (0, 0)]), E)
    with pytest.raises(CubeNotContained):
        is_capped_by(Domain([(7, 7)]), E)


def test_cap_restrict_examples():
    E = Cube((2, 5), 2)
    D = E.as_domain()
    assert cap_restrict(D, E) == D
    D2 = D.union([(6, 1), (1, 1)])
    assert cap_restrict(D2, E) == D.union([(1, 1)])
    D3 = D.union([(5, 0), (1, 1)])
    assert cap_restrict(D3, E) == D.union([(1, 1)])


@st.composite
def cube_and_domain(draw):
    base = draw(st.sets(st.integers(0, 9), min_size=2, max_size=3))
    E = Cube(tuple(base), 2)
    extra = draw(st.sets(st.tuples(st.integers(0, 12), st.integers(0, 12)), max_size=10))
    return E, Domain(set(E.points) | extra, 2)


@given(cube_and_domain())
def test_cap_restrict_property(args):
    E, D = args
    Dh = cap_restrict(D, E)
    assert E.points <= Dh.points <= D.points
    assert is_capped_by(Dh, E)
    assert cap_cube(Dh) == E
    # replay of the definition
    expected = {z for z in D.points if max(z) < E.top} | set_max(E.points)[1]
    assert Dh.points == expected
    if is_capped_by(D, E):
        assert Dh == D


def test_json_round_trip_is_canonical():
    D = Domain([(3, 1), (0, 2), (1, 1)])
    doc = D.to_json()
    assert doc == {"k": 2, "points": [[0, 2], [1, 1], [3, 1]]}
    assert Domain.from_json(json.loads(json.dumps(doc))) == D
    E = Cube((5, 1), 2)
    assert E.to_json() == {"E": [1, 5], "k": 2}
    assert Cube.from_json(E.to_json()) == E
