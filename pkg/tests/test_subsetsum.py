import itertools

import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from jumpfree.harness.generators import random_structured_instance
from jumpfree.labelers import BudgetExceeded, Labeling, MaxRho, OffsetTableRho
from jumpfree.lattice import Cube, Domain
from jumpfree.subsetsum import (InstanceSet, NotCapped, PreconditionError, SeededRangeI,
                                TableI, TLogRho, ZeroI, build_instances, design_t_log_rho,
                                is_t_log_bounded, log_budget, small_differences, solve_oracle,
                                solve_structured)


def numpy_zero_subset(values):
    """Full 2^n enumeration of subset sums."""
    sums = np.zeros(1, dtype=np.int64)
    for v in values:
        sums = np.concatenate([sums, sums + v])
    return bool((sums[1:] == 0).any())


def test_log_budget():
    assert log_budget(4, 2, 1) == 4
    assert log_budget(3, 2, 1) == 3  # 2^3 <= 9 < 2^4
    assert log_budget(32, 2, 1) == 10


def test_t_log_example():
    E = Cube((10, 11, 12, 13), 2)
    D = E.as_domain()
    pts = sorted(E.points)
    four = OffsetTableRho({x: i + 1 for i, x in enumerate(pts[:4])}, default=0)
    five = OffsetTableRho({x: i + 1 for i, x in enumerate(pts[:5])}, default=0)
    assert small_differences(four, D, E) == {1, 2, 3, 4}
    assert is_t_log_bounded(four, D, E, 1)
    assert not is_t_log_bounded(five, D, E, 1)
    # large differences do not count
    big = OffsetTableRho({x: 40 + i for i, x in enumerate(pts)}, default=0)
    assert small_differences(big, D, E) == set()


def test_t_log_requires_cap():
    E = Cube((1, 2), 2)
    D = Domain(set(E.points) | {(0, 3)})
    with pytest.raises(NotCapped):
        is_t_log_bounded(MaxRho(), D, E, 1)


@given(st.sets(st.integers(1, 12), min_size=2, max_size=4), st.integers(1, 2), st.integers(0, 999))
def test_designed_rho_is_t_log_bounded(base, t, seed):
    E = Cube(tuple(base), 2)
    D = E.as_domain()
    rho = design_t_log_rho(D, E, t, seed)
    assert is_t_log_bounded(rho, D, E, t)
    diffs = [rho(D, x) - min(x) for x in E.points]
    assert min(diffs) > 0 and len(set(diffs)) == len(diffs)


def test_build_instances_example():
    E = Cube((4, 9), 2)
    D = E.as_domain()
    vals = {(4, 4): 2, (4, 9): 5, (9, 4): 4, (9, 9): 6}
    h = Labeling(D, vals, {x: False for x in vals})
    rho = OffsetTableRho({(4, 9): 3, (9, 4): 0})
    H = build_instances(h, rho, TableI({(9, 9): 7}), E)
    assert H.delta0 == (-2,)
    assert H.delta1 == (7,)
    assert H.delta2 == (0, 3)
    assert H.e0 == 4 and len(H.provenance) == 4


def test_instance_blocks_are_sets():
    H = InstanceSet.of([-2, -2, -1], [], [3, 3])
    assert H.delta0 == (-2, -1) and H.delta2 == (3,)
    assert InstanceSet.from_json(H.to_json()) == H


def test_solver_examples():
    H = InstanceSet.of([-3], [], [1, 2], e0=1)
    r = solve_structured(H, 2, 1, 2)
    assert r.solvable and r.certificate == (-3, 1, 2)
    H2 = InstanceSet.of([-5], [], [5], e0=2)
    assert solve_structured(H2, 2, 1, 2).certificate == (-5, 5)
    H3 = InstanceSet.of([-3], [], [1, 5], e0=2)
    assert not solve_structured(H3, 2, 1, 2).solvable
    assert not solve_oracle(H3).solvable
    H4 = InstanceSet.of([-3], [], [0, 9], e0=1)
    assert solve_structured(H4, 2, 1, 2).certificate == (0,)


def test_solver_ignores_large_positives():
    # 16 >= e0*k^k = 16 exceeds any negative total, so it is never compared
    H = InstanceSet.of([-5, -7], [], [16], e0=4)
    r = solve_structured(H, 2, 1, 2, exhaustive=True)
    assert not r.solvable and r.comparisons == 0
    assert not solve_oracle(H).solvable


def test_solver_preconditions():
    with pytest.raises(PreconditionError):
        solve_structured(InstanceSet.of([-1], [2], [1], e0=1), 2, 1, 2)
    with pytest.raises(PreconditionError):
        solve_structured(InstanceSet.of([-1, -2, -3, -4], [], [], e0=10), 2, 1, 2)
    with pytest.raises(PreconditionError):
        solve_structured(InstanceSet.of([-9], [], [], e0=2), 2, 1, 2)
    with pytest.raises(PreconditionError):
        solve_structured(InstanceSet.of([], [], [1, 2, 3], e0=2), 2, 1, 2)


def test_exhaustive_count():
    H = InstanceSet.of([-3, -1], [], [1, 2], e0=2)
    r = solve_structured(H, 2, 1, 2, exhaustive=True)
    assert r.comparisons == 3 * 3
    assert r.solvable and sum(r.certificate) == 0


def test_oracle_cap():
    with pytest.raises(BudgetExceeded):
        solve_oracle(list(range(1, 32)))


@given(st.lists(st.integers(-50, 50), max_size=16))
def test_oracle_matches_numpy(values):
    r = solve_oracle(values)
    assert r.solvable == numpy_zero_subset(values)
    if r.solvable:
        assert sum(r.certificate) == 0
        left = list(values)
        for v in r.certificate:
            left.remove(v)


@given(st.integers(0, 2**32))
def test_structured_matches_oracle(seed):
    H, k, t, p = random_structured_instance(seed)
    rs = solve_structured(H, k, t, p)
    ro = solve_oracle(H)
    assert rs.solvable == ro.solvable
    assert rs.comparisons <= 2 ** (k ** k) * p ** (k * t)
    if len(H) <= 20:
        assert rs.solvable == numpy_zero_subset(H.elements())


def test_i_rules():
    D = Domain([(1, 1)])
    assert ZeroI()(D, (1, 1)) == 0
    r = SeededRangeI(-3, 3, 5)
    assert -3 <= r(D, (1, 1)) <= 3 and r(D, (1, 1)) == r(D, (1, 1))
    assert TLogRho(1, 0)(D, (1, 1)) == 1  # not capped by a p>=2 cube: falls back to min
