import itertools

import pytest
from hypothesis import given, settings, strategies as st

from oracles import set_partitions_max_zero_sums
from zsum.abelian import GMultiSet, GroupSpec
from zsum.zerosum import (
    BudgetExceeded, c_const, c_const_trivial, davenport, davenport_m, davenport_short,
    group_minimal_zero_sums, has_short_zero_sum, is_zero_sum_free, max_disjoint_system,
    max_disjoint_zero_sums, minimal_zero_sums, zero_sum_free_witness_for_m,
)

SMALL_GROUPS = [GroupSpec((2,)), GroupSpec((5,)), GroupSpec((2, 2)), GroupSpec((3, 3)),
                GroupSpec((2, 4)), GroupSpec((6,))]


def is_zero(G, elems):
    return all(sum(e[i] for e in elems) % G.invariant_factors[i] == 0 for i in range(G.rank))


def brute_zero_sum_free(G, elems):
    return not any(is_zero(G, sub) for r in range(1, len(elems) + 1)
                   for sub in itertools.combinations(elems, r))


@st.composite
def group_and_multiset(draw, max_size=5):
    G = draw(st.sampled_from(SMALL_GROUPS))
    idx = draw(st.lists(st.integers(0, G.order - 1), max_size=max_size))
    return G, GMultiSet.from_elements(G, [G.coords(i) for i in idx])


@settings(max_examples=150, deadline=None)
@given(group_and_multiset(max_size=7))
def test_zero_sum_free_matches_subset_enumeration(gm):
    G, ms = gm
    assert is_zero_sum_free(ms) == brute_zero_sum_free(G, list(ms))


@settings(max_examples=150, deadline=None)
@given(group_and_multiset(max_size=7), st.integers(1, 4))
def test_short_zero_sum_matches_enumeration(gm, k):
    G, ms = gm
    want = any(is_zero(G, sub) for r in range(1, min(k, len(ms)) + 1)
               for sub in itertools.combinations(list(ms), r))
    assert has_short_zero_sum(ms, k) == want


@settings(max_examples=80, deadline=None)
@given(group_and_multiset(max_size=5))
def test_packing_matches_set_partition_oracle(gm):
    G, ms = gm
    want = set_partitions_max_zero_sums(list(ms), lambda bl: is_zero(G, bl))
    assert max_disjoint_zero_sums(ms) == want


@settings(max_examples=60, deadline=None)
@given(group_and_multiset(max_size=8))
def test_disjoint_system_is_valid(gm):
    G, ms = gm
    system = max_disjoint_system(ms)
    assert len(system) == max_disjoint_zero_sums(ms)
    used = [0] * G.order
    for part in system:
        assert len(part) > 0 and is_zero(G, list(part))
        used = [u + c for u, c in zip(used, part.counts)]
    assert all(u <= c for u, c in zip(used, ms.counts))


def test_minimal_zero_sums_of_z3_squared():
    G = GroupSpec((3, 3))
    ours = {tuple(v) for v in group_minimal_zero_sums(G)}
    brute = set()
    for r in range(1, 6):
        for combo in itertools.combinations_with_replacement(range(9), r):
            elems = [G.coords(i) for i in combo]
            if is_zero(G, elems) and all(
                    not is_zero(G, sub) for s in range(1, r)
                    for sub in itertools.combinations(elems, s)):
                v = [0] * 9
                for i in combo:
                    v[i] += 1
                brute.add(tuple(v))
    assert ours == brute
    assert len(brute) == 69


def test_minimal_zero_sums_of_multiset():
    G = GroupSpec((4,))
    ms = GMultiSet.from_elements(G, [(1,), (1,), (1,), (1,), (2,), (2,)])
    mins = {str(m) for m in minimal_zero_sums(ms)}
    assert len(mins) == 3        # 1+1+1+1, 1+1+2, 2+2


@pytest.mark.parametrize("G,value", [
    (GroupSpec((5,)), 5), (GroupSpec((7,)), 7), (GroupSpec((2, 2)), 3), (GroupSpec((2, 2, 2)), 4),
    (GroupSpec((3, 3)), 5), (GroupSpec((2, 4)), 5), (GroupSpec((3, 6)), 8),
])
def test_davenport_small(G, value):
    # D(Z_m + Z_n) = m + n - 1 for rank <= 2; D(Z_2^3) = 4
    assert davenport(G) == value


def test_davenport_symmetry_agrees():
    assert davenport(GroupSpec((3, 3)), symmetry=True) == 5
    assert davenport(GroupSpec((3, 3, 3)), symmetry=True) == 7


def test_davenport_short():
    assert davenport_short(GroupSpec((3, 3)), 3) == 7
    assert davenport_short(GroupSpec((2,)), 2) == 2
    assert davenport_short(GroupSpec((5,)), 5) == davenport(GroupSpec((5,)))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_davenport_m_cyclic(m):
    assert davenport_m(GroupSpec((2,)), m) == 2 * m
    assert davenport_m(GroupSpec((3,)), m) == 3 * m


def test_davenport_m_z3_squared():
    assert [davenport_m(GroupSpec((3, 3)), m) for m in (1, 2, 3)] == [5, 8, 11]


def test_c_const():
    assert c_const(3, 2) == 4      # D_m(Z_3^2) = 3m + 2 = 3(m - 1) + 5
    assert c_const(3, 2) <= c_const_trivial(3, 2)


def test_witness_for_m_is_zero_sum_free():
    for G in SMALL_GROUPS:
        w = zero_sum_free_witness_for_m(G)
        assert is_zero_sum_free(w)


def test_budget_exhaustion():
    with pytest.raises(BudgetExceeded):
        davenport(GroupSpec((3, 3, 3)), budget=50)
