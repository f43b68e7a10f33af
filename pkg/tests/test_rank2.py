import pytest
from hypothesis import given, settings, strategies as st

from zsum.abelian import GMultiSet, automorphism_table, canonical_counts
from zsum.rank2 import (
    Zn2, ben_check, completion_report, corcd_check, index_sum_criterion, is_exception,
    pair_family, property_b, verify_completions, zero_sum_free_multisets, zero_sum_free_orbits,
)
from zsum.zerosum import is_zero_sum_free


def ms(n, spec):
    return GMultiSet.from_mapping(Zn2(n), spec)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_property_b_small(n):
    assert property_b(n)


@pytest.mark.parametrize("n", range(2, 9))
def test_cyclic_checks(n):
    assert ben_check(n)
    assert corcd_check(n)


@pytest.mark.parametrize("n,size", [(3, 3), (5, 6), (5, 7)])
def test_symmetry_breaking_keeps_every_orbit(n, size):
    G = Zn2(n)
    table = automorphism_table(G, prime=False)
    full = {canonical_counts(m.counts, table)
            for m in zero_sum_free_multisets(n, size, symmetry=False)}
    broken = {canonical_counts(m.counts, table)
              for m in zero_sum_free_multisets(n, size, symmetry=True)}
    assert full == broken
    assert {m.counts for m in zero_sum_free_orbits(n, size)} == full


def test_enumerated_multisets_are_zero_sum_free():
    for m in zero_sum_free_multisets(5, 7, symmetry=False):
        assert len(m) == 7 and is_zero_sum_free(m)


def test_index_sum_criterion():
    assert index_sum_criterion([0, 3, 0, 0, 0, 0], 6) == 1      # 1^3 in Z_6
    assert index_sum_criterion([0, 0, 0, 0, 0, 3], 6) == 5      # 5^3: scale by 5
    assert index_sum_criterion([0, 6, 0, 0, 0, 0], 6) is None   # 1^6 is a zero-sum
    assert index_sum_criterion([1, 1, 0, 0, 0, 0], 6) is None   # contains 0


def test_exception_example():
    B = ms(5, {(1, 0): 3, (0, 1): 3})
    assert is_exception(B)
    rep = completion_report(B)
    assert rep.exception and rep.classification == "C2"
    assert rep.homomorphism is None
    fam = pair_family(5, "C2")
    assert all(tuple(sorted(p)) in fam for p in rep.pairs)


def test_c3_example():
    B = ms(5, {(1, 0): 2, (0, 1): 2, (1, 1): 2})
    rep = completion_report(B)
    assert rep.classification == "C3"
    assert set(rep.pairs) == {((0, 1), (0, 1)), ((0, 1), (1, 4)), ((1, 0), (1, 0)),
                              ((1, 0), (4, 1))}
    assert rep.homomorphism == (1, 1)


def test_no_completion_case():
    # multiplicities n-4, n-4, 4: a zero-sum free set of size 2n-4 with no
    # completing pair
    B = ms(5, {(1, 0): 1, (0, 1): 1, (1, 1): 4})
    rep = completion_report(B)
    assert rep.classification != "NONE"
    assert not rep.pairs
    G = B.group
    for c in G.elements():
        for d in G.elements():
            assert not is_zero_sum_free(B.add(c).add(d))


def test_completion_sets_match_brute_force():
    B = ms(5, {(1, 0): 2, (0, 1): 2, (1, 1): 2})
    rep = completion_report(B)
    G = B.group
    singles = {c for c in G.elements() if is_zero_sum_free(B.add(c))}
    pairs = {tuple(sorted((c, d))) for c in singles for d in singles
             if is_zero_sum_free(B.add(c).add(d))}
    assert set(rep.singles) == singles
    assert set(rep.pairs) == pairs


def test_size_check():
    with pytest.raises(ValueError):
        completion_report(ms(5, {(1, 0): 2}))


@pytest.mark.parametrize("size", [7, 6])
def test_verify_completions_n5(size):
    s = verify_completions(5, size)
    assert not s.failures and "NONE" not in s.by_label
