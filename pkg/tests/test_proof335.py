import itertools

import pytest

from zsum.abelian import GMultiSet, Z333, automorphism_table, canonical_counts
from zsum.proof335 import (
    Leaf, build_zero_sum_graph, copy_zero_sums, count_raw_sets, dumps_certificate,
    enumerate_candidates, hom_refute, lemma_set, load_grid_fixture, loads_certificate,
    passes_candidate_filters, prove_nofunc1, short_free_set_orbits, target_graph,
    verify_certificate, verify_length3,
)
from zsum.rank2 import pair_family
from zsum.zerosum import has_short_zero_sum, is_zero_sum_free


@pytest.fixture(scope="module")
def candidates13():
    return enumerate_candidates(13, 2)


def test_length3_report():
    r = verify_length3()
    assert r.survivors9 == 0 and r.orbits8 == 1 and r.raw8 == r.orbit8_size
    assert r.explicit_free and r.explicit_in_orbit and r.doubled_disjoint == 4
    assert r.ok


def test_no_nine_sets_by_plain_backtracking():
    assert count_raw_sets(9) == 0


def test_orbit_sizes_account_for_all_raw_sets():
    table = automorphism_table(Z333)
    import numpy as np
    for size in (3, 5):
        total = sum(len({tuple(r) for r in np.asarray(rep)[table].tolist()})
                    for rep in short_free_set_orbits()[size])
        assert total == count_raw_sets(size)


def test_candidates_match_fixture(candidates13, grid_fixture_path):
    fixture = load_grid_fixture(grid_fixture_path)
    assert len(fixture) == 15
    table = automorphism_table(Z333)
    assert {canonical_counts(a.counts, table) for a in fixture} == \
        {a.counts for a in candidates13}
    assert all(passes_candidate_filters(a, 13, 2) for a in fixture)


def test_ten_element_candidates():
    cands = enumerate_candidates(10, 1)
    assert len(cands) == 43
    assert all(passes_candidate_filters(a, 10, 1) and a.max_multiplicity() <= 2 for a in cands)


def test_candidate_enumeration_against_raw_search():
    # all 4-element multisets (multiplicity <= 2, no short zero-sum, zero-sum
    # free), found by plain enumeration and reduced to orbits
    table = automorphism_table(Z333)
    raw = set()
    for combo in itertools.combinations_with_replacement(range(1, 27), 4):
        counts = [0] * 27
        for g in combo:
            counts[g] += 1
        A = GMultiSet(Z333, tuple(counts))
        if max(counts) <= 2 and not has_short_zero_sum(A, 3) and is_zero_sum_free(A):
            raw.add(canonical_counts(counts, table))
    assert {a.counts for a in enumerate_candidates(4, 0)} == raw


def test_zero_sum_graph_against_enumeration(candidates13):
    A = candidates13[0]
    copies = [Z333.coords(g) for g in A.indices()]
    zs = set()
    for r in range(1, len(copies) + 1):
        for sub in itertools.combinations(range(len(copies)), r):
            if all(sum(copies[i][c] for i in sub) % 3 == 0 for c in range(3)):
                zs.add(frozenset(sub))
    assert {frozenset(i for i in range(13) if m >> i & 1) for m in copy_zero_sums(A)} == zs
    verts = {z for z in zs if any(not (z & w) for w in zs)}
    G = build_zero_sum_graph(A)
    assert {frozenset(G.vertex_copies(v)) for v in range(len(G.vertices))} == verts
    for i, j in itertools.combinations(range(len(G.vertices)), 2):
        disjoint = not (G.vertices[i] & G.vertices[j])
        assert ((i, j) in G.edges) == disjoint


def _node_of(kind, n, p):
    x, y = p
    if kind == "C1":
        return "(*,1)" if y == 1 else None
    if kind == "C3":
        names = {(1, 0): "(1,0)", (n - 1, 1): "(-1,1)", (0, 1): "(0,1)", (1, n - 1): "(1,-1)"}
        return names.get(p)
    if p in ((1, 0), (0, 1), (1, 1)):
        return f"({x},{y})"
    if x == 1 and y >= 2:
        return "(1,>=2)"
    if y == 1 and x >= 2:
        return "(>=2,1)"
    return None


@pytest.mark.parametrize("kind", ["C1", "C2", "C3"])
@pytest.mark.parametrize("n", [5, 7, 11])
def test_target_graph_is_a_quotient_of_the_pair_family(kind, n):
    T = target_graph(kind)
    idx = {name: i for i, name in enumerate(T.nodes)}
    for p, q in pair_family(n, kind):
        a, b = _node_of(kind, n, p), _node_of(kind, n, q)
        assert a is not None and b is not None
        assert T.adjacent(idx[a], idx[b])
        for pt, name in ((p, a), (q, b)):
            assert all(pt[c] % n == v % n for c, v in T.node_eqs[idx[name]])
        if a == b:
            assert all((p[c] + q[c]) % n == v % n for c, v in T.loop_eqs[idx[a]])


def test_failed_search_is_reported():
    x, y = (1, 0, 0), (0, 1, 0)
    A = GMultiSet.from_elements(Z333, [x, (2, 0, 0), y, (0, 2, 0)])
    cert = hom_refute(build_zero_sum_graph(A), target_graph("C1"))
    assert cert.status == "FAILED" and cert.failing is not None
    ok, _ = verify_certificate(cert)
    assert not ok


@pytest.fixture(scope="module")
def c2_certificate(candidates13):
    A = candidates13[0]
    return hom_refute(build_zero_sum_graph(A), target_graph("C2"))


def test_certificate_roundtrip_and_replay(c2_certificate):
    cert = c2_certificate
    assert cert.status == "REFUTED"
    text = dumps_certificate(cert, label="A00-C2")
    again = loads_certificate(text)
    assert again.leaves == cert.leaves and again.candidate == cert.candidate
    assert dumps_certificate(again, label="A00-C2") == text
    assert verify_certificate(again) == (True, "ok")


def test_tampered_certificates_are_rejected(c2_certificate):
    cert = c2_certificate
    k = next(i for i, lf in enumerate(cert.leaves) if lf.kind == "W")
    leaves = list(cert.leaves)
    lf = leaves[k]
    leaves[k] = Leaf(lf.assignment, "W", g=lf.g * 5, exps=lf.exps)
    bad = type(cert)(cert.candidate, cert.target_kind, cert.hom_nodes_visited, leaves,
                     cert.status, cert.vertex_count)
    assert not verify_certificate(bad)[0]

    dropped = type(cert)(cert.candidate, cert.target_kind, cert.hom_nodes_visited,
                         cert.leaves[:k] + cert.leaves[k + 1:], cert.status, cert.vertex_count)
    assert not verify_certificate(dropped)[0]

    k = next(i for i, lf in enumerate(cert.leaves) if lf.kind == "D")
    leaves = list(cert.leaves)
    lf = leaves[k]
    other = next(v for v in range(cert.vertex_count) if v not in dict(lf.assignment)
                 and v != lf.blocked)
    leaves[k] = Leaf(lf.assignment, "D", blocked=other)
    forged = type(cert)(cert.candidate, cert.target_kind, cert.hom_nodes_visited, leaves,
                        cert.status, cert.vertex_count)
    assert not verify_certificate(forged)[0]


def test_certificate_parse_errors():
    with pytest.raises(ValueError):
        loads_certificate("not a certificate\n")
    with pytest.raises(ValueError):
        loads_certificate("# zsum certificate v1\nleaves: 0\n")


def test_nofunc1_all_refuted():
    res = prove_nofunc1()
    assert len(res) == 43 and all(r.refuted for r in res)


def test_lemma_set_has_no_short_zero_sum():
    assert not has_short_zero_sum(lemma_set(), 3)
