"""Zero-sum free multisets in Z_n and Z_n^2: Property B, the
multiplicity lemma for long zero-sum free sequences in Z_n and its
index-sum corollary, and the classification of two-element completions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil, gcd
from typing import Iterator, Optional

import numpy as np

from .abelian import GMultiSet, GroupSpec, _is_prime, automorphism_table, canonical_counts
from .zerosum import Budget, _as_budget, is_zero_sum_free, sum_bits


def Zn2(n: int) -> GroupSpec:
    return GroupSpec((n, n))


# -- enumeration of zero-sum free multisets in Z_n^2 ---------------------------------


def _free_dfs(G: GroupSpec, size: int, caps: list[int], fixed: list[int],
              budget: Budget) -> Iterator[tuple[int, ...]]:
    """Zero-sum free multisets of exactly ``size`` elements containing
    ``fixed`` and otherwise respecting per-element multiplicity caps.

    Prunes with |Sigma(S)| + (size - |S|) <= |G| - 1: for a zero-sum free
    S T, Sigma(S) and sum(S) + Sigma(T) are disjoint and |Sigma(T)| >= |T|.
    """
    sb = sum_bits(G)
    neg = G.neg_table
    limit = G.order - 1
    counts = [0] * G.order
    R = 0
    for g, c in enumerate(fixed):
        for _ in range(c):
            if g == 0 or (R >> neg[g]) & 1:
                return
            R = sb.add_element(R, g)
        counts[g] = c
    free = [g for g in range(1, G.order) if caps[g] > counts[g]]

    def rec(R: int, pos: int, left: int):
        budget.tick()
        if left == 0:
            yield tuple(counts)
            return
        if bin(R).count("1") + left > limit:
            return
        for k in range(pos, len(free)):
            g = free[k]
            if counts[g] >= caps[g] or (R >> neg[g]) & 1:
                continue
            counts[g] += 1
            yield from rec(sb.add_element(R, g), k, left - 1)
            counts[g] -= 1

    yield from rec(R, 0, size - sum(fixed))


def zero_sum_free_multisets(n: int, size: int, max_mult: Optional[int] = None,
                            symmetry: bool = True, budget=None) -> Iterator[GMultiSet]:
    """Zero-sum free multisets of Z_n^2 with ``size`` elements, all
    multiplicities <= ``max_mult``.

    With ``symmetry`` (prime n only) every orbit under GL_2(Z_n) is hit at
    least once: the most frequent element is moved to (1,0), then the most
    frequent element off <(1,0)> to (0,1).  Duplicates within an orbit remain.
    """
    G = Zn2(n)
    budget = _as_budget(budget)
    top = n - 1 if max_mult is None else min(max_mult, n - 1)
    if size == 0:
        yield GMultiSet(G)
        return
    if top < 1:
        return
    if not symmetry or not _is_prime(n):
        caps = [0] + [top] * (G.order - 1)
        for v in _free_dfs(G, size, caps, [0] * G.order, budget):
            yield GMultiSet(G, v)
        return
    e1, e2 = G.index((1, 0)), G.index((0, 1))
    axis = {G.index((t, 0)) for t in range(1, n)}
    for m0 in range(min(top, size), 0, -1):
        # everything inside <(1,0)>
        caps = [m0 if g in axis else 0 for g in range(G.order)]
        fixed = [0] * G.order
        fixed[e1] = m0
        caps[0] = 0
        for v in _free_dfs(G, size, caps, fixed, budget):
            yield GMultiSet(G, v)
        for m1 in range(min(m0, size - m0), 0, -1):
            caps = [m0 if g in axis else m1 for g in range(G.order)]
            caps[0] = 0
            fixed = [0] * G.order
            fixed[e1] = m0
            fixed[e2] = m1
            for v in _free_dfs(G, size, caps, fixed, budget):
                if v[e1] == m0 and v[e2] == m1:
                    yield GMultiSet(G, v)


def zero_sum_free_orbits(n: int, size: int, max_mult: Optional[int] = None,
                         budget=None) -> list[GMultiSet]:
    """Canonical representatives of the GL_2(Z_n)-orbits, sorted."""
    G = Zn2(n)
    table = automorphism_table(G, prime=False)
    seen = set()
    for ms in zero_sum_free_multisets(n, size, max_mult, symmetry=True, budget=budget):
        seen.add(canonical_counts(ms.counts, table))
    return [GMultiSet(G, v) for v in sorted(seen)]


def property_b(n: int, symmetry: bool = True, budget=None) -> bool:
    """Every zero-sum free multiset of Z_n^2 with 2n - 2 elements has an
    element of multiplicity >= n - 2.

    Searches for a counterexample, i.e. one with all multiplicities <= n - 3.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if n - 3 < 1:
        return True
    for _ in zero_sum_free_multisets(n, 2 * n - 2, max_mult=n - 3, symmetry=symmetry,
                                     budget=budget):
        return False
    return True


# -- cyclic groups -----------------------------------------------------------------------


def _cyclic_multisets(n: int, min_size: int, max_size: int, zero_sum_free_only: bool,
                      budget: Budget) -> Iterator[tuple[tuple[int, ...], bool]]:
    """(counts, zero_sum_free) for multisets of Z_n with sizes in the range."""
    full = (1 << n) - 1
    counts = [0] * n

    def rot(mask: int, g: int) -> int:
        return ((mask << g) | (mask >> (n - g))) & full

    def rec(R: int, free: bool, start: int, size: int):
        budget.tick()
        if size >= min_size:
            yield tuple(counts), free
        if size == max_size:
            return
        for g in range(start, n):
            nfree = free and g != 0 and not (R >> ((-g) % n)) & 1
            if zero_sum_free_only and not nfree:
                continue
            counts[g] += 1
            yield from rec(R | rot(R, g) | (1 << g), nfree, g, size + 1)
            counts[g] -= 1

    yield from rec(0, True, 0, 0)


def ben_check(n: int, budget=None) -> bool:
    """For every zero-sum free A in Z_n with N >= 2n/3 elements some element
    has multiplicity > 2N - n, and every such element generates Z_n."""
    budget = _as_budget(budget)
    lo = ceil(2 * n / 3)
    for counts, _ in _cyclic_multisets(n, lo, n - 1, True, budget):
        N = sum(counts)
        heavy = [a for a, c in enumerate(counts) if c > 2 * N - n]
        if not heavy or any(gcd(a, n) != 1 for a in heavy):
            return False
    return True


def index_sum_criterion(counts, n: int) -> Optional[int]:
    """A unit alpha with sum of least residues of alpha * a <= n - 1, if any
    (and 0 not in the multiset)."""
    if counts[0]:
        return None
    for alpha in range(1, n):
        if gcd(alpha, n) != 1:
            continue
        if sum(c * (alpha * a % n) for a, c in enumerate(counts)) <= n - 1:
            return alpha
    return None


def corcd_check(n: int, budget=None) -> bool:
    """For every multiset A of Z_n with |A| >= 3n/4: A is zero-sum free iff
    0 is not in A and some unit alpha has index sum <= n - 1.

    Sizes above n are covered trivially: no such A is zero-sum free, and its
    index sum is at least |A| > n - 1.  Sizes up to n are enumerated.
    """
    budget = _as_budget(budget)
    lo = ceil(3 * n / 4)
    for counts, free in _cyclic_multisets(n, lo, n, False, budget):
        if free != (index_sum_criterion(counts, n) is not None):
            return False
    return True


# -- completions in Z_n^2 ------------------------------------------------------------------


def _in_c1(n, p, q):
    return p[1] == 1 and q[1] == 1


def _in_c2(n, p, q):
    for a, b in ((p, q), (q, p)):
        if a == (1, 0) and b[1] == 1:
            return True
        if a == (0, 1) and b[0] == 1:
            return True
        if a[1] == 1 and b[1] == 1 and (a[0] + b[0]) % n == 1:
            return True
        if a[0] == 1 and b[0] == 1 and (a[1] + b[1]) % n == 1:
            return True
    return False


def _in_c3(n, p, q):
    pair = tuple(sorted((p, q)))
    allowed = {
        ((1, 0), (1, 0)),
        tuple(sorted(((1, 0), (n - 1, 1)))),
        ((0, 1), (0, 1)),
        tuple(sorted(((0, 1), (1, n - 1)))),
    }
    return pair in allowed


_MEMBERSHIP = {"C1": _in_c1, "C2": _in_c2, "C3": _in_c3}


@lru_cache(maxsize=None)
def pair_membership(n: int, kind: str) -> np.ndarray:
    """Boolean |G| x |G| matrix: {p, q} lies in the pair family ``kind``."""
    G = Zn2(n)
    pred = _MEMBERSHIP[kind]
    els = G.elements()
    return np.array([[pred(n, p, q) for q in els] for p in els], dtype=bool)


def pair_family(n: int, kind: str) -> set[tuple]:
    G = Zn2(n)
    M = pair_membership(n, kind)
    els = G.elements()
    return {tuple(sorted((els[i], els[j]))) for i, j in zip(*np.nonzero(M)) if i <= j}


@dataclass(frozen=True)
class CompletionReport:
    base: GMultiSet
    singles: frozenset
    pairs: frozenset
    classification: str          # C1 | C2 | C3 | EXCEPTION | NONE
    exception: bool
    automorphism: Optional[tuple] = None
    homomorphism: Optional[tuple[int, int]] = None


def _completions(B: GMultiSet) -> tuple[list[int], list[tuple[int, int]]]:
    G = B.group
    sb = sum_bits(G)
    neg = G.neg_table
    R = 0
    for g in B.indices():
        R = sb.add_element(R, g)
    if R & 1:
        return [], []
    singles = [c for c in range(1, G.order) if not (R >> neg[c]) & 1]
    pairs = []
    for c1 in singles:
        R1 = sb.add_element(R, c1)
        for c2 in singles:
            if c2 >= c1 and not (R1 >> neg[c2]) & 1:
                pairs.append((c1, c2))
    return singles, pairs


def is_exception(B: GMultiSet) -> bool:
    """B = {b1^(n-2), b2^(n-2)} with b1, b2 generating Z_n^2."""
    n = B.group.invariant_factors[0]
    items = B.items()
    if len(items) != 2 or any(c != n - 2 for _, c in items):
        return False
    (a, _), (b, _) = items
    return gcd((a[0] * b[1] - a[1] * b[0]) % n, n) == 1


def _find_hom_singles(n, singles):
    for u in range(n):
        for v in range(n):
            if all((u * x + v * y) % n == 1 for x, y in singles):
                return (u, v)
    return None


def _find_hom_pairs(n, pairs):
    for u in range(n):
        for v in range(n):
            ok = True
            for p, q in pairs:
                a, b = (u * p[0] + v * p[1]) % n, (u * q[0] + v * q[1]) % n
                if a > 1 or b > 1 or a + b == 0:
                    ok = False
                    break
            if ok:
                return (u, v)
    return None


def completion_report(B: GMultiSet) -> CompletionReport:
    """Singles and pairs completing B to a zero-sum free multiset, and the
    first pair family C1, C2, C3 containing the pairs after an automorphism.

    For |B| = 2n - 3 no pair can complete B (2n - 1 = D(Z_n^2)), so the label
    instead records whether some automorphism puts all singles on the line
    y = 1 (label C1).
    """
    G = B.group
    if len(G.invariant_factors) != 2 or not G.is_elementary:
        raise ValueError("completion reports are defined over Z_n^2")
    n = G.invariant_factors[0]
    size = len(B)
    if size not in (2 * n - 3, 2 * n - 4):
        raise ValueError(f"|B| must be 2n-3 or 2n-4, got {size} for n={n}")
    singles, pairs = _completions(B)
    els = G.elements()
    table = automorphism_table(G, prime=False)
    exc = is_exception(B)
    label, sigma = "NONE", None
    if size == 2 * n - 3:
        line = np.array([x[1] == 1 for x in els], dtype=bool)
        if not singles:
            label, sigma = "C1", 0
        else:
            ok = line[table[:, singles]].all(axis=1)
            if ok.any():
                label, sigma = "C1", int(np.argmax(ok))
        hom = _find_hom_singles(n, [els[c] for c in singles])
    else:
        P = np.array(pairs, dtype=np.int64).reshape(-1, 2)
        for kind in ("C1", "C2", "C3"):
            M = pair_membership(n, kind)
            ok = M[table[:, P[:, 0]], table[:, P[:, 1]]].all(axis=1) if len(P) else \
                np.ones(len(table), dtype=bool)
            if ok.any():
                label, sigma = kind, int(np.argmax(ok))
                break
        hom = _find_hom_pairs(n, [(els[a], els[b]) for a, b in pairs])
    if label == "NONE" and exc:
        label = "EXCEPTION"
    from .abelian import gl_matrices
    return CompletionReport(
        base=B,
        singles=frozenset(els[c] for c in singles),
        pairs=frozenset((els[a], els[b]) for a, b in pairs),
        classification=label,
        exception=exc,
        automorphism=None if sigma is None else gl_matrices(n, 2)[sigma],
        homomorphism=hom,
    )


@dataclass
class CompletionSummary:
    n: int
    size: int
    orbits: int
    by_label: dict
    failures: list


def verify_completions(n: int, size: int, budget=None) -> CompletionSummary:
    """Classify every zero-sum free B of the given size (one per orbit) and
    check the homomorphism F exists outside the exceptional case."""
    reps = zero_sum_free_orbits(n, size, budget=budget)
    by_label: dict[str, int] = {}
    failures = []
    for B in reps:
        rep = completion_report(B)
        by_label[rep.classification] = by_label.get(rep.classification, 0) + 1
        if rep.classification == "NONE" or (not rep.exception and rep.homomorphism is None):
            failures.append(rep)
    return CompletionSummary(n, size, len(reps), by_label, failures)
