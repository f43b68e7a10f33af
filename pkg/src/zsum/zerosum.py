"""Zero-sums, disjoint zero-sum packings and the Davenport constants
D(G), D_m(G) and D^L(G) by exhaustive search."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

from .abelian import GMultiSet, GroupSpec, automorphism_table, canonical_counts

DEFAULT_BUDGET = 10**9


class BudgetExceeded(RuntimeError):
    """A search visited more nodes than its budget allows."""


class Budget:
    def __init__(self, limit: int = DEFAULT_BUDGET):
        if limit < 1:
            raise ValueError("budget must be positive")
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"search exceeded node budget {self.limit}")


def _as_budget(budget) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(DEFAULT_BUDGET if budget is None else budget)


# -- bitset arithmetic -----------------------------------------------------------


class SumBits:
    """Subsets of a group as Python-int bitsets (bit i <-> element index i),
    with translation by a group element."""

    def __init__(self, G: GroupSpec):
        self.G = G
        self.full = (1 << G.order) - 1
        # per coordinate and shift amount c: (up, hi_mask, down, lo_mask)
        coords = G.elements()
        self._ops = []
        for ci, (n, s) in enumerate(zip(G.invariant_factors, G.strides)):
            per = {}
            for c in range(1, n):
                hi = lo = 0
                for idx, x in enumerate(coords):
                    if x[ci] >= c:
                        hi |= 1 << idx
                    else:
                        lo |= 1 << idx
                per[c] = (c * s, hi, (n - c) * s, lo)
            self._ops.append(per)
        self._elem_ops = [
            tuple(self._ops[ci][c] for ci, c in enumerate(x) if c) for x in coords
        ]

    def shift(self, mask: int, g: int) -> int:
        for up, hi, down, lo in self._elem_ops[g]:
            mask = ((mask << up) & hi) | ((mask >> down) & lo)
        return mask

    def add_element(self, sums: int, g: int) -> int:
        """Nonempty subset sums after appending g, given those before."""
        return sums | self.shift(sums, g) | (1 << g)


@lru_cache(maxsize=None)
def sum_bits(G: GroupSpec) -> SumBits:
    return SumBits(G)


def subset_sums(ms: GMultiSet) -> int:
    """Bitset of all sums of nonempty sub-multisets."""
    sb = sum_bits(ms.group)
    R = 0
    for g in ms.indices():
        R = sb.add_element(R, g)
    return R


# -- basic operations -------------------------------------------------------------


def sum_of(ms: GMultiSet):
    G = ms.group
    total = [0] * G.rank
    for x, c in ms.items():
        for i, v in enumerate(x):
            total[i] += c * v
    return G.elem(total)


def is_zero_sum_free(ms: GMultiSet) -> bool:
    """No nonempty sub-multiset sums to zero (reachable-sums DP)."""
    sb = sum_bits(ms.group)
    R = 0
    for g in ms.indices():
        if g == 0 or (R >> ms.group.neg_table[g]) & 1:
            return False
        R = sb.add_element(R, g)
    return True


def has_short_zero_sum(ms: GMultiSet, max_len: int) -> bool:
    """Whether some nonempty zero-sum of length <= max_len exists."""
    G = ms.group
    sb = sum_bits(G)
    layers = [1] + [0] * (max_len - 1)        # layers[j]: sums of exactly j elements
    neg = G.neg_table
    for g in ms.indices():
        for j in range(max_len):
            if (layers[j] >> neg[g]) & 1:
                return True
        for j in range(max_len - 1, 0, -1):
            layers[j] |= sb.shift(layers[j - 1], g)
    return False


def _multiples(G: GroupSpec) -> list[list[int]]:
    add = G.add_table.tolist()
    out = []
    for g in range(G.order):
        row = [0]
        for _ in range(G.order):
            row.append(add[row[-1]][g])
        out.append(row)
    return out


_multiples_cached = lru_cache(maxsize=None)(_multiples)


def zero_sum_subvectors(G: GroupSpec, counts: Sequence[int]) -> list[tuple[int, ...]]:
    """All nonzero sub-multiplicity vectors of ``counts`` summing to zero.

    Vectors are indexed like ``counts`` (full group order)."""
    support = [i for i, c in enumerate(counts) if c]
    add = G.add_table
    mult = _multiples_cached(G)
    out = []
    cur = [0] * len(counts)

    def rec(pos: int, s: int):
        if pos == len(support):
            if s == 0 and any(cur):
                out.append(tuple(cur))
            return
        g = support[pos]
        for c in range(counts[g] + 1):
            cur[g] = c
            rec(pos + 1, int(add[s, mult[g][c % G.order]]))
        cur[g] = 0

    rec(0, 0)
    return out


def minimal_of(vectors: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Vectors with no other listed vector strictly below them."""
    vs = sorted(set(vectors), key=sum)
    out: list[tuple[int, ...]] = []
    for v in vs:
        if not any(all(a <= b for a, b in zip(u, v)) for u in out):
            out.append(v)
    return out


def minimal_zero_sums(ms: GMultiSet) -> list[GMultiSet]:
    return [GMultiSet(ms.group, v) for v in minimal_of(zero_sum_subvectors(ms.group, ms.counts))]


class Packer:
    """Maximum number of disjoint zero-sums inside sub-multisets of a fixed
    family of minimal zero-sums, memoised on the multiplicity vector."""

    def __init__(self, minimal: Sequence[Sequence[int]]):
        self.by_first: dict[int, list[tuple[int, ...]]] = {}
        for z in minimal:
            first = next(i for i, c in enumerate(z) if c)
            self.by_first.setdefault(first, []).append(tuple(z))
        self.memo: dict[tuple[int, ...], int] = {}

    def __call__(self, v: tuple[int, ...]) -> int:
        got = self.memo.get(v)
        if got is not None:
            return got
        i = next((j for j, c in enumerate(v) if c), None)
        if i is None:
            return 0
        w = list(v)
        w[i] -= 1
        best = self(tuple(w))
        for z in self.by_first.get(i, ()):
            if all(a <= b for a, b in zip(z, v)):
                r = 1 + self(tuple(b - a for a, b in zip(z, v)))
                if r > best:
                    best = r
        self.memo[v] = best
        return best


def max_disjoint_zero_sums(ms: GMultiSet, cap: Optional[int] = None) -> int:
    """min(cap, maximum number of pairwise disjoint nonempty zero-sums).

    Any packing refines to one by minimal zero-sums, so only those are tried.
    """
    if cap is not None and cap < 1:
        raise ValueError("cap must be >= 1")
    support = [i for i, c in enumerate(ms.counts) if c]
    mins = minimal_of(zero_sum_subvectors(ms.group, ms.counts))
    packer = Packer([tuple(z[i] for i in support) for z in mins])
    best = packer(tuple(ms.counts[i] for i in support))
    return best if cap is None else min(cap, best)


def max_disjoint_system(ms: GMultiSet) -> list[GMultiSet]:
    """One maximum system of disjoint minimal zero-sums (for witnesses)."""
    mins = minimal_of(zero_sum_subvectors(ms.group, ms.counts))
    packer = Packer(mins)
    v = ms.counts
    parts = []
    while True:
        target = packer(v)
        if target == 0:
            return parts
        for z in mins:
            if all(a <= b for a, b in zip(z, v)):
                rest = tuple(b - a for a, b in zip(z, v))
                if packer(rest) == target - 1:
                    parts.append(GMultiSet(ms.group, z))
                    v = rest
                    break


# -- exhaustive searches -------------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    value: int           # the constant: longest admissible length + 1
    witness: GMultiSet   # an admissible multiset of length value - 1
    nodes: int


def _longest_dfs(G: GroupSpec, state0, extend: Callable, budget: Budget) -> tuple[int, list[int]]:
    """Depth-first over multisets in non-decreasing index order.

    ``extend(state, g)`` returns the child state or None if appending g
    violates the property.  Admissibility must be hereditary.
    """
    best_len = 0
    best: list[int] = []
    path: list[int] = []
    order = G.order

    def rec(state, start: int):
        nonlocal best_len, best
        budget.tick()
        if len(path) > best_len:
            best_len = len(path)
            best = list(path)
        for g in range(start, order):
            child = extend(state, g)
            if child is not None:
                path.append(g)
                rec(child, g)
                path.pop()

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10000))
    try:
        rec(state0, 0)
    finally:
        sys.setrecursionlimit(old)
    return best_len, best


def _result(G: GroupSpec, length: int, path: list[int], budget: Budget) -> SearchResult:
    counts = [0] * G.order
    for g in path:
        counts[g] += 1
    return SearchResult(length + 1, GMultiSet(G, tuple(counts)), budget.used)


def _grow_orbits(G: GroupSpec, admissible: Callable[[tuple[int, ...]], bool],
                 budget: Budget) -> tuple[int, tuple[int, ...]]:
    """Level-by-level growth of admissible multisets up to automorphism."""
    table = automorphism_table(G)
    level = {tuple([0] * G.order)}
    best = next(iter(level))
    size = 0
    while level:
        best = min(level)
        nxt = set()
        for v in level:
            for g in range(G.order):
                budget.tick()
                w = list(v)
                w[g] += 1
                w = tuple(w)
                if admissible(w):
                    nxt.add(canonical_counts(w, table))
        if not nxt:
            return size, best
        level = nxt
        size += 1
    return size, best


def davenport_search(G: GroupSpec, budget=None, symmetry: bool = False) -> SearchResult:
    budget = _as_budget(budget)
    sb = sum_bits(G)
    neg = G.neg_table
    if symmetry:
        def ok(v):
            return is_zero_sum_free(GMultiSet(G, v))
        n, best = _grow_orbits(G, ok, budget)
        return SearchResult(n + 1, GMultiSet(G, best), budget.used)

    def extend(R, g):
        if g == 0 or (R >> neg[g]) & 1:
            return None
        return sb.add_element(R, g)

    length, path = _longest_dfs(G, 0, extend, budget)
    return _result(G, length, path, budget)


def davenport(G: GroupSpec, budget=None, symmetry: bool = False) -> int:
    """Least N such that every N-element multiset over G has a zero-sum."""
    return davenport_search(G, budget, symmetry).value


def davenport_short_search(G: GroupSpec, max_len: int, budget=None,
                           symmetry: bool = False) -> SearchResult:
    if max_len < 1:
        raise ValueError("zero-sum length bound must be >= 1")
    budget = _as_budget(budget)
    if symmetry:
        def ok(v):
            return not has_short_zero_sum(GMultiSet(G, v), max_len)
        n, best = _grow_orbits(G, ok, budget)
        return SearchResult(n + 1, GMultiSet(G, best), budget.used)

    sb = sum_bits(G)
    neg = G.neg_table

    def extend(layers, g):
        ng = neg[g]
        for lay in layers:
            if (lay >> ng) & 1:
                return None
        new = list(layers)
        for j in range(max_len - 1, 0, -1):
            new[j] = layers[j] | sb.shift(layers[j - 1], g)
        return tuple(new)

    state0 = (1,) + (0,) * (max_len - 1)
    length, path = _longest_dfs(G, state0, extend, budget)
    return _result(G, length, path, budget)


def davenport_short(G: GroupSpec, max_len: int, budget=None, symmetry: bool = False) -> int:
    """Least N such that every N-element multiset has a zero-sum of length <= max_len."""
    return davenport_short_search(G, max_len, budget, symmetry).value


@lru_cache(maxsize=None)
def group_minimal_zero_sums(G: GroupSpec) -> tuple[tuple[int, ...], ...]:
    """Every minimal zero-sum multiset of G, as multiplicity vectors.

    Each is T = S + {-sum(S)} with S zero-sum free; it is generated once by
    requiring the appended element to have the largest index in T.
    """
    sb = sum_bits(G)
    neg = G.neg_table
    add = G.add_table.tolist()
    out = []
    counts = [0] * G.order

    def rec(R: int, total: int, start: int, size: int):
        g = neg[total]
        if g >= start or size == 0:
            T = list(counts)
            T[g] += 1
            if _is_minimal_zero_sum(G, T):
                out.append(tuple(T))
        for h in range(max(start, 1), G.order):
            if (R >> neg[h]) & 1:
                continue
            counts[h] += 1
            rec(sb.add_element(R, h), add[total][h], h, size + 1)
            counts[h] -= 1

    rec(0, 0, 0, 0)
    return tuple(sorted(set(out)))


def _is_minimal_zero_sum(G: GroupSpec, T: list[int]) -> bool:
    for i, c in enumerate(T):
        if c:
            T[i] -= 1
            ok = sum(T) == 0 or is_zero_sum_free(GMultiSet(G, tuple(T)))
            T[i] += 1
            if not ok:
                return False
    return True


def davenport_m_search(G: GroupSpec, m: int, budget=None, symmetry: bool = False) -> SearchResult:
    if m < 1:
        raise ValueError("m must be >= 1")
    budget = _as_budget(budget)
    packer = Packer(group_minimal_zero_sums(G))
    if symmetry:
        def ok(v):
            return packer(v) < m
        n, best = _grow_orbits(G, ok, budget)
        return SearchResult(n + 1, GMultiSet(G, best), budget.used)

    def extend(v, g):
        w = list(v)
        w[g] += 1
        w = tuple(w)
        return w if packer(w) < m else None

    length, path = _longest_dfs(G, tuple([0] * G.order), extend, budget)
    return _result(G, length, path, budget)


def davenport_m(G: GroupSpec, m: int, budget=None, symmetry: bool = False) -> int:
    """Least N such that every N-element multiset contains m disjoint zero-sums."""
    return davenport_m_search(G, m, budget, symmetry).value


def c_const(k: int, ell: int, budget=None) -> int:
    """D^k(Z_k^l) - k, the additive constant in D_m(Z_k^l) <= km + c."""
    return davenport_short(GroupSpec.elementary(k, ell), k, budget) - k


def c_const_trivial(k: int, ell: int) -> int:
    """The crude constant (k - 1) * k^l from the neat-set argument."""
    return (k - 1) * k**ell


def zero_sum_free_witness_for_m(G: GroupSpec) -> GMultiSet:
    """The standard zero-sum free multiset of length M(G) - 1:
    e_i with multiplicity n_i - 1."""
    counts = [0] * G.order
    for i, n in enumerate(G.invariant_factors):
        e = [0] * G.rank
        e[i] = 1
        counts[G.index(e)] = n - 1
    return GMultiSet(G, tuple(counts))


def iter_zero_sum_free(G: GroupSpec, size: int, budget=None) -> Iterator[GMultiSet]:
    """All zero-sum free multisets of a given cardinality (no symmetry)."""
    budget = _as_budget(budget)
    sb = sum_bits(G)
    neg = G.neg_table
    counts = [0] * G.order

    def rec(R: int, start: int, left: int):
        budget.tick()
        if left == 0:
            yield GMultiSet(G, tuple(counts))
            return
        for g in range(max(start, 1), G.order):
            if (R >> neg[g]) & 1:
                continue
            counts[g] += 1
            yield from rec(sb.add_element(R, g), g, left - 1)
            counts[g] -= 1

    yield from rec(0, 0, size)
