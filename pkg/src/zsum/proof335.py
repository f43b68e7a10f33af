"""Computer verification for Z_3 + Z_3n + Z_3n: short zero-sums in Z_3^3,
the 10- and 13-element candidate multisets, and the refutation of every
multi-function by graph homomorphism search plus integer elimination.

Every element copy of a candidate is its own variable (pair), so the
equations cover multi-functions directly.
"""
from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .abelian import (
    GMultiSet,
    Z333,
    automorphism_table,
    canonical_counts,
    grid_one_line,
    parse_grid,
    parse_grid_one_line,
    to_grid,
)
from .intlinalg import Finite, RowLattice, smooth_part_only, solvability_pattern
from .zerosum import has_short_zero_sum, max_disjoint_zero_sums

log = logging.getLogger(__name__)

CERT_HEADER = "# zsum certificate v1"


# -- short zero-sums in Z_3^3 -----------------------------------------------------


def _no_short_zero_sum(counts: Sequence[int]) -> bool:
    return not has_short_zero_sum(GMultiSet(Z333, tuple(counts)), 3)


def count_raw_sets(size: int) -> int:
    """Number of ``size``-sets of distinct elements of Z_3^3 without a
    zero-sum of length <= 3, by plain backtracking (no symmetry)."""
    add = Z333.add_table
    neg = Z333.neg_table
    total = 0

    def rec(chosen: list[int], start: int):
        nonlocal total
        if len(chosen) == size:
            total += 1
            return
        for g in range(max(start, 1), 27):
            if neg[g] in chosen:
                continue
            if any(add[a, b] == neg[g] for a, b in itertools.combinations(chosen, 2)):
                continue
            chosen.append(g)
            rec(chosen, g + 1)
            chosen.pop()

    rec([], 1)
    return total


@lru_cache(maxsize=None)
def short_free_set_orbits() -> dict[int, tuple[tuple[int, ...], ...]]:
    """Orbit representatives (canonical 0/1 vectors) of sets of distinct
    elements without zero-sums of length <= 3, keyed by size."""
    table = automorphism_table(Z333)
    out = {0: (tuple([0] * 27),)}
    size = 0
    while out[size]:
        nxt = set()
        for v in out[size]:
            for g in range(1, 27):
                if v[g]:
                    continue
                w = list(v)
                w[g] = 1
                if _no_short_zero_sum(w):
                    nxt.add(canonical_counts(w, table))
        size += 1
        out[size] = tuple(sorted(nxt))
    return out


def lemma_set() -> GMultiSet:
    """{x, y, z, x+y, x+y+z, x+2y+z, 2x+z, y+2z} for the standard basis."""
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 1, 1), (1, 2, 1), (2, 0, 1), (0, 1, 2)]
    return GMultiSet.from_elements(Z333, pts)


def doubled_lemma_system() -> list[GMultiSet]:
    """Four disjoint zero-sums inside the doubled 8-element set."""
    x, y, z = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    parts = [
        [x, y, (1, 1, 0), (1, 1, 0)],
        [x, z, z, (2, 0, 1)],
        [y, (1, 1, 1), (1, 2, 1), (1, 2, 1)],
        [(1, 1, 1), (2, 0, 1), (0, 1, 2), (0, 1, 2)],
    ]
    return [GMultiSet.from_elements(Z333, p) for p in parts]


@dataclass
class Length3Report:
    survivors9: int
    orbits8: int
    raw8: int
    orbit8_size: int
    explicit_free: bool
    explicit_in_orbit: bool
    doubled_disjoint: int
    claim17: bool

    @property
    def ok(self) -> bool:
        return (self.survivors9 == 0 and self.orbits8 == 1 and self.raw8 == self.orbit8_size
                and self.explicit_free and self.explicit_in_orbit
                and self.doubled_disjoint >= 4 and self.claim17)


def verify_length3() -> Length3Report:
    orbits = short_free_set_orbits()
    reps8 = orbits.get(8, ())
    survivors9 = len(orbits.get(9, ()))
    table = automorphism_table(Z333)
    orbit8 = 0
    if len(reps8) == 1:
        imgs = np.asarray(reps8[0])[table]
        orbit8 = len({tuple(r) for r in imgs.tolist()})
    raw8 = count_raw_sets(8)
    S = lemma_set()
    explicit_free = len(S) == 8 and S.max_multiplicity() == 1 and _no_short_zero_sum(S.counts)
    explicit_in = canonical_counts(S.counts, table) in reps8
    doubled = GMultiSet(Z333, tuple(2 * c for c in S.counts))
    parts = doubled_lemma_system()
    used = [sum(col) for col in zip(*(p.counts for p in parts))]
    parts_ok = all(u <= c for u, c in zip(used, doubled.counts)) and all(
        _is_zero(p) for p in parts)
    disjoint = max_disjoint_zero_sums(doubled) if parts_ok else 0
    # a multiset without short zero-sums has multiplicities <= 2 (a+a+a = 0),
    # so 17 elements would need 9 distinct ones
    claim17 = survivors9 == 0 and not _no_short_zero_sum([3] + [0] * 26)
    return Length3Report(survivors9, len(reps8), raw8, orbit8, explicit_free, explicit_in,
                         disjoint, claim17)


def _is_zero(ms: GMultiSet) -> bool:
    return all(sum(c * x[i] for x, c in ms.items()) % 3 == 0 for i in range(3))


# -- candidates ---------------------------------------------------------------------------


def enumerate_candidates(size: int, max_disjoint: int) -> list[GMultiSet]:
    """Orbit representatives of multisets over Z_3^3 with ``size`` elements,
    no zero-sum of length <= 3 and at most ``max_disjoint`` disjoint zero-sums.

    Multiplicities are at most 2, so the support is a short-zero-sum-free set
    of at least size/2 elements; supports are taken up to automorphism and the
    results deduplicated by canonical form.
    """
    table = automorphism_table(Z333)
    orbits = short_free_set_orbits()
    found = set()
    for s in range((size + 1) // 2, size + 1):
        for supp in orbits.get(s, ()):
            elems = [g for g in range(27) if supp[g]]
            for doubled in itertools.combinations(elems, size - s):
                counts = list(supp)
                for g in doubled:
                    counts[g] = 2
                ms = GMultiSet(Z333, tuple(counts))
                if not _no_short_zero_sum(counts):
                    continue
                if max_disjoint_zero_sums(ms, cap=max_disjoint + 1) > max_disjoint:
                    continue
                found.add(canonical_counts(counts, table))
    return [GMultiSet(Z333, v) for v in sorted(found)]


def passes_candidate_filters(ms: GMultiSet, size: int, max_disjoint: int) -> bool:
    return (len(ms) == size and _no_short_zero_sum(ms.counts)
            and max_disjoint_zero_sums(ms, cap=max_disjoint + 1) <= max_disjoint)


# -- zero-sum graph -----------------------------------------------------------------------------


def copy_zero_sums(A: GMultiSet) -> list[int]:
    """All zero-sum subsets of the element copies of A, as bitmasks over copy
    positions (copies ordered by element index), ordered by (size, mask)."""
    copies = [Z333.coords(g) for g in A.indices()]
    out = []
    for mask in range(1, 1 << len(copies)):
        s0 = s1 = s2 = 0
        m, i = mask, 0
        while m:
            if m & 1:
                x = copies[i]
                s0 += x[0]
                s1 += x[1]
                s2 += x[2]
            m >>= 1
            i += 1
        if s0 % 3 == 0 and s1 % 3 == 0 and s2 % 3 == 0:
            out.append(mask)
    out.sort(key=lambda mk: (bin(mk).count("1"), mk))
    return out


@dataclass
class ZeroSumGraph:
    host: GMultiSet
    vertices: list[int]                 # bitmasks over copy positions
    edges: set[tuple[int, int]]         # (i, j), i < j, vertex indices
    adjacency: list[list[int]] = field(repr=False, default_factory=list)

    @property
    def copies(self) -> list:
        return [Z333.coords(g) for g in self.host.indices()]

    def vertex_copies(self, v: int) -> list[int]:
        mask = self.vertices[v]
        return [i for i in range(len(self.host)) if mask >> i & 1]


def build_zero_sum_graph(A: GMultiSet) -> ZeroSumGraph:
    """Vertices: zero-sums (over copies) having a disjoint zero-sum partner;
    edges: disjoint pairs."""
    if A.group != Z333:
        raise ValueError("zero-sum graphs are built over Z_3^3")
    zs = copy_zero_sums(A)
    partner = [any(not (a & b) for b in zs) for a in zs]
    verts = [a for a, p in zip(zs, partner) if p]
    edges = set()
    adj: list[list[int]] = [[] for _ in verts]
    for i, a in enumerate(verts):
        for j in range(i + 1, len(verts)):
            if not (a & verts[j]):
                edges.add((i, j))
                adj[i].append(j)
                adj[j].append(i)
    return ZeroSumGraph(A, verts, edges, adj)


# -- target graphs ------------------------------------------------------------------------------


@dataclass(frozen=True)
class TargetGraph:
    """Quotient of the pair family C_i.  ``node_eqs[t]`` lists (coordinate,
    value) equations for a zero-sum mapped to t; ``loop_eqs[t]`` the joint
    equations over both ends of an edge mapped onto the loop at t."""

    kind: str
    nodes: tuple[str, ...]
    node_eqs: tuple[tuple[tuple[int, int], ...], ...]
    edges: frozenset
    loop_eqs: tuple[tuple[tuple[int, int], ...], ...]

    def adjacent(self, s: int, t: int) -> bool:
        return frozenset((s, t)) in self.edges

    @property
    def loops(self) -> list[int]:
        return [t for t in range(len(self.nodes)) if frozenset((t,)) in self.edges]

    @property
    def plain_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges if len(e) == 2)

    def adjacency_masks(self) -> list[int]:
        out = []
        for s in range(len(self.nodes)):
            m = 0
            for t in range(len(self.nodes)):
                if self.adjacent(s, t):
                    m |= 1 << t
            out.append(m)
        return out


X, Y = 0, 1


def _target(kind, nodes, eqs, edges, loop_eqs=None):
    idx = {name: i for i, name in enumerate(nodes)}
    E = frozenset(frozenset((idx[a], idx[b])) for a, b in edges)
    loop_eqs = loop_eqs or {}
    return TargetGraph(
        kind=kind,
        nodes=tuple(nodes),
        node_eqs=tuple(tuple(eqs[name]) for name in nodes),
        edges=E,
        loop_eqs=tuple(tuple(loop_eqs.get(name, ())) for name in nodes),
    )


@lru_cache(maxsize=None)
def target_graph(kind: str) -> TargetGraph:
    if kind == "C1":
        return _target("C1", ["(*,1)"], {"(*,1)": [(Y, 1)]}, [("(*,1)", "(*,1)")])
    if kind == "C2":
        nodes = ["(1,0)", "(0,1)", "(1,1)", "(1,>=2)", "(>=2,1)"]
        eqs = {
            "(1,0)": [(X, 1), (Y, 0)],
            "(0,1)": [(X, 0), (Y, 1)],
            "(1,1)": [(X, 1), (Y, 1)],
            "(1,>=2)": [(X, 1)],
            "(>=2,1)": [(Y, 1)],
        }
        edges = [
            ("(0,1)", "(1,0)"), ("(0,1)", "(1,1)"), ("(0,1)", "(1,>=2)"),
            ("(1,0)", "(1,1)"), ("(1,0)", "(>=2,1)"),
            ("(1,>=2)", "(1,>=2)"), ("(>=2,1)", "(>=2,1)"),
        ]
        loops = {"(1,>=2)": [(Y, 1)], "(>=2,1)": [(X, 1)]}
        return _target("C2", nodes, eqs, edges, loops)
    if kind == "C3":
        nodes = ["(1,0)", "(-1,1)", "(0,1)", "(1,-1)"]
        eqs = {
            "(1,0)": [(X, 1), (Y, 0)],
            "(-1,1)": [(X, -1), (Y, 1)],
            "(0,1)": [(X, 0), (Y, 1)],
            "(1,-1)": [(X, 1), (Y, -1)],
        }
        edges = [("(1,0)", "(1,0)"), ("(1,0)", "(-1,1)"), ("(0,1)", "(0,1)"), ("(0,1)", "(1,-1)")]
        return _target("C3", nodes, eqs, edges)
    raise ValueError(f"unknown target kind {kind!r}")


TARGET_KINDS = ("C1", "C2", "C3")


# -- equations ----------------------------------------------------------------------------------


def _equation(copies: Iterable[int], coord: int, value: int, nvars: int) -> tuple[list[int], int]:
    row = [0] * nvars
    for i in copies:
        row[2 * i + coord] += 1
    return row, value


def assignment_equations(graph: ZeroSumGraph, target: TargetGraph,
                         assignment: Sequence[tuple[int, int]]) -> list[tuple[list[int], int]]:
    """The equation system of a partial homomorphism, in assignment order."""
    nvars = 2 * len(graph.host)
    image: dict[int, int] = {}
    rows = []
    for v, t in assignment:
        rows.extend(_vertex_rows(graph, target, image, v, t, nvars))
        image[v] = t
    return rows


def _vertex_rows(graph, target, image, v, t, nvars):
    cv = graph.vertex_copies(v)
    rows = [_equation(cv, c, val, nvars) for c, val in target.node_eqs[t]]
    if target.loop_eqs[t]:
        for u in graph.adjacency[v]:
            if image.get(u) == t:
                both = cv + graph.vertex_copies(u)
                rows.extend(_equation(both, c, val, nvars) for c, val in target.loop_eqs[t])
    return rows


def refutes(g: int) -> Optional[tuple[int, int]]:
    """(a, b) if g = 2^a 3^b, i.e. no modulus coprime to 6 (other than 1)
    survives."""
    exps = smooth_part_only(g)
    return None if exps is None else (exps[0], exps[1])


def exact_refutes(rows) -> Optional[tuple[int, ...]]:
    """The solvable moduli if only finitely many and all share a factor with
    6 (or equal 1); None otherwise."""
    if not rows:
        return None
    A = [r for r, _ in rows]
    b = [v for _, v in rows]
    pat = solvability_pattern(A, b)
    if isinstance(pat, Finite) and all(n == 1 or n % 2 == 0 or n % 3 == 0 for n in pat.moduli):
        return pat.moduli
    return None


# -- certificates -------------------------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    """A leaf of the homomorphism search tree.

    kind W: the equations give witness g = 2^a 3^b.
    kind D: vertex ``blocked`` has no image compatible with its neighbours.
    kind X: exact solvability leaves only the moduli in ``moduli``.
    kind F: a full homomorphism whose equations were not refuted.
    """

    assignment: tuple[tuple[int, int], ...]
    kind: str
    g: int = 0
    exps: tuple[int, int] = (0, 0)
    blocked: int = -1
    moduli: tuple[int, ...] = ()


@dataclass
class Certificate:
    candidate: GMultiSet
    target_kind: str
    hom_nodes_visited: int
    leaves: list[Leaf]
    status: str                      # REFUTED | FAILED
    vertex_count: int = 0

    @property
    def refutations(self) -> list[Leaf]:
        return [lf for lf in self.leaves if lf.kind == "W"]

    @property
    def failing(self) -> Optional[Leaf]:
        return next((lf for lf in self.leaves if lf.kind == "F"), None)


def hom_refute(graph: ZeroSumGraph, target: TargetGraph, exact_fallback: bool = False) -> Certificate:
    """Try every homomorphism from the zero-sum graph to the target; prune a
    branch as soon as its equations admit only moduli built from 2 and 3.

    Next vertex: one with a single remaining image if any, otherwise one of
    maximal degree.
    """
    nv = len(graph.vertices)
    nvars = 2 * len(graph.host)
    T = len(target.nodes)
    adjmask = target.adjacency_masks()
    full = (1 << T) - 1
    degree = [len(a) for a in graph.adjacency]
    by_degree = sorted(range(nv), key=lambda v: (-degree[v], v))
    vcopies = [graph.vertex_copies(v) for v in range(nv)]
    node_rows = [[[_equation(vcopies[v], c, val, nvars) for c, val in target.node_eqs[t]]
                  for t in range(T)] for v in range(nv)]
    loop_eqs = target.loop_eqs

    leaves: list[Leaf] = []
    image = [-1] * nv
    dom = [full] * nv
    path: list[tuple[int, int]] = []
    nodes = 0

    def pick() -> int:
        best = -1
        for v in range(nv):
            if image[v] < 0 and dom[v] & (dom[v] - 1) == 0:
                return v
        for v in by_degree:
            if image[v] < 0:
                return v
        return best

    def rec(lat: RowLattice, assigned: int):
        nonlocal nodes
        nodes += 1
        if assigned == nv:
            rows = assignment_equations(graph, target, path)
            if exact_fallback:
                mods = exact_refutes(rows)
                if mods is not None:
                    leaves.append(Leaf(tuple(path), "X", moduli=mods))
                    return
            leaves.append(Leaf(tuple(path), "F", g=lat.witness))
            return
        v = pick()
        d = dom[v]
        for t in range(T):
            if not d >> t & 1:
                continue
            new = lat.copy()
            for coeffs, rhs in node_rows[v][t]:
                new.add(coeffs, rhs)
            if loop_eqs[t]:
                for u in graph.adjacency[v]:
                    if image[u] == t:
                        both = vcopies[v] + vcopies[u]
                        for c, val in loop_eqs[t]:
                            new.add(*_equation(both, c, val, nvars))
            path.append((v, t))
            g = new.witness
            ex = refutes(g) if g else None
            if ex is not None:
                nodes += 1
                leaves.append(Leaf(tuple(path), "W", g=g, exps=ex))
                path.pop()
                continue
            image[v] = t
            saved = []
            blocked = -1
            for w in graph.adjacency[v]:
                if image[w] < 0:
                    nd = dom[w] & adjmask[t]
                    if nd != dom[w]:
                        saved.append((w, dom[w]))
                        dom[w] = nd
                        if nd == 0:
                            blocked = w
                            break
            if blocked >= 0:
                nodes += 1
                leaves.append(Leaf(tuple(path), "D", blocked=blocked))
            else:
                rec(new, assigned + 1)
            for w, old in saved:
                dom[w] = old
            image[v] = -1
            path.pop()

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        rec(RowLattice(nvars), 0)
    finally:
        sys.setrecursionlimit(old)
    status = "FAILED" if any(lf.kind == "F" for lf in leaves) else "REFUTED"
    return Certificate(graph.host, target.kind, nodes, leaves, status, nv)


def verify_certificate(cert: Certificate) -> tuple[bool, str]:
    """Replay a certificate without searching: every leaf must re-derive its
    refutation, and the leaves must cover all homomorphisms (at each branch
    point the children are exactly the images compatible with the prefix)."""
    if cert.status != "REFUTED":
        return False, f"status is {cert.status}"
    graph = build_zero_sum_graph(cert.candidate)
    target = target_graph(cert.target_kind)
    T = len(target.nodes)
    adjmask = target.adjacency_masks()
    full = (1 << T) - 1
    nv = len(graph.vertices)
    if cert.vertex_count and cert.vertex_count != nv:
        return False, f"vertex count {cert.vertex_count} != rebuilt {nv}"

    # trie over assignment sequences
    root: dict = {}
    for k, lf in enumerate(cert.leaves):
        node = root
        for step in lf.assignment:
            node = node.setdefault(step, {})
        if "#" in node or any(key != "#" for key in node):
            return False, f"leaf {k} is not a leaf of the search tree"
        node["#"] = k

    def domain(image: dict, v: int) -> int:
        d = full
        for u in graph.adjacency[v]:
            if u in image:
                d &= adjmask[image[u]]
        return d

    def check_leaf(k: int, image: dict, lat: RowLattice) -> Optional[str]:
        lf = cert.leaves[k]
        if lf.kind == "W":
            g = lat.witness
            if g != lf.g:
                return f"leaf {k}: witness {lf.g} does not replay (got {g})"
            if refutes(g) is None or refutes(g) != tuple(lf.exps):
                return f"leaf {k}: witness {g} is not of the form 2^a 3^b"
            return None
        if lf.kind == "D":
            w = lf.blocked
            if not (0 <= w < nv) or w in image or domain(image, w) != 0:
                return f"leaf {k}: vertex {w} is not blocked"
            return None
        if lf.kind == "X":
            mods = exact_refutes(assignment_equations(graph, target, lf.assignment))
            if mods is None or tuple(mods) != tuple(lf.moduli):
                return f"leaf {k}: exact solvability check does not replay"
            return None
        return f"leaf {k}: unrefuted leaf of kind {lf.kind}"

    nvars = 2 * len(graph.host)

    def walk(node: dict, image: dict, lat: RowLattice) -> Optional[str]:
        # the lattice holds exactly the equations of the assignment ``image``
        if "#" in node:
            return check_leaf(node["#"], image, lat)
        if not node:
            return "branch without leaves"
        vs = {v for v, _ in node}
        if len(vs) != 1:
            return "branch point splits on several vertices"
        (v,) = vs
        if v in image or not 0 <= v < nv:
            return f"branch on invalid vertex {v}"
        if len(image) == nv:
            return "branch below a complete assignment"
        want = domain(image, v)
        have = 0
        for _, t in node:
            if not 0 <= t < T:
                return f"invalid target node {t}"
            have |= 1 << t
        if have != want:
            return f"branch on vertex {v} does not cover its images"
        for (_, t), child in sorted(node.items()):
            new = lat.copy()
            new.add_many(_vertex_rows(graph, target, image, v, t, nvars))
            image[v] = t
            err = walk(child, image, new)
            del image[v]
            if err:
                return err
        return None

    if nv == 0:
        return False, "graph without vertices cannot be refuted"
    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        err = walk(root, {}, RowLattice(nvars))
    finally:
        sys.setrecursionlimit(old)
    return (err is None), (err or "ok")


# -- serialization -----------------------------------------------------------------------------


def _fmt_leaf(lf: Leaf) -> str:
    if lf.kind == "W":
        return f"W {lf.g} {lf.exps[0]} {lf.exps[1]}"
    if lf.kind == "D":
        return f"D {lf.blocked}"
    if lf.kind == "X":
        return "X " + " ".join(map(str, lf.moduli))
    return f"F {lf.g}"


def dumps_certificate(cert: Certificate, label: str = "") -> str:
    """Line-oriented text.  Leaf lines store the length of the prefix shared
    with the previous leaf, then the remaining (vertex:node) steps."""
    out = [
        CERT_HEADER,
        f"label: {label}",
        f"candidate: {grid_one_line(cert.candidate)}",
        f"target: {cert.target_kind}",
        f"status: {cert.status}",
        f"vertices: {cert.vertex_count}",
        f"hom_nodes_visited: {cert.hom_nodes_visited}",
        f"leaves: {len(cert.leaves)}",
        "grid:",
    ]
    out += ["  " + ln for ln in to_grid(cert.candidate).splitlines()]
    prev: tuple = ()
    for lf in cert.leaves:
        a = lf.assignment
        k = 0
        while k < min(len(a), len(prev)) and a[k] == prev[k]:
            k += 1
        steps = " ".join(f"{v}:{t}" for v, t in a[k:])
        out.append(f"L {k} {steps} | {_fmt_leaf(lf)}")
        prev = a
    out.append("end")
    return "\n".join(out) + "\n"


def loads_certificate(text: str) -> Certificate:
    lines = text.splitlines()
    if not lines or lines[0].strip() != CERT_HEADER:
        raise ValueError("not a zsum certificate (bad header)")
    meta = {}
    leaves = []
    prev: tuple = ()
    i = 1
    while i < len(lines):
        ln = lines[i]
        i += 1
        if ln == "end":
            break
        if ln.startswith("L "):
            head, _, tail = ln[2:].partition("|")
            parts = head.split()
            k = int(parts[0])
            steps = tuple(tuple(int(x) for x in p.split(":")) for p in parts[1:])
            a = prev[:k] + steps
            fields = tail.split()
            kind = fields[0]
            if kind == "W":
                lf = Leaf(a, "W", g=int(fields[1]), exps=(int(fields[2]), int(fields[3])))
            elif kind == "D":
                lf = Leaf(a, "D", blocked=int(fields[1]))
            elif kind == "X":
                lf = Leaf(a, "X", moduli=tuple(int(x) for x in fields[1:]))
            elif kind == "F":
                lf = Leaf(a, "F", g=int(fields[1]))
            else:
                raise ValueError(f"unknown leaf kind {kind!r}")
            leaves.append(lf)
            prev = a
        elif ln.startswith("  ") or ln == "grid:":
            continue
        elif ":" in ln:
            key, _, val = ln.partition(":")
            meta[key.strip()] = val.strip()
    else:
        raise ValueError("truncated certificate (missing end marker)")
    if int(meta.get("leaves", -1)) != len(leaves):
        raise ValueError("leaf count does not match header")
    return Certificate(
        candidate=parse_grid_one_line(meta["candidate"]),
        target_kind=meta["target"],
        hom_nodes_visited=int(meta["hom_nodes_visited"]),
        leaves=leaves,
        status=meta["status"],
        vertex_count=int(meta.get("vertices", 0)),
    )


# -- the two lemmas -------------------------------------------------------------------------------


@dataclass
class JobResult:
    index: int
    kind: str
    status: str
    nodes: int
    leaves: int
    vertices: int
    seconds: float
    path: Optional[str] = None
    failing: Optional[tuple] = None


def _run_job(args) -> tuple[JobResult, Optional[str]]:
    import time
    idx, counts, kind, exact, want_text = args
    t0 = time.perf_counter()
    A = GMultiSet(Z333, counts)
    cert = hom_refute(build_zero_sum_graph(A), target_graph(kind), exact_fallback=exact)
    dt = time.perf_counter() - t0
    fl = cert.failing
    res = JobResult(idx, kind, cert.status, cert.hom_nodes_visited, len(cert.leaves),
                    cert.vertex_count, dt, failing=fl.assignment if fl else None)
    text = dumps_certificate(cert, label=f"A{idx:02d}-{kind}") if want_text else None
    return res, text


@dataclass
class NoFunc2Summary:
    candidates: int
    results: list[JobResult]

    @property
    def refuted(self) -> int:
        return sum(r.status == "REFUTED" for r in self.results)

    @property
    def ok(self) -> bool:
        return self.refuted == len(self.results) == 3 * self.candidates


def certificate_filename(idx: int, kind: str) -> str:
    return f"A{idx:02d}_{kind}.cert"


def prove_nofunc2(out_dir: Optional[str] = None, workers: int = 1, kinds=TARGET_KINDS,
                  exact_fallback: bool = False, candidates=None) -> NoFunc2Summary:
    """Refute every 13-element candidate against every target; certificates
    are written to ``out_dir`` when given."""
    cands = enumerate_candidates(13, 2) if candidates is None else candidates
    jobs = [(i, A.counts, kind, exact_fallback, out_dir is not None)
            for i, A in enumerate(cands) for kind in kinds]
    if workers > 1:
        from multiprocessing import Pool
        with Pool(workers) as pool:
            outs = pool.map(_run_job, jobs, chunksize=1)
    else:
        outs = [_run_job(j) for j in jobs]
    results = []
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
    for res, text in sorted(outs, key=lambda o: (o[0].index, o[0].kind)):
        if text is not None:
            res.path = os.path.join(out_dir, certificate_filename(res.index, res.kind))
            with open(res.path, "w") as fh:
                fh.write(text)
        log.info("A%02d %s: %s (%d nodes, %.1fs)", res.index, res.kind, res.status,
                 res.nodes, res.seconds)
        results.append(res)
    return NoFunc2Summary(len(cands), results)


@dataclass
class NoFunc1Result:
    candidate: GMultiSet
    equations: int
    zero_sums: int
    witness: Optional[int]
    exps: Optional[tuple[int, int]]

    @property
    def refuted(self) -> bool:
        return self.exps is not None


def nofunc1_system(A: GMultiSet) -> list[tuple[list[int], int]]:
    """sum_{z in Z} g_z = 1 for every zero-sum Z over the copies of A."""
    n = len(A)
    rows = []
    for mask in copy_zero_sums(A):
        rows.append(([mask >> i & 1 for i in range(n)], 1))
    return rows


def prove_nofunc1(candidates=None) -> list[NoFunc1Result]:
    cands = enumerate_candidates(10, 1) if candidates is None else candidates
    out = []
    for A in cands:
        rows = nofunc1_system(A)
        lat = RowLattice(len(A)).add_many(rows)
        g = lat.witness or None
        out.append(NoFunc1Result(A, len(rows), len(copy_zero_sums(A)), g,
                                 refutes(g) if g else None))
    return out


def load_grid_fixture(path: str) -> list[GMultiSet]:
    from .abelian import parse_grids
    with open(path) as fh:
        return parse_grids(fh.read())
