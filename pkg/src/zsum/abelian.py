"""Finite abelian groups Z_{n_1} + ... + Z_{n_k}, multisets over them, and
automorphisms of elementary abelian groups.

Elements are addressed by a mixed-radix index (first coordinate most
significant), so the natural index order is the lexicographic order on
coordinate tuples.  A multiset is a multiplicity vector over that index.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

import numpy as np

GElem = tuple[int, ...]


class UnsupportedGroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = tuple(int(n) for n in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if not fs:
            raise ValueError("a group needs at least one invariant factor")
        if any(n < 2 for n in fs):
            raise ValueError(f"invariant factors must be >= 2, got {fs}")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError(f"invariant factors must form a divisibility chain, got {fs}")

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse ``"3,3,15"`` (invariant factors) or ``"3^3"`` (elementary abelian)."""
        text = text.strip().replace(" ", "")
        m = re.fullmatch(r"(\d+)\^(\d+)", text)
        if m:
            k, ell = int(m.group(1)), int(m.group(2))
            if ell < 1:
                raise ValueError(f"bad exponent in group spec {text!r}")
            return cls((k,) * ell)
        if not re.fullmatch(r"\d+(,\d+)*", text):
            raise ValueError(f"malformed group spec {text!r}")
        return cls(tuple(int(t) for t in text.split(",")))

    @classmethod
    def elementary(cls, k: int, ell: int) -> "GroupSpec":
        return cls((k,) * ell)

    def __str__(self):
        fs = self.invariant_factors
        if len(set(fs)) == 1 and len(fs) > 1:
            return f"{fs[0]}^{len(fs)}"
        return ",".join(map(str, fs))

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @cached_property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        s = 1
        for n in reversed(self.invariant_factors):
            out.append(s)
            s *= n
        return tuple(reversed(out))

    @property
    def is_elementary(self) -> bool:
        return len(set(self.invariant_factors)) == 1

    def m_of(self) -> int:
        """The lower bound 1 + sum(n_i - 1) for the Davenport constant."""
        return 1 + sum(n - 1 for n in self.invariant_factors)

    def elem(self, coords: Sequence[int]) -> GElem:
        if len(coords) != self.rank:
            raise ValueError(f"element {tuple(coords)} has wrong rank for group {self}")
        return tuple(int(c) % n for c, n in zip(coords, self.invariant_factors))

    def index(self, coords: Sequence[int]) -> int:
        return sum(c * s for c, s in zip(self.elem(coords), self.strides))

    def coords(self, idx: int) -> GElem:
        return self._coords_table[idx]

    @cached_property
    def _coords_table(self) -> tuple[GElem, ...]:
        return tuple(itertools.product(*(range(n) for n in self.invariant_factors)))

    def elements(self) -> tuple[GElem, ...]:
        return self._coords_table

    @property
    def zero(self) -> GElem:
        return (0,) * self.rank

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[i, j]`` is the index of element i + element j."""
        C = np.array(self._coords_table, dtype=np.int64)
        mods = np.array(self.invariant_factors, dtype=np.int64)
        S = (C[:, None, :] + C[None, :, :]) % mods
        return S @ np.array(self.strides, dtype=np.int64)

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.index(tuple(-c for c in x)) for x in self._coords_table)

    def add(self, a: GElem, b: GElem) -> GElem:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.invariant_factors))

    def neg(self, a: GElem) -> GElem:
        return tuple(-x % n for x, n in zip(a, self.invariant_factors))

    def elem_order(self, a: GElem) -> int:
        o = 1
        for x, n in zip(a, self.invariant_factors):
            d = n // gcd(x, n)
            o = o * d // gcd(o, d)
        return o


@dataclass(frozen=True)
class GMultiSet:
    """Multiset over a GroupSpec, stored as a multiplicity vector."""

    group: GroupSpec
    counts: tuple[int, ...] = field(default=None)

    def __post_init__(self):
        if self.counts is None:
            object.__setattr__(self, "counts", (0,) * self.group.order)
        else:
            counts = tuple(int(c) for c in self.counts)
            if len(counts) != self.group.order:
                raise ValueError("multiplicity vector length does not match group order")
            if any(c < 0 for c in counts):
                raise ValueError("multiplicities must be non-negative")
            object.__setattr__(self, "counts", counts)

    @classmethod
    def from_elements(cls, group: GroupSpec, elems: Iterable[Sequence[int]]) -> "GMultiSet":
        counts = [0] * group.order
        for e in elems:
            counts[group.index(e)] += 1
        return cls(group, tuple(counts))

    @classmethod
    def from_mapping(cls, group: GroupSpec, mapping) -> "GMultiSet":
        counts = [0] * group.order
        for e, m in mapping.items():
            if m < 1:
                raise ValueError("multiplicities in a mapping must be >= 1")
            counts[group.index(e)] += m
        return cls(group, tuple(counts))

    def __len__(self) -> int:
        return sum(self.counts)

    cardinality = property(__len__)

    def __iter__(self) -> Iterator[GElem]:
        """Iterate over elements with repetition, in index order."""
        for i, c in enumerate(self.counts):
            x = self.group.coords(i)
            for _ in range(c):
                yield x

    def indices(self) -> list[int]:
        return [i for i, c in enumerate(self.counts) for _ in range(c)]

    def items(self) -> list[tuple[GElem, int]]:
        return [(self.group.coords(i), c) for i, c in enumerate(self.counts) if c]

    def support(self) -> list[GElem]:
        return [x for x, _ in self.items()]

    def multiplicity(self, e: Sequence[int]) -> int:
        return self.counts[self.group.index(e)]

    def max_multiplicity(self) -> int:
        return max(self.counts)

    def add(self, e: Sequence[int], times: int = 1) -> "GMultiSet":
        counts = list(self.counts)
        counts[self.group.index(e)] += times
        return GMultiSet(self.group, tuple(counts))

    def remove(self, e: Sequence[int], times: int = 1) -> "GMultiSet":
        i = self.group.index(e)
        if self.counts[i] < times:
            raise KeyError(f"{tuple(e)} occurs fewer than {times} times")
        counts = list(self.counts)
        counts[i] -= times
        return GMultiSet(self.group, tuple(counts))

    def union(self, other: "GMultiSet") -> "GMultiSet":
        _check_same_group(self, other)
        return GMultiSet(self.group, tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __le__(self, other: "GMultiSet") -> bool:
        _check_same_group(self, other)
        return all(a <= b for a, b in zip(self.counts, other.counts))

    def __str__(self):
        return format_multiset(self)


def _check_same_group(a: GMultiSet, b: GMultiSet):
    if a.group != b.group:
        raise ValueError(f"multisets live in different groups: {a.group} vs {b.group}")


# -- automorphisms -------------------------------------------------------------


def _is_prime(k: int) -> bool:
    return k >= 2 and all(k % p for p in range(2, int(k**0.5) + 1))


def _det_mod(M: Sequence[Sequence[int]], k: int) -> int:
    n = len(M)
    if n == 1:
        return M[0][0] % k
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * M[0][j] * _det_mod(minor, k)
    return total % k


@lru_cache(maxsize=None)
def gl_matrices(k: int, dim: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All dim x dim matrices over Z_k with unit determinant (any k >= 2)."""
    out = []
    for entries in itertools.product(range(k), repeat=dim * dim):
        M = tuple(tuple(entries[r * dim:(r + 1) * dim]) for r in range(dim))
        if gcd(_det_mod(M, k), k) == 1:
            out.append(M)
    return tuple(out)


@dataclass(frozen=True)
class Automorphism:
    matrix: tuple[tuple[int, ...], ...]
    modulus: int

    def __post_init__(self):
        k = self.modulus
        M = tuple(tuple(int(x) % k for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", M)
        if gcd(_det_mod(M, k), k) != 1:
            raise ValueError("matrix is not invertible over Z_k")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence[int]) -> GElem:
        k = self.modulus
        return tuple(sum(a * b for a, b in zip(row, x)) % k for row in self.matrix)

    def apply(self, ms: GMultiSet) -> GMultiSet:
        return GMultiSet.from_mapping(ms.group, {self(x): c for x, c in ms.items()})

    def permutation(self, group: GroupSpec) -> np.ndarray:
        return np.array([group.index(self(x)) for x in group.elements()], dtype=np.int64)


def _require_elementary(G: GroupSpec, prime: bool = True):
    if not G.is_elementary:
        raise UnsupportedGroupError(f"automorphisms only supported for Z_k^l, got {G}")
    if prime and not _is_prime(G.invariant_factors[0]):
        raise UnsupportedGroupError(f"automorphisms only supported for prime k, got {G}")


def automorphisms(G: GroupSpec) -> Iterator[Automorphism]:
    """Yield every element of GL_l(Z_k) for G = Z_k^l, k prime."""
    _require_elementary(G)
    k = G.invariant_factors[0]
    for M in gl_matrices(k, G.rank):
        yield Automorphism(M, k)


@lru_cache(maxsize=None)
def automorphism_table(G: GroupSpec, prime: bool = True) -> np.ndarray:
    """Array of shape (|Aut|, |G|); row a maps element index i to sigma_a(i).

    ``prime=False`` admits Z_n^l for composite n (units-determinant matrices).
    """
    _require_elementary(G, prime=prime)
    k, dim = G.invariant_factors[0], G.rank
    mats = np.array(gl_matrices(k, dim), dtype=np.int64)          # (A, dim, dim)
    C = np.array(G.elements(), dtype=np.int64)                     # (N, dim)
    img = np.einsum("aij,nj->ani", mats, C) % k                    # (A, N, dim)
    return img @ np.array(G.strides, dtype=np.int64)


def lexmin_row(rows: np.ndarray) -> int:
    """Index of the lexicographically smallest row."""
    cand = np.arange(rows.shape[0])
    for col in range(rows.shape[1]):
        vals = rows[cand, col]
        cand = cand[vals == vals.min()]
        if len(cand) == 1:
            break
    return int(cand[0])


def canonical_counts(counts: Sequence[int], table: np.ndarray) -> tuple[int, ...]:
    """Lexicographically minimal multiplicity vector over the orbit.

    Taking ``v[perm]`` for every perm of a group ranges over all images, since
    the automorphism group is closed under inversion.
    """
    v = np.asarray(counts, dtype=np.int64)
    imgs = v[table]
    return tuple(int(x) for x in imgs[lexmin_row(imgs)])


def canonicalize(ms: GMultiSet) -> GMultiSet:
    return GMultiSet(ms.group, canonical_counts(ms.counts, automorphism_table(ms.group)))


def equivalent(a: GMultiSet, b: GMultiSet) -> bool:
    _check_same_group(a, b)
    return canonicalize(a) == canonicalize(b)


# -- text formats ---------------------------------------------------------------


def format_multiset(ms: GMultiSet) -> str:
    """``"(1,0)^3 (0,1)^3"`` style; multiplicity one carries no exponent."""
    parts = []
    for x, c in ms.items():
        s = "(" + ",".join(map(str, x)) + ")"
        parts.append(s if c == 1 else f"{s}^{c}")
    return " ".join(parts) if parts else "{}"


_ELEM_RE = re.compile(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)(?:\^(\d+))?")


def parse_multiset(group: GroupSpec, text: str) -> GMultiSet:
    text = text.strip()
    if text in ("", "{}"):
        return GMultiSet(group)
    counts = [0] * group.order
    pos = 0
    for m in _ELEM_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"malformed multiset near {text[pos:m.start()]!r}")
        coords = [int(t) for t in m.group(1).split(",")]
        counts[group.index(coords)] += int(m.group(2) or 1)
        pos = m.end()
    if text[pos:].strip() or pos == 0:
        raise ValueError(f"malformed multiset {text!r}")
    return GMultiSet(group, tuple(counts))


Z333 = GroupSpec((3, 3, 3))


def to_grid(ms: GMultiSet) -> str:
    """Three 3x3 planes side by side, one plane per value of the third
    coordinate; within a plane the column is x and the bottom row is y = 0."""
    if ms.group != Z333:
        raise UnsupportedGroupError("grid format is defined for Z_3^3 only")
    lines = []
    for y in (2, 1, 0):
        blocks = []
        for z in range(3):
            cells = []
            for x in range(3):
                c = ms.counts[Z333.index((x, y, z))]
                if c > 9:
                    raise ValueError("grid cells hold a single digit")
                cells.append(str(c) if c else ".")
            blocks.append("".join(cells))
        lines.append(" ".join(blocks))
    return "\n".join(lines)


def parse_grid(text: str) -> GMultiSet:
    rows = [ln.split() for ln in text.strip().splitlines()]
    if len(rows) != 3 or any(len(r) != 3 or any(len(b) != 3 for b in r) for r in rows):
        raise ValueError(f"malformed grid:\n{text}")
    counts = [0] * 27
    for r, y in zip(rows, (2, 1, 0)):
        for z, block in enumerate(r):
            for x, ch in enumerate(block):
                if ch == ".":
                    continue
                if not ch.isdigit() or ch == "0":
                    raise ValueError(f"bad grid cell {ch!r}")
                counts[Z333.index((x, y, z))] = int(ch)
    return GMultiSet(Z333, tuple(counts))


def parse_grids(text: str) -> list[GMultiSet]:
    """Blank-line separated grids; lines starting with '#' are ignored."""
    body = "\n".join(ln for ln in text.splitlines() if not ln.lstrip().startswith("#"))
    return [parse_grid(chunk) for chunk in re.split(r"\n\s*\n", body.strip()) if chunk.strip()]


def grid_one_line(ms: GMultiSet) -> str:
    return "/".join(to_grid(ms).splitlines())


def parse_grid_one_line(text: str) -> GMultiSet:
    return parse_grid("\n".join(text.strip().split("/")))
