"""Exact integer linear algebra: Smith normal form with transformation
matrices, solvability of A x = b over Z_n as a function of n, and a cheap
sound certificate of unsolvability."""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence

IntMat = list[list[int]]


def as_matrix(A) -> IntMat:
    rows = [[int(x) for x in row] for row in A]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix rows have different lengths")
    return rows


def parse_matrix(text: str) -> IntMat:
    """``"2 4; 6 8"`` -> [[2, 4], [6, 8]]; newlines also separate rows."""
    rows = [r for r in re.split(r"[;\n]", text) if r.strip()]
    try:
        return as_matrix([[int(t) for t in r.replace(",", " ").split()] for r in rows])
    except ValueError as exc:
        raise ValueError(f"malformed matrix {text!r}: {exc}") from None


def identity(n: int) -> IntMat:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntMat, B: IntMat) -> IntMat:
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def det(A: IntMat) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in A]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SnfDecomposition:
    """P @ A @ inverse(Q) == D with P, Q unimodular."""

    P: IntMat
    Q: IntMat
    D: IntMat
    Q_inv: IntMat

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(A) -> SnfDecomposition:
    """Smallest-absolute-value pivoting with gcd reduction of row and column."""
    D = as_matrix(A)
    r = len(D)
    c = len(D[0]) if r else 0
    U = identity(r)
    V = identity(c)      # column operations accumulate here: D = U A V
    Vi = identity(c)     # inverse of V, i.e. Q

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):          # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):          # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(r, c)):
        nz = [(abs(D[i][j]), i, j) for i in range(t, r) for j in range(t, c) if D[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            for i in range(t + 1, r):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, c):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            rest_col = [(abs(D[i][t]), i) for i in range(t + 1, r) if D[i][t]]
            rest_row = [(abs(D[t][j]), j) for j in range(t + 1, c) if D[t][j]]
            if rest_col:
                swap_rows(t, min(rest_col)[1])
                continue
            if rest_row:
                swap_cols(t, min(rest_row)[1])
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SnfDecomposition(P=U, Q=Vi, D=D, Q_inv=V)


# -- solvability over Z_n ---------------------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@dataclass(frozen=True)
class Finite:
    """Solvable exactly for the listed moduli."""

    moduli: tuple[int, ...]

    def __contains__(self, n: int) -> bool:
        return n in self.moduli

    def record(self) -> dict:
        return {"variant": "finite", "N": list(self.moduli)}


@dataclass(frozen=True)
class Cofinite:
    """Solvable exactly for the n with gcd(n, d) in ``divisors``."""

    d: int
    divisors: frozenset[int]

    def __contains__(self, n: int) -> bool:
        return gcd(n, self.d) in self.divisors

    def record(self) -> dict:
        return {"variant": "cofinite", "d": self.d, "T": sorted(self.divisors)}


SolvabilityPattern = Finite | Cofinite


def _column(b) -> list[int]:
    if b and isinstance(b[0], (list, tuple)):
        if any(len(r) != 1 for r in b):
            raise ValueError("right-hand side must be a column vector")
        return [int(r[0]) for r in b]
    return [int(x) for x in b]


def _reduced_system(A, b):
    A = as_matrix(A)
    bb = _column(b)
    if len(bb) != len(A):
        raise ValueError("right-hand side length does not match the number of rows")
    snf = smith_normal_form(A)
    bp = [sum(p * x for p, x in zip(row, bb)) for row in snf.P]
    return snf, bp


def _solvable_given(diag: list[int], bp: list[int], n: int) -> bool:
    for i, x in enumerate(bp):
        d = diag[i] if i < len(diag) else 0
        if x % gcd(n, d) if d else x % n:
            return False
    return True


def solvable_mod(A, b, n: int) -> bool:
    """Whether A x = b has a solution in Z_n."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    snf, bp = _reduced_system(A, b)
    return _solvable_given(snf.diagonal, bp, n)


def solvability_pattern(A, b) -> Finite | Cofinite:
    """The set of n >= 1 for which A x = b is solvable over Z_n."""
    snf, bp = _reduced_system(A, b)
    diag = snf.diagonal
    m = snf.rank
    h = 0
    for x in bp[m:]:
        h = gcd(h, x)
    if h:
        return Finite(tuple(n for n in _divisors(h) if _solvable_given(diag, bp, n)))
    d = diag[m - 1] if m else 1
    T = frozenset(t for t in _divisors(d) if _solvable_given(diag, bp, t))
    return Cofinite(d, T)


def interval_solvable(pattern: Finite | Cofinite, z: int) -> bool:
    """Whether some n in [z, 2z] lies in the solvable set."""
    if z < 1:
        raise ValueError("z must be >= 1")
    return any(n in pattern for n in range(z, 2 * z + 1))


def cofinite_d_bound(A) -> int:
    """min(r, c)! * M^min(r, c), an upper bound for the modulus d."""
    A = as_matrix(A)
    k = min(len(A), len(A[0]) if A else 0)
    M = max((abs(x) for row in A for x in row), default=0)
    f = 1
    for i in range(2, k + 1):
        f *= i
    return f * M**k


# -- unsolvability witness ---------------------------------------------------------


class RowLattice:
    """Incremental echelon basis of the integer row lattice of [A | b].

    Rows are reduced with unimodular 2x2 (extended Euclid) steps, so the basis
    always generates exactly the lattice of integer consequences of the
    equations.  ``witness`` generates the consequences of the form 0 = a; a
    solution modulo n forces n | witness.
    """

    __slots__ = ("ncols", "pivots", "witness")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, list[int]] = {}
        self.witness = 0

    def copy(self) -> "RowLattice":
        new = RowLattice.__new__(RowLattice)
        new.ncols = self.ncols
        new.pivots = {k: list(v) for k, v in self.pivots.items()}
        new.witness = self.witness
        return new

    def add(self, coeffs: Sequence[int], rhs: int) -> None:
        row = list(coeffs) + [rhs]
        n = self.ncols
        g = self.witness
        if g:
            row[n] %= g
        col = 0
        while True:
            while col < n and row[col] == 0:
                col += 1
            if col == n:
                if row[n]:
                    self.witness = gcd(self.witness, row[n])
                    if self.witness != g:
                        self._reduce_rhs()
                return
            piv = self.pivots.get(col)
            if piv is None:
                self.pivots[col] = row
                return
            a, b = piv[col], row[col]
            if b % a == 0:
                q = b // a
                row = [y - q * x for x, y in zip(piv, row)]
            else:
                gg, s, t = _xgcd(a, b)
                u, v = a // gg, b // gg
                new_piv = [s * x + t * y for x, y in zip(piv, row)]
                row = [u * y - v * x for x, y in zip(piv, row)]
                self.pivots[col] = new_piv
            if g:
                row[n] %= g

    def _reduce_rhs(self):
        g = self.witness
        for r in self.pivots.values():
            r[self.ncols] %= g

    def add_many(self, rows: Iterable[tuple[Sequence[int], int]]) -> "RowLattice":
        for coeffs, rhs in rows:
            self.add(coeffs, rhs)
        return self


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) > 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def unsolvability_witness(A, b) -> Optional[int]:
    """g > 0 such that solvability modulo n implies n | g, or None.

    Only sound: None proves nothing about solvability."""
    A = as_matrix(A)
    bb = _column(b)
    if len(bb) != len(A):
        raise ValueError("right-hand side length does not match the number of rows")
    ncols = len(A[0]) if A else 0
    lat = RowLattice(ncols).add_many(zip(A, bb))
    return lat.witness or None


def smooth_part_only(g: int, primes=(2, 3)) -> Optional[tuple[int, ...]]:
    """Exponents (a, b, ...) if g = prod p^e over ``primes``, else None."""
    if g <= 0:
        return None
    exps = []
    for p in primes:
        e = 0
        while g % p == 0:
            g //= p
            e += 1
        exps.append(e)
    return tuple(exps) if g == 1 else None
