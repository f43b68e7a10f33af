"""Acceptance criteria, one test each.  Every test prints a single
``PASS``/``FAIL`` line (also under captured output) and then asserts.

Run standalone with ``python tests/test_acceptance.py`` for just the lines.
"""
from __future__ import annotations

import glob
import os
import random
import sys
import time

sys.path.insert(0, os.path.dirname(__file__))

from oracles import brute_solvable  # noqa: E402
from zsum import proof335  # noqa: E402
from zsum.abelian import GroupSpec, Z333, automorphism_table, canonical_counts  # noqa: E402
from zsum.cli import main as cli_main  # noqa: E402
from zsum.decidability import constants_ledger  # noqa: E402
from zsum.intlinalg import (  # noqa: E402
    det, identity, matmul, smith_normal_form, solvability_pattern,
)
from zsum.rank2 import ben_check, corcd_check, property_b, verify_completions  # noqa: E402
from zsum.zerosum import davenport, davenport_m, davenport_short  # noqa: E402

FIXTURE = os.path.join(os.path.dirname(__file__), "fixtures", "a13_grids.txt")

def _emit(capsys, line: str) -> None:
    if capsys is None:
        print(line, flush=True)
    else:
        with capsys.disabled():
            print("\n" + line, flush=True)

def report(capsys, number: int, ok: bool, detail: str) -> None:
    _emit(capsys, f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    assert ok, detail

def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0

# 1 -----------------------------------------------------------------------------------------------
def test_criterion_01_small_constants(capsys):
    G = GroupSpec.parse("3,3")
    d, t = timed(davenport, G)
    ok = d == 5 and t <= 10
    parts = [f"D(Z_3^2)={d} ({t:.1f}s)"]
    for m in range(1, 5):
        v, tm = timed(davenport_m, G, m)
        ok &= v == 3 * m + 2 and tm <= 10
        parts.append(f"D_{m}={v} ({tm:.1f}s)")
    report(capsys, 1, ok, ", ".join(parts))

# 2 -----------------------------------------------------------------------------------------------
def test_criterion_02_rank3_constants(capsys):
    G = GroupSpec.parse("3^3")
    (d, t1) = timed(davenport, G)
    (dk, t2) = timed(davenport_short, G, 3)
    ok = d == 7 and dk == 17 and t1 + t2 <= 600
    report(capsys, 2, ok, f"D(Z_3^3)={d} ({t1:.1f}s), D^3(Z_3^3)={dk} ({t2:.1f}s)")

# 3 -----------------------------------------------------------------------------------------------
def test_criterion_03_length3(capsys):
    r, t = timed(proof335.verify_length3)
    ok = (r.survivors9 == 0 and r.orbits8 == 1 and r.explicit_in_orbit and r.explicit_free
          and t <= 300)
    report(capsys, 3, ok, f"9-element survivors {r.survivors9}, 8-element orbits {r.orbits8}, "
           f"explicit set in orbit {r.explicit_in_orbit} ({t:.1f}s)")

# 4 -----------------------------------------------------------------------------------------------
def test_criterion_04_thirteen_element_candidates(capsys):
    cands, t = timed(proof335.enumerate_candidates, 13, 2)
    table = automorphism_table(Z333)
    printed = {canonical_counts(a.counts, table) for a in proof335.load_grid_fixture(FIXTURE)}
    ours = {a.counts for a in cands}
    ok = len(cands) == 15 and ours == printed and t <= 1800
    report(capsys, 4, ok, f"{len(cands)} representatives, canonical forms equal to the 15 "
           f"printed grids: {ours == printed} ({t:.1f}s)")

# 5 -----------------------------------------------------------------------------------------------
def test_criterion_05_nofunc2_certificates(tmp_path, capsys):
    import tempfile
    out = str(tmp_path) if tmp_path is not None else tempfile.mkdtemp()
    summary, t = timed(proof335.prove_nofunc2, out, 1)
    files = sorted(glob.glob(os.path.join(out, "*.cert")))
    t0 = time.perf_counter()
    code = cli_main(["verify-cert", *files]) if files else 1
    tv = time.perf_counter() - t0
    ok = summary.refuted == 45 and len(summary.results) == 45 and t <= 7200 and code == 0 \
        and len(files) == 45
    report(capsys, 5, ok, f"{summary.refuted}/{len(summary.results)} REFUTED in {t:.1f}s at 1 "
           f"worker; verify-cert on {len(files)} files exit {code} ({tv:.1f}s)")

# 6 -----------------------------------------------------------------------------------------------
def test_criterion_06_nofunc1(capsys):
    res, t = timed(proof335.prove_nofunc1)
    ok = bool(res) and all(r.refuted for r in res) and t <= 1800
    report(capsys, 6, ok, f"{sum(r.refuted for r in res)}/{len(res)} ten-element candidates "
           f"refuted ({t:.1f}s)")

# 7 -----------------------------------------------------------------------------------------------
def test_criterion_07_random_systems(capsys):
    rng = random.Random(20240607)
    mismatches = snf_bad = 0
    t0 = time.perf_counter()
    for _ in range(1000):
        r, c = rng.randint(1, 4), rng.randint(1, 5)
        A = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        b = [rng.randint(-9, 9) for _ in range(r)]
        s = smith_normal_form(A)
        if (matmul(matmul(s.P, A), s.Q_inv) != s.D or matmul(s.Q, s.Q_inv) != identity(c)
                or abs(det(s.P)) != 1 or abs(det(s.Q)) != 1):
            snf_bad += 1
        pat = solvability_pattern(A, b)
        mismatches += sum((n in pat) != brute_solvable(A, b, n) for n in range(1, 61))
    t = time.perf_counter() - t0
    report(capsys, 7, mismatches == 0 and snf_bad == 0,
           f"1000 systems: {mismatches} membership mismatches for n <= 60, "
           f"{snf_bad} inexact SNF reconstructions ({t:.1f}s)")

# 8 -----------------------------------------------------------------------------------------------
def test_criterion_08_property_b_and_cyclic(capsys):
    b5, t5 = timed(property_b, 5)
    b7, t7 = timed(property_b, 7)
    t0 = time.perf_counter()
    cyc = all(ben_check(n) and corcd_check(n) for n in range(2, 13))
    tc = time.perf_counter() - t0
    ok = b5 and b7 and cyc and max(t5, t7, tc) <= 600
    report(capsys, 8, ok, f"property B n=5 {b5} ({t5:.1f}s), n=7 {b7} ({t7:.1f}s); cyclic "
           f"checks n<=12 {cyc} ({tc:.1f}s)")

# 9 -----------------------------------------------------------------------------------------------
def test_criterion_09_completions(capsys):
    t0 = time.perf_counter()
    parts, ok = [], True
    for n in (5, 7):
        for size in (2 * n - 3, 2 * n - 4):
            s = verify_completions(n, size)
            ok &= not s.failures and "NONE" not in s.by_label
            parts.append(f"n={n},|B|={size}: {s.orbits} orbits, {len(s.failures)} failures")
    t = time.perf_counter() - t0
    report(capsys, 9, ok and t <= 1800, "; ".join(parts) + f" ({t:.1f}s)")

# 10 ----------------------------------------------------------------------------------------------
def test_criterion_10_constants_ledger(capsys):
    bad = []
    for k in range(2, 6):
        for ell in range(3, 6):
            for delta in range(2, 11):
                L = constants_ledger(k, ell, delta, k ** (ell + 1))
                bad += [(k, ell, delta, name) for name, (v, bnd) in L.generic_bounds().items()
                        if not 0 <= v <= bnd]
    report(capsys, 10, not bad, f"{4 * 3 * 9} parameter triples, {len(bad)} violated bounds")

if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(None, None) if "tmp_path" in fn.__code__.co_varnames[:1] else fn(None)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
