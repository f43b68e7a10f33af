"""Command line interface: ``zsum <subcommand> ...``.

Exit codes: 0 success (or everything refuted), 1 negative result (FAILED
certificate, property false, invalid certificate), 2 usage error, 3 malformed
input, 4 search budget exhausted, 5 unsupported group.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import decidability, intlinalg, proof335, rank2, zerosum
from .abelian import GroupSpec, UnsupportedGroupError, format_multiset, parse_multiset, to_grid

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET, EXIT_GROUP = 0, 1, 2, 3, 4, 5
SCHEMA = "# zsum-record v1"

log = logging.getLogger("zsum")


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    workers: int = 1
    budget: int = zerosum.DEFAULT_BUDGET
    out: Optional[str] = None
    format: str = "text"
    lines: list = field(default_factory=list)
    records: list = field(default_factory=list)

    def emit(self, text: str = "", **record):
        self.lines.append(text)
        if record:
            self.records.append(record)

    def render(self) -> str:
        if self.format == "structured":
            body = [json.dumps(r, sort_keys=True) for r in self.records]
            return "\n".join([SCHEMA] + body) + "\n"
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def _group(text: str) -> GroupSpec:
    return GroupSpec.parse(text)


def _witness_lines(ms) -> list[str]:
    lines = [f"witness: {format_multiset(ms)}"]
    if ms.group.invariant_factors == (3, 3, 3):
        lines += ["  " + ln for ln in to_grid(ms).splitlines()]
    return lines


# -- subcommand handlers ------------------------------------------------------------------------


def cmd_davenport(cfg: RunConfig) -> int:
    G = _group(cfg.args.group)
    res = zerosum.davenport_search(G, budget=cfg.budget, symmetry=cfg.args.symmetry)
    cfg.emit(f"D({G}) = {res.value}", kind="davenport", group=str(G), value=res.value,
             witness=format_multiset(res.witness))
    for ln in _witness_lines(res.witness):
        cfg.emit(ln)
    return EXIT_OK


def cmd_dm(cfg: RunConfig) -> int:
    G = _group(cfg.args.group)
    for m in cfg.args.m:
        res = zerosum.davenport_m_search(G, m, budget=cfg.budget, symmetry=cfg.args.symmetry)
        cfg.emit(f"D_{m}({G}) = {res.value}", kind="dm", group=str(G), m=m, value=res.value,
                 witness=format_multiset(res.witness))
    return EXIT_OK


def cmd_dk(cfg: RunConfig) -> int:
    G = _group(cfg.args.group)
    res = zerosum.davenport_short_search(G, cfg.args.k, budget=cfg.budget,
                                         symmetry=cfg.args.symmetry)
    cfg.emit(f"D^{cfg.args.k}({G}) = {res.value}", kind="dk", group=str(G), k=cfg.args.k,
             value=res.value, witness=format_multiset(res.witness))
    for ln in _witness_lines(res.witness):
        cfg.emit(ln)
    return EXIT_OK


def _fmt_mat(M) -> str:
    return "; ".join(" ".join(str(x) for x in row) for row in M)


def cmd_snf(cfg: RunConfig) -> int:
    A = intlinalg.parse_matrix(cfg.args.matrix)
    s = intlinalg.smith_normal_form(A)
    cfg.emit(f"diagonal: {' '.join(map(str, s.diagonal))}", kind="snf", diagonal=s.diagonal,
             P=s.P, Q=s.Q, D=s.D)
    cfg.emit(f"P: {_fmt_mat(s.P)}")
    cfg.emit(f"Q: {_fmt_mat(s.Q)}")
    cfg.emit(f"D: {_fmt_mat(s.D)}")
    return EXIT_OK


def cmd_solve_mod(cfg: RunConfig) -> int:
    A = intlinalg.parse_matrix(cfg.args.matrix)
    b = [int(t) for t in cfg.args.rhs.replace(",", " ").replace(";", " ").split()]
    if len(b) != len(A):
        raise ValueError("right-hand side length does not match the number of rows")
    g = intlinalg.unsolvability_witness(A, b)
    if cfg.args.n is not None:
        ok = intlinalg.solvable_mod(A, b, cfg.args.n)
        cfg.emit("solvable" if ok else "unsolvable", kind="solve-mod", n=cfg.args.n, solvable=ok,
                 witness=g)
        return EXIT_OK
    pat = intlinalg.solvability_pattern(A, b)
    rec = pat.record()
    if rec["variant"] == "finite":
        cfg.emit(f"solvable exactly for n in {{{', '.join(map(str, rec['N']))}}}")
    else:
        cfg.emit(f"solvable exactly for n with gcd(n, {rec['d']}) in "
                 f"{{{', '.join(map(str, rec['T']))}}}")
    cfg.emit(f"witness: {g if g else 'none'}", kind="solve-mod", pattern=rec, witness=g)
    return EXIT_OK


def cmd_property_b(cfg: RunConfig) -> int:
    n = cfg.args.n
    ok = rank2.property_b(n, budget=cfg.budget)
    cfg.emit(f"property B for n={n}: {'true' if ok else 'false'}", kind="property-b", n=n, holds=ok)
    if cfg.args.cyclic:
        for name, fn in (("ben_check", rank2.ben_check), ("corcd_check", rank2.corcd_check)):
            v = fn(n, budget=cfg.budget)
            cfg.emit(f"{name}({n}): {'true' if v else 'false'}", kind=name, n=n, holds=v)
            ok = ok and v
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_completions(cfg: RunConfig) -> int:
    n = cfg.args.n
    if cfg.args.multiset:
        B = parse_multiset(rank2.Zn2(n), cfg.args.multiset)
        rep = rank2.completion_report(B)
        pairs = sorted(rep.pairs)
        cfg.emit(f"classification: {rep.classification}", kind="completion",
                 base=format_multiset(B), classification=rep.classification,
                 exception=rep.exception, singles=sorted(rep.singles), pairs=pairs,
                 homomorphism=rep.homomorphism)
        cfg.emit(f"exception: {rep.exception}")
        cfg.emit(f"singles: {sorted(rep.singles)}")
        cfg.emit(f"pairs: {pairs}")
        cfg.emit(f"F: {rep.homomorphism}")
        return EXIT_OK
    sizes = cfg.args.size or [2 * n - 3, 2 * n - 4]
    bad = 0
    for size in sizes:
        s = rank2.verify_completions(n, size, budget=cfg.budget)
        labels = ", ".join(f"{k} {v}" for k, v in sorted(s.by_label.items()))
        cfg.emit(f"n={n} size={size}: {s.orbits} orbits; {labels}; failures {len(s.failures)}",
                 kind="completions", n=n, size=size, orbits=s.orbits, by_label=s.by_label,
                 failures=len(s.failures))
        bad += len(s.failures)
    return EXIT_OK if not bad else EXIT_NEGATIVE


def cmd_lemma_length3(cfg: RunConfig) -> int:
    r = proof335.verify_length3()
    cfg.emit(f"9-element survivors: {r.survivors9}", kind="lemma-length3", **r.__dict__, ok=r.ok)
    cfg.emit(f"8-element orbits: {r.orbits8} (raw sets {r.raw8}, orbit size {r.orbit8_size})")
    cfg.emit(f"explicit set in orbit: {r.explicit_in_orbit}")
    cfg.emit(f"doubled set disjoint zero-sums: {r.doubled_disjoint}")
    cfg.emit(f"17 elements force a short zero-sum: {r.claim17}")
    return EXIT_OK if r.ok else EXIT_NEGATIVE


def cmd_enumerate(cfg: RunConfig) -> int:
    a = cfg.args
    cands = proof335.enumerate_candidates(a.size, a.max_disjoint)
    cfg.emit(f"{len(cands)} orbit representatives (size {a.size}, at most {a.max_disjoint} "
             f"disjoint zero-sums)", kind="enumerate", size=a.size, max_disjoint=a.max_disjoint,
             count=len(cands))
    listing = []
    for i, A in enumerate(cands):
        grid = to_grid(A)
        listing.append(f"# A{i:02d}\n{grid}")
        cfg.emit(f"A{i:02d}", kind="candidate", index=i, grid=proof335.grid_one_line(A))
        for ln in grid.splitlines():
            cfg.emit("  " + ln)
    if cfg.out:
        import os
        os.makedirs(cfg.out, exist_ok=True)
        with open(os.path.join(cfg.out, f"candidates_{a.size}_{a.max_disjoint}.txt"), "w") as fh:
            fh.write("\n\n".join(listing) + "\n")
    return EXIT_OK


def cmd_prove_nofunc2(cfg: RunConfig) -> int:
    s = proof335.prove_nofunc2(cfg.out, workers=cfg.workers, exact_fallback=cfg.args.exact)
    for r in s.results:
        cfg.emit(f"A{r.index:02d} {r.kind}: {r.status} (vertices {r.vertices}, "
                 f"nodes {r.nodes}, leaves {r.leaves})", kind="job", index=r.index,
                 target=r.kind, status=r.status, vertices=r.vertices, nodes=r.nodes,
                 leaves=r.leaves)
    cfg.emit(f"refuted {s.refuted}/{len(s.results)}", kind="summary", refuted=s.refuted,
             jobs=len(s.results), candidates=s.candidates)
    return EXIT_OK if s.refuted == len(s.results) else EXIT_NEGATIVE


def cmd_prove_nofunc1(cfg: RunConfig) -> int:
    res = proof335.prove_nofunc1()
    for i, r in enumerate(res):
        exps = f"2^{r.exps[0]}*3^{r.exps[1]}" if r.exps else "-"
        cfg.emit(f"A{i:02d}: {'REFUTED' if r.refuted else 'FAILED'} (zero-sums {r.zero_sums}, "
                 f"g = {r.witness} = {exps})", kind="nofunc1", index=i, refuted=r.refuted,
                 witness=r.witness, zero_sums=r.zero_sums,
                 grid=proof335.grid_one_line(r.candidate))
    n_ok = sum(r.refuted for r in res)
    cfg.emit(f"refuted {n_ok}/{len(res)}", kind="summary", refuted=n_ok, candidates=len(res))
    return EXIT_OK if n_ok == len(res) else EXIT_NEGATIVE


def cmd_verify_cert(cfg: RunConfig) -> int:
    bad = 0
    for path in cfg.args.files:
        with open(path) as fh:
            cert = proof335.loads_certificate(fh.read())
        ok, msg = proof335.verify_certificate(cert)
        bad += not ok
        cfg.emit(f"{path}: {'VALID' if ok else 'INVALID'} ({msg})", kind="verify", path=path,
                 valid=ok, message=msg)
    return EXIT_OK if not bad else EXIT_NEGATIVE


def cmd_constants(cfg: RunConfig) -> int:
    a = cfg.args
    if a.c == "bound":
        c = a.k ** (a.ell + 1)
    elif a.c == "exact":
        c = zerosum.c_const(a.k, a.ell, budget=cfg.budget)
    else:
        c = int(a.c)
    L = decidability.constants_ledger(a.k, a.ell, a.delta, c, nn_zero=a.nn_zero)
    rec = L.record()
    rec["eq_count_bound"] = f"2^{L.c_var}"
    for ln in L.table().splitlines():
        cfg.emit(ln)
    extra = {}
    if a.k >= 2 and a.ell >= 3 and a.delta >= 2:
        inf = decidability.bound_infinite(a.k, a.ell, a.delta)
        fin = decidability.bound_finite_symbolic(a.k, a.ell, a.delta)
        cfg.emit(f"n_1 bound (infinite case)  {inf}")
        cfg.emit(f"n_1 bound (finite case)    {fin.render()}")
        extra = {"bound_infinite": inf, "bound_finite": fin.record()}
    cfg.records.append(dict(kind="constants", **rec, **extra))
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    common.add_argument("--budget", type=int, default=zerosum.DEFAULT_BUDGET,
                        help="search node budget")
    common.add_argument("--out", default=None, help="output directory for files")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="zsum", description="Zero-sum constants and the computer "
                                "verification for Z_3 + Z_3n + Z_3n.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help, epilog=None):
        sp = sub.add_parser(name, parents=[common], help=help, description=help, epilog=epilog,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.set_defaults(func=fn)
        return sp

    sp = add("davenport", cmd_davenport, "Davenport constant of a group",
             "example: zsum davenport 3,3   ->   D(Z_3^2) = 5")
    sp.add_argument("group", help='invariant factors "3,3,15" or "3^3"')
    sp.add_argument("--symmetry", action="store_true", help="search up to automorphism")

    sp = add("dm", cmd_dm, "D_m: least length forcing m disjoint zero-sums",
             "example: zsum dm 3,3 1 2 3 4   ->   5 8 11 14")
    sp.add_argument("group")
    sp.add_argument("m", type=int, nargs="+")
    sp.add_argument("--symmetry", action="store_true")

    sp = add("dk", cmd_dk, "D^k: least length forcing a zero-sum of length <= k",
             "example: zsum dk 3^3 3   ->   D^3(Z_3^3) = 17")
    sp.add_argument("group")
    sp.add_argument("k", type=int)
    sp.add_argument("--symmetry", action="store_true")

    sp = add("snf", cmd_snf, "Smith normal form with transformation matrices",
             'example: zsum snf "2 0; 0 4"   ->   diagonal: 2 4')
    sp.add_argument("matrix", help='rows separated by ";" e.g. "2 4; 6 8"')

    sp = add("solve-mod", cmd_solve_mod, "solvability of A x = b modulo n",
             'example: zsum solve-mod "2" "1" --n 4   ->   unsolvable')
    sp.add_argument("matrix")
    sp.add_argument("rhs")
    sp.add_argument("--n", type=int, default=None, help="modulus; omit for the full pattern")

    sp = add("property-b", cmd_property_b, "Property B for Z_n^2 (exhaustive)",
             "example: zsum property-b 5   ->   property B for n=5: true")
    sp.add_argument("n", type=int)
    sp.add_argument("--cyclic", action="store_true", help="also run the cyclic-group checks")

    sp = add("completions", cmd_completions, "classify completions of zero-sum free multisets",
             'example: zsum completions 5 --multiset "(1,0)^3 (0,1)^3"   ->   C2 (exception)')
    sp.add_argument("n", type=int)
    sp.add_argument("--size", type=int, action="append", help="sizes (default 2n-3 and 2n-4)")
    sp.add_argument("--multiset", default=None, help="report on a single multiset")

    add("lemma-length3", cmd_lemma_length3, "short zero-sums in Z_3^3 (8- and 9-element sets)",
        "example: zsum lemma-length3   ->   9-element survivors: 0")

    sp = add("enumerate-a13", cmd_enumerate, "candidate multisets over Z_3^3 up to automorphism",
             "example: zsum enumerate-a13   ->   15 orbit representatives")
    sp.add_argument("--size", type=int, default=13)
    sp.add_argument("--max-disjoint", type=int, default=2)

    sp = add("prove-nofunc2", cmd_prove_nofunc2, "refute all multi-functions for the 13-element "
             "candidates; writes certificates with --out",
             "example: zsum prove-nofunc2 --out certs/   ->   refuted 45/45")
    sp.add_argument("--exact", action="store_true",
                    help="fall back to exact solvability at complete assignments")

    add("prove-nofunc1", cmd_prove_nofunc1, "refute all functions for the 10-element candidates",
        "example: zsum prove-nofunc1   ->   refuted 43/43")

    sp = add("verify-cert", cmd_verify_cert, "replay certificate files",
             "example: zsum verify-cert certs/*.cert")
    sp.add_argument("files", nargs="+")

    sp = add("constants", cmd_constants, "explicit constants of the decision procedure",
             "example: zsum constants 4 3 6 --c bound")
    sp.add_argument("k", type=int)
    sp.add_argument("ell", type=int)
    sp.add_argument("delta", type=int)
    sp.add_argument("--c", default="bound", help='"bound" (k^(l+1)), "exact" or an integer')
    sp.add_argument("--nn-zero", action="store_true", help="take c_nn = 0")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    if args.workers < 1 or args.budget < 1:
        parser.error("--workers and --budget must be positive")
    cfg = RunConfig(args.command, args, args.workers, args.budget, args.out, args.format)
    try:
        code = args.func(cfg)
    except zerosum.BudgetExceeded as exc:
        print(f"error: search budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UnsupportedGroupError as exc:
        print(f"error: unsupported group: {exc}", file=sys.stderr)
        return EXIT_GROUP
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(cfg.render())
    return code


if __name__ == "__main__":
    sys.exit(main())
