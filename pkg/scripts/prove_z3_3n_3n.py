"""Full computer verification for Z_3 + Z_3n + Z_3n: short zero-sums in Z_3^3,
candidate enumeration, both refutations, certificates on disk and their
independent replay.  Prints a timing table."""
from __future__ import annotations

import argparse
import glob
import os
import time
from dataclasses import dataclass

from zsum import proof335


@dataclass
class Config:
    out: str = "certs"
    workers: int = 1
    exact: bool = False


def main(cfg: Config) -> int:
    t0 = time.perf_counter()
    r = proof335.verify_length3()
    print(f"[length3] survivors9={r.survivors9} orbits8={r.orbits8} raw8={r.raw8} ok={r.ok} "
          f"({time.perf_counter() - t0:.1f}s)")

    t0 = time.perf_counter()
    res = proof335.prove_nofunc1()
    print(f"[nofunc1] {sum(x.refuted for x in res)}/{len(res)} refuted "
          f"({time.perf_counter() - t0:.1f}s)")

    t0 = time.perf_counter()
    s = proof335.prove_nofunc2(cfg.out, workers=cfg.workers, exact_fallback=cfg.exact)
    print(f"[nofunc2] {s.refuted}/{len(s.results)} refuted ({time.perf_counter() - t0:.1f}s)")
    print(f"{'job':<8} {'status':<8} {'V':>4} {'nodes':>8} {'leaves':>7} {'sec':>6}")
    for j in s.results:
        print(f"A{j.index:02d}-{j.kind:<4} {j.status:<8} {j.vertices:>4} {j.nodes:>8} "
              f"{j.leaves:>7} {j.seconds:>6.2f}")

    t0 = time.perf_counter()
    bad = 0
    for path in sorted(glob.glob(os.path.join(cfg.out, "*.cert"))):
        with open(path) as fh:
            ok, msg = proof335.verify_certificate(proof335.loads_certificate(fh.read()))
        if not ok:
            bad += 1
            print(f"INVALID {path}: {msg}")
    print(f"[verify] {bad} invalid certificates ({time.perf_counter() - t0:.1f}s)")
    return 0 if (r.ok and s.ok and not bad and all(x.refuted for x in res)) else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", default=Config.out)
    p.add_argument("--workers", type=int, default=Config.workers)
    p.add_argument("--exact", action="store_true")
    a = p.parse_args()
    raise SystemExit(main(Config(a.out, a.workers, a.exact)))
