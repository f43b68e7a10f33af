"""Table of D, D_m and D^k for small groups, with search node counts."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from zsum.abelian import GroupSpec
from zsum.zerosum import davenport_m_search, davenport_search, davenport_short_search


@dataclass
class Config:
    groups: list = field(default_factory=lambda: ["5", "2,2", "2,4", "3,3", "2^3", "3^3"])
    max_m: int = 3
    symmetry: bool = False


def main(cfg: Config) -> None:
    print(f"{'group':<8} {'const':<8} {'value':>5} {'nodes':>10} {'sec':>7}")
    for text in cfg.groups:
        G = GroupSpec.parse(text)
        rows = [("D", lambda: davenport_search(G, symmetry=cfg.symmetry))]
        if G.order <= 9:
            rows += [(f"D_{m}", lambda m=m: davenport_m_search(G, m)) for m in range(2, cfg.max_m + 1)]
        if G.is_elementary:
            k = G.invariant_factors[0]
            rows.append((f"D^{k}", lambda k=k: davenport_short_search(G, k, symmetry=cfg.symmetry)))
        for name, fn in rows:
            t0 = time.perf_counter()
            res = fn()
            print(f"{str(G):<8} {name:<8} {res.value:>5} {res.nodes:>10} "
                  f"{time.perf_counter() - t0:>7.2f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("groups", nargs="*")
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--symmetry", action="store_true")
    a = p.parse_args()
    cfg = Config(max_m=a.max_m, symmetry=a.symmetry)
    if a.groups:
        cfg.groups = a.groups
    main(cfg)
