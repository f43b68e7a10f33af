"""Explicit constants over a parameter grid, with the closed-form bounds and
the bound on the least n in the infinite case."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from zsum.decidability import bound_infinite, constants_ledger


@dataclass
class Config:
    k_max: int = 5
    ell_max: int = 5
    delta_max: int = 10


def main(cfg: Config) -> None:
    print(f"{'k':>2} {'l':>2} {'d':>3} {'c_var':>8} {'c_eq':>8} {'n_min':>8} {'n_1(inf)':>10} ok")
    for k in range(2, cfg.k_max + 1):
        for ell in range(3, cfg.ell_max + 1):
            for delta in range(2, cfg.delta_max + 1):
                L = constants_ledger(k, ell, delta, k ** (ell + 1))
                ok = all(v <= b for v, b in L.generic_bounds().values())
                print(f"{k:>2} {ell:>2} {delta:>3} {L.c_var:>8} {L.c_eq:>8} {L.n_min:>8} "
                      f"{bound_infinite(k, ell, delta):>10} {ok}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--ell-max", type=int, default=5)
    p.add_argument("--delta-max", type=int, default=10)
    a = p.parse_args()
    main(Config(a.k_max, a.ell_max, a.delta_max))
