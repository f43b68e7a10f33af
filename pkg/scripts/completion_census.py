"""Census of completion classes for zero-sum free multisets of size 2n-3 and
2n-4 in Z_n^2, plus Property B and the cyclic-group checks."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from zsum.rank2 import ben_check, corcd_check, property_b, verify_completions


@dataclass
class Config:
    primes: list = field(default_factory=lambda: [5, 7])
    cyclic_max: int = 12


def main(cfg: Config) -> None:
    for n in cfg.primes:
        t0 = time.perf_counter()
        print(f"n={n}: property B {property_b(n)} ({time.perf_counter() - t0:.1f}s)")
        for size in (2 * n - 3, 2 * n - 4):
            t0 = time.perf_counter()
            s = verify_completions(n, size)
            labels = ", ".join(f"{k}: {v}" for k, v in sorted(s.by_label.items()))
            print(f"  |B|={size}: {s.orbits} orbits [{labels}] failures={len(s.failures)} "
                  f"({time.perf_counter() - t0:.1f}s)")
    for n in range(2, cfg.cyclic_max + 1):
        print(f"Z_{n}: ben {ben_check(n)}  index-sum {corcd_check(n)}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--primes", type=int, nargs="+", default=[5, 7])
    p.add_argument("--cyclic-max", type=int, default=12)
    a = p.parse_args()
    main(Config(a.primes, a.cyclic_max))
