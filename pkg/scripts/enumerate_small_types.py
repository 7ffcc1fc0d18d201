"""Count isomorphism types of finite d-maximal sets with small support."""

import argparse
import time
from dataclasses import dataclass
from typing import Optional

from dmax.canon import enumerate_types


@dataclass
class EnumerationConfig:
    n: int = 2
    d_max: int = 3
    r_max: int = 4
    size_max: Optional[int] = None


def main(cfg: EnumerationConfig):
    for d in range(0, cfg.d_max + 1):
        start = time.perf_counter()
        types = enumerate_types(cfg.n, d, cfg.r_max, cfg.size_max)
        elapsed = time.perf_counter() - start
        sizes = sorted(len(T) for T in types)
        print(f"n={cfg.n} d={d} r_max={cfg.r_max}: {len(types)} types, sizes {sizes} ({elapsed:.2f}s)")
        for T in types:
            print("   ", " | ".join("".join(map(str, a)) for a in T.members))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--d-max", type=int, default=3)
    ap.add_argument("--r-max", type=int, default=4)
    ap.add_argument("--size-max", type=int)
    main(EnumerationConfig(**vars(ap.parse_args())))
