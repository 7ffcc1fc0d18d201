"""Verify every construction in the standard grid and print a size/verdict table."""

import argparse
import time
from dataclasses import dataclass

from dmax.analysis import lower_bound
from dmax.constructions import standard_grid
from dmax.maximality import verdict_infinite
from dmax.words import contains_ball, diameter


@dataclass
class GridConfig:
    workers: int = 1


def main(cfg: GridConfig):
    print(f"{'family':<12} {'n':>2} {'d':>2} {'r':>3} {'size':>5} {'ball-free':>9} {'lower':>7} verdict  nodes  seconds")
    for spec in standard_grid():
        S = spec.build()
        start = time.perf_counter()
        v = verdict_infinite(S, spec.d, workers=cfg.workers)
        elapsed = time.perf_counter() - start
        assert diameter(S) == spec.d
        print(f"{spec.family:<12} {S.n:>2} {spec.d:>2} {S.r:>3} {len(S):>5} {str(not contains_ball(S, 1)):>9} "
              f"{lower_bound(spec.d):>7.3f} {v.status.value:<8} {v.nodes_explored:>5}  {elapsed:.3f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=1)
    main(GridConfig(**vars(ap.parse_args())))
