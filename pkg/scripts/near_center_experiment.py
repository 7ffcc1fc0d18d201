"""Success rate of the rounding pipeline against the exact search.

For random sets in [n]^r, compare whether a point within d-1 of every member
exists (exact branch and bound) with whether the fractional-center rounding
pipeline finds one, and how many samples it needed.
"""

import argparse
import random
import statistics
from dataclasses import dataclass

from dmax.maximality import find_within_radius
from dmax.rounding import RoundingConfig, near_center_run
from dmax.words import PointSet, diameter


@dataclass
class ExperimentConfig:
    n: int = 2
    r: int = 12
    m_min: int = 3
    m_max: int = 8
    trials: int = 200
    seed: int = 0


def main(cfg: ExperimentConfig):
    rng = random.Random(cfg.seed)
    rows = {}
    for trial in range(cfg.trials):
        m = rng.randint(cfg.m_min, cfg.m_max)
        S = PointSet(cfg.n, cfg.r, tuple(tuple(rng.randint(1, cfg.n) for _ in range(cfg.r)) for _ in range(m)))
        d = diameter(S)
        if d == 0:
            continue
        exists = find_within_radius(S, d - 1) is not None
        run = near_center_run(S, d, RoundingConfig(seed=trial))
        stats = rows.setdefault(len(S), {"exists": 0, "found": 0, "attempts": []})
        stats["exists"] += exists
        if run.center is not None:
            stats["found"] += 1
            stats["attempts"].append(run.attempts)
    print(f"n={cfg.n} r={cfg.r} trials={cfg.trials} seed={cfg.seed}")
    print(f"{'m':>3} {'exists':>7} {'found':>6} {'median attempts':>16}")
    for m in sorted(rows):
        s = rows[m]
        med = statistics.median(s["attempts"]) if s["attempts"] else float("nan")
        print(f"{m:>3} {s['exists']:>7} {s['found']:>6} {med:>16}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, value in vars(ExperimentConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=value)
    main(ExperimentConfig(**vars(ap.parse_args())))
