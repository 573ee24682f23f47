#!/usr/bin/env python3
"""Success rate of the deterministic table realizer over uniform triples.

Example: python3 scripts/realize_sweep.py --sizes 1000 10000 --trials 50 --A0 8 4
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from contingency3d.montecarlo import montecarlo
from contingency3d.realizer import RealizerParams


@dataclass
class SweepConfig:
    sizes: list[int] = field(default_factory=lambda: [1000, 10_000])
    trials: int = 50
    seed: int = 0
    A0: list[float] = field(default_factory=lambda: [8.0])
    theta: float = 0.25
    B: float = 4.0
    workers: int = 1


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=SweepConfig().sizes)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--A0", type=float, nargs="+", default=[8.0])
    ap.add_argument("--theta", type=float, default=0.25)
    ap.add_argument("--B", type=float, default=4.0)
    ap.add_argument("--workers", type=int, default=1)
    cfg = SweepConfig(**vars(ap.parse_args()))
    print(json.dumps({"config": asdict(cfg)}))
    for a0 in cfg.A0:
        params = RealizerParams(theta=cfg.theta, B=cfg.B, A0=a0)
        for n in cfg.sizes:
            t0 = time.perf_counter()
            s = montecarlo(n, cfg.trials, "realize", params, cfg.seed, cfg.workers)
            row = s.to_dict()
            row.update(A0=a0, seconds=round(time.perf_counter() - t0, 2))
            print(json.dumps(row, sort_keys=True))


if __name__ == "__main__":
    main()
