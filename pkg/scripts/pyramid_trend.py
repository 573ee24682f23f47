#!/usr/bin/env python3
"""Fraction of uniform triples passing the pyramid necessary condition, with CSV output."""

import argparse
import sys
from dataclasses import dataclass, field

from contingency3d.montecarlo import montecarlo


@dataclass
class PyramidConfig:
    sizes: list[int] = field(default_factory=lambda: [100, 1000, 10_000])
    trials: int = 1000
    seed: int = 0
    workers: int = 1


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=PyramidConfig().sizes)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    cfg = PyramidConfig(**vars(ap.parse_args()))
    for i, n in enumerate(cfg.sizes):
        s = montecarlo(n, cfg.trials, "pyramid_necessary", seed=cfg.seed, workers=cfg.workers)
        sys.stdout.write(s.to_csv(header=i == 0))


if __name__ == "__main__":
    main()
