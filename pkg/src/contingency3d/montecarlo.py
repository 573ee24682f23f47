"""Seeded Monte Carlo estimates over uniform random partitions."""

from __future__ import annotations

import csv
import io
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from scipy.stats import beta

from .oracle import pyramid_necessary
from .random_partitions import RNG_NAME, make_rng, sample_uniform
from .realizer.params import RealizerParams
from .realizer.pipeline import check_shape_assumptions, realize_deterministic
from .tables import MarginalTriple

EXPERIMENTS = ("realize", "pyramid_necessary", "shape_assumptions", "hypergraph")
CSV_COLUMNS = ("n", "trials", "experiment", "successes", "ci_low", "ci_high", "params", "seed")


@dataclass
class TrialResult:
    index: int
    success: bool
    stage: str = ""
    engine: str = ""


@dataclass
class MonteCarloSummary:
    n: int
    trials: int
    experiment: str
    successes: int
    ci_low: float
    ci_high: float
    params: str
    seed: int
    confidence: float = 0.95
    failure_stages: dict = field(default_factory=dict)
    engines: dict = field(default_factory=dict)
    rng: str = RNG_NAME

    @property
    def fraction(self) -> float:
        return self.successes / self.trials if self.trials else float("nan")

    def to_dict(self) -> dict:
        return {"v": 1, "n": self.n, "trials": self.trials, "experiment": self.experiment,
                "successes": self.successes,
                "fraction": self.fraction if self.trials else None,
                "ci_low": self.ci_low, "ci_high": self.ci_high, "confidence": self.confidence,
                "params": self.params, "seed": self.seed, "rng": self.rng,
                "failure_stages": dict(sorted(self.failure_stages.items())),
                "engines": dict(sorted(self.engines.items()))}

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(CSV_COLUMNS)
        w.writerow([self.n, self.trials, self.experiment, self.successes,
                    f"{self.ci_low:.6f}", f"{self.ci_high:.6f}", self.params, self.seed])
        return buf.getvalue()


def clopper_pearson(k: int, n: int, confidence: float = 0.95) -> tuple[float, float]:
    """Exact binomial interval; (0, 1) when there are no trials."""
    if n == 0:
        return 0.0, 1.0
    alpha = 1.0 - confidence
    lo = 0.0 if k == 0 else float(beta.ppf(alpha / 2, k, n - k + 1))
    hi = 1.0 if k == n else float(beta.ppf(1 - alpha / 2, k + 1, n - k))
    return lo, hi


def run_trial(n: int, experiment: str, params: RealizerParams, seed: int, index: int) -> TrialResult:
    """One independent trial; the generator depends only on (seed, index)."""
    rng = make_rng(seed, index)
    if experiment == "shape_assumptions":
        p = sample_uniform(n, rng=rng)
        ok = check_shape_assumptions(p, params)
        return TrialResult(index, ok, "" if ok else "shape")
    if experiment == "hypergraph":
        from .hypergraph import realize_hypergraph

        p = sample_uniform(3 * n, rng=rng)
        out = realize_hypergraph(p, params)
        stage = "" if out.ok else (out.report.stage if out.report else out.status)
        return TrialResult(index, out.ok, stage, out.engine)
    t = MarginalTriple(*(sample_uniform(n, rng=rng) for _ in range(3)))
    if experiment == "pyramid_necessary":
        ok = pyramid_necessary(t)
        return TrialResult(index, ok, "" if ok else "nu' not dominated")
    if experiment == "realize":
        out = realize_deterministic(t, params)
        return TrialResult(index, out.ok, "" if out.ok else out.report.stage, out.engine)
    raise ValueError(f"unknown experiment {experiment!r}")


def _trial_star(args):
    return run_trial(*args)


def montecarlo(n: int, trials: int, experiment: str, params: RealizerParams | None = None,
               seed: int = 0, workers: int = 1, confidence: float = 0.95) -> MonteCarloSummary:
    """Run ``trials`` seeded trials and summarize them; results do not depend on ``workers``."""
    if experiment not in EXPERIMENTS:
        raise ValueError(f"experiment must be one of {EXPERIMENTS}")
    if trials < 0 or n < 1:
        raise ValueError("need n >= 1 and trials >= 0")
    params = params or RealizerParams()
    jobs = [(n, experiment, params, seed, i) for i in range(trials)]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_trial_star, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        results = [_trial_star(j) for j in jobs]
    results.sort(key=lambda r: r.index)
    k = sum(r.success for r in results)
    lo, hi = clopper_pearson(k, trials, confidence)
    stages = Counter(r.stage for r in results if not r.success)
    engines = Counter(r.engine for r in results if r.success and r.engine)
    return MonteCarloSummary(n, trials, experiment, k, lo, hi, params.fingerprint(), seed,
                             confidence, dict(stages), dict(engines))
