import csv
import io

import pytest

from contingency3d.montecarlo import CSV_COLUMNS, clopper_pearson, montecarlo, run_trial
from contingency3d.realizer import RealizerParams


def test_clopper_pearson():
    assert clopper_pearson(0, 0) == (0.0, 1.0)
    lo, hi = clopper_pearson(0, 10)
    assert lo == 0.0 and abs(hi - 0.30849710) < 1e-6
    lo, hi = clopper_pearson(5, 10)
    assert abs(lo - 0.18708603) < 1e-6 and abs(hi - 0.81291397) < 1e-6


def test_deterministic_and_worker_invariant():
    a = montecarlo(200, 12, "pyramid_necessary", seed=5)
    b = montecarlo(200, 12, "pyramid_necessary", seed=5, workers=3)
    assert a.to_dict() == b.to_dict()
    c = montecarlo(200, 12, "pyramid_necessary", seed=6)
    assert a.trials == c.trials == 12


def test_trial_depends_only_on_seed_and_index():
    p = RealizerParams()
    assert run_trial(300, "shape_assumptions", p, 3, 7) == run_trial(300, "shape_assumptions", p, 3, 7)


def test_zero_trials():
    s = montecarlo(100, 0, "realize", seed=1)
    assert s.successes == 0 and (s.ci_low, s.ci_high) == (0.0, 1.0)
    assert s.to_dict()["fraction"] is None


def test_csv_and_json_schema():
    s = montecarlo(50, 3, "shape_assumptions", seed=2)
    rows = list(csv.reader(io.StringIO(s.to_csv())))
    assert tuple(rows[0]) == CSV_COLUMNS and len(rows) == 2
    assert rows[1][0] == "50" and rows[1][2] == "shape_assumptions"
    d = s.to_dict()
    assert d["v"] == 1 and d["rng"] == "numpy.PCG64"


def test_realize_and_hypergraph_experiments():
    s = montecarlo(10_000, 3, "realize", seed=0)
    assert s.successes == 3 and sum(s.engines.values()) == 3
    h = montecarlo(1000, 2, "hypergraph", seed=0)
    assert h.successes == 2


def test_bad_inputs():
    with pytest.raises(ValueError):
        montecarlo(10, 1, "nope")
    with pytest.raises(ValueError):
        montecarlo(0, 1, "realize")
