import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from contingency3d.partitions import Partition, dominance_leq

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def partitions(draw, max_n=30, min_n=0):
    n = draw(st.integers(min_n, max_n))
    parts = []
    rem = n
    while rem:
        k = draw(st.integers(1, rem))
        parts.append(k)
        rem -= k
    return Partition.from_parts(parts)


@st.composite
def tables(draw, side=6, max_cells=40):
    coords = st.tuples(*(st.integers(1, side),) * 3)
    return draw(st.frozensets(coords, min_size=1, max_size=max_cells))


def random_table(rng: random.Random, side: int, cells: int) -> frozenset:
    out = set()
    while len(out) < cells:
        out.add((rng.randint(1, side), rng.randint(1, side), rng.randint(1, side)))
    return frozenset(out)


@pytest.fixture
def rng():
    return random.Random(20240611)


def meet(a: Partition, b: Partition) -> Partition:
    """Greatest lower bound in the dominance order: pointwise minimum of prefix sums."""
    L = max(len(a), len(b))
    pa, pb = a.prefix_sums(L), b.prefix_sums(L)
    m = [min(x, y) for x, y in zip(pa, pb)]
    parts = [m[0]] + [y - x for x, y in zip(m, m[1:])] if m else []
    q = Partition(tuple(v for v in parts if v))
    assert dominance_leq(q, a) and dominance_leq(q, b)
    return q


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
