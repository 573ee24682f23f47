import itertools
from collections import Counter

import pytest

from contingency3d.errors import BudgetExceeded
from contingency3d.oracle import (SearchBudget, count_pyramids, count_tables, decide_hypergraph_small,
                                  decide_table, iter_pyramids, pyramid_cells, pyramid_necessary)
from contingency3d.partitions import Partition, conjugate, partitions_of
from contingency3d.tables import MarginalTriple, Table3D, marginals

T = MarginalTriple.of
P = Partition


def brute_count(t: MarginalTriple) -> int:
    """Count tables by enumerating every row's cell subset independently."""
    grid = [(j, k) for j in range(1, len(t.mu) + 1) for k in range(1, len(t.nu) + 1)]
    n = 0
    for rows in itertools.product(*[itertools.combinations(grid, d) for d in t.lam.parts]):
        cm, cn = Counter(), Counter()
        for r in rows:
            for j, k in r:
                cm[j] += 1
                cn[k] += 1
        if all(cm[i + 1] == v for i, v in enumerate(t.mu.parts)) and \
                all(cn[i + 1] == v for i, v in enumerate(t.nu.parts)):
            n += 1
    return n


def test_decide_examples():
    assert decide_table(T([1], [1], [1])).cells == frozenset({(1, 1, 1)})
    assert decide_table(T([2], [2], [2])) is None
    w = decide_table(T([2, 1], [2, 1], [2, 1]))
    assert w is not None and marginals(w).as_tuple() == T([2, 1], [2, 1], [2, 1]).as_tuple()


def test_count_examples():
    assert count_tables(T([1], [1], [1])) == 1
    assert count_tables(T([2], [1, 1], [1, 1])) == 2
    assert count_tables(T([2, 1], [2, 1], [2, 1])) == 4
    for n in (2, 3, 4):
        assert count_tables(T([n], [n], [n])) == 0


@pytest.mark.parametrize("n", range(1, 5))
def test_counts_match_brute_force(n):
    ps = list(partitions_of(n))
    for a, b, c in itertools.product(ps, ps, ps):
        t = MarginalTriple(a, b, c)
        k = brute_count(t)
        assert count_tables(t) == k
        assert (decide_table(t) is not None) == (k > 0)


@pytest.mark.parametrize("n", range(5, 9))
def test_decide_agrees_with_count(n):
    ps = list(partitions_of(n))
    for a, b, c in itertools.product(ps, ps, ps):
        if n >= 7 and (hash((a, b, c)) % 5):
            continue
        t = MarginalTriple(a, b, c)
        w = decide_table(t)
        assert (w is not None) == (count_tables(t) > 0)
        if w is not None:
            assert marginals(w).as_tuple() == t.as_tuple()


def test_budget():
    with pytest.raises(BudgetExceeded):
        decide_table(T([1] * 10, [1] * 10, [1] * 10), SearchBudget(max_cells=5))
    with pytest.raises(BudgetExceeded):
        count_tables(T([2, 2, 2, 1, 1], [2, 2, 2, 1, 1], [3, 3, 1, 1]), SearchBudget(max_nodes=3))
    with pytest.raises(ValueError):
        SearchBudget(max_nodes=0)


def _order_ideals(n):
    front = {frozenset()}
    for _ in range(n):
        nxt = set()
        for S in front:
            cand = {(1, 1, 1)} if not S else {(i + a, j + b, k + c) for i, j, k in S
                                                for a, b, c in ((1, 0, 0), (0, 1, 0), (0, 0, 1))}
            for x in cand - S:
                i, j, k = x
                if all(y in S for y in ((i - 1, j, k), (i, j - 1, k), (i, j, k - 1)) if min(y) >= 1):
                    nxt.add(S | {x})
        front = nxt
    return front


def test_pyramid_examples():
    assert count_pyramids(T([1], [1], [1])) == 1
    assert count_pyramids(T([2], [1, 1], [1, 1])) == 0
    assert pyramid_necessary(T([2], [1, 1], [1, 1]))
    assert not pyramid_necessary(T([1, 1, 1, 1], [4], [2, 2]))
    assert pyramid_necessary(T([1], [1], [1]))


@pytest.mark.parametrize("n", range(1, 7))
def test_pyramid_counts_match_order_ideals(n):
    tally = Counter()
    for S in _order_ideals(n):
        tally[marginals(Table3D(S)).as_tuple()] += 1
    ps = list(partitions_of(n))
    total = 0
    for a, b, c in itertools.product(ps, ps, ps):
        k = count_pyramids(MarginalTriple(a, b, c))
        assert k == tally[(a, b, c)]
        total += k
    assert total == [1, 3, 6, 13, 24, 48][n - 1]  # plane partitions of n


def test_pyramid_cells_have_right_marginals():
    t = T([3, 2, 1], [3, 2, 1], [4, 2])
    for h in iter_pyramids(t):
        assert marginals(Table3D(pyramid_cells(h))).as_tuple() == t.as_tuple()
        heights = P.from_parts(v for row in h for v in row)
        assert heights == conjugate(t.nu)


def test_hypergraph_oracle_examples():
    assert decide_hypergraph_small(P((1, 1, 1))) == frozenset({(1, 2, 3)})
    assert decide_hypergraph_small(P((3,))) is None
    es = decide_hypergraph_small(P((2, 2, 1, 1)))
    assert es is not None
    deg = Counter(v for e in es for v in e)
    assert sorted(deg.values(), reverse=True) == [2, 2, 1, 1]
    assert decide_hypergraph_small(P((2, 1))) is None


def _hg_brute(d):
    V = len(d)
    E = list(itertools.combinations(range(V), 3))
    for S in itertools.combinations(E, d.total // 3):
        c = Counter(x for e in S for x in e)
        if all(c[i] == d.parts[i] for i in range(V)):
            return True
    return False


@pytest.mark.parametrize("tot", [3, 6, 9, 12])
def test_hypergraph_oracle_matches_brute_force(tot):
    for p in partitions_of(tot):
        assert (decide_hypergraph_small(p) is not None) == _hg_brute(p)
