import itertools

import pytest
from hypothesis import given

from contingency3d.errors import (IndexOutOfRange, NotDominated, OrderViolation,
                                  PartitionParseError, UnequalTotals)
from contingency3d.partitions import (CoverStep, Partition, conjugate, covering_chain,
                                      dominance_leq, move_mass, partitions_of,
                                      rectangle_majorant, replay_descending)

from conftest import partitions

P = Partition


def prefix_gap(lower, upper):
    L = max(len(lower), len(upper))
    a, b = lower.prefix_sums(L), upper.prefix_sums(L)
    return sum(y - x for x, y in zip(a, b))


def test_conjugate_examples():
    assert conjugate(P((3, 1))) == P((2, 1, 1))
    assert conjugate(P(())) == P(())
    assert conjugate(P((2, 2))) == P((2, 2))


@given(partitions(max_n=200))
def test_conjugate_involution(p):
    assert conjugate(conjugate(p)) == p
    assert conjugate(p).total == p.total


def test_dominance_examples():
    assert dominance_leq(P((2, 2)), P((3, 1)))
    assert not dominance_leq(P((3, 1)), P((2, 2)))
    assert dominance_leq(P((1, 1, 1, 1)), P((4,)))
    with pytest.raises(UnequalTotals):
        dominance_leq(P((1,)), P((2,)))


@pytest.mark.parametrize("n", range(0, 9))
def test_dominance_is_partial_order(n):
    ps = list(partitions_of(n))
    leq = {(a, b): dominance_leq(a, b) for a in ps for b in ps}
    for a in ps:
        assert leq[a, a]
    for a, b in itertools.product(ps, ps):
        if a != b:
            assert not (leq[a, b] and leq[b, a])
    for a, b, c in itertools.product(ps, ps, ps):
        if leq[a, b] and leq[b, c]:
            assert leq[a, c]


def test_chain_examples():
    assert len(covering_chain(P((2, 2)), P((3, 1)))) == 1
    chain = covering_chain(P((1, 1, 1, 1)), P((4,)))
    # (4) > (3,1) > (2,2) > (2,1,1) > (1,1,1,1); total span 3+2+1 = 6 = prefix gap
    assert chain == [CoverStep(1, 4), CoverStep(2, 3), CoverStep(1, 2), CoverStep(1, 2)]
    assert sum(s.span for s in chain) == prefix_gap(P((1, 1, 1, 1)), P((4,))) == 6
    assert covering_chain(P((3, 2)), P((3, 2))) == []
    with pytest.raises(NotDominated):
        covering_chain(P((3, 1)), P((2, 2)))


def _is_cover(hi: Partition, lo: Partition) -> bool:
    """No partition strictly between lo and hi (brute force)."""
    if hi == lo or not dominance_leq(lo, hi):
        return False
    return not any(x != hi and x != lo and dominance_leq(lo, x) and dominance_leq(x, hi)
                   for x in partitions_of(hi.total))


@pytest.mark.parametrize("n", range(1, 8))
def test_chain_steps_are_genuine_covers(n):
    ps = list(partitions_of(n))
    for lo, hi in itertools.product(ps, ps):
        if dominance_leq(lo, hi):
            seq = replay_descending(hi, covering_chain(lo, hi))
            for a, b in zip(seq, seq[1:]):
                assert _is_cover(a, b)


def test_rectangle_majorant_examples():
    assert rectangle_majorant(10, 3) == P((3, 3, 3, 1))
    assert rectangle_majorant(9, 3) == P((3, 3, 3))
    assert rectangle_majorant(5, 7) == P((5,))


@pytest.mark.parametrize("n", range(0, 13))
def test_rectangle_majorant_dominates(n):
    for p in partitions_of(n):
        for cap in range(max(p.parts, default=1), n + 2):
            assert dominance_leq(p, rectangle_majorant(n, cap))


def test_move_mass_examples():
    assert move_mass(P((4, 3, 3)), 3, 1, 2) == P((6, 3, 1))
    assert move_mass(P((4, 4)), 2, 1, 4) == P((8,))
    with pytest.raises(OrderViolation):
        move_mass(P((4, 4, 4)), 3, 2, 1)
    with pytest.raises(IndexOutOfRange):
        move_mass(P((4, 4)), 3, 1, 1)
    with pytest.raises(OrderViolation):
        move_mass(P((4, 4)), 1, 2, 1)


@given(partitions(max_n=40, min_n=2))
def test_move_mass_increases_dominance(p):
    L = len(p)
    for f in range(2, L + 1):
        for t in range(1, f):
            try:
                q = move_mass(p, f, t, 1)
            except OrderViolation:
                continue
            assert q != p and dominance_leq(p, q)


def test_text_and_json_forms():
    p = P.parse("4,3,3,1")
    assert p.to_text() == "4,3,3,1"
    assert P.from_json(p.to_json()) == p
    assert P.parse("") == P(())
    with pytest.raises(PartitionParseError) as ei:
        P.parse("4,x,1")
    assert ei.value.token == "x"
    with pytest.raises(PartitionParseError):
        P.parse("1,3")
