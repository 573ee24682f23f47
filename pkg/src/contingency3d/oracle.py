"""Exact small-instance oracles: tables, pyramids and 3-uniform hypergraphs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator

from .errors import BudgetExceeded
from .partitions import Partition, conjugate, dominance_leq
from .tables import MarginalTriple, Table3D, marginals


@dataclass(frozen=True)
class SearchBudget:
    max_cells: int = 64
    max_nodes: int = 2_000_000

    def __post_init__(self) -> None:
        if self.max_cells < 1 or self.max_nodes < 1:
            raise ValueError("budget limits must be positive")


class _Counter:
    def __init__(self, budget: SearchBudget):
        self.left = budget.max_nodes
        self.limit = budget.max_nodes

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("search nodes", self.limit)


def _check_size(n: int, budget: SearchBudget) -> None:
    if n > budget.max_cells:
        raise BudgetExceeded("cells", budget.max_cells)


def _bounded_compositions(total: int, caps: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Vectors x with 0 <= x_j <= caps_j and sum x = total, lexicographically descending."""
    n = len(caps)
    suffix = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        suffix[j] = suffix[j + 1] + caps[j]
    out = [0] * n

    def rec(j: int, rem: int):
        if j == n:
            if rem == 0:
                yield tuple(out)
            return
        lo = max(0, rem - suffix[j + 1])
        for x in range(min(caps[j], rem), lo - 1, -1):
            out[j] = x
            yield from rec(j + 1, rem - x)
        out[j] = 0

    yield from rec(0, total)


def _gr_ok(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """A 0-1 matrix with row sums a and column sums b exists (Gale-Ryser)."""
    if sum(a) != sum(b):
        return False
    bc = conjugate(Partition.from_parts(b)).parts
    return dominance_leq(Partition.from_parts(a), Partition.from_parts(bc)) if sum(a) else True


@lru_cache(maxsize=None)
def _count01(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Number of 0-1 matrices with row sums a and column sums b (b sorted)."""
    if not a:
        return 1 if not any(b) else 0
    first, rest = a[0], a[1:]
    groups: dict[int, int] = {}
    for v in b:
        groups[v] = groups.get(v, 0) + 1
    vals = sorted(groups, reverse=True)
    total = 0

    def rec(idx: int, need: int, mult: int, newb: list[int]):
        nonlocal total
        if idx == len(vals):
            if need == 0:
                total += mult * _count01(rest, tuple(sorted(newb, reverse=True)))
            return
        v, g = vals[idx], groups[vals[idx]]
        top = min(g, need) if v > 0 else 0
        for c in range(top, -1, -1):
            rec(idx + 1, need - c, mult * comb(g, c), newb + [v - 1] * c + [v] * (g - c))

    rec(0, first, 1, [])
    return total


def _fill01(a: tuple[int, ...], b: tuple[int, ...]) -> list[tuple[int, int]]:
    """A 0-1 matrix with the given margins; rows take the columns of largest residual."""
    res = list(b)
    cells = []
    for j in sorted(range(len(a)), key=lambda t: -a[t]):
        cols = sorted(range(len(res)), key=lambda t: (-res[t], t))[: a[j]]
        for k in cols:
            if res[k] <= 0:
                raise AssertionError("Gale-Ryser fill failed")
            res[k] -= 1
            cells.append((j, k))
    return cells


def _capacity_ok(mu: tuple[int, ...], nu: tuple[int, ...], rows: int) -> bool:
    """Margins (mu, nu) admit an integer matrix with entries at most ``rows``."""
    ms = sorted(mu, reverse=True)
    s = 0
    for t, v in enumerate(ms, start=1):
        s += v
        if s > sum(min(w, rows * t) for w in nu):
            return False
    return True


def _search(t: MarginalTriple, budget: SearchBudget, count: bool):
    lam, mu0, nu0 = (list(p.parts) for p in t.as_tuple())
    ctr = _Counter(budget)
    memo: dict = {}
    trail: list[tuple[tuple[int, ...], tuple[int, ...]]] = []

    def rec(i: int, mu: tuple[int, ...], nu: tuple[int, ...]):
        ctr.tick()
        if i == len(lam):
            return 1 if not any(mu) and not any(nu) else 0
        key = (i, tuple(sorted(mu)), tuple(sorted(nu)))
        if key in memo and (count or memo[key] == 0):
            return memo[key]
        rows_left = len(lam) - i
        if not _capacity_ok(mu, nu, rows_left) or lam[i] > sum(1 for v in mu if v) * sum(1 for v in nu if v):
            memo[key] = 0
            return 0
        total = 0
        d = lam[i]
        rcap = sum(1 for v in nu if v)
        ccap = sum(1 for v in mu if v)
        for a in _bounded_compositions(d, tuple(min(v, rcap) for v in mu)):
            for b in _bounded_compositions(d, tuple(min(v, ccap) for v in nu)):
                if not _gr_ok(a, b):
                    continue
                sub = rec(i + 1, tuple(x - y for x, y in zip(mu, a)), tuple(x - y for x, y in zip(nu, b)))
                if sub:
                    if not count:
                        trail.append((a, b))
                        memo[key] = 1
                        return 1
                    total += sub * _count01(a, tuple(sorted(b, reverse=True)))
        memo[key] = total
        return total

    res = rec(0, tuple(mu0), tuple(nu0))
    return res, trail


def decide_table(t: MarginalTriple, budget: SearchBudget | None = None) -> Table3D | None:
    """A table with marginals exactly ``t`` (sorted coordinates), or None if none exists."""
    budget = budget or SearchBudget()
    _check_size(t.n, budget)
    if t.n == 0:
        return Table3D(frozenset())
    found, trail = _search(t, budget, count=False)
    if not found:
        return None
    cells = []
    for i, (a, b) in enumerate(reversed(trail), start=1):
        for j, k in _fill01(a, b):
            cells.append((i, j + 1, k + 1))
    table = Table3D(frozenset(cells))
    if marginals(table).as_tuple() != t.as_tuple():  # pragma: no cover - witness check
        raise AssertionError("oracle witness has wrong marginals")
    return table


def count_tables(t: MarginalTriple, budget: SearchBudget | None = None) -> int:
    """Number of binary tables whose positional marginals are the sorted triple."""
    budget = budget or SearchBudget()
    _check_size(t.n, budget)
    if t.n == 0:
        return 1
    total, _ = _search(t, budget, count=True)
    return int(total)


def iter_plane_partitions(t: MarginalTriple, budget: SearchBudget | None = None
                          ) -> Iterator[list[list[int]]]:
    """Height arrays h[i][j] (non-increasing along rows and columns) with row sums lam and column sums mu.

    The pyramid is {(i, j, k) : k <= h[i][j]}; callers check the third marginal.
    """
    budget = budget or SearchBudget()
    _check_size(t.n, budget)
    ctr = _Counter(budget)
    lam, mu = list(t.lam.parts), list(t.mu.parts)
    q = len(mu)
    rows: list[list[int]] = []

    def row_options(total: int, above: list[int], colres: list[int]):
        out = [0] * q

        def rec(j: int, rem: int, prev: int):
            if j == q:
                if rem == 0:
                    yield list(out)
                return
            hi = min(prev, above[j], colres[j], rem)
            for h in range(hi, -1, -1):
                if h * (q - j) < rem:
                    break
                out[j] = h
                yield from rec(j + 1, rem - h, h)
            out[j] = 0

        yield from rec(0, total, total)

    def rec(i: int, colres: list[int]):
        ctr.tick()
        if i == len(lam):
            if not any(colres):
                yield [list(r) for r in rows]
            return
        above = rows[-1] if rows else [t.n] * q
        for r in row_options(lam[i], above, colres):
            rows.append(r)
            yield from rec(i + 1, [c - h for c, h in zip(colres, r)])
            rows.pop()

    if t.n == 0:
        yield []
        return
    yield from rec(0, list(mu))


def pyramid_cells(h: list[list[int]]) -> frozenset:
    return frozenset((i + 1, j + 1, k) for i, row in enumerate(h) for j, v in enumerate(row)
                     for k in range(1, v + 1))


def iter_pyramids(t: MarginalTriple, budget: SearchBudget | None = None) -> Iterator[list[list[int]]]:
    """Height arrays of all pyramids with marginals exactly ``t``."""
    nu = t.nu.parts
    for h in iter_plane_partitions(t, budget):
        heights = [v for row in h for v in row if v]
        if conjugate(Partition.from_parts(heights)).parts == nu:
            yield h


def count_pyramids(t: MarginalTriple, budget: SearchBudget | None = None) -> int:
    return sum(1 for _ in iter_pyramids(t, budget))


def pyramid_necessary(t: MarginalTriple) -> bool:
    """nu' is dominated by lam; failure rules out every pyramid."""
    return dominance_leq(conjugate(t.nu), t.lam)


def decide_hypergraph_small(d: Partition, budget: SearchBudget | None = None
                            ) -> frozenset[tuple[int, int, int]] | None:
    """Edges (a < b < c, vertices 1..len(d)) with degree sequence d, or None."""
    budget = budget or SearchBudget()
    if d.total % 3:
        return None
    _check_size(d.total, budget)
    ctr = _Counter(budget)
    res = list(d.parts)
    nv = len(res)
    edges: list[tuple[int, int, int]] = []
    dead: set = set()

    def rec(last: tuple[int, int, int] | None) -> bool:
        ctr.tick()
        try:
            v = next(i for i, r in enumerate(res) if r > 0)
        except StopIteration:
            return True
        tag = last if last is not None and last[0] == v else None
        key = (tuple(res), frozenset(e for e in edges if all(res[x] for x in e)), tag)
        if key in dead:
            return False
        if sum(1 for r in res if r > 0) < 3 or res[v] > comb(sum(1 for r in res if r > 0) - 1, 2):
            dead.add(key)
            return False
        used = set(edges)
        for a, b in combinations([u for u in range(v + 1, nv) if res[u] > 0], 2):
            e = (v, a, b)
            if e in used or (last is not None and last[0] == v and e <= last):
                continue
            for x in e:
                res[x] -= 1
            edges.append(e)
            if rec(e):
                return True
            edges.pop()
            for x in e:
                res[x] += 1
        dead.add(key)
        return False

    if not rec(None):
        return None
    return frozenset((a + 1, b + 1, c + 1) for a, b, c in edges)
