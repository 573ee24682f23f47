"""Sparse three-dimensional binary contingency tables and their building blocks."""

from __future__ import annotations

import heapq
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import FrontOverflow, InternalFlipMissing, NotDominated, UnequalTotals
from .partitions import Partition, covering_chain, dominance_leq

Cell = tuple[int, int, int]
AXES = (1, 2, 3)


@dataclass(frozen=True)
class MarginalTriple:
    """Three partitions of a common total.

    ``perms`` (excluded from equality) records, per axis, the raw row index
    sitting at each sorted position when the triple came from a table.
    """

    lam: Partition
    mu: Partition
    nu: Partition
    perms: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not (self.lam.total == self.mu.total == self.nu.total):
            raise UnequalTotals(
                f"marginal totals differ: {self.lam.total}, {self.mu.total}, {self.nu.total}"
            )

    @property
    def n(self) -> int:
        return self.lam.total

    def axis(self, a: int) -> Partition:
        return (self.lam, self.mu, self.nu)[a - 1]

    def as_tuple(self) -> tuple[Partition, Partition, Partition]:
        return (self.lam, self.mu, self.nu)

    @classmethod
    def of(cls, lam: Iterable[int], mu: Iterable[int], nu: Iterable[int]) -> "MarginalTriple":
        return cls(Partition.from_parts(lam), Partition.from_parts(mu), Partition.from_parts(nu))


class _CellStore:
    """Mutable cell set with a per-axis row index, used while editing a table."""

    def __init__(self, cells: Iterable[Cell]):
        self.cells: set[Cell] = set(cells)
        self.rows: list[dict[int, set[tuple[int, int]]]] = [defaultdict(set) for _ in range(3)]
        for c in self.cells:
            self._index(c)

    @staticmethod
    def _rest(c: Cell, ax: int) -> tuple[int, int]:
        return (c[1], c[2]) if ax == 0 else (c[0], c[2]) if ax == 1 else (c[0], c[1])

    @staticmethod
    def _make(ax: int, row: int, rest: tuple[int, int]) -> Cell:
        if ax == 0:
            return (row, rest[0], rest[1])
        if ax == 1:
            return (rest[0], row, rest[1])
        return (rest[0], rest[1], row)

    def _index(self, c: Cell) -> None:
        for ax in range(3):
            self.rows[ax][c[ax]].add(self._rest(c, ax))

    def _unindex(self, c: Cell) -> None:
        for ax in range(3):
            s = self.rows[ax][c[ax]]
            s.discard(self._rest(c, ax))
            if not s:
                del self.rows[ax][c[ax]]

    def move(self, ax: int, src: int, dst: int, count: int) -> None:
        """Move ``count`` cells from row ``src`` to row ``dst`` on axis ``ax``.

        Picks the lexicographically smallest free positions, so the other two
        axes keep exactly the same row sums.
        """
        have = self.rows[ax].get(src, set())
        taken = self.rows[ax].get(dst, set())
        if len(taken) == 0:
            free = have
        else:
            free = (r for r in have if r not in taken)
        chosen = heapq.nsmallest(count, free)
        if len(chosen) < count:
            raise InternalFlipMissing(
                f"axis {ax + 1}: only {len(chosen)} free cells moving row {src} -> {dst}"
            )
        for rest in chosen:
            old = self._make(ax, src, rest)
            new = self._make(ax, dst, rest)
            self.cells.remove(old)
            self._unindex(old)
            self.cells.add(new)
            self._index(new)


@dataclass(frozen=True)
class Table3D:
    """Finite set of 1-cells ``(i, j, k)`` with 1-based coordinates."""

    cells: frozenset[Cell] = frozenset()

    def __post_init__(self) -> None:
        if not isinstance(self.cells, frozenset):
            object.__setattr__(self, "cells", frozenset(self.cells))

    def __len__(self) -> int:
        return len(self.cells)

    def raw_marginal(self, axis: int) -> Counter:
        ax = axis - 1
        return Counter(c[ax] for c in self.cells)

    def sorted_axis(self, axis: int) -> tuple[Partition, tuple[int, ...]]:
        """Sorted marginal on ``axis`` plus the raw row index at each sorted position.

        Ties are broken by raw index so the permutation is deterministic.
        """
        raw = self.raw_marginal(axis)
        order = sorted(raw, key=lambda r: (-raw[r], r))
        return Partition(tuple(raw[r] for r in order)), tuple(order)

    def extent(self, axis: int) -> int:
        ax = axis - 1
        return max((c[ax] for c in self.cells), default=0)

    def to_text(self) -> str:
        lines = [f"# table3d v1 cells={len(self.cells)}"]
        lines.extend(f"{i} {j} {k}" for i, j, k in sorted(self.cells))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Table3D":
        cells = []
        declared = None
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line.split():
                    if tok.startswith("cells="):
                        declared = int(tok[6:])
                continue
            i, j, k = (int(t) for t in line.split())
            if min(i, j, k) < 1:
                raise ValueError(f"coordinates must be positive: {line!r}")
            cells.append((i, j, k))
        t = cls(frozenset(cells))
        if len(t.cells) != len(cells):
            raise ValueError("duplicate cells in table text")
        if declared is not None and declared != len(cells):
            raise ValueError(f"header declares {declared} cells, found {len(cells)}")
        return t


def marginals(m: Table3D) -> MarginalTriple:
    parts, perms = zip(*(m.sorted_axis(a) for a in AXES))
    return MarginalTriple(parts[0], parts[1], parts[2], perms=tuple(perms))


def box(p: int, q: int, r: int) -> Table3D:
    """Full ``p x q x r`` box: axis-1 parts q*r, axis-2 parts p*r, axis-3 parts p*q."""
    return Table3D(
        frozenset(
            (i, j, k)
            for i in range(1, p + 1)
            for j in range(1, q + 1)
            for k in range(1, r + 1)
        )
    )


def cube(m: int) -> Table3D:
    if m < 1:
        raise ValueError("cube side must be positive")
    return box(m, m, m)


def slab(a: int) -> Table3D:
    """One axis-1 row holding an ``a x a`` square."""
    if a < 1:
        raise ValueError("slab side must be positive")
    return box(1, a, a)


def staircase(q: int, widths: Sequence[int]) -> Table3D:
    """Axis-1 row ``i`` holds the ``q x widths[i]`` rectangle in the corner.

    ``widths`` must be non-increasing. Axis 1 gets parts ``q * w``, axis 2 gets
    ``q`` parts of ``sum(widths)`` and axis 3 gets ``q`` times the conjugate of
    ``widths``.
    """
    return Table3D(
        frozenset(
            (i + 1, j, k)
            for i, w in enumerate(widths)
            for j in range(1, q + 1)
            for k in range(1, w + 1)
        )
    )


def shift(m: Table3D, offsets: tuple[int, int, int]) -> Table3D:
    di, dj, dk = offsets
    return Table3D(frozenset((i + di, j + dj, k + dk) for i, j, k in m.cells))


def glue(front: Table3D, back: Table3D, r: int) -> Table3D:
    """Block-diagonal union with ``back`` shifted by ``r`` on every axis."""
    if any(max(c) > r for c in front.cells):
        raise FrontOverflow(f"front table has a coordinate above {r}")
    return Table3D(front.cells | shift(back, (r, r, r)).cells)


def glue_offsets(front: Table3D, back: Table3D, offsets: tuple[int, int, int]) -> Table3D:
    """Like :func:`glue` but with a separate offset per axis."""
    for ax in range(3):
        if any(c[ax] > offsets[ax] for c in front.cells):
            raise FrontOverflow(f"front table exceeds offset {offsets[ax]} on axis {ax + 1}")
    return Table3D(front.cells | shift(back, offsets).cells)


def _store_axis(store: _CellStore, ax: int) -> tuple[list[int], list[int]]:
    rows = store.rows[ax]
    order = sorted(rows, key=lambda r: (-len(rows[r]), r))
    return [len(rows[r]) for r in order], order


def descend_store(store: _CellStore, axis: int, target: Partition, method: str = "auto") -> None:
    """In-place version of :func:`descend_axis` on a mutable cell store."""
    if axis not in AXES:
        raise ValueError("axis must be 1, 2 or 3")
    ax = axis - 1
    vals, perm = _store_axis(store, ax)
    current = Partition(tuple(vals))
    if current.total != target.total:
        raise UnequalTotals(f"table has {current.total} cells, target sums to {target.total}")
    if not dominance_leq(target, current):
        raise NotDominated(f"target {target} not dominated by marginal {current}")
    if current == target:
        return
    L = max(len(current), len(target)) + 1
    nxt = max(store.rows[ax], default=0) + 1
    while len(perm) < L:
        perm.append(nxt)
        vals.append(0)
        nxt += 1
    goal = list(target.parts) + [0] * (L - len(target))
    if method == "auto":
        gap = s = 0
        for c, t in zip(vals, goal):
            s += c - t
            gap += s
        method = "covers" if gap <= 2000 else "transfers"
    if method == "covers":
        for st in reversed(covering_chain(target, current)):
            store.move(ax, perm[st.j - 1], perm[st.k - 1], 1)
    elif method == "transfers":
        i = 0
        while True:
            while i < L and vals[i] <= goal[i]:
                i += 1
            if i == L:
                break
            j = i + 1
            while vals[j] >= goal[j]:
                j += 1
            d = min(vals[i] - goal[i], goal[j] - vals[j])
            store.move(ax, perm[i], perm[j], d)
            vals[i] -= d
            vals[j] += d
    else:
        raise ValueError(f"unknown descent method {method!r}")
    got = sorted((len(v) for v in store.rows[ax].values()), reverse=True)
    if tuple(got) != target.parts:  # pragma: no cover - guarded by the dominance argument
        raise InternalFlipMissing(f"descent reached {got}, wanted {target}")


def descend_axis(m: Table3D, axis: int, target: Partition, method: str = "auto") -> Table3D:
    """Lower the marginal on ``axis`` to ``target`` without touching the other axes.

    ``method="covers"`` replays the covering chain one unit at a time with
    lexicographically smallest flip pairs. ``method="transfers"`` batches
    unit moves between a surplus row and a deficit row; each batch is a run
    of valid unit flips. ``"auto"`` picks covers for short chains.
    """
    store = _CellStore(m.cells)
    descend_store(store, axis, target, method)
    return Table3D(frozenset(store.cells))
