"""Stage state, blocks and outcome records for the realizer."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from ..partitions import Partition
from ..tables import Table3D


def isqrt_ceil(x: int) -> int:
    r = math.isqrt(x)
    return r if r * r == x else r + 1


@dataclass(frozen=True)
class Block:
    """A building block placed block-diagonally in the final table.

    ``kind`` is one of ``cube``, ``box``, ``stair`` or ``diagonal``. ``axes[t]``
    is the global axis (0-based) carrying local axis ``t``. For ``box`` the
    local shape is ``dims``. For ``stair`` local axis 0 has one row per width,
    local axis 1 has ``dims[1]`` rows and local axis 2 has ``widths[0]`` rows.
    A ``diagonal`` of size ``d`` is ``d`` unit cubes.
    """

    kind: str
    dims: tuple[int, int, int]
    axes: tuple[int, int, int] = (0, 1, 2)
    widths: tuple[int, ...] = ()

    @property
    def cells(self) -> int:
        if self.kind == "stair":
            return self.dims[1] * sum(self.widths)
        if self.kind == "diagonal":
            return self.dims[0]
        p, q, r = self.dims
        return p * q * r

    def local_cells(self) -> Iterator[tuple[int, int, int]]:
        if self.kind == "diagonal":
            for t in range(1, self.dims[0] + 1):
                yield (t, t, t)
        elif self.kind == "stair":
            q = self.dims[1]
            for i, w in enumerate(self.widths, start=1):
                for j in range(1, q + 1):
                    for k in range(1, w + 1):
                        yield (i, j, k)
        else:
            p, q, r = self.dims
            for i in range(1, p + 1):
                for j in range(1, q + 1):
                    for k in range(1, r + 1):
                        yield (i, j, k)

    def local_extent(self) -> tuple[int, int, int]:
        if self.kind == "diagonal":
            d = self.dims[0]
            return (d, d, d)
        if self.kind == "stair":
            return (len(self.widths), self.dims[1], self.widths[0] if self.widths else 0)
        return self.dims

    def global_extent(self) -> tuple[int, int, int]:
        loc = self.local_extent()
        out = [0, 0, 0]
        for t in range(3):
            out[self.axes[t]] = loc[t]
        return tuple(out)

    def axis_parts(self) -> list[list[int]]:
        """Row sums contributed on each global axis."""
        loc: list[list[int]]
        if self.kind == "diagonal":
            d = self.dims[0]
            loc = [[1] * d, [1] * d, [1] * d]
        elif self.kind == "stair":
            q, ws = self.dims[1], list(self.widths)
            conj = [sum(1 for w in ws if w >= t) for t in range(1, (ws[0] if ws else 0) + 1)]
            loc = [[q * w for w in ws], [sum(ws)] * q, [q * c for c in conj]]
        else:
            p, q, r = self.dims
            loc = [[q * r] * p, [p * r] * q, [p * q] * r]
        out: list[list[int]] = [[], [], []]
        for t in range(3):
            out[self.axes[t]] = loc[t]
        return out


@dataclass
class StageState:
    """Residual triple plus the blocks already removed.

    ``triple`` holds three run-length maps ``value -> multiplicity``. The
    checkpoint invariant is ``placed + residual total == n`` on every axis.
    """

    n: int
    triple: list[Counter]
    blocks: list[Block] = field(default_factory=list)
    log: list[dict] = field(default_factory=list)
    placed: int = 0

    @classmethod
    def from_partitions(cls, parts) -> "StageState":
        tri = [Counter(p.parts if isinstance(p, Partition) else p) for p in parts]
        n = sum(v * c for v, c in tri[0].items())
        st = cls(n=n, triple=tri)
        st.check()
        return st

    def copy(self) -> "StageState":
        return StageState(self.n, [Counter(c) for c in self.triple], list(self.blocks),
                          list(self.log), self.placed)

    def residual(self, axis: int) -> int:
        return sum(v * c for v, c in self.triple[axis].items() if v > 0)

    def sorted_parts(self, axis: int) -> list[int]:
        c = self.triple[axis]
        out: list[int] = []
        for v in sorted((v for v in c if v > 0 and c[v] > 0), reverse=True):
            out.extend([v] * c[v])
        return out

    @property
    def symmetric(self) -> bool:
        a, b, c = (+t for t in self.triple)
        return a == b == c

    def add_block(self, blk: Block, stage: str, op: str, k_or_b: int, m: int) -> None:
        self.blocks.append(blk)
        self.placed += blk.cells
        self.log.append({"stage": stage, "op": op, "k_or_b": int(k_or_b), "m": int(m),
                         "cells_added": int(blk.cells)})

    def check(self) -> None:
        for ax in range(3):
            for v, c in self.triple[ax].items():
                if v < 0 or c < 0:
                    raise AssertionError(f"negative entry {v}x{c} on axis {ax + 1}")
            if self.placed + self.residual(ax) != self.n:
                raise AssertionError(
                    f"mass leak on axis {ax + 1}: placed {self.placed} + residual "
                    f"{self.residual(ax)} != {self.n}"
                )


@dataclass(frozen=True)
class NotApplicable:
    stage: str
    reason: str

    def to_dict(self) -> dict:
        return {"stage": self.stage, "reason": self.reason}


@dataclass
class RealizeOutcome:
    """Result of a realization attempt.

    ``status`` is ``realized``, ``not_realizable`` (proven by exhaustive search),
    ``not_applicable`` or ``budget_exceeded``.
    """

    status: str
    table: Table3D | None = None
    log: list[dict] = field(default_factory=list)
    report: NotApplicable | None = None
    engine: str = ""
    diagnostics: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "realized"

    def log_jsonl(self) -> str:
        return "".join(json.dumps(ev, sort_keys=True) + "\n" for ev in self.log)


def assemble(blocks: list[Block]) -> list[tuple[int, int, int]]:
    """Place blocks block-diagonally with independent per-axis offsets."""
    off = [0, 0, 0]
    cells: list[tuple[int, int, int]] = []
    for blk in blocks:
        ax = blk.axes
        o = tuple(off)
        for loc in blk.local_cells():
            g = [0, 0, 0]
            g[ax[0]] = loc[0] + o[ax[0]]
            g[ax[1]] = loc[1] + o[ax[1]]
            g[ax[2]] = loc[2] + o[ax[2]]
            cells.append((g[0], g[1], g[2]))
        ext = blk.global_extent()
        for t in range(3):
            off[t] += ext[t]
    return cells


def majorant_of(blocks: list[Block]) -> tuple[Partition, Partition, Partition]:
    acc: list[list[int]] = [[], [], []]
    for blk in blocks:
        for ax, parts in enumerate(blk.axis_parts()):
            acc[ax].extend(parts)
    return tuple(Partition.from_parts(a) for a in acc)  # type: ignore[return-value]
