"""Partition counting, exact uniform sampling and limit-shape diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .partitions import Partition

RNG_NAME = "numpy.PCG64"
EXACT_DP_MAX = 1000
_C = math.pi / math.sqrt(6.0)


class PartitionCountTable:
    """Table of p(m, k), the partitions of m with largest part at most k, for m <= max_n.

    Row m is stored for k = 0..m; for k > m the value is p(m, m).
    """

    def __init__(self, max_n: int):
        if max_n < 0:
            raise ValueError("max_n must be non-negative")
        self.max_n = max_n
        rows: list[list[int]] = [[1]]
        for m in range(1, max_n + 1):
            row = [0] * (m + 1)
            for k in range(1, m + 1):
                rest = m - k
                row[k] = row[k - 1] + rows[rest][min(k, rest)]
            rows.append(row)
        self._rows = rows

    def p(self, m: int, k: int | None = None) -> int:
        if m < 0:
            return 0
        if m > self.max_n:
            raise ValueError(f"{m} exceeds table size {self.max_n}")
        row = self._rows[m]
        if k is None or k >= m:
            return row[m]
        return row[k] if k >= 0 else 0


@lru_cache(maxsize=4)
def count_table(max_n: int) -> PartitionCountTable:
    return PartitionCountTable(max_n)


def count_partitions(n: int) -> int:
    """p(n) from the largest-part recurrence."""
    if n < 0:
        return 0
    return count_table(max(n, EXACT_DP_MAX)).p(n)


def count_partitions_pentagonal(n: int) -> int:
    """p(n) from Euler's pentagonal-number recurrence (independent check)."""
    if n < 0:
        return 0
    p = [1] + [0] * n
    for m in range(1, n + 1):
        s = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > m:
                break
            sign = 1 if j % 2 else -1
            s += sign * p[m - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= m:
                s += sign * p[m - g2]
            j += 1
        p[m] = s
    return p[n]


def make_rng(seed: int, stream: int | None = None) -> np.random.Generator:
    """Seeded generator; ``stream`` derives an independent per-trial substream."""
    ss = np.random.SeedSequence([seed] if stream is None else [seed, stream])
    return np.random.Generator(np.random.PCG64(ss))


def _uniform_bigint(bound: int, rng: np.random.Generator) -> int:
    nbits = max(1, (bound - 1).bit_length())
    nbytes = (nbits + 7) // 8
    while True:
        r = int.from_bytes(rng.bytes(nbytes), "little") >> (8 * nbytes - nbits)
        if r < bound:
            return r


def _sample_exact(n: int, rng: np.random.Generator) -> list[int]:
    tab = count_table(max(n, EXACT_DP_MAX))
    r = _uniform_bigint(tab.p(n), rng)
    parts: list[int] = []
    m, k = n, n
    while m > 0:
        k = min(k, m)
        with_k = tab.p(m - k, k)
        if r < with_k:
            parts.append(k)
            m -= k
        else:
            r -= with_k
            k -= 1
    return parts


def _sample_pdc(n: int, rng: np.random.Generator) -> list[int]:
    """Boltzmann model on parts >= 2 with the count of 1s fixed by the deficit.

    A draw with total s <= n is accepted with probability x^(n-s), after which
    the remaining n - s units become parts of size 1. The accepted output is
    exactly uniform over partitions of n.
    """
    x = math.exp(-_C / math.sqrt(n))
    ks = np.arange(2, n + 1)
    q = -np.expm1(ks * math.log(x))
    while True:
        z = rng.geometric(q) - 1
        s = int(np.dot(ks, z))
        if s > n:
            continue
        if rng.random() < x ** (n - s):
            parts: list[int] = []
            for i in np.nonzero(z)[0][::-1]:
                parts.extend([int(ks[i])] * int(z[i]))
            parts.extend([1] * (n - s))
            return parts


def sample_uniform(n: int, seed: int | None = None, rng: np.random.Generator | None = None,
                   method: str = "auto") -> Partition:
    """Exactly uniform random partition of n.

    ``method`` is ``dp`` (count-table inversion), ``pdc`` (rejection on a
    Boltzmann model) or ``auto``, which uses dp up to ``EXACT_DP_MAX``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if rng is None:
        if seed is None:
            raise ValueError("a seed or a generator is required")
        rng = make_rng(seed)
    if n == 0:
        return Partition(())
    if method == "auto":
        method = "dp" if n <= EXACT_DP_MAX else "pdc"
    if method == "dp":
        parts = _sample_exact(n, rng)
    elif method == "pdc":
        parts = _sample_pdc(n, rng) if n >= 2 else [1]
    else:
        raise ValueError(f"unknown sampling method {method!r}")
    return Partition(tuple(parts))


def _density(x: float) -> float:
    if x == 0.0:
        return 1.0 / _C
    if _C * x > 700.0:
        return x * math.exp(-_C * x)
    return x / math.expm1(_C * x)


def limit_shape_mass(s0: float, s1: float) -> float:
    """Integral of x / (exp(pi x / sqrt 6) - 1) over [s0, s1]; s1 may be infinite."""
    if s0 < 0 or s1 < s0:
        raise ValueError("need 0 <= s0 <= s1")
    if s1 == s0:
        return 0.0
    val, _ = quad(_density, s0, s1, epsabs=1e-13, epsrel=1e-12, limit=200)
    return float(val)


@dataclass
class ShapeReport:
    """Maximal gap between empirical and limiting mass over subintervals of a window."""

    n: int
    t0: float
    t1: float
    grid: int
    deviation: float
    argmax: tuple[float, float]
    cells: list[dict] = field(default_factory=list)
    approximation: str = ("sup over subintervals whose endpoints lie on the uniform grid "
                          "or on scaled part values; exact for the step-function term")

    def to_dict(self) -> dict:
        return {"v": 1, "n": self.n, "t0": self.t0, "t1": self.t1, "grid": self.grid,
                "deviation": self.deviation, "argmax": list(self.argmax), "cells": self.cells,
                "approximation": self.approximation}


def shape_deviation(p: Partition, t0: float = 0.1, t1: float = 3.0, grid: int = 64) -> ShapeReport:
    """Sup over [s0, s1] in [t0, t1] of |n^-1 sum p_j 1{p_j/sqrt(n) in [s0, s1]} - mass(s0, s1)|."""
    if not t0 < t1:
        raise ValueError("need t0 < t1")
    n = p.total
    if n == 0:
        raise ValueError("empty partition")
    v = np.asarray(p.parts, dtype=float) / math.sqrt(n)
    w = np.asarray(p.parts, dtype=float) / n
    inside = (v >= t0) & (v <= t1)
    pts = np.unique(np.concatenate([np.linspace(t0, t1, grid + 1), v[inside]]))
    cum = np.zeros(len(pts))
    for i in range(1, len(pts)):
        cum[i] = cum[i - 1] + limit_shape_mass(pts[i - 1], pts[i])
    order = np.argsort(v)
    vs, ws = v[order], np.concatenate([[0.0], np.cumsum(w[order])])
    le = ws[np.searchsorted(vs, pts, side="right")]
    lt = ws[np.searchsorted(vs, pts, side="left")]
    L = cum[None, :] - cum[:, None]
    closed = le[None, :] - lt[:, None]
    opened = np.maximum(lt[None, :] - le[:, None], 0.0)
    upper = np.triu(np.ones_like(L, dtype=bool))
    gap = np.where(upper, np.maximum(closed - L, L - opened), -np.inf)
    i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
    edges = np.linspace(t0, t1, grid + 1)
    cells = []
    for a, b in zip(edges[:-1], edges[1:]):
        emp = float(w[(v >= a) & (v < b)].sum())
        cells.append({"s0": float(a), "s1": float(b), "empirical": emp,
                      "limit": limit_shape_mass(float(a), float(b))})
    return ShapeReport(n, float(t0), float(t1), grid, float(gap[i, j]),
                       (float(pts[i]), float(pts[j])), cells)
