"""Meat stage: cover the bulk of the triple by a common majorant built from cubes."""

from __future__ import annotations

import math
from collections import Counter
from itertools import accumulate

from ..errors import DomainViolation
from ..partitions import dominates_seq
from .params import RealizerParams
from .state import Block, StageState, isqrt_ceil
from .wide import _combine_strays, _common, _set_common, realize_wide


def t1_side(b: int) -> int:
    """Smallest m with m^2 >= b."""
    return isqrt_ceil(b)


def apply_T1(state: StageState, b: int, a: int = 1, strict: bool = False) -> StageState:
    """Raise the first m parts from b to m^2 by zeroing parts of size b; remove cube(m).

    Left-over donor mass becomes a stray; strays in (a, b) and below a are
    merged from the smaller into the larger. Strict mode also demands at least
    3 sqrt(b) parts of size b and no part above b.
    """
    parts = _common(state)
    if any(v > b for v in parts):
        raise DomainViolation("T1", f"part above b={b}")
    m = t1_side(b)
    need = m * (m * m - b)
    d = -(-need // b) if need else 0
    have = parts[b]
    if strict and have < 3 * math.sqrt(b):
        raise DomainViolation("T1", f"{have} parts of size {b} < 3 sqrt(b)")
    if have < m + d:
        raise DomainViolation("T1", f"{have} parts of size {b} < {m} recipients + {d} donors")
    parts[b] -= m + d
    excess = d * b - need
    if excess:
        parts[excess] += 1
        _combine_strays(parts, a, b)
        _combine_strays(parts, 0, a)
    _set_common(state, parts)
    state.add_block(Block("cube", (m, m, m)), "meat", "T1", b, m)
    state.check()
    return state


def plan_cube_majorant(triple: list[list[int]], a: int) -> tuple[list[int], list[int]] | None:
    """Common majorant: cube blocks, then parts of size a, then one remainder.

    Block i contributes m_i parts of m_i^2 with non-increasing sides. Blocks are
    added until the cube mass C over P parts satisfies C - aP >= max over
    j >= P of (E(j) - a j), where E is the largest prefix sum among the three
    partitions. Returns (sides, rho) or None.
    """
    n = sum(triple[0])
    L = max(len(p) for p in triple)
    pref = [list(accumulate(p)) + [n] * (L - len(p)) for p in triple]
    E = [0] + [max(pref[0][j], pref[1][j], pref[2][j]) for j in range(L)]
    H = [0] * (L + 2)
    H[L + 1] = -(10**18)
    for j in range(L, -1, -1):
        H[j] = max(H[j + 1], E[j] - a * j)

    def Hf(P: int) -> int:
        return H[P] if P <= L else n - a * P

    def region_ok(C: int, P: int, mm: int) -> bool:
        for j in range(P + 1, min(P + mm, L) + 1):
            if C + mm * mm * (j - P) < E[j]:
                return False
        return True

    sides: list[int] = []
    P = C = 0
    mprev = None
    while not (P > 0 and C - a * P >= Hf(P)):
        if P == 0:
            m = isqrt_ceil(E[1]) if L else 1
        else:
            R = Hf(P) - (C - a * P)
            m = 1
            while m < mprev and m * (m * m - a) < R:
                m += 1
            while m < mprev and not region_ok(C, P, m):
                m += 1
            if not region_ok(C, P, m):
                return None
        if m * m < a or C + m**3 > n:
            return None
        sides.append(m)
        C += m**3
        P += m
        mprev = m
    q, r = divmod(n - C, a)
    rho = sorted([s * s for s in sides for _ in range(s)] + [a] * q + ([r] if r else []),
                 reverse=True)
    for p in triple:
        if not dominates_seq(rho, p):
            return None
    return sides, rho


def tail_mass_ok(parts: list[int], n: int, params: RealizerParams) -> bool:
    cap = math.sqrt(n) / params.A1
    return sum(p for p in parts if p <= cap) >= params.theta * n / params.A1


def realize_meat(state: StageState, params: RealizerParams, a: int) -> StageState:
    """Replace the triple by a common cube majorant, strip it with T1, then go wide at cap a."""
    n = state.residual(0)
    if n == 0:
        return state
    triple = [state.sorted_parts(ax) for ax in range(3)]
    strict = params.strict_paper_constants
    if strict:
        for ax, p in enumerate(triple):
            if p and p[0] > params.B * math.sqrt(n):
                raise DomainViolation("meat", f"axis {ax + 1} has a part above B sqrt(n)")
            if not tail_mass_ok(p, n, params):
                raise DomainViolation("meat", "eq:tail-mass-assumption fails")
    if all(not p or p[0] <= a for p in triple):
        return realize_wide(state, params, a)
    plan = plan_cube_majorant(triple, a)
    if plan is None:
        raise DomainViolation("meat", f"no cube majorant with tail parts of size {a}")
    sides, rho = plan
    _set_common(state, Counter(rho))
    state.log.append({"stage": "meat", "op": "majorize", "k_or_b": int(a),
                      "m": len(sides), "cells_added": 0})
    for m in sides:
        apply_T1(state, m * m, a=a, strict=False)
    return realize_wide(state, params, a)
