"""Wide stage: halve parts of size k with T0, clean up leftovers, recurse on k // 2."""

from __future__ import annotations

import math
from collections import Counter

from ..errors import DomainViolation
from .params import RealizerParams
from .state import Block, StageState, isqrt_ceil


def t0_side(k: int) -> int:
    """Smallest m with m^2 > 9k."""
    m = math.isqrt(9 * k) + 1
    return m


def _common(state: StageState) -> Counter:
    if not state.symmetric:
        raise DomainViolation("wide", "residual triple is not symmetric")
    return +state.triple[0]


def _set_common(state: StageState, parts: Counter) -> None:
    parts = +parts
    state.triple = [Counter(parts), Counter(parts), Counter(parts)]


def _combine_strays(parts: Counter, lo_bound: int, hi_bound: int) -> None:
    """Merge parts strictly between the bounds until at most one is left.

    Mass always moves from the smaller stray to the larger one.
    """
    while True:
        mids = sorted(v for v, c in parts.items() if lo_bound < v < hi_bound for _ in range(c))
        if len(mids) < 2:
            return
        lo, hi = mids[0], mids[-1]
        mv = min(hi_bound - hi, lo - lo_bound)
        parts[lo] -= 1
        parts[hi] -= 1
        parts[lo - mv] += 1
        parts[hi + mv] += 1
        for v in (lo, hi, 0):
            if parts.get(v, 1) <= 0 or v == 0:
                parts.pop(v, None)


def apply_T0(state: StageState, k: int, strict: bool = False) -> StageState:
    """Raise m parts of size k to m^2 by lowering donors to k // 2, then remove cube(m).

    Preconditions: symmetric residual, every part at most k, at most one
    part strictly between k // 2 and k, and enough parts of size k (at least
    100 sqrt(k) in strict mode, else at least the m recipients plus donors).
    """
    parts = _common(state)
    h = k // 2
    if parts and max(parts) > k:
        raise DomainViolation("T0", f"part {max(parts)} exceeds k={k}")
    if sum(c for v, c in parts.items() if h < v < k) > 1:
        raise DomainViolation("T0", "more than one part strictly between k/2 and k")
    m = t0_side(k)
    give = k - h
    need = m * (m * m - k)
    d = -(-need // give)
    have = parts[k]
    if strict and have < 100 * math.sqrt(k):
        raise DomainViolation("T0", f"{have} parts of size {k} < 100 sqrt(k)")
    if have < m + d:
        raise DomainViolation("T0", f"{have} parts of size {k} < {m} recipients + {d} donors")
    parts[k] -= m + d
    parts[h] += d
    excess = d * give - need
    if excess:
        parts[h] -= 1
        parts[h + excess] += 1
    _combine_strays(parts, h, k)
    _set_common(state, parts)
    state.add_block(Block("cube", (m, m, m)), "wide", "T0", k, m)
    state.check()
    return state


def cleanup_leftover(state: StageState, k: int, strict: bool = False) -> StageState:
    """Remove every part above k // 2 with small cubes.

    Each round raises the top m0 = ceil(sqrt(largest)) parts to m0^2. Donor
    mass comes first from other parts above k // 2 (lowered to k // 2), then
    from the smallest parts. Strict mode uses a single cube of side
    ceil(101 sqrt(k)) with donors of size k // 2.
    """
    h = k // 2
    while True:
        parts = _common(state)
        big = max(parts, default=0)
        if big <= h:
            return state
        srt = sorted((v for v, c in parts.items() for _ in range(c)), reverse=True)
        m0 = math.ceil(101 * math.sqrt(k)) if strict else isqrt_ceil(big)
        if len(srt) < m0:
            raise DomainViolation("leftover", f"only {len(srt)} parts, need {m0} recipients")
        need = sum(m0 * m0 - p for p in srt[:m0])
        rest = srt[m0:]
        if not strict:
            i = len(rest) - 1
            while i >= 0 and rest[i] <= h:
                i -= 1
            while need > 0 and i >= 0:
                g = rest[i] - h
                if g <= need:
                    need -= g
                    rest[i] = h
                else:
                    rest[i] -= need
                    need = 0
                i -= 1
        j = len(rest) - 1
        while need > 0 and j >= 0:
            if strict and rest[j] != h:
                j -= 1
                continue
            g = rest[j]
            if g <= need:
                need -= g
                rest[j] = 0
            else:
                rest[j] -= need
                need = 0
            j -= 1
        if need > 0:
            raise DomainViolation("leftover", f"donor mass short by {need} for cube side {m0}")
        _set_common(state, Counter(v for v in rest if v > 0))
        state.add_block(Block("cube", (m0, m0, m0)), "wide", "leftover", k, m0)
        state.check()


def realize_wide(state: StageState, params: RealizerParams, k: int) -> StageState:
    """Induction on k: rectangle at cap k, T0 until stuck, clean up, recurse on k // 2."""
    tot = state.residual(0)
    if tot == 0:
        return state
    for ax in range(3):
        top = max((v for v, c in state.triple[ax].items() if c > 0), default=0)
        if top > k:
            raise DomainViolation("wide", f"axis {ax + 1} has part {top} above cap {k}")
    strict = params.strict_paper_constants
    if strict and k > math.sqrt(tot) / params.A0:
        raise DomainViolation("wide", f"cap {k} exceeds sqrt(n)/A0")
    while True:
        tot = state.residual(0)
        if tot == 0:
            return state
        q, r = divmod(tot, k)
        rect = Counter({k: q})
        if r:
            rect[r] += 1
        _set_common(state, rect)
        if k == 1:
            state.add_block(Block("diagonal", (tot, tot, tot)), "wide", "base", 1, 1)
            _set_common(state, Counter())
            state.check()
            return state
        while True:
            try:
                apply_T0(state, k, strict=strict)
            except DomainViolation:
                break
        cleanup_leftover(state, k, strict=strict)
        k //= 2
