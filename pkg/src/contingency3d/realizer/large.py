"""Large-part absorption: strip parts above a threshold with slabs, boxes and staircases."""

from __future__ import annotations

import bisect
from collections import Counter
from typing import Iterator

from ..errors import DomainViolation
from .state import Block, StageState, isqrt_ceil


def take_from_tail(parts: list[int], amount: int) -> list[int] | None:
    """Remove ``amount`` from the smallest entries of a non-increasing list."""
    if amount == 0:
        return list(parts)
    if sum(parts) < amount:
        return None
    out = list(parts)
    i = len(out) - 1
    while amount > 0:
        if out[i] <= amount:
            amount -= out[i]
            out[i] = 0
            i -= 1
        else:
            out[i] -= amount
            amount = 0
    return [v for v in out if v]


def carve_demand(parts: list[int], demand: list[int]) -> list[int] | None:
    """Split off the multiset ``demand`` using only dominance-increasing moves.

    Each demanded size d, largest first, takes the largest unused part at most d
    and tops it up from the smallest parts. Returns the remaining parts
    (non-increasing) or None if some demand cannot be met.
    """
    pool = sorted(parts)
    lo = 0  # pool[lo:] is live; pool[lo] may be partially drained
    for d in sorted(demand, reverse=True):
        i = bisect.bisect_right(pool, d, lo) - 1
        if i < lo:
            return None
        z = pool.pop(i)
        need = d - z
        while need > 0:
            if lo >= len(pool) or pool[lo] > z:
                return None
            v = pool[lo]
            if v <= need:
                need -= v
                lo += 1
            else:
                pool[lo] = v - need
                need = 0
    return sorted(pool[lo:], reverse=True)


def _conj(widths: list[int]) -> list[int]:
    return [sum(1 for w in widths if w >= t) for t in range(1, (widths[0] if widths else 0) + 1)]


Option = tuple[str, list[int], list[int], list[int], list[int], dict]


def absorption_options(P: list[int], thr: int) -> Iterator[Option]:
    """Candidate blocks for the parts of ``P`` above ``thr``.

    Yields ``(kind, new_x_parts, y_demand, z_demand, x_rest, shape)``. The first
    candidate merges all large parts into one part padded to s^2 and strips it
    with an s x s slab. Later ones keep the large parts apart, using a box or
    a staircase over the top p parts.
    """
    big = [v for v in P if v > thr]
    p0 = len(big)
    K = sum(big)
    s = isqrt_ceil(K)
    yield ("slab", [s * s], [s] * s, [s] * s, [v for v in P if v <= thr], {"p": 1, "q": s, "r": s})
    for p in range(p0, min(p0 + 4, len(P)) + 1):
        top, rest = P[:p], P[p:]
        K1 = top[0]
        s1 = isqrt_ceil(K1)
        for q in range(s1, max(1, s1 // 3) - 1, -1):
            r = -(-K1 // q)
            yield ("box", [q * r] * p, [p * r] * q, [p * q] * r, rest, {"p": p, "q": q, "r": r})
        qs = {isqrt_ceil(top[-1]), s1}
        qs.update(int(top[-1] / f) for f in (2, 3, 4, 6, 8, 12, 16))
        for q in sorted(v for v in qs if v >= 1):
            ws = [-(-v // q) for v in top]
            yd = [sum(ws)] * q
            zd = [q * c for c in _conj(ws)]
            shape = {"p": p, "q": q, "widths": ws}
            yield ("stair", [q * w for w in ws], yd, zd, rest, shape)
            yield ("stairT", [q * w for w in ws], zd, yd, rest, shape)


def _block_for(kind: str, x: int, ys: list[int], shape: dict) -> Block:
    if kind in ("slab", "box"):
        return Block("box", (shape["p"], shape["q"], shape["r"]), (x, ys[0], ys[1]))
    widths = tuple(shape["widths"])
    if kind == "stair":
        return Block("stair", (len(widths), shape["q"], widths[0]), (x, ys[0], ys[1]), widths)
    return Block("stair", (len(widths), shape["q"], widths[0]), (x, ys[1], ys[0]), widths)


def absorb_large(state: StageState, thr: int) -> StageState:
    """Strip every part above ``thr``, axis by axis in order of decreasing large mass."""
    order = sorted(range(3), key=lambda ax: -sum(v * c for v, c in state.triple[ax].items() if v > thr))
    for x in order:
        P = state.sorted_parts(x)
        if not P or P[0] <= thr:
            continue
        ys = [y for y in range(3) if y != x]
        Ys, Zs = state.sorted_parts(ys[0]), state.sorted_parts(ys[1])
        done = False
        for kind, xp, yd, zd, rest, shape in absorption_options(P, thr):
            waste = sum(xp) - (sum(P) - sum(rest))
            new_x = take_from_tail(rest, waste)
            if new_x is None:
                continue
            new_y = carve_demand(Ys, yd)
            if new_y is None:
                continue
            new_z = carve_demand(Zs, zd)
            if new_z is None:
                continue
            state.triple[x] = Counter(new_x)
            state.triple[ys[0]] = Counter(new_y)
            state.triple[ys[1]] = Counter(new_z)
            blk = _block_for(kind, x, ys, shape)
            state.add_block(blk, "large", kind, sum(xp), shape.get("q", 0))
            state.check()
            done = True
            break
        if not done:
            raise DomainViolation(
                "large", f"axis {x + 1}: no block absorbs {sum(v for v in P if v > thr)} "
                f"units of parts above {thr}")
    return state
