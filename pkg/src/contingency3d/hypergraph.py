"""3-uniform hypergraphs: realization from a partition of 3n, degree descent, linear test."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .errors import DomainViolation, NotDominated, UnequalTotals
from .partitions import Partition, conjugate, covering_chain, dominance_leq
from .realizer.params import RealizerParams
from .realizer.pipeline import realize_deterministic, realize_transport
from .realizer.state import NotApplicable
from .tables import MarginalTriple, Table3D

Edge = tuple[int, int, int]


class FlipMissing(AssertionError):
    """No valid edge swap for a degree cover; would contradict the swap-existence argument."""


@dataclass(frozen=True)
class Hypergraph3:
    """Vertices 1..vertex_count; each edge is a sorted triple of distinct vertices."""

    vertex_count: int
    edges: frozenset

    def __post_init__(self) -> None:
        for e in self.edges:
            if len(e) != 3 or not (1 <= e[0] < e[1] < e[2] <= self.vertex_count):
                raise ValueError(f"bad edge {e} for {self.vertex_count} vertices")

    @classmethod
    def from_edges(cls, edges, vertex_count: int | None = None) -> "Hypergraph3":
        es = frozenset(tuple(sorted(e)) for e in edges)
        vc = max((e[2] for e in es), default=0) if vertex_count is None else vertex_count
        return cls(vc, es)

    def degrees(self) -> Counter:
        return Counter(v for e in self.edges for v in e)

    def is_linear(self) -> bool:
        seen: set = set()
        for a, b, c in self.edges:
            for pr in ((a, b), (a, c), (b, c)):
                if pr in seen:
                    return False
                seen.add(pr)
        return True

    def to_text(self) -> str:
        lines = [f"# hg3 v1 vertices={self.vertex_count} edges={len(self.edges)}"]
        lines += [f"{a} {b} {c}" for a, b, c in sorted(self.edges)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph3":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("# hg3 v1"):
            raise ValueError("missing '# hg3 v1' header")
        head = dict(tok.split("=", 1) for tok in lines[0].split()[3:])
        edges = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
        if len(edges) != int(head.get("edges", len(edges))):
            raise ValueError("edge count does not match header")
        return cls(int(head["vertices"]), frozenset(edges))


def degree_sequence(h: Hypergraph3) -> Partition:
    return Partition.from_parts(h.degrees().values())


def table_to_tripartite(m: Table3D) -> Hypergraph3:
    """Axis-1 rows become vertices 1..r1, axis-2 rows follow, then axis-3 rows."""
    r1 = max((c[0] for c in m.cells), default=0)
    r2 = max((c[1] for c in m.cells), default=0)
    r3 = max((c[2] for c in m.cells), default=0)
    edges = frozenset((i, r1 + j, r1 + r2 + k) for i, j, k in m.cells)
    return Hypergraph3(r1 + r2 + r3, edges)


class _EdgeStore:
    def __init__(self, h: Hypergraph3):
        self.edges = set(h.edges)
        self.inc: dict[int, set] = {}
        for e in self.edges:
            for v in e:
                self.inc.setdefault(v, set()).add(e)

    def swap(self, e: Edge, u: int, w: int) -> None:
        new = tuple(sorted(w if x == u else x for x in e))
        self.edges.remove(e)
        for v in e:
            self.inc[v].discard(e)
        self.edges.add(new)
        for v in new:
            self.inc.setdefault(v, set()).add(new)

    def replacement(self, e: Edge, u: int, w: int) -> Edge | None:
        if w in e:
            return None
        new = tuple(sorted(w if x == u else x for x in e))
        return None if new in self.edges else new

    def move(self, u: int, w: int, count: int, ordered: bool) -> None:
        """Move ``count`` edges from u to w, one valid swap at a time."""
        cand = sorted(self.inc.get(u, ())) if ordered else list(self.inc.get(u, ()))
        done = 0
        for e in cand:
            if done == count:
                break
            if self.replacement(e, u, w) is not None:
                self.swap(e, u, w)
                done += 1
        if done < count:
            raise FlipMissing(f"only {done} of {count} swaps from vertex {u} to {w}")


def descend_degrees(h: Hypergraph3, target: Partition, method: str = "auto") -> Hypergraph3:
    """Lower the degree sequence to ``target`` by swapping one vertex of an edge at a time."""
    cur = degree_sequence(h)
    if cur.total != target.total:
        raise UnequalTotals(f"degree total {cur.total} differs from target {target.total}")
    if not dominance_leq(target, cur):
        raise NotDominated(f"target {target} not dominated by degrees {cur}")
    if cur == target:
        return h
    st = _EdgeStore(h)
    deg = h.degrees()
    perm = sorted(range(1, h.vertex_count + 1), key=lambda v: (-deg[v], v))
    L = max(len(cur), len(target)) + 1
    vc = h.vertex_count
    while len(perm) < L:
        vc += 1
        perm.append(vc)
    perm = perm[:max(L, len(cur))]
    vals = [deg[v] for v in perm]
    goal = list(target.parts) + [0] * (len(perm) - len(target))
    if method == "auto":
        gap = s = 0
        for c, t in zip(vals, goal):
            s += c - t
            gap += s
        method = "covers" if gap <= 2000 else "transfers"
    if method == "covers":
        for stp in reversed(covering_chain(target, cur)):
            st.move(perm[stp.j - 1], perm[stp.k - 1], 1, ordered=True)
    elif method == "transfers":
        i = 0
        n = len(perm)
        while True:
            while i < n and vals[i] <= goal[i]:
                i += 1
            if i == n:
                break
            j = i + 1
            while vals[j] >= goal[j]:
                j += 1
            d = min(vals[i] - goal[i], goal[j] - vals[j])
            st.move(perm[i], perm[j], d, ordered=False)
            vals[i] -= d
            vals[j] += d
    else:
        raise ValueError(f"unknown descent method {method!r}")
    out = Hypergraph3(max(vc, h.vertex_count), frozenset(st.edges))
    if degree_sequence(out) != target:  # pragma: no cover - guarded by the swap argument
        raise FlipMissing(f"descent reached {degree_sequence(out)}, wanted {target}")
    return out


def _dominates_multiset(upper: list[int], p: Partition) -> bool:
    return dominance_leq(p, Partition.from_parts(upper))


def split_three_way(p: Partition, A: float = 8.0) -> MarginalTriple:
    """Majorize p and cut it into three partitions of n, each carrying N parts of size a.

    Parts above A sqrt(3n) are merged; parts at most sqrt(3n)/A are pooled into
    parts of size a = floor(sqrt(3n)/A). The first two outputs take the
    longest prefix of the remaining large parts whose sum stays at most
    n - aN (N = floor(sqrt(n)/4)), topped up exactly from the pool, plus N
    parts of size a. The third output keeps the rest. The sorted union of the
    outputs dominates p.
    """
    T = p.total
    if T % 3:
        raise DomainViolation("split", "total not divisible by 3")
    n = T // 3
    root = math.sqrt(T)
    thr = A * root
    a = int(root / A)
    big = sum(v for v in p.parts if v > thr)
    small = sum(v for v in p.parts if v <= a) if a >= 1 else 0
    if big > T / (2 * A * A):
        raise DomainViolation("split", f"mass {big} above A sqrt(3n) exceeds 3n/(2A^2)")
    if small < T / (2 * A) or a < 1:
        raise DomainViolation("split", f"mass {small} at or below sqrt(3n)/A is under 3n/(2A)")
    mid = [v for v in p.parts if a < v <= thr]
    head = ([big] if big else []) + mid
    q, r = divmod(small, a)
    pool = sorted([a] * q + ([r] if r else []))
    N = math.isqrt(n) // 4
    target = n - a * N
    if target < 0:
        raise DomainViolation("split", "n - aN is negative")
    out = []
    for _ in range(2):
        s = i = 0
        while i < len(head) and s + head[i] <= target:
            s += head[i]
            i += 1
        pre, head = list(head[:i]) or [0], head[i:]
        d = target - s
        while d > 0:
            if not pool:
                raise DomainViolation("split", "size-a pool exhausted while topping up a prefix")
            take = min(pool[0], d)
            pool[0] -= take
            d -= take
            pre[0] += take
            if pool[0] == 0:
                pool.pop(0)
        if pool.count(a) < N:
            raise DomainViolation("split", f"fewer than N={N} parts of size a={a} left")
        for _ in range(N):
            pool.remove(a)
        out.append([v for v in pre if v] + [a] * N)
    out.append(head + pool)
    tri = MarginalTriple(*(Partition.from_parts(v for v in o if v) for o in out))
    if not _dominates_multiset([v for o in tri.as_tuple() for v in o.parts], p):
        raise DomainViolation("split", "split majorant fails to dominate the input")
    return tri


def split_balanced(p: Partition) -> MarginalTriple:
    """Greedy split into three piles of n, then exact balancing that only raises dominance.

    Parts go one by one, largest first, to the currently lightest pile. Any
    imbalance is repaired by moving mass from the heaviest pile's smallest
    parts onto the lightest pile's largest part, which is never smaller.
    """
    T = p.total
    if T % 3:
        raise DomainViolation("split", "total not divisible by 3")
    n = T // 3
    piles: list[list[int]] = [[], [], []]
    sums = [0, 0, 0]
    for v in p.parts:
        i = min(range(3), key=lambda t: (sums[t], t))
        piles[i].append(v)
        sums[i] += v
    for _ in range(3):
        h = max(range(3), key=lambda t: sums[t])
        lo = min(range(3), key=lambda t: sums[t])
        d = min(sums[h] - n, n - sums[lo])
        if d <= 0:
            break
        if not piles[lo]:
            piles[lo] = [0]
        top = max(piles[lo])
        asc = sorted(piles[h])
        moved = 0
        kept = []
        for v in asc:
            take = min(v, d - moved)
            if take and v > top:
                raise DomainViolation("split", "balancing would move mass onto a smaller part")
            moved += take
            if v - take:
                kept.append(v - take)
        piles[h] = kept
        k = piles[lo].index(top)
        piles[lo][k] += d
        sums[h] -= d
        sums[lo] += d
    if sums != [n, n, n]:
        raise DomainViolation("split", "piles could not be balanced")
    tri = MarginalTriple(*(Partition.from_parts(v for v in pl if v) for pl in piles))
    if not _dominates_multiset([v for o in tri.as_tuple() for v in o.parts], p):
        raise DomainViolation("split", "balanced split fails to dominate the input")
    return tri


@dataclass
class HypergraphOutcome:
    """``status`` is realized, not_realizable, not_applicable or budget_exceeded."""

    status: str
    hypergraph: Hypergraph3 | None = None
    engine: str = ""
    split: str = ""
    report: NotApplicable | None = None
    attempts: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "realized"


def hypergraph_params(params: RealizerParams | None = None) -> RealizerParams:
    """Default realizer constants for the hypergraph route (theta = 1/5)."""
    return params or RealizerParams(theta=0.2)


def realize_hypergraph(p: Partition, params: RealizerParams | None = None, A: float = 8.0,
                       small_cutoff: int = 12, transport_fallback: bool = True,
                       budget=None) -> HypergraphOutcome:
    """Realize p (a partition of 3n) as a 3-uniform hypergraph degree sequence.

    Splits are tried in order: the construction with N blocks of size a,
    then the balanced split. Each split goes to the deterministic realizer
    and, when enabled, to the transport engine. The table becomes a
    tripartite hypergraph whose degrees are then lowered to p.
    """
    from .errors import BudgetExceeded
    from .oracle import SearchBudget, decide_hypergraph_small

    if p.total % 3:
        return HypergraphOutcome("not_realizable", report=NotApplicable("input", "total not divisible by 3"))
    if p.total == 0:
        return HypergraphOutcome("realized", Hypergraph3(0, frozenset()), "trivial")
    if p.total <= small_cutoff:
        try:
            es = decide_hypergraph_small(p, budget or SearchBudget())
        except BudgetExceeded as e:
            return HypergraphOutcome("budget_exceeded", engine="oracle", report=NotApplicable("oracle", str(e)))
        if es is None:
            return HypergraphOutcome("not_realizable", engine="oracle")
        return HypergraphOutcome("realized", Hypergraph3.from_edges(es, len(p)), "oracle")

    params = hypergraph_params(params)
    attempts: list[str] = []
    for split_name, splitter in (("blocks", lambda: split_three_way(p, A)),
                                 ("balanced", lambda: split_balanced(p))):
        try:
            tri = splitter()
        except DomainViolation as e:
            attempts.append(f"{split_name}: {e.reason}")
            continue
        engines = [("deterministic", lambda: realize_deterministic(tri, params))]
        if transport_fallback:
            engines.append(("transport", lambda: realize_transport(tri)))
        for eng, run in engines:
            out = run()
            if not out.ok:
                attempts.append(f"{split_name}/{eng}: {out.report.stage}: {out.report.reason}")
                continue
            h = descend_degrees(table_to_tripartite(out.table), p)
            if degree_sequence(h) != p:  # pragma: no cover - soundness guard
                raise AssertionError("hypergraph degrees differ from input")
            return HypergraphOutcome("realized", h, eng, split_name, None, attempts)
    last = attempts[-1] if attempts else "no split applied"
    stage, _, reason = last.partition(": ")
    return HypergraphOutcome("not_applicable", None, "", "", NotApplicable(stage, reason), attempts)


def linear_necessary(p: Partition) -> bool:
    """Erdos-Gallai on the shadow graph, whose degrees are 2p.

    With mu = 2p and D the Durfee size of mu, a linear 3-uniform hypergraph
    needs sum_{i<=k} mu'_i >= sum_{i<=k} (mu_i + 1) for every k <= D.
    """
    mu = [2 * v for v in p.parts]
    if not mu:
        return True
    D = sum(1 for i, v in enumerate(mu, start=1) if v >= i)
    mc = conjugate(Partition(tuple(mu))).parts
    lhs = rhs = 0
    for k in range(1, D + 1):
        lhs += mc[k - 1]
        rhs += mu[k - 1] + 1
        if lhs < rhs:
            return False
    return True


def linear_brute_force(p: Partition) -> bool:
    """Exhaustive search for a linear 3-uniform hypergraph with degrees p (tiny inputs only)."""
    if p.total % 3:
        return False
    res = list(p.parts)
    nv = len(res)
    pairs: set = set()

    def rec(last: tuple[int, ...] | None) -> bool:
        try:
            v = next(i for i, r in enumerate(res) if r > 0)
        except StopIteration:
            return True
        for a, b in combinations([u for u in range(v + 1, nv) if res[u] > 0], 2):
            e = (v, a, b)
            if last is not None and last[0] == v and e <= last:
                continue
            prs = ((v, a), (v, b), (a, b))
            if any(x in pairs for x in prs):
                continue
            for x in e:
                res[x] -= 1
            pairs.update(prs)
            if rec(e):
                return True
            pairs.difference_update(prs)
            for x in e:
                res[x] += 1
        return False

    return rec(None)
