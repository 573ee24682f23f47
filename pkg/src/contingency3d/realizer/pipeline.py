"""End-to-end realization: absorb large parts, cover the bulk with cubes, descend to the input."""

from __future__ import annotations

import math

from ..errors import BudgetExceeded, DomainViolation
from ..partitions import Partition, dominance_leq
from ..tables import MarginalTriple, Table3D, _CellStore, descend_store, marginals
from .large import absorb_large
from .meat import realize_meat
from .params import RealizerParams
from .state import NotApplicable, RealizeOutcome, StageState, assemble, majorant_of
from .transport import transport_table


def shape_sums(p: Partition, params: RealizerParams) -> tuple[int, int]:
    """(mass in parts above B sqrt(n), mass in parts at most sqrt(n) / A)."""
    n = p.total
    hi = params.B * math.sqrt(n)
    lo = math.sqrt(n) / params.A
    return (sum(v for v in p.parts if v > hi), sum(v for v in p.parts if v <= lo))


def check_shape_assumptions(p: Partition, params: RealizerParams) -> bool:
    """Both shape inequalities: little mass in huge parts, enough mass in small parts."""
    n = p.total
    if n < 1:
        raise ValueError("shape assumptions need a partition of a positive integer")
    big, small = shape_sums(p, params)
    return big <= n / (2 * params.A**2) and small >= params.theta * n / params.A


def _fail(stage: str, reason: str, log: list[dict], diag: dict) -> RealizeOutcome:
    return RealizeOutcome("not_applicable", None, log, NotApplicable(stage, reason),
                          "deterministic", diag)


def _a_range(n: int, params: RealizerParams) -> range:
    if params.strict_paper_constants:
        a = int(math.sqrt(n) / params.A1)
        return range(a, a + 1) if a >= 1 else range(0)
    top = max(1, int(math.sqrt(n) / params.A0))
    return range(1, top + 1)


def build_majorant_state(t: MarginalTriple, params: RealizerParams) -> tuple[StageState | None, list[str]]:
    """Run the ascent phases; return the finished state or the reasons each attempt failed."""
    n = t.n
    reasons: list[str] = []
    ladder = (1.0,) if params.strict_paper_constants else params.large_ladder
    for f in ladder:
        thr = max(1, int(f * params.B * math.sqrt(n)))
        st = StageState.from_partitions(t.as_tuple())
        try:
            absorb_large(st, thr)
        except DomainViolation as e:
            reasons.append(f"{e.stage}: {e.reason}")
            continue
        rest = st.residual(0)
        tried = False
        for a in _a_range(rest, params) if rest else range(1, 2):
            tried = True
            s2 = st.copy()
            try:
                realize_meat(s2, params, a)
            except DomainViolation as e:
                reasons.append(f"{e.stage}: {e.reason} (threshold {thr}, a={a})")
                continue
            return s2, reasons
        if not tried:
            reasons.append(f"meat: cap sqrt(n)/A1 below 1 for residual total {rest}")
    return None, reasons


def realize_deterministic(t: MarginalTriple, params: RealizerParams | None = None) -> RealizeOutcome:
    """Constructive realization with exact verification. Never returns a wrong table."""
    params = params or RealizerParams()
    n = t.n
    diag: dict = {"n": n, "params": params.fingerprint()}
    if n == 0:
        return RealizeOutcome("realized", Table3D(frozenset()), [], None, "deterministic", diag)
    shape = [check_shape_assumptions(p, params) for p in t.as_tuple()]
    diag["shape_assumptions"] = shape
    if (params.gate_shape or params.strict_paper_constants) and not all(shape):
        ax = shape.index(False) + 1
        return _fail("shape", f"axis {ax} violates eq:shape-assumptions", [], diag)

    state, reasons = build_majorant_state(t, params)
    if state is None:
        diag["attempts"] = reasons
        return _fail(*reasons[-1].split(": ", 1), [], diag)

    log = list(state.log)
    maj = majorant_of(state.blocks)
    for ax, (hi, lo) in enumerate(zip(maj, t.as_tuple())):
        if hi.total != n or not dominance_leq(lo, hi):
            return _fail("assemble", f"block majorant fails to dominate axis {ax + 1}", log, diag)
    store = _CellStore(assemble(state.blocks))
    for ax, target in enumerate(t.as_tuple(), start=1):
        descend_store(store, ax, target, params.descent)
        log.append({"stage": "descend", "op": f"axis{ax}", "k_or_b": ax, "m": len(target),
                    "cells_added": 0})
    table = Table3D(frozenset(store.cells))
    got = marginals(table)
    if got.as_tuple() != t.as_tuple():  # pragma: no cover - soundness guard
        raise AssertionError(f"realized marginals {got.as_tuple()} differ from input")
    diag["blocks"] = len(state.blocks)
    return RealizeOutcome("realized", table, log, None, "deterministic", diag)


def realize_transport(t: MarginalTriple) -> RealizeOutcome:
    """Heuristic realization through a proportional transport matrix."""
    cells = transport_table(t.lam.parts, t.mu.parts, t.nu.parts)
    if cells is None:
        return RealizeOutcome("not_applicable", None, [],
                              NotApplicable("transport", "proportional matrix fails the dominance test"),
                              "transport")
    table = Table3D(frozenset(cells))
    if marginals(table).as_tuple() != t.as_tuple():  # pragma: no cover - soundness guard
        raise AssertionError("transport produced wrong marginals")
    log = [{"stage": "transport", "op": "fill", "k_or_b": 0, "m": len(t.lam), "cells_added": len(cells)}]
    return RealizeOutcome("realized", table, log, None, "transport")


DEFAULT_A0_SWEEP = (8.0, 4.0, 2.0, 1.0)


def realize_auto(t: MarginalTriple, params: RealizerParams | None = None, small_cutoff: int = 12,
                 budget=None, a0_sweep: tuple[float, ...] = DEFAULT_A0_SWEEP,
                 transport_fallback: bool = False) -> RealizeOutcome:
    """Exact search for small totals, otherwise the deterministic pipeline over an A0 sweep."""
    from ..oracle import SearchBudget, decide_table

    params = params or RealizerParams()
    if t.n <= small_cutoff:
        try:
            w = decide_table(t, budget or SearchBudget())
        except BudgetExceeded as e:
            return RealizeOutcome("budget_exceeded", None, [], NotApplicable("oracle", str(e)), "oracle")
        if w is None:
            return RealizeOutcome("not_realizable", None, [], None, "oracle")
        return RealizeOutcome("realized", w, [], None, "oracle")
    sweep = (params.A0,) if params.strict_paper_constants else tuple(
        dict.fromkeys((params.A0,) + tuple(a0_sweep)))
    out: RealizeOutcome | None = None
    for a0 in sweep:
        p = params if a0 == params.A0 else params.with_(A0=a0, A1=None)
        out = realize_deterministic(t, p)
        if out.ok:
            return out
    if transport_fallback:
        tr = realize_transport(t)
        if tr.ok:
            return tr
    assert out is not None
    return out
