"""Command-line interface.

Exit status: 0 success or realizable, 1 usage error, 2 proven not realizable
(or a failed check), 3 not applicable or budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import BudgetExceeded, Contingency3DError, InvalidParams, PartitionParseError
from .partitions import Partition, conjugate
from .tables import MarginalTriple, Table3D, marginals

EXIT_OK, EXIT_USAGE, EXIT_NO, EXIT_NA = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _part(text: str | None, name: str) -> Partition:
    if text is None:
        raise UsageError(f"--{name} is required")
    return Partition.parse(text)


def _read_lines(path: str) -> list[str]:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


def _triple(args) -> MarginalTriple:
    if getattr(args, "input", None):
        lines = _read_lines(args.input)
        if len(lines) != 3:
            raise UsageError("input file must hold three partitions, one per line")
        return MarginalTriple(*(Partition.parse(ln) for ln in lines))
    return MarginalTriple(_part(args.lam, "lambda"), _part(args.mu, "mu"), _part(args.nu, "nu"))


def _params(args):
    from .realizer.params import RealizerParams

    if getattr(args, "strict", False):
        base = RealizerParams.asymptotic()
    else:
        base = RealizerParams()
    kw = {}
    for name in ("theta", "A", "B", "A0", "A1"):
        v = getattr(args, name, None)
        if v is not None:
            kw[name] = v
    if getattr(args, "descent", None):
        kw["descent"] = args.descent
    if getattr(args, "gate_shape", False):
        kw["gate_shape"] = True
    if kw:
        if "A0" in kw and "A1" not in kw:
            kw["A1"] = None
        base = base.with_(**kw)
    return base


def _budget(args):
    from .oracle import SearchBudget

    return SearchBudget(max_cells=args.max_cells, max_nodes=args.max_nodes)


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def cmd_realize(args) -> int:
    from .realizer import realize_auto

    t = _triple(args)
    out = realize_auto(t, _params(args), small_cutoff=args.small_cutoff, budget=_budget(args),
                       transport_fallback=args.transport_fallback)
    if args.log:
        Path(args.log).write_text(out.log_jsonl())
    if out.ok:
        if args.format == "json":
            _emit(_json({"v": 1, "status": out.status, "engine": out.engine,
                         "cells": sorted(list(c) for c in out.table.cells)}), args.output)
        else:
            _emit(out.table.to_text(), args.output)
        return EXIT_OK
    rep = out.report.to_dict() if out.report else {}
    _emit(_json({"v": 1, "status": out.status, "engine": out.engine, **rep}), args.output)
    return EXIT_NO if out.status == "not_realizable" else EXIT_NA


def cmd_hypergraph(args) -> int:
    from .hypergraph import realize_hypergraph

    p = _part(args.degrees, "degrees")
    out = realize_hypergraph(p, _params(args) if args.theta is not None or args.A0 is not None else None,
                             A=args.split_A, small_cutoff=args.small_cutoff,
                             transport_fallback=not args.no_transport, budget=_budget(args))
    if out.ok:
        _emit(out.hypergraph.to_text(), args.output)
        print(f"# engine={out.engine} split={out.split}", file=sys.stderr)
        return EXIT_OK
    rep = out.report.to_dict() if out.report else {}
    _emit(_json({"v": 1, "status": out.status, **rep, "attempts": out.attempts}), args.output)
    return EXIT_NO if out.status == "not_realizable" else EXIT_NA


def cmd_verify(args) -> int:
    table = Table3D.from_text(Path(args.table).read_text() if args.table != "-" else sys.stdin.read())
    t = _triple(args)
    got = marginals(table).as_tuple()
    if got == t.as_tuple():
        print("ok")
        return EXIT_OK
    print("mismatch")
    for name, g, w in zip(("lambda", "mu", "nu"), got, t.as_tuple()):
        if g != w:
            print(f"  {name}: table {g.to_text()} expected {w.to_text()}")
    return EXIT_NO


def cmd_oracle(args) -> int:
    from . import oracle

    b = _budget(args)
    try:
        if args.task == "decide-hypergraph":
            es = oracle.decide_hypergraph_small(_part(args.degrees, "degrees"), b)
            if es is None:
                print("not realizable")
                return EXIT_NO
            from .hypergraph import Hypergraph3

            sys.stdout.write(Hypergraph3.from_edges(es).to_text())
            return EXIT_OK
        t = _triple(args)
        if args.task == "decide-table":
            w = oracle.decide_table(t, b)
            if w is None:
                print("not realizable")
                return EXIT_NO
            sys.stdout.write(w.to_text())
            return EXIT_OK
        if args.task == "count-tables":
            print(oracle.count_tables(t, b))
            return EXIT_OK
        print(oracle.count_pyramids(t, b))
        return EXIT_OK
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_NA


def cmd_pyramid_check(args) -> int:
    from .partitions import dominance_leq

    lam, nu = _part(args.lam, "lambda"), _part(args.nu, "nu")
    if lam.total != nu.total:
        raise UsageError("lambda and nu must have the same total")
    if dominance_leq(conjugate(nu), lam):
        print("ok: nu' dominated by lambda")
        return EXIT_OK
    print("fails: nu' not dominated")
    return EXIT_NO


def cmd_linear_check(args) -> int:
    from .hypergraph import linear_necessary

    p = _part(args.degrees, "degrees")
    if linear_necessary(p):
        print("passes: shadow condition holds")
        return EXIT_OK
    print("fails: no linear 3-uniform hypergraph")
    return EXIT_NO


def cmd_sample(args) -> int:
    from .random_partitions import make_rng, sample_uniform

    rng = make_rng(args.seed)
    lines = [sample_uniform(args.n, rng=rng, method=args.method).to_text() for _ in range(args.count)]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_shape(args) -> int:
    from .random_partitions import RNG_NAME, sample_uniform, shape_deviation

    if args.partition:
        p = Partition.parse(args.partition)
        meta = {}
    else:
        if args.n is None or args.seed is None:
            raise UsageError("give --partition, or --n together with --seed")
        p = sample_uniform(args.n, seed=args.seed)
        meta = {"seed": args.seed, "rng": RNG_NAME}
    rep = shape_deviation(p, args.t0, args.t1, args.grid)
    d = rep.to_dict()
    if not args.cells:
        d.pop("cells")
    d.update(meta)
    _emit(_json(d), args.output)
    return EXIT_OK


def cmd_montecarlo(args) -> int:
    from .montecarlo import montecarlo

    s = montecarlo(args.n, args.trials, args.experiment, _params(args), args.seed, args.workers)
    _emit(s.to_csv() if args.format == "csv" else _json(s.to_dict()), args.output)
    return EXIT_OK


def _add_triple(p: argparse.ArgumentParser, need_mu: bool = True) -> None:
    p.add_argument("--lambda", dest="lam", metavar="PARTS")
    p.add_argument("--mu", metavar="PARTS")
    p.add_argument("--nu", metavar="PARTS")
    p.add_argument("--input", metavar="FILE", help="three partitions, one per line ('-' for stdin)")


def _add_params(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("realizer constants")
    g.add_argument("--theta", type=float)
    g.add_argument("--A", type=float)
    g.add_argument("--B", type=float)
    g.add_argument("--A0", type=float)
    g.add_argument("--A1", type=float)
    g.add_argument("--strict", action="store_true", help="asymptotic constants, all preconditions gated")
    g.add_argument("--gate-shape", action="store_true")
    g.add_argument("--descent", choices=("auto", "covers", "transfers"))


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-cells", type=int, default=64)
    p.add_argument("--max-nodes", type=int, default=2_000_000)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="contingency3d",
                                 description="Realize 3D binary contingency tables and 3-uniform hypergraphs.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("realize", help="triple of partitions -> table")
    _add_triple(p)
    _add_params(p)
    _add_budget(p)
    p.add_argument("--small-cutoff", type=int, default=12)
    p.add_argument("--transport-fallback", action="store_true")
    p.add_argument("--format", choices=("table-v1", "json"), default="table-v1")
    p.add_argument("--log", metavar="FILE", help="write the construction log as JSON lines")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("hypergraph", help="partition of 3n -> hg3-v1 hypergraph")
    p.add_argument("--degrees", metavar="PARTS")
    _add_params(p)
    _add_budget(p)
    p.add_argument("--split-A", type=float, default=8.0)
    p.add_argument("--small-cutoff", type=int, default=12)
    p.add_argument("--no-transport", action="store_true")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_hypergraph)

    p = sub.add_parser("verify", help="check a table-v1 file against a triple")
    p.add_argument("--table", required=True, metavar="FILE")
    _add_triple(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact small-instance search")
    p.add_argument("task", choices=("decide-table", "count-tables", "count-pyramids", "decide-hypergraph"))
    _add_triple(p)
    p.add_argument("--degrees", metavar="PARTS")
    _add_budget(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("pyramid-check", help="test nu' <= lambda")
    _add_triple(p)
    p.set_defaults(func=cmd_pyramid_check)

    p = sub.add_parser("linear-check", help="shadow-graph test for linear hypergraphs")
    p.add_argument("--degrees", metavar="PARTS")
    p.set_defaults(func=cmd_linear_check)

    p = sub.add_parser("sample", help="uniform random partition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--method", choices=("auto", "dp", "pdc"), default="auto")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("shape", help="limit-shape deviation report")
    p.add_argument("--partition", metavar="PARTS")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--t0", type=float, default=0.1)
    p.add_argument("--t1", type=float, default=3.0)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--cells", action="store_true", help="include per-cell masses")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("montecarlo", help="seeded success-rate estimate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--experiment", required=True,
                   choices=("realize", "pyramid_necessary", "shape_assumptions", "hypergraph"))
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o")
    _add_params(p)
    p.set_defaults(func=cmd_montecarlo)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except PartitionParseError as e:
        print(f"error: {e} (offending token {e.token.strip()!r})", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, InvalidParams, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Contingency3DError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
