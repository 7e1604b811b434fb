"""Command-line front end: ``mincutrank {rank,anneal,bench,gen,distribute,experiment}``.

Exit status is 0 on success, 1 on usage errors and 2 on I/O or parse
errors.  Tabular output is CSV with a header row (or JSON with
``--format json``); times are in milliseconds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

import numpy as np

from .anneal import Schedule, anneal_restarts
from .cutrank import naive_cut_rank
from .distribute import plan_distribution, verify_recovery, write_plan
from .experiments import (
    run_record,
    bench,
    grid_sweep,
    qaoa_sweep,
    rows_to_text,
    sparse_sweep,
    summarize,
)
from .graph import (
    GraphFormatError,
    gen_erdos_renyi,
    gen_grid,
    gen_qaoa_graph,
    random_hamiltonian,
    read_edge_list,
    read_hamiltonian,
    write_edge_list,
)

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    """Bad flag values discovered after parsing; exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _int_range(text: str) -> list[int]:
    """``5..15`` (inclusive) or a comma list."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
    return _int_list(text)


def _schedule(text: str) -> Schedule:
    try:
        return Schedule.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad schedule {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="master seed (default 0)")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes (default 1)")
    common.add_argument("--out", default=argparse.SUPPRESS, help="output file, prefix or directory")
    common.add_argument("--format", choices=["csv", "json"], default=argparse.SUPPRESS)

    p = _Parser(prog="mincutrank", description="Minimum cut-rank bipartitions of graph states.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def partition_flags(sp):
        sp.add_argument("--x", type=_int_list, help="explicit part X, e.g. 0,1,2")
        sp.add_argument("--size", type=int, help="draw X of this size at random from --seed")

    sp = sub.add_parser("rank", parents=[common], help="cut rank of a bipartition")
    sp.add_argument("graph")
    partition_flags(sp)

    sp = sub.add_parser("anneal", parents=[common], help="simulated annealing search")
    sp.add_argument("graph")
    sp.add_argument("--size", type=int, help="size of X (default n // 2)")
    sp.add_argument("--schedule", type=_schedule, default=Schedule.default(), help="default, fine, a:b:steps or list")
    sp.add_argument("--restarts", type=int, default=1)
    sp.add_argument("--backend", choices=["incremental", "naive"], default="incremental")

    sp = sub.add_parser("bench", parents=[common], help="time both backends on grid graphs")
    sp.add_argument("--family", choices=["grid"], default="grid")
    sp.add_argument("--n-range", type=_int_range, help="grid side lengths, e.g. 5..15")
    sp.add_argument("--backends", choices=["both", "incremental", "naive"], default="both")
    sp.add_argument("--repeats", type=int, default=3)
    sp.add_argument("--schedule", type=_schedule, default=Schedule.default())
    sp.add_argument("--large", action="store_true", help="extend the default range to 20 x 20")

    sp = sub.add_parser("gen", parents=[common], help="write a graph as an edge list")
    sp.add_argument("--family", choices=["grid", "er", "qaoa"], required=True)
    sp.add_argument("--rows", type=int)
    sp.add_argument("--cols", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--c", type=float, help="mean degree, p = c / n")
    sp.add_argument("--p", type=float, help="edge probability")
    sp.add_argument("--hamiltonian", help="JSON Hamiltonian file")
    sp.add_argument("--qubits", type=int)
    sp.add_argument("--terms", type=int)
    sp.add_argument("--locality", type=int, default=3)

    sp = sub.add_parser("distribute", parents=[common], help="ancilla embedding of a bipartition")
    sp.add_argument("graph")
    partition_flags(sp)

    sp = sub.add_parser("experiment", parents=[common], help="run a seeded sweep")
    sp.add_argument("--name", choices=["grid-sweep", "sparse-sweep", "qaoa-sweep"], required=True)
    sp.add_argument("--config", help="JSON file overriding the sweep parameters")
    sp.add_argument("--large", action="store_true", help="use the full-size ranges")
    return p


# helpers --------------------------------------------------------------------


def _emit(text: str, args) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _partition(args, n: int) -> list[int]:
    if args.x is not None and args.size is not None:
        raise UsageError("give either --x or --size, not both")
    if args.x is not None:
        xs = sorted(set(args.x))
        if len(xs) != len(args.x):
            raise UsageError("--x contains repeated vertices")
        for v in xs:
            if not 0 <= v < n:
                raise UsageError(f"vertex {v} out of range for n={n}")
        return xs
    if args.size is None:
        raise UsageError("a partition is required: --x LIST or --size N")
    if not 0 <= args.size <= n:
        raise UsageError(f"--size must lie in [0, {n}]")
    rng = np.random.default_rng(args.seed)
    return sorted(rng.choice(n, size=args.size, replace=False).tolist())


# subcommands ----------------------------------------------------------------


def cmd_rank(args) -> None:
    g = read_edge_list(args.graph)
    xs = _partition(args, g.n)
    r = naive_cut_rank(g, xs)
    if args.format == "json":
        _emit(json.dumps({"rank": r, "x": xs}) + "\n", args)
    else:
        _emit(f"{r}\n", args)


def cmd_anneal(args) -> None:
    g = read_edge_list(args.graph)
    size = g.n // 2 if args.size is None else args.size
    if not 1 <= size <= g.n - 1:
        raise UsageError(f"--size must lie in [1, {g.n - 1}]")
    if args.restarts < 1:
        raise UsageError("--restarts must be >= 1")
    res = anneal_restarts(g, size, args.schedule, args.restarts, args.seed, args.backend, jobs=args.jobs)
    params = {"graph": os.path.basename(args.graph)}
    rows = [run_record("anneal", "file", params, g, k, r, args.schedule) for k, r in enumerate(res.results)]
    for row, r in zip(rows, res.results):
        row["best_partition"] = " ".join(map(str, r.best_partition))
    _emit(rows_to_text(rows, args.format), args)


def cmd_bench(args) -> None:
    sizes = args.n_range or list(range(5, 21 if args.large else 16))
    backends = ("incremental", "naive") if args.backends == "both" else (args.backends,)
    if args.repeats < 1:
        raise UsageError("--repeats must be >= 1")
    rows = bench(sizes, backends, args.repeats, args.schedule, args.seed)
    _emit(rows_to_text(rows, args.format), args)


def cmd_gen(args) -> None:
    if args.family == "grid":
        if args.rows is None:
            raise UsageError("grid needs --rows (and optionally --cols)")
        g = gen_grid(args.rows, args.cols if args.cols is not None else args.rows)
    elif args.family == "er":
        if args.n is None or (args.c is None) == (args.p is None):
            raise UsageError("er needs --n and exactly one of --c, --p")
        p = args.p if args.p is not None else args.c / args.n
        if not 0 <= p <= 1:
            raise UsageError("edge probability must lie in [0, 1]")
        g = gen_erdos_renyi(args.n, p, args.seed)
    else:
        if args.hamiltonian:
            h = read_hamiltonian(args.hamiltonian)
        elif args.qubits and args.terms:
            try:
                h = random_hamiltonian(args.qubits, args.terms, args.locality, args.seed)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        else:
            raise UsageError("qaoa needs --hamiltonian FILE or --qubits and --terms")
        g, _, _ = gen_qaoa_graph(h)
    out = getattr(args, "out", None)
    write_edge_list(g, out if out else sys.stdout)


def cmd_distribute(args) -> None:
    g = read_edge_list(args.graph)
    xs = _partition(args, g.n)
    if len(xs) == g.n:
        raise UsageError("the complement of X must be nonempty")
    plan = plan_distribution(g, xs)
    summary = {**plan.to_dict(), "verified": verify_recovery(plan), "cross_edges": [list(e) for e in plan.cross_edges()]}
    out = getattr(args, "out", None)
    if out:
        el, js = write_plan(plan, out)
        summary["files"] = [el, js]
    sys.stdout.write(json.dumps(summary) + "\n")


_SWEEP_KEYS = {
    "grid-sweep": {"sizes", "restarts", "schedule", "backend"},
    "sparse-sweep": {"sizes", "c", "p1", "instances", "schedule", "backend"},
    "qaoa-sweep": {"num_qubits", "term_counts", "localities", "schedules", "instances", "restarts", "backend", "hamiltonians"},
}


def _load_config(args) -> dict:
    if not args.config:
        return {}
    with open(args.config) as fh:
        try:
            cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid config JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise GraphFormatError("config must be a JSON object")
    unknown = set(cfg) - _SWEEP_KEYS[args.name]
    if unknown:
        raise UsageError(f"unknown config keys for {args.name}: {', '.join(sorted(unknown))}")
    if "schedule" in cfg:
        cfg["schedule"] = Schedule.parse(str(cfg["schedule"]))
    if "schedules" in cfg:
        cfg["schedules"] = [Schedule.parse(str(s)) for s in cfg["schedules"]]
    if "hamiltonians" in cfg:
        base = os.path.dirname(os.path.abspath(args.config))
        cfg["hamiltonians"] = [read_hamiltonian(os.path.join(base, f)) for f in cfg["hamiltonians"]]
    return cfg


def cmd_experiment(args) -> None:
    cfg = _load_config(args)
    if args.name == "grid-sweep":
        cfg.setdefault("sizes", range(3, 21 if args.large else 13))
        rows = grid_sweep(seed=args.seed, jobs=args.jobs, **cfg)
    elif args.name == "sparse-sweep":
        if args.large:
            cfg.setdefault("sizes", (20, 40, 60, 80, 100, 150, 200, 300))
        rows = sparse_sweep(seed=args.seed, jobs=args.jobs, **cfg)
    else:
        if not args.large:
            cfg.setdefault("schedules", [Schedule.default()])
        rows = qaoa_sweep(seed=args.seed, jobs=args.jobs, **cfg)
    outdir = getattr(args, "out", None) or "results"
    os.makedirs(outdir, exist_ok=True)
    ext = args.format
    stem = args.name.replace("-", "_")
    paths = []
    for name, data in ((f"{stem}_runs.{ext}", rows), (f"{stem}_summary.{ext}", summarize(rows))):
        path = os.path.join(outdir, name)
        with open(path, "w") as fh:
            fh.write(rows_to_text(data, ext))
        paths.append(path)
    sys.stdout.write("\n".join(paths) + "\n")


_COMMANDS = {
    "rank": cmd_rank,
    "anneal": cmd_anneal,
    "bench": cmd_bench,
    "gen": cmd_gen,
    "distribute": cmd_distribute,
    "experiment": cmd_experiment,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("seed", 0), ("jobs", 1), ("format", "csv")):
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        _COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except (OSError, GraphFormatError) as exc:
        print(f"mincutrank: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
