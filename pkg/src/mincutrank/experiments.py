"""Seeded experiment sweeps and benchmarks producing tidy records.

Every sweep returns a list of flat ``dict`` rows with the same keys, ready
for :func:`write_rows`.  All randomness is derived from one integer seed
through :class:`numpy.random.SeedSequence`, so a sweep is reproducible and
its rows do not depend on the order in which parallel jobs complete.
"""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TextIO

import numpy as np

from .anneal import AnnealResult, Schedule, anneal
from .graph import Graph, Hamiltonian, gen_erdos_renyi, gen_grid, gen_qaoa_graph, random_hamiltonian

__all__ = [
    "SCHEMA_VERSION",
    "RUN_FIELDS",
    "derive_seed",
    "run_record",
    "grid_sweep",
    "sparse_sweep",
    "qaoa_sweep",
    "bench",
    "summarize",
    "write_rows",
    "format_value",
    "rows_to_text",
]

SCHEMA_VERSION = 1

#: Columns of a per-run record, in output order.
RUN_FIELDS = [
    "schema_version",
    "experiment",
    "family",
    "params",
    "n",
    "size",
    "instance",
    "seed",
    "schedule",
    "backend",
    "initial_rank",
    "final_rank",
    "best_rank",
    "accepted_swaps",
    "evaluated_swaps",
    "init_ms",
    "anneal_ms",
    "total_ms",
    "cases",
]


def derive_seed(seed: int, *keys: int) -> int:
    """A 32-bit seed determined by ``seed`` and the integer ``keys``."""
    return int(np.random.SeedSequence([seed, *keys]).generate_state(1)[0])


def _case_string(result: AnnealResult) -> str:
    return ";".join(f"{k}={v}" for k, v in sorted(result.case_counts.items()))


def run_record(experiment: str, family: str, params: dict, g: Graph, instance: int, result: AnnealResult, schedule: Schedule) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "experiment": experiment,
        "family": family,
        "params": json.dumps(params, sort_keys=True, separators=(",", ":")),
        "n": g.n,
        "size": len(result.best_partition),
        "instance": instance,
        "seed": result.seed,
        "schedule": str(schedule),
        "backend": result.backend,
        "initial_rank": result.initial_rank,
        "final_rank": result.final_rank,
        "best_rank": result.best_rank,
        "accepted_swaps": result.accepted_swaps,
        "evaluated_swaps": result.evaluated_swaps,
        "init_ms": 1e3 * result.init_time,
        "anneal_ms": 1e3 * (result.wall_time - result.init_time),
        "total_ms": 1e3 * result.wall_time,
        "cases": _case_string(result),
    }


def _run_task(task: tuple) -> dict:
    experiment, family, params, g, instance, size, schedule, seed, backend = task
    result = anneal(g, size, schedule, seed, backend)
    return run_record(experiment, family, params, g, instance, result, schedule)


def _run_all(tasks: list[tuple], jobs: int) -> list[dict]:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return [_run_task(t) for t in tasks]


def grid_sweep(
    sizes: Iterable[int] = range(3, 13),
    restarts: int = 100,
    schedule: Schedule | None = None,
    seed: int = 0,
    backend: str = "incremental",
    jobs: int = 1,
) -> list[dict]:
    """Balanced cuts of ``k x k`` grids, ``restarts`` seeded runs per ``k``.

    The known optimum for ``k >= 3`` is ``k``; :func:`summarize` reports the
    mean deviation from it.
    """
    schedule = schedule or Schedule.default()
    tasks = []
    for k in sizes:
        g = gen_grid(k, k)
        params = {"rows": k, "cols": k}
        for r in range(restarts):
            tasks.append(("grid-sweep", "grid", params, g, r, g.n // 2, schedule, derive_seed(seed, k, r), backend))
    return _run_all(tasks, jobs)


def sparse_sweep(
    sizes: Iterable[int] = (20, 40, 60, 80, 100, 150),
    c: float = 2.0,
    p1: float = 0.5,
    instances: int = 100,
    schedule: Schedule | None = None,
    seed: int = 0,
    backend: str = "incremental",
    jobs: int = 1,
) -> list[dict]:
    """Erdos-Renyi graphs ``G(n, c/n)`` with a first part of ``round(p1 * n)`` vertices."""
    schedule = schedule or Schedule.default()
    if not 0 < p1 < 1:
        raise ValueError("p1 must lie strictly between 0 and 1")
    tasks = []
    for n in sizes:
        size = min(max(1, round(p1 * n)), n - 1)
        params = {"c": c, "p1": p1, "p": c / n}
        for k in range(instances):
            g = gen_erdos_renyi(n, c / n, derive_seed(seed, 1, n, k))
            tasks.append(("sparse-sweep", "er", params, g, k, size, schedule, derive_seed(seed, 2, n, k), backend))
    return _run_all(tasks, jobs)


def qaoa_sweep(
    num_qubits: int = 40,
    term_counts: Iterable[int] = (100, 150, 200),
    localities: Iterable[int] = (2, 3),
    schedules: Sequence[Schedule] | None = None,
    instances: int = 10,
    restarts: int = 1,
    seed: int = 0,
    backend: str = "incremental",
    jobs: int = 1,
    hamiltonians: Sequence[Hamiltonian] | None = None,
) -> list[dict]:
    """Balanced cuts of measurement-based QAOA resource graphs.

    Random Hamiltonians have distinct, uniformly drawn supports.  Every
    schedule runs on the same instances with the same annealing seeds, so
    schedules can be compared instance by instance.  Passing
    ``hamiltonians`` replaces the random instances by the given ones.
    """
    schedules = list(schedules) if schedules else [Schedule.default(), Schedule.fine()]
    if hamiltonians is not None:
        cases = [(h, len(h.terms), max(len(t) for t in h.terms), k) for k, h in enumerate(hamiltonians)]
    else:
        cases = [
            (random_hamiltonian(num_qubits, m, loc, derive_seed(seed, 3, loc, m, k)), m, loc, k)
            for loc in localities
            for m in term_counts
            for k in range(instances)
        ]
    tasks = []
    for h, m, loc, k in cases:
        g, _, _ = gen_qaoa_graph(h)
        params = {"num_qubits": h.num_qubits, "terms": m, "locality": loc}
        for sched in schedules:
            for r in range(restarts):
                run_seed = derive_seed(seed, 4, loc, m, k, r)
                tasks.append(("qaoa-sweep", "qaoa", params, g, k, g.n // 2, sched, run_seed, backend))
    return _run_all(tasks, jobs)


def bench(
    sizes: Iterable[int] = range(5, 16),
    backends: Sequence[str] = ("incremental", "naive"),
    repeats: int = 3,
    schedule: Schedule | None = None,
    seed: int = 0,
    timer: Callable[[], float] = time.perf_counter,
) -> list[dict]:
    """Wall time of one annealing run on balanced ``k x k`` grid cuts.

    One row per ``(k, backend)`` with the median and minimum over
    ``repeats`` timed runs.  All backends use the same seed, hence the same
    trajectory.
    """
    schedule = schedule or Schedule.default()
    rows = []
    for k in sizes:
        g = gen_grid(k, k)
        for backend in backends:
            times = []
            result = None
            for _ in range(repeats):
                t0 = timer()
                result = anneal(g, g.n // 2, schedule, seed, backend)
                times.append(timer() - t0)
            rows.append(
                {
                    "schema_version": SCHEMA_VERSION,
                    "family": "grid",
                    "k": k,
                    "n": g.n,
                    "backend": backend,
                    "seed": seed,
                    "schedule": str(schedule),
                    "repeats": repeats,
                    "median_ms": 1e3 * statistics.median(times),
                    "min_ms": 1e3 * min(times),
                    "final_rank": result.final_rank,
                    "evaluated_swaps": result.evaluated_swaps,
                }
            )
    return rows


def summarize(rows: Sequence[dict], by: Sequence[str] = ("experiment", "family", "params", "n", "schedule")) -> list[dict]:
    """Per-group means of the rank and timing columns of run records.

    Grid groups also get ``mean_deviation``, the mean of ``best_rank - k``.
    """
    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        groups.setdefault(tuple(row[k] for k in by), []).append(row)
    out = []
    for key, members in groups.items():
        best = np.array([m["best_rank"] for m in members], dtype=float)
        item = {"schema_version": SCHEMA_VERSION, **dict(zip(by, key))}
        item.update(
            runs=len(members),
            mean_initial_rank=float(np.mean([m["initial_rank"] for m in members])),
            mean_final_rank=float(np.mean([m["final_rank"] for m in members])),
            mean_best_rank=float(best.mean()),
            min_best_rank=int(best.min()),
            max_best_rank=int(best.max()),
            mean_total_ms=float(np.mean([m["total_ms"] for m in members])),
        )
        if members[0]["family"] == "grid":
            k = json.loads(members[0]["params"])["rows"]
            item["mean_deviation"] = float(best.mean() - k)
        out.append(item)
    return out


def format_value(v) -> str:
    """CSV cell text; floats keep 6 significant digits."""
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return f"{v:.6g}"
    return str(v)


def write_rows(rows: Sequence[dict], dest: TextIO, fmt: str = "csv") -> None:
    """Write records as CSV (header always present) or as a JSON array."""
    if fmt == "json":
        json.dump(list(rows), dest, indent=2)
        dest.write("\n")
        return
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    fields: list[str] = []
    for row in rows:
        for k in row:
            if k not in fields:
                fields.append(k)
    writer = csv.writer(dest, lineterminator="\n")
    writer.writerow(fields or ["schema_version"])
    for row in rows:
        writer.writerow([format_value(row.get(k, "")) for k in fields])


def rows_to_text(rows: Sequence[dict], fmt: str = "csv") -> str:
    buf = io.StringIO()
    write_rows(rows, buf, fmt)
    return buf.getvalue()
