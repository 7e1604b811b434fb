"""End-to-end acceptance checks.

Each test prints one ``[PASS]`` or ``[FAIL]`` line; the lines are repeated in
the pytest terminal summary.  Run on its own with

    pytest tests/test_acceptance.py -v
"""

from __future__ import annotations

import collections
import json
import time

import numpy as np
import pytest

from mincutrank.anneal import Schedule, anneal, anneal_restarts
from mincutrank.cli import main as cli_main
from mincutrank.cutrank import ALL_CASE_IDS, CutRankState
from mincutrank.distribute import plan_distribution, verify_recovery
from mincutrank.experiments import qaoa_sweep
from mincutrank.graph import (
    EXAMPLE_HAMILTONIAN,
    Graph,
    delete_vertices,
    gen_grid,
    local_complement,
    read_edge_list,
    write_hamiltonian,
)

from conftest import ACCEPTANCE_LINES, cut_rank_reference, random_graph

DENSITIES = (0.1, 0.2, 0.3, 0.5, 0.7, 0.9)


def report(num: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def random_instance(rng: np.random.Generator, max_n: int, min_n: int = 2):
    n = int(rng.integers(min_n, max_n + 1))
    g = random_graph(rng, n, float(rng.choice(DENSITIES)))
    k = int(rng.integers(1, n))
    x = sorted(rng.choice(n, size=k, replace=False).tolist())
    return g, x


def test_1_oracle_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    hist: collections.Counter = collections.Counter()
    mismatches = pairs = applied = 0
    for _ in range(1000):
        g, x = random_instance(rng, 24)
        s = CutRankState(g, x)
        r0 = cut_rank_reference(g, x)
        mismatches += s.rank != r0
        xs = set(x)
        all_pairs = [(i, j) for i in sorted(s.x) for j in sorted(s.y)]
        for i, j in all_pairs:
            d = s.evaluate_swap(i, j)
            hist[d.case_id] += 1
            pairs += 1
            mismatches += d.delta != cut_rank_reference(g, (xs - {i}) | {j}) - r0
        # basis maintenance: apply a few swaps with full invariant checks
        for k in rng.choice(len(all_pairs), size=min(3, len(all_pairs)), replace=False):
            t = s.copy()
            t.debug = True
            t.apply_swap(s.evaluate_swap(*all_pairs[int(k)]))
            applied += 1
    missing = [c for c in ALL_CASE_IDS if not hist[c]]
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and not missing and elapsed < 120
    report(
        1,
        "incremental deltas equal naive rank differences",
        ok,
        f"{pairs} swaps on 1000 instances, {mismatches} mismatches, {applied} checked updates, "
        f"{len(ALL_CASE_IDS) - len(missing)}/{len(ALL_CASE_IDS)} table rows hit, {elapsed:.1f} s",
    )
    assert ok, missing


def test_2_worked_example():
    t0 = time.perf_counter()
    g = Graph.from_edges(6, [(0, 3), (0, 4), (1, 3), (1, 4), (1, 5), (2, 5)])
    rank = cut_rank_reference(g, [0, 1, 2])
    plan = plan_distribution(g, [0, 1, 2])
    # the identity G = G' * 6 * 7 * 6 * 8 * 9 * 8 - {6, 7, 8, 9}
    h = Graph.from_edges(10, [(0, 6), (1, 6), (6, 7), (7, 3), (7, 4), (2, 8), (1, 8), (8, 9), (9, 5)])
    for v in (6, 7, 6, 8, 9, 8):
        h = local_complement(h, v)
    h, _ = delete_vertices(h, [6, 7, 8, 9])
    elapsed = time.perf_counter() - t0
    ok = rank == 2 and len(plan.ancilla_pairs) == 2 and verify_recovery(plan) and h == g and elapsed < 1
    report(2, "worked example rank, plan and recovery identity", ok, f"rank {rank}, pairs {list(plan.ancilla_pairs)}")
    assert ok


def test_3_grid_optimality():
    t0 = time.perf_counter()
    found = {}
    for k in range(3, 9):
        g = gen_grid(k, k)
        res = anneal_restarts(g, g.n // 2, Schedule.default(), restarts=20, base_seed=0)
        hits = [r.seed for r in res.results if r.best_rank == k]
        found[k] = (res.best_rank, hits[0] + 1 if hits else None)
    elapsed = time.perf_counter() - t0
    ok = all(found[k][0] == k for k in found) and elapsed < 300
    detail = ", ".join(f"{k}x{k}: rank {r} (first hit at restart {first})" for k, (r, first) in found.items())
    report(3, "balanced grid cuts reach rank n within 20 restarts", ok, f"{detail}; {elapsed:.1f} s")
    assert ok


def test_4_speedup_on_15x15_grid():
    g = gen_grid(15, 15)
    totals = {"incremental": 0.0, "naive": 0.0}
    ranks = {}
    for seed in range(3):
        for backend in totals:
            # best of two to damp scheduler noise; same treatment for both backends
            times = []
            for _ in range(2):
                res = anneal(g, g.n // 2, Schedule.default(), seed, backend)
                times.append(res.wall_time)
            totals[backend] += min(times)
            ranks[(seed, backend)] = res.final_rank
    ratio = totals["incremental"] / totals["naive"]
    same = all(ranks[(s, "incremental")] == ranks[(s, "naive")] for s in range(3))
    ok = ratio <= 0.1 and same
    report(
        4,
        "incremental/naive wall-time ratio on 15x15 grid",
        ok,
        f"ratio {ratio:.3f} (incremental {totals['incremental']:.2f} s, naive {totals['naive']:.2f} s, 3 seeds)",
    )
    assert ok


def test_5_local_complementation_invariance():
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    failures = 0
    for _ in range(500):
        g, x = random_instance(rng, 20)
        v = int(rng.integers(g.n))
        h = local_complement(g, v)
        failures += cut_rank_reference(g, x) != cut_rank_reference(h, x)
        failures += CutRankState(h, x).rank != CutRankState(g, x).rank
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 30
    report(5, "cut rank invariant under local complementation", ok, f"500 triples, {failures} failures, {elapsed:.1f} s")
    assert ok


def test_6_distribution_rule():
    t0 = time.perf_counter()
    rng = np.random.default_rng(11)
    failures = 0
    ranks = collections.Counter()
    for _ in range(500):
        g, x = random_instance(rng, 16)
        plan = plan_distribution(g, x)
        r = cut_rank_reference(g, x)
        ranks[r] += 1
        failures += not (plan.rank == r and len(plan.cross_edges()) == r and verify_recovery(plan))
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 60
    report(6, "embedding has r cross edges and recovers the graph", ok, f"500 instances, max rank {max(ranks)}, {failures} failures, {elapsed:.1f} s")
    assert ok


def test_7_qaoa_example(tmp_path, capsys):
    t0 = time.perf_counter()
    hpath = tmp_path / "h.json"
    gpath = tmp_path / "qaoa.el"
    write_hamiltonian(EXAMPLE_HAMILTONIAN, hpath)
    code = cli_main(["gen", "--family", "qaoa", "--hamiltonian", str(hpath), "--out", str(gpath)])
    capsys.readouterr()
    g = read_edge_list(gpath)
    res = anneal_restarts(g, 6, Schedule.default(), restarts=20, base_seed=0)
    elapsed = time.perf_counter() - t0
    ok = code == 0 and g.n == 12 and res.best_rank == 3 and len(res.best.best_partition) == 6 and elapsed < 30
    report(7, "QAOA example graph has a 6/6 cut of rank 3", ok, f"n={g.n}, best {res.best_rank} with X={list(res.best.best_partition)}, {elapsed:.1f} s")
    assert ok


def test_8_qaoa_scaling_trend():
    t0 = time.perf_counter()
    term_counts = (100, 150, 200)
    rows = qaoa_sweep(
        num_qubits=40,
        term_counts=term_counts,
        localities=(3,),
        schedules=[Schedule.default(), Schedule.fine()],
        instances=10,
        seed=0,
    )
    elapsed = time.perf_counter() - t0
    ranks: dict[tuple[str, int], list[int]] = collections.defaultdict(list)
    for r in rows:
        m = json.loads(r["params"])["terms"]
        ranks[(r["schedule"], m)].append(r["best_rank"])
    mean = {key: float(np.mean(v)) for key, v in ranks.items()}
    bounded = all(r["best_rank"] <= 40 for r in rows)
    monotone = all(mean[("default", a)] <= mean[("default", b)] for a, b in zip(term_counts, term_counts[1:]))
    finer = all(mean[("fine", m)] <= mean[("default", m)] for m in term_counts)
    ok = bounded and monotone and finer and elapsed < 1800
    detail = "; ".join(f"{m} terms: {mean[('default', m)]:.1f} (10 steps) / {mean[('fine', m)]:.1f} (100 steps)" for m in term_counts)
    report(8, "40-qubit QAOA ranks bounded, growing with terms, lower with finer schedule", ok, f"{detail}; {elapsed:.0f} s")
    assert bounded, "rank above the number of qubits"
    assert monotone, mean
    assert finer, mean


def test_9_backend_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(99)
    diffs = 0
    for k in range(100):
        g, x = random_instance(rng, 20, min_n=3)
        live = bool(k % 2)
        a = anneal(g, len(x), seed=k, backend="incremental", live_iteration=live)
        b = anneal(g, len(x), seed=k, backend="naive", live_iteration=live)
        diffs += (a.swaps, a.final_partition, a.final_rank, a.best_rank) != (b.swaps, b.final_partition, b.final_rank, b.best_rank)
    elapsed = time.perf_counter() - t0
    ok = diffs == 0 and elapsed < 120
    report(9, "incremental and naive backends follow identical trajectories", ok, f"100 instances, {diffs} differences, {elapsed:.1f} s")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
