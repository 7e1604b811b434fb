"""Simulated annealing for fixed-size bipartitions of minimal cut rank."""

from __future__ import annotations

import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .cutrank import CutRankState, naive_cut_rank
from .gf2 import iter_bits, rank_of_rows
from .graph import Graph

__all__ = ["Schedule", "AnnealResult", "RestartsResult", "anneal", "anneal_restarts", "accept"]

Backend = Literal["incremental", "naive"]


@dataclass(frozen=True)
class Schedule:
    """Ordered, strictly positive temperatures."""

    temperatures: tuple[float, ...]

    def __post_init__(self):
        temps = tuple(float(t) for t in self.temperatures)
        if not temps:
            raise ValueError("schedule must contain at least one temperature")
        if any(not t > 0 for t in temps):
            raise ValueError("temperatures must be positive")
        object.__setattr__(self, "temperatures", temps)

    @classmethod
    def linear(cls, start: float, stop: float, steps: int) -> "Schedule":
        """``steps`` equidistant temperatures from ``start`` down to ``stop``."""
        if steps < 1:
            raise ValueError("steps must be >= 1")
        if steps == 1:
            return cls((float(start),))
        return cls(tuple(round(float(t), 12) for t in np.linspace(start, stop, steps)))

    @classmethod
    def default(cls) -> "Schedule":
        """1.0, 0.9, ..., 0.1."""
        return cls.linear(1.0, 0.1, 10)

    @classmethod
    def fine(cls) -> "Schedule":
        """100 equidistant steps over the same range as :meth:`default`."""
        return cls.linear(1.0, 0.1, 100)

    @classmethod
    def parse(cls, text: str) -> "Schedule":
        """``default``, ``fine``, ``start:stop:steps`` or a comma-separated list."""
        text = text.strip()
        if text == "default":
            return cls.default()
        if text == "fine":
            return cls.fine()
        if ":" in text:
            start, stop, steps = text.split(":")
            return cls.linear(float(start), float(stop), int(steps))
        return cls(tuple(float(t) for t in text.split(",")))

    def __len__(self) -> int:
        return len(self.temperatures)

    def __str__(self) -> str:
        if self == Schedule.default():
            return "default"
        if self == Schedule.fine():
            return "fine"
        return ",".join(f"{t:g}" for t in self.temperatures)


@dataclass
class AnnealResult:
    best_partition: tuple[int, ...]
    best_rank: int
    final_partition: tuple[int, ...]
    final_rank: int
    initial_rank: int
    accepted_swaps: int
    evaluated_swaps: int
    seed: int
    backend: str
    swaps: list[tuple[int, int]] = field(default_factory=list)
    trace: list[tuple[float, int, int]] = field(default_factory=list)
    case_counts: Counter = field(default_factory=Counter)
    wall_time: float = field(default=0.0, compare=False)
    init_time: float = field(default=0.0, compare=False)

    @property
    def improvement(self) -> int:
        return self.initial_rank - self.best_rank


def accept(delta: int, temperature: float, u: float) -> bool:
    """Metropolis test ``exp(-delta / T) > u``.

    With ``u`` in ``[0, 1)`` every non-increasing swap is accepted.
    """
    return math.exp(-delta / temperature) > u


class _NaiveBackend:
    def __init__(self, g: Graph, xmask: int):
        self.rows = g.rows
        self.full = (1 << g.n) - 1
        self.xmask = xmask
        self.rank = self._rank(xmask)

    def _rank(self, xmask: int) -> int:
        ymask = self.full & ~xmask
        rows = self.rows
        return rank_of_rows([rows[v] & ymask for v in iter_bits(xmask)])

    def delta(self, i: int, j: int) -> int:
        self._pending = self.xmask ^ ((1 << i) | (1 << j))
        self._pending_rank = self._rank(self._pending)
        return self._pending_rank - self.rank

    def commit(self, i: int, j: int) -> None:
        self.xmask = self._pending
        self.rank = self._pending_rank


class _IncrementalBackend:
    def __init__(self, g: Graph, xmask: int, debug: bool):
        self.state = CutRankState(g, iter_bits(xmask), debug=debug)
        self.rank = self.state.rank
        self.cases: Counter = Counter()

    @property
    def xmask(self) -> int:
        return self.state.x_mask

    def delta(self, i: int, j: int) -> int:
        self._last = cls = self.state._classify(i, j)
        self.cases[cls[0][0]] += 1
        return cls[0][1]

    def commit(self, i: int, j: int) -> None:
        state = self.state
        state.apply_swap(state._build_delta(i, j, self._last))
        self.rank = state.rank


def anneal(
    g: Graph,
    size: int,
    schedule: Schedule | None = None,
    seed: int = 0,
    backend: Backend = "incremental",
    *,
    live_iteration: bool = False,
    initial: Sequence[int] | None = None,
    debug: bool = False,
) -> AnnealResult:
    """Search a bipartition ``|X| = size`` of minimal cut rank.

    For every temperature the sweep visits each ``i`` of a snapshot of ``X``
    (ascending) and, for each, each ``j`` of a snapshot of ``Y``
    (ascending).  Once ``i`` has been swapped out the rest of its inner
    sweep is skipped.  Every evaluated swap draws exactly one uniform number
    from a PCG64 stream seeded with ``seed``; both backends therefore see the
    same draws and, computing the same deltas, the same trajectory.

    With ``live_iteration`` the sweep runs over positions of two arrays
    holding ``X`` and ``Y``; a swap exchanges the two entries in place and
    the sweep carries on with whatever vertex now sits at each position.
    """
    n = g.n
    if not 1 <= size <= n - 1:
        raise ValueError(f"partition size {size} must lie in [1, {n - 1}]")
    schedule = schedule or Schedule.default()
    if backend not in ("incremental", "naive"):
        raise ValueError(f"unknown backend {backend!r}")
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    if initial is None:
        xs = sorted(rng.choice(n, size=size, replace=False).tolist())
    else:
        xs = sorted(set(initial))
        if len(xs) != size:
            raise ValueError("initial partition does not have the requested size")
    xmask = 0
    for v in xs:
        xmask |= 1 << v
    full = (1 << n) - 1
    be = _IncrementalBackend(g, xmask, debug) if backend == "incremental" else _NaiveBackend(g, xmask)
    t_init = time.perf_counter() - t0
    initial_rank = best_rank = be.rank
    best_mask = xmask
    accepted = evaluated = 0
    swaps: list[tuple[int, int]] = []
    trace = []
    draw = rng.random
    delta = be.delta

    for temp in schedule.temperatures:
        step_accepts = 0
        # exp(-dc/T) for the only possible deltas -2..2
        weight = {dc: math.exp(-dc / temp) for dc in range(-2, 3)}
        if live_iteration:
            xarr = list(iter_bits(be.xmask))
            yarr = list(iter_bits(full & ~be.xmask))
            for a in range(len(xarr)):
                for b in range(len(yarr)):
                    i, j = xarr[a], yarr[b]
                    evaluated += 1
                    if weight[delta(i, j)] > draw():
                        be.commit(i, j)
                        xarr[a], yarr[b] = j, i
                        accepted += 1
                        step_accepts += 1
                        swaps.append((i, j))
                        if be.rank < best_rank:
                            best_rank, best_mask = be.rank, be.xmask
        else:
            # iter_bits walks an int snapshot lazily; the inner sweep usually
            # stops long before exhausting Y
            for i in iter_bits(be.xmask):
                if not (be.xmask >> i) & 1:
                    continue
                for j in iter_bits(full & ~be.xmask):
                    evaluated += 1
                    if weight[delta(i, j)] > draw():
                        be.commit(i, j)
                        accepted += 1
                        step_accepts += 1
                        swaps.append((i, j))
                        if be.rank < best_rank:
                            best_rank, best_mask = be.rank, be.xmask
                        break
        trace.append((temp, be.rank, step_accepts))

    final_mask = be.xmask
    return AnnealResult(
        best_partition=tuple(iter_bits(best_mask)),
        best_rank=best_rank,
        final_partition=tuple(iter_bits(final_mask)),
        final_rank=be.rank,
        initial_rank=initial_rank,
        accepted_swaps=accepted,
        evaluated_swaps=evaluated,
        seed=seed,
        backend=backend,
        swaps=swaps,
        trace=trace,
        case_counts=getattr(be, "cases", Counter()),
        wall_time=time.perf_counter() - t0,
        init_time=t_init,
    )


@dataclass
class RestartsResult:
    """Best run over several seeded restarts plus aggregate statistics."""

    best: AnnealResult
    results: list[AnnealResult]

    @property
    def best_rank(self) -> int:
        return self.best.best_rank

    @property
    def mean_final_rank(self) -> float:
        return float(np.mean([r.final_rank for r in self.results]))

    @property
    def mean_best_rank(self) -> float:
        return float(np.mean([r.best_rank for r in self.results]))

    @property
    def min_final_rank(self) -> int:
        return min(r.final_rank for r in self.results)

    @property
    def max_final_rank(self) -> int:
        return max(r.final_rank for r in self.results)

    @property
    def mean_improvement(self) -> float:
        return float(np.mean([r.initial_rank - r.final_rank for r in self.results]))

    @property
    def wall_time(self) -> float:
        return sum(r.wall_time for r in self.results)


def _anneal_job(args):
    g, size, schedule, seed, backend, live = args
    return anneal(g, size, schedule, seed, backend, live_iteration=live)


def anneal_restarts(
    g: Graph,
    size: int,
    schedule: Schedule | None = None,
    restarts: int = 1,
    base_seed: int = 0,
    backend: Backend = "incremental",
    *,
    jobs: int = 1,
    live_iteration: bool = False,
) -> RestartsResult:
    """Run :func:`anneal` with seeds ``base_seed .. base_seed + restarts - 1``.

    The best run has the lowest ``best_rank``; ties go to the lowest seed.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    schedule = schedule or Schedule.default()
    jobs_args = [(g, size, schedule, base_seed + k, backend, live_iteration) for k in range(restarts)]
    if jobs > 1 and restarts > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_anneal_job, jobs_args))
    else:
        results = [_anneal_job(a) for a in jobs_args]
    best = min(results, key=lambda r: (r.best_rank, r.seed))
    return RestartsResult(best=best, results=results)
