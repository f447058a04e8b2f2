"""Random and structured instance generation, plus goodness statistics.

Uniform-pairs mode draws each requisition as a uniformly random 2-subset
of the vertices and every relevant-arc weight uniformly from
[0, weight_max].  A draw whose bipartite graph admits no perfect matching
is rejected (generate returns None) and the caller may resample.

Forced-q mode builds an instance whose reduced graph has exactly q cycles:
positions 2t-1 and 2t share the candidate pair {2t-1, 2t}, which the
reduction turns into one 4-cycle, and every other position is pinned to a
single vertex.

All randomness flows through the counter-based generator in rng, so an
instance is a pure function of its config and identical across platforms.
Counter layout for a draw with base seed s:

    uniform-pairs   counters 0 .. 2n-1   requisitions (u then the other)
                    counters 2n ..       weights, sorted relevant arcs
    forced-q        counters 0 ..        weights, sorted relevant arcs

good_graph_stats samples requisitions only (the cycle count does not
depend on weights), drawing trial t from the substream seed
substream(seed, t) so any batching is invisible in the results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rng
from .instance import MAX_TOTAL_COST, Instance, make_instance
from .structure import Infeasible, structure_from_requisitions

STATS_BATCH = 4096


@dataclass(frozen=True)
class GenConfig:
    n: int
    seed: int
    weight_max: int
    forced_q: int | None = None     # None selects uniform-pairs mode

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if self.weight_max < 0:
            raise ValueError(f"weight_max must be nonnegative, got {self.weight_max}")
        if self.n * self.weight_max > MAX_TOTAL_COST:
            raise ValueError("n * weight_max exceeds the exact-cost bound "
                             f"{MAX_TOTAL_COST}")
        if self.forced_q is not None:
            if self.forced_q < 0:
                raise ValueError(f"forced q must be nonnegative, got {self.forced_q}")
            if 2 * self.forced_q > self.n:
                raise ValueError(f"forced q = {self.forced_q} needs "
                                 f"2q <= n = {self.n}")


def _uniform_requisitions(n: int, seed: int) -> list[tuple[int, int]]:
    reqs = []
    for i in range(n):
        u = rng.bounded(rng.value(seed, 2 * i), n) + 1
        w = rng.bounded(rng.value(seed, 2 * i + 1), n - 1) + 1
        v = w + (1 if w >= u else 0)
        reqs.append((u, v) if u < v else (v, u))
    return reqs


def _relevant_arcs(n: int, reqs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    arcs = set()
    for i in range(n):
        nxt = (i + 1) % n
        for u in reqs[i]:
            for v in reqs[nxt]:
                if u != v:
                    arcs.add((u, v))
    return sorted(arcs)


def generate(cfg: GenConfig) -> Instance | None:
    """Draw one instance; None means the draw was infeasible (rejected)."""
    if cfg.forced_q is None:
        reqs = _uniform_requisitions(cfg.n, cfg.seed)
        try:
            structure_from_requisitions(cfg.n, reqs)
        except Infeasible:
            return None
        base = 2 * cfg.n
    else:
        reqs = []
        for i in range(1, cfg.n + 1):
            if i <= 2 * cfg.forced_q:
                t = (i + 1) // 2
                reqs.append((2 * t - 1, 2 * t))
            else:
                reqs.append((i,))
        base = 0
    weights = {}
    for r, (u, v) in enumerate(_relevant_arcs(cfg.n, reqs)):
        weights[(u, v)] = rng.bounded(rng.value(cfg.seed, base + r),
                                      cfg.weight_max + 1)
    return make_instance(cfg.n, reqs, weights)


# ====== goodness statistics ======

def goodness_threshold(n: int) -> float:
    return 1.1 * math.log(n)


@dataclass(frozen=True)
class StatsReport:
    n: int
    seed: int
    trials: int                 # requested number of feasible samples
    threshold: float
    draws: int
    feasible: int
    rejected: int
    good: int
    histogram: dict[int, int]   # q -> count over feasible samples
    truncated: bool
    max_draws: int | None

    @property
    def rejection_rate(self) -> float:
        return self.rejected / self.draws if self.draws else 0.0

    @property
    def good_fraction(self) -> float | None:
        return self.good / self.feasible if self.feasible else None


def _batch_requisitions(seed: int, start: int, count: int, n: int) -> np.ndarray:
    """Requisitions for draws start .. start+count-1, shape (count, n, 2)."""
    streams = rng.substream_block(seed, start, count)
    grid = rng.value_grid(streams, 0, 2 * n)
    u = rng.bounded_vec(grid[:, 0::2], n) + 1
    w = rng.bounded_vec(grid[:, 1::2], n - 1) + 1
    v = w + (w >= u)
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    return np.stack([lo, hi], axis=2)


def good_graph_stats(n: int, trials: int, seed: int,
                     max_draws: int | None = None) -> StatsReport:
    """Sample uniform-pairs draws until `trials` feasible ones are seen.

    Rejected draws are skipped but counted; for each feasible draw the
    cycle count q is recorded.  A draw is "good" when q stays within
    1.1 ln n.  max_draws stops the sampling early (truncated report) so
    regimes with vanishing feasibility still terminate.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    threshold = goodness_threshold(n)
    histogram: dict[int, int] = {}
    draws = feasible = good = 0
    truncated = False
    while feasible < trials:
        if max_draws is not None and draws >= max_draws:
            truncated = True
            break
        count = STATS_BATCH
        if max_draws is not None:
            count = min(count, max_draws - draws)
        batch = _batch_requisitions(seed, draws, count, n)
        # Coverage fast path: a vertex outside every requisition has
        # degree zero, so the draw is infeasible without running the
        # reduction.
        covered = np.zeros((count, n + 1), dtype=bool)
        rows = np.arange(count)[:, None]
        covered[rows, batch[:, :, 0]] = True
        covered[rows, batch[:, :, 1]] = True
        candidates = np.flatnonzero(covered[:, 1:].all(axis=1))
        stop_at = None      # batch offset of the draw completing the target
        for idx in candidates:
            reqs = [tuple(int(x) for x in pair) for pair in batch[idx]]
            try:
                s = structure_from_requisitions(n, reqs)
            except Infeasible:
                continue
            feasible += 1
            histogram[s.q] = histogram.get(s.q, 0) + 1
            if s.q <= threshold:
                good += 1
            if feasible == trials:
                stop_at = int(idx)
                break
        if stop_at is None:
            draws += count
        else:
            draws += stop_at + 1
            break
    rejected = draws - feasible
    return StatsReport(n=n, seed=seed, trials=trials, threshold=threshold,
                       draws=draws, feasible=feasible, rejected=rejected,
                       good=good, histogram=dict(sorted(histogram.items())),
                       truncated=truncated, max_draws=max_draws)


def format_stats(report: StatsReport) -> str:
    lines = [
        f"n {report.n}",
        f"seed {report.seed}",
        f"trials {report.trials}",
        f"threshold {report.threshold:.4f}",
    ]
    if report.max_draws is not None:
        lines.append(f"max-draws {report.max_draws}")
    lines.append(f"draws {report.draws}")
    lines.append(f"feasible {report.feasible}")
    lines.append(f"rejected {report.rejected}")
    lines.append(f"rejection-rate {report.rejection_rate:.6f}")
    lines.append(f"good {report.good}")
    fraction = report.good_fraction
    lines.append("good-fraction n/a" if fraction is None
                 else f"good-fraction {fraction:.6f}")
    for q, count in report.histogram.items():
        lines.append(f"hist {q} {count}")
    lines.append(f"truncated {'yes' if report.truncated else 'no'}")
    return "\n".join(lines) + "\n"
