"""Exact solvers.

solve_exact extracts the matching structure, prices the contact tables once,
and walks all 2**q matching selections in reflected Gray order, re-pricing
only the tables touched by the flipped cycle at each step: O(q * 2**q + n)
after the O(q^2 + n) table build, with exactly 2**q objective evaluations.

solve_naive walks the same Gray order but rebuilds and re-prices the whole
tour at every step; it exists to cross-check results and counters.

brute_force_oracle ignores the structure machinery entirely and backtracks
over raw assignments; it is the independent ground truth for small n.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator

from . import kernels
from .contacts import compute_contact_tables, objective_from_delta
from .instance import Instance, TspvrError, tour_cost
from .structure import (Infeasible, build_structure, count_solutions,
                        solution_from_delta)

MAX_Q_EXACT = 62        # best-selection bitmask and step counters fit in 64 bits
MAX_Q_NAIVE = 20        # full re-evaluation per step; keep runs short
MAX_N_ORACLE = 14       # factorial-ish backtracking


class GuardError(TspvrError):
    """Requested computation exceeds a documented safety bound."""


@dataclass(frozen=True)
class Solution:
    """A solved tour plus the counters that certify how it was found."""

    tour: tuple[int, ...]
    cost: int
    delta: tuple[int, ...] | None
    q: int | None
    specials: int | None
    objective_evaluations: int
    delta_work: int
    provenance: str
    elapsed: float


def gray_flip_sequence(q: int) -> Iterator[int]:
    """Bit flipped at each step of the reflected Gray walk over q bits.

    Step t (t = 1 .. 2**q - 1) flips the number of trailing zero bits of t;
    starting from all zeros this visits every q-bit vector exactly once.
    """
    for t in range(1, 1 << q):
        yield (t & -t).bit_length() - 1


def mask_to_delta(mask: int, q: int) -> tuple[int, ...]:
    return tuple((mask >> j) & 1 for j in range(q))


def solve_exact(inst: Instance, *, backend: str = "auto",
                dense: bool = False) -> Solution:
    """Minimum-cost tour via the Gray walk over contact tables.

    Raises Infeasible when no tour exists and GuardError when q > 62.
    Ties go to the selection reached first in Gray order.
    """
    t0 = time.perf_counter()
    s = build_structure(inst)
    if s.q > MAX_Q_EXACT:
        raise GuardError(f"q = {s.q} exceeds the exact-solver bound {MAX_Q_EXACT}")
    tables = compute_contact_tables(inst, s, dense=dense)
    start = objective_from_delta(tables, (0,) * s.q)
    if s.q == 0:
        best, best_mask, evaluations, work = start, 0, 1, 0
    else:
        best, best_mask, evaluations, work = kernels.gray_walk_min(
            tables.packed(), start, backend=backend)
    delta = mask_to_delta(best_mask, s.q)
    tour = solution_from_delta(s, delta)
    return Solution(tour=tour, cost=int(best), delta=delta, q=s.q,
                    specials=len(s.specials),
                    objective_evaluations=int(evaluations),
                    delta_work=int(work), provenance="exact",
                    elapsed=time.perf_counter() - t0)


def solve_naive(inst: Instance) -> Solution:
    """Same walk, no incremental pricing: every step rebuilds the tour."""
    t0 = time.perf_counter()
    s = build_structure(inst)
    if s.q > MAX_Q_NAIVE:
        raise GuardError(f"q = {s.q} exceeds the naive-solver bound {MAX_Q_NAIVE}")
    delta = [0] * s.q
    best_delta = tuple(delta)
    best = tour_cost(inst, solution_from_delta(s, delta))
    evaluations = 1
    for j in gray_flip_sequence(s.q):
        delta[j] ^= 1
        cost = tour_cost(inst, solution_from_delta(s, delta))
        evaluations += 1
        if cost < best:
            best = cost
            best_delta = tuple(delta)
    tour = solution_from_delta(s, best_delta)
    return Solution(tour=tour, cost=best, delta=best_delta, q=s.q,
                    specials=len(s.specials),
                    objective_evaluations=evaluations, delta_work=0,
                    provenance="naive", elapsed=time.perf_counter() - t0)


def enumerate_feasible(inst: Instance) -> Iterator[tuple[int, ...]]:
    """All feasible assignments, by backtracking over positions.

    Candidates are tried in ascending vertex order, so the emission order
    is lexicographic.  Independent of the structure machinery on purpose.
    """
    if inst.n > MAX_N_ORACLE:
        raise GuardError(f"n = {inst.n} exceeds the enumeration bound {MAX_N_ORACLE}")
    n = inst.n
    used = [False] * (n + 1)
    chosen: list[int] = []

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i > n:
            yield tuple(chosen)
            return
        for v in inst.requisition(i):
            if not used[v]:
                used[v] = True
                chosen.append(v)
                yield from extend(i + 1)
                chosen.pop()
                used[v] = False

    yield from extend(1)


def brute_force_oracle(inst: Instance) -> Solution:
    """Ground-truth minimum by exhaustive backtracking (n <= 14 only).

    Ties go to the assignment found first in backtracking order.  Raises
    Infeasible when no assignment exists.
    """
    t0 = time.perf_counter()
    best: tuple[int, ...] | None = None
    best_cost = 0
    count = 0
    for assignment in enumerate_feasible(inst):
        cost = tour_cost(inst, assignment)
        count += 1
        if best is None or cost < best_cost:
            best, best_cost = assignment, cost
    if best is None:
        raise Infeasible()
    return Solution(tour=best, cost=best_cost, delta=None, q=None,
                    specials=None, objective_evaluations=count, delta_work=0,
                    provenance="oracle", elapsed=time.perf_counter() - t0)
