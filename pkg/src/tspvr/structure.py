"""Bipartite matching structure underlying the requisition tour problem.

Positions 1..n form one side of a bipartite graph, vertices 1..n the other;
position i is adjacent to its candidate vertices.  Feasible tours correspond
one to one to perfect matchings of this graph.

Two facts drive the whole solver.  First, any vertex of degree 1 fixes an
edge that every perfect matching must contain (a special edge); deleting its
endpoints and repeating until no degree-1 vertex remains peels off all
forced choices, and a degree-0 vertex anywhere in the process proves there
is no perfect matching at all.  Second, the residual graph left by the
reduction is 2-regular, so it splits into disjoint even cycles, and each
cycle admits exactly two perfect matchings of its own.  A matching of the
whole graph is therefore the special edges plus one independent binary
choice per cycle, 2**q matchings for q cycles.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .instance import Instance, TspvrError


class Infeasible(TspvrError):
    """The instance admits no feasible tour.  Normal outcome, not a fault."""

    def __init__(self, kind: str | None = None, index: int | None = None):
        self.kind = kind
        self.index = index
        if kind is None:
            super().__init__("no feasible assignment exists")
        else:
            super().__init__(f"{kind} {index} has no remaining candidate")


@dataclass(frozen=True)
class Cycle:
    """One residual cycle, recorded in traversal order.

    positions[t] and vertices[t] alternate along the cycle; edges are
    (positions[t], vertices[t]) and (vertices[t], positions[t+1]), indices
    mod the cycle length.  matching 0 takes the first family, matching 1
    the second; matching 0 pairs the lowest position of the cycle with its
    smaller candidate.
    """

    positions: tuple[int, ...]
    vertices: tuple[int, ...]
    m0: dict[int, int] = field(compare=False)
    m1: dict[int, int] = field(compare=False)

    def matched(self, i: int, bit: int) -> int:
        return self.m1[i] if bit else self.m0[i]


@dataclass(frozen=True)
class MatchingStructure:
    """Special edges plus residual cycles of one instance."""

    n: int
    specials: dict[int, int]            # position -> forced vertex
    cycles: tuple[Cycle, ...]           # ascending by lowest position
    cycle_of: dict[int, int]            # position -> cycle index (0-based)

    @property
    def q(self) -> int:
        return len(self.cycles)


def find_special_edges(n: int, requisitions: Sequence[Sequence[int]]):
    """Run the degree-1 fixpoint reduction.

    Returns (specials, residual_positions, residual_vertices) where the
    residuals are adjacency maps of the surviving nodes.  Raises Infeasible
    as soon as any vertex runs out of candidates; the witness is the first
    such vertex in FIFO processing order (positions seeded left to right,
    then vertices in index order).
    """
    left: dict[int, set[int]] = {i: set(req)
                                 for i, req in enumerate(requisitions, start=1)}
    right: dict[int, set[int]] = {x: set() for x in range(1, n + 1)}
    for i, req in left.items():
        for x in req:
            right[x].add(i)

    queue: deque[tuple[str, int]] = deque()
    for i in range(1, n + 1):
        if len(left[i]) <= 1:
            queue.append(("position", i))
    for x in range(1, n + 1):
        if len(right[x]) <= 1:
            queue.append(("vertex", x))

    specials: dict[int, int] = {}
    while queue:
        side, z = queue.popleft()
        if side == "position":
            if z not in left:
                continue
            adj = left[z]
        else:
            if z not in right:
                continue
            adj = right[z]
        if not adj:
            raise Infeasible(side, z)
        if len(adj) != 1:  # degrees only decrease; a seeded node stays <= 1
            raise AssertionError("reduction queue saw a node of degree 2")
        partner = next(iter(adj))
        i, x = (z, partner) if side == "position" else (partner, z)
        specials[i] = x
        for w in sorted(right[x] - {i}):
            left[w].discard(x)
            if len(left[w]) <= 1:
                queue.append(("position", w))
        for y in sorted(left[i] - {x}):
            right[y].discard(i)
            if len(right[y]) <= 1:  # vertex degrees may start above 2
                queue.append(("vertex", y))
        del left[i]
        del right[x]
    return specials, left, right


def decompose_cycles(residual_positions: dict[int, set[int]],
                     residual_vertices: dict[int, set[int]]) -> list[Cycle]:
    """Split the 2-regular residual into cycles, ascending by lowest position.

    Each cycle is traversed starting from its lowest position toward that
    position's smaller candidate, which fixes matching 0 deterministically.
    """
    for i, adj in residual_positions.items():
        if len(adj) != 2:
            raise RuntimeError(f"residual graph is not 2-regular at position {i}")
    for x, adj in residual_vertices.items():
        if len(adj) != 2:
            raise RuntimeError(f"residual graph is not 2-regular at vertex {x}")

    cycles: list[Cycle] = []
    visited: set[int] = set()
    for start in sorted(residual_positions):
        if start in visited:
            continue
        positions: list[int] = []
        vertices: list[int] = []
        pos, vert = start, min(residual_positions[start])
        while True:
            positions.append(pos)
            vertices.append(vert)
            visited.add(pos)
            nxt = (residual_vertices[vert] - {pos}).pop()
            if nxt == start:
                break
            pos = nxt
            vert = (residual_positions[pos] - {vert}).pop()
        k = len(positions)
        m0 = dict(zip(positions, vertices))
        m1 = {positions[(t + 1) % k]: vertices[t] for t in range(k)}
        cycles.append(Cycle(tuple(positions), tuple(vertices), m0, m1))
    return cycles


def structure_from_requisitions(n: int,
                                requisitions: Sequence[Sequence[int]]
                                ) -> MatchingStructure:
    specials, res_pos, res_vert = find_special_edges(n, requisitions)
    cycles = decompose_cycles(res_pos, res_vert)
    cycle_of = {i: j for j, cyc in enumerate(cycles) for i in cyc.positions}
    return MatchingStructure(n, specials, tuple(cycles), cycle_of)


def build_structure(inst: Instance) -> MatchingStructure:
    """Extract the matching structure of a validated instance."""
    return structure_from_requisitions(inst.n, inst.requisitions)


def solution_from_delta(s: MatchingStructure, delta: Sequence[int]) -> tuple[int, ...]:
    """Tour assignment selected by one bit per cycle (0 = matching 0)."""
    if len(delta) != s.q:
        raise ValueError(f"delta must have length {s.q}, got {len(delta)}")
    out = []
    for i in range(1, s.n + 1):
        v = s.specials.get(i)
        if v is None:
            cyc = s.cycles[s.cycle_of[i]]
            v = cyc.matched(i, delta[s.cycle_of[i]])
        out.append(v)
    return tuple(out)


def count_solutions(s: MatchingStructure) -> int:
    """Number of feasible tours: exactly 2**q."""
    return 1 << s.q
