"""Contact tables: the objective as a function of per-cycle matching bits.

Consecutive positions (i, i+1), and the wraparound pair (n, 1), are the
contacts of the tour: each contributes the weight of one arc, and which arc
depends only on the matching choices of the cycles the two positions belong
to.  Grouping contacts by the cycles they touch factors the tour cost into

    cost(delta) = constant
                + sum_j  single[j][delta_j]
                + sum_{j<j'} pair[(j, j')][delta_j, delta_j']

where delta is one bit per cycle.  The constant collects contacts between
two forced positions, single[j] collects contacts confined to cycle j (or
between cycle j and a forced position), and pair tables collect contacts
straddling two distinct cycles.  Building the tables costs O(q^2 + n); after
that every tour cost is a table lookup away, and flipping one bit re-prices
only the tables touching that cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .instance import Instance
from .structure import MatchingStructure


@dataclass
class WorkTally:
    """Mutable counter for incremental-evaluation work."""
    steps: int = 0


class PackedTables(NamedTuple):
    """Flat int64 arrays consumed by the enumeration kernels.

    pair holds one row per directed adjacency entry, laid out
    [w00, w01, w10, w11] indexed by 2 * own_bit + neighbour_bit.
    """
    q: int
    p0: np.ndarray
    p1: np.ndarray
    indptr: np.ndarray
    neighbor: np.ndarray
    pair: np.ndarray


@dataclass(frozen=True, eq=False)
class ContactTables:
    """Immutable factored objective.  Query via the module functions."""

    n: int
    q: int
    constant: int
    p0: tuple[int, ...]
    p1: tuple[int, ...]
    pairs: dict[tuple[int, int], tuple[int, int, int, int]] | None
    pair_dense: np.ndarray | None       # shape (q, q, 4), rows j < j' used
    adjacency: tuple[tuple[int, ...], ...]
    build_work: int

    def pair_value(self, j: int, jp: int, k: int, l: int) -> int:
        """Weight contribution of the (j, jp) pair tables with cycle j on
        matching k and cycle jp on matching l.  Zero when never in contact."""
        if j < jp:
            key, idx = (j, jp), 2 * k + l
        else:
            key, idx = (jp, j), 2 * l + k
        if self.pair_dense is not None:
            return int(self.pair_dense[key[0], key[1], idx])
        tab = self.pairs.get(key)
        return tab[idx] if tab is not None else 0

    def packed(self) -> PackedTables:
        rows = []
        nbr = []
        indptr = [0]
        for j in range(self.q):
            for jp in self.adjacency[j]:
                nbr.append(jp)
                rows.append([self.pair_value(j, jp, 0, 0),
                             self.pair_value(j, jp, 0, 1),
                             self.pair_value(j, jp, 1, 0),
                             self.pair_value(j, jp, 1, 1)])
            indptr.append(len(nbr))
        pair = (np.array(rows, dtype=np.int64) if rows
                else np.zeros((0, 4), dtype=np.int64))
        return PackedTables(self.q,
                            np.array(self.p0, dtype=np.int64),
                            np.array(self.p1, dtype=np.int64),
                            np.array(indptr, dtype=np.int64),
                            np.array(nbr, dtype=np.int64),
                            pair)


def compute_contact_tables(inst: Instance, s: MatchingStructure,
                           dense: bool = False) -> ContactTables:
    """Classify all n contacts and accumulate the tables.

    dense=True materialises the pair tables as a q x q array instead of a
    dict keyed by cycle pairs; behaviour is identical, memory is O(q^2).
    build_work counts one unit per contact classification, one per table
    write, and (dense only) one per allocated pair slot.
    """
    q = s.q
    n = inst.n
    # info[i] = (cycle index or -1 if forced, vertex under bit 0, under bit 1)
    info: list[tuple[int, int, int] | None] = [None] * (n + 1)
    for i, v in s.specials.items():
        info[i] = (-1, v, v)
    for j, cyc in enumerate(s.cycles):
        for i in cyc.positions:
            info[i] = (j, cyc.m0[i], cyc.m1[i])

    work = 0
    constant = 0
    p = [[0, 0] for _ in range(q)]
    pairs: dict[tuple[int, int], list[int]] = {}
    touched: set[tuple[int, int]] = set()  # adjacency counts zero-weight contacts too
    dense_arr = None
    if dense:
        dense_arr = np.zeros((q, q, 4), dtype=np.int64)
        work += q * q

    w = inst.weights
    for i in range(1, n + 1):
        nxt = 1 if i == n else i + 1
        ja, a0, a1 = info[i]
        jb, b0, b1 = info[nxt]
        work += 1
        if ja < 0 and jb < 0:
            constant += w[(a0, b0)]
            work += 1
        elif ja < 0:
            p[jb][0] += w[(a0, b0)]
            p[jb][1] += w[(a0, b1)]
            work += 2
        elif jb < 0:
            p[ja][0] += w[(a0, b0)]
            p[ja][1] += w[(a1, b0)]
            work += 2
        elif ja == jb:
            p[ja][0] += w[(a0, b0)]
            p[ja][1] += w[(a1, b1)]
            work += 2
        else:
            # contribution with cycle ja on bit k, cycle jb on bit l
            avs = (a0, a1)
            bvs = (b0, b1)
            if ja < jb:
                key, flip = (ja, jb), False
            else:
                key, flip = (jb, ja), True
            touched.add(key)
            if dense:
                tab = dense_arr[key[0], key[1]]
            else:
                tab = pairs.setdefault(key, [0, 0, 0, 0])
            for kk in (0, 1):
                for ll in (0, 1):
                    idx = 2 * ll + kk if flip else 2 * kk + ll
                    tab[idx] += w[(avs[kk], bvs[ll])]
            work += 4

    adjacency_sets: list[set[int]] = [set() for _ in range(q)]
    for (a, b) in touched:
        adjacency_sets[a].add(b)
        adjacency_sets[b].add(a)
    adjacency = tuple(tuple(sorted(s_)) for s_ in adjacency_sets)

    return ContactTables(
        n=n, q=q, constant=constant,
        p0=tuple(row[0] for row in p),
        p1=tuple(row[1] for row in p),
        pairs=None if dense else {k: tuple(v) for k, v in pairs.items()},
        pair_dense=dense_arr,
        adjacency=adjacency,
        build_work=work,
    )


def objective_from_delta(t: ContactTables, delta: Sequence[int]) -> int:
    """Tour cost of the matching selection delta, from the tables alone."""
    if len(delta) != t.q:
        raise ValueError(f"delta must have length {t.q}, got {len(delta)}")
    total = t.constant
    for j, bit in enumerate(delta):
        total += t.p1[j] if bit else t.p0[j]
    for j in range(t.q):
        for jp in t.adjacency[j]:
            if j < jp:
                total += t.pair_value(j, jp, delta[j], delta[jp])
    return total


def delta_step_cost(t: ContactTables, delta: Sequence[int], j: int,
                    current: int, tally: WorkTally | None = None) -> int:
    """Cost after flipping bit j of delta, given the current cost.

    Touches only the tables involving cycle j; when given, tally.steps grows
    by the number of adjacent cycles plus one.
    """
    b = delta[j]
    if b:
        diff = t.p0[j] - t.p1[j]
    else:
        diff = t.p1[j] - t.p0[j]
    nb = 1 - b
    for jp in t.adjacency[j]:
        l = delta[jp]
        diff += t.pair_value(j, jp, nb, l) - t.pair_value(j, jp, b, l)
    if tally is not None:
        tally.steps += len(t.adjacency[j]) + 1
    return current + diff
