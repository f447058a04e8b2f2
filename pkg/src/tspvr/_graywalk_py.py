"""Pure-Python Gray-walk minimisation, the reference for the compiled twin.

Both implementations must produce identical results: same best cost, same
first-reached best selection, same counters.  Keep any change mirrored in
_graywalk.pyx.
"""

from __future__ import annotations


def gray_walk_min(q, start_cost, p0, p1, indptr, neighbor, pair):
    """Visit all 2**q bit vectors in reflected Gray order, tracking the min.

    Arguments are plain sequences: per-cycle table values p0/p1, adjacency
    in compressed form (indptr, neighbor) and one [w00, w01, w10, w11] row
    per adjacency entry.  The caller has already evaluated the all-zeros
    selection (start_cost), which counts as the first evaluation.

    Returns (best_cost, best_mask, evaluations, delta_work).  Ties keep the
    earlier selection; each step adds (number of adjacent cycles + 1) to
    delta_work.
    """
    if q < 0 or q > 62:
        raise ValueError(f"q must be between 0 and 62, got {q}")
    delta = [0] * q
    mask = 0
    cost = start_cost
    best = start_cost
    best_mask = 0
    work = 0
    steps = (1 << q) - 1
    for t in range(1, steps + 1):
        j = (t & -t).bit_length() - 1  # bit flipped by the t-th Gray step
        b = delta[j]
        lo = indptr[j]
        hi = indptr[j + 1]
        if b:
            diff = p0[j] - p1[j]
            delta[j] = 0
            for e in range(lo, hi):
                row = pair[e]
                l = delta[neighbor[e]]
                diff += row[l] - row[2 + l]
        else:
            diff = p1[j] - p0[j]
            delta[j] = 1
            for e in range(lo, hi):
                row = pair[e]
                l = delta[neighbor[e]]
                diff += row[2 + l] - row[l]
        cost += diff
        mask ^= 1 << j
        work += hi - lo + 1
        if cost < best:
            best = cost
            best_mask = mask
    return best, best_mask, steps + 1, work
