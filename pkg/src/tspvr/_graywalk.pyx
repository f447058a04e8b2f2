# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled Gray-walk minimisation.  Mirrors _graywalk_py exactly: same
walk order, same tie handling, same counters.  Keep the two in sync."""

from libc.stdint cimport int64_t, uint64_t, uint8_t


def gray_walk_min(int q,
                  int64_t start_cost,
                  int64_t[::1] p0,
                  int64_t[::1] p1,
                  int64_t[::1] indptr,
                  int64_t[::1] neighbor,
                  int64_t[:, ::1] pair):
    """See _graywalk_py.gray_walk_min for the contract."""
    if q < 0 or q > 62:
        raise ValueError(f"q must be between 0 and 62, got {q}")
    cdef uint64_t steps = ((<uint64_t>1) << q) - 1
    cdef uint64_t t, mask = 0, best_mask = 0
    cdef int64_t cost = start_cost, best = start_cost
    cdef int64_t diff, work = 0
    cdef Py_ssize_t j, e, lo, hi
    cdef int b, l
    cdef uint8_t delta[64]
    for j in range(q):
        delta[j] = 0
    for t in range(1, steps + 1):
        j = 0
        while not (t >> j) & 1:
            j += 1
        b = delta[j]
        lo = indptr[j]
        hi = indptr[j + 1]
        if b:
            diff = p0[j] - p1[j]
            delta[j] = 0
            for e in range(lo, hi):
                l = delta[neighbor[e]]
                diff += pair[e, l] - pair[e, 2 + l]
        else:
            diff = p1[j] - p0[j]
            delta[j] = 1
            for e in range(lo, hi):
                l = delta[neighbor[e]]
                diff += pair[e, 2 + l] - pair[e, l]
        cost += diff
        mask ^= (<uint64_t>1) << j
        work += hi - lo + 1
        if cost < best:
            best = cost
            best_mask = mask
    return best, best_mask, steps + 1, work
