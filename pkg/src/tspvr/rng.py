"""Deterministic counter-based random values built on the splitmix64 mixer.

Generated instances must be reproducible bit for bit from a seed, across
platforms, interpreter versions, and reimplementations in other languages.
General-purpose library RNGs do not promise that much, so the handful of
primitives needed here are implemented directly.  splitmix64 is the
public-domain generator whose k-th output is a pure function of the seed:

    out(seed, k) = mix64(seed + (k + 1) * GOLDEN)   (mod 2**64)

where mix64 is the usual xor-shift/multiply finaliser.  Because outputs are
indexed by a counter, any block of values can be produced independently and
in parallel without replaying a stream.

Two implementations are provided: scalar (plain Python integers) and
vectorised (numpy uint64 arrays).  They must agree value for value; the test
suite checks this.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MULT1 = 0xBF58476D1CE4E5B9
_MULT2 = 0x94D049BB133111EB


# ====== scalar path ======

def mix64(z: int) -> int:
    """splitmix64 finaliser on a 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MULT1) & MASK64
    z = ((z ^ (z >> 27)) * _MULT2) & MASK64
    return z ^ (z >> 31)


def value(seed: int, k: int) -> int:
    """k-th raw output (k >= 0) of the stream started at seed."""
    return mix64((seed + (k + 1) * GOLDEN) & MASK64)


def substream(seed: int, t: int) -> int:
    """Seed of the t-th derived stream (one independent stream per trial)."""
    return value(seed, t)


def bounded(x: int, m: int) -> int:
    """Map a raw 64-bit value to [0, m) without modulo bias.

    Values above the largest multiple of m below 2**64 are rejected and
    re-mixed; for the small m used here the rejection branch is almost
    never taken, but it keeps the distribution exactly uniform.
    """
    if m <= 0:
        raise ValueError("bound must be positive")
    limit = (1 << 64) - ((1 << 64) % m)
    while x >= limit:
        x = mix64((x + GOLDEN) & MASK64)
    return x % m


# ====== vectorised path ======

_V_GOLDEN = np.uint64(GOLDEN)
_V_MULT1 = np.uint64(_MULT1)
_V_MULT2 = np.uint64(_MULT2)


def vmix64(z: np.ndarray) -> np.ndarray:
    """Vectorised mix64 over a uint64 array (wrapping arithmetic)."""
    z = (z ^ (z >> np.uint64(30))) * _V_MULT1
    z = (z ^ (z >> np.uint64(27))) * _V_MULT2
    return z ^ (z >> np.uint64(31))


def value_block(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs start .. start+count-1 of the stream, as a uint64 array."""
    ks = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    return vmix64(np.uint64(seed & MASK64) + ks * _V_GOLDEN)


def substream_block(seed: int, start: int, count: int) -> np.ndarray:
    """Seeds of derived streams start .. start+count-1."""
    return value_block(seed, start, count)


def value_grid(stream_seeds: np.ndarray, k_from: int, k_to: int) -> np.ndarray:
    """Outputs k_from .. k_to-1 of many streams at once.

    Returns an array of shape (len(stream_seeds), k_to - k_from).
    """
    ks = np.arange(k_from + 1, k_to + 1, dtype=np.uint64)
    return vmix64(stream_seeds[:, None] + ks[None, :] * _V_GOLDEN)


def bounded_vec(x: np.ndarray, m: int) -> np.ndarray:
    """Vectorised bounded(): same rejection rule applied lane-wise."""
    if m <= 0:
        raise ValueError("bound must be positive")
    rem = (1 << 64) % m
    if rem == 0:  # m is a power of two: every value is acceptable
        return x % np.uint64(m)
    limit = np.uint64((1 << 64) - rem)
    x = x.copy()
    bad = x >= limit
    while bad.any():
        x[bad] = vmix64(x[bad] + _V_GOLDEN)
        bad = x >= limit
    return x % np.uint64(m)
