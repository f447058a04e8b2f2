"""Shared fixtures: two hand-built instances and a seeded raw draw helper.

inst4 is the 4-position worked example with two 4-cycles and no special
edges; its optimum is cost 16 at tour (2, 1, 3, 4).  inst8 is the
8-position instance whose reduction yields special edges at positions 3,
4, 5 and two cycles, one over positions {1, 2} and one over {6, 7, 8};
weights follow the formula (3u + 5v) mod 17 so they are reproducible
without a table.
"""

import pytest

from tspvr import rng
from tspvr.generator import _relevant_arcs, _uniform_requisitions
from tspvr.instance import Instance, make_instance

W4 = {
    (1, 2): 5, (2, 1): 7, (1, 3): 2, (1, 4): 9,
    (2, 3): 4, (2, 4): 1, (3, 4): 3, (4, 3): 6,
    (3, 1): 8, (3, 2): 2, (4, 1): 5, (4, 2): 4,
}
REQS4 = [(1, 2), (1, 2), (3, 4), (3, 4)]

REQS8 = [(1, 2), (1, 2), (3,), (3, 4), (5, 6), (6, 7), (7, 8), (6, 8)]


def formula_weights(n, reqs, formula=lambda u, v: (3 * u + 5 * v) % 17):
    return {(u, v): formula(u, v) for (u, v) in _relevant_arcs(n, list(reqs))}


@pytest.fixture
def inst4() -> Instance:
    return make_instance(4, REQS4, W4)


@pytest.fixture
def inst8() -> Instance:
    return make_instance(8, REQS8, formula_weights(8, REQS8))


@pytest.fixture
def inst8_zero() -> Instance:
    """Same shape as inst8 but every arc weight is zero."""
    return make_instance(8, REQS8, formula_weights(8, REQS8, lambda u, v: 0))


def raw_uniform_instance(n: int, seed: int, weight_max: int = 100) -> Instance:
    """A uniform-pairs draw kept even when infeasible.

    Mirrors the generator's counter layout exactly but skips its
    feasibility check, so solver agreement on infeasible verdicts can be
    exercised too.
    """
    reqs = _uniform_requisitions(n, seed)
    weights = {}
    for r, (u, v) in enumerate(_relevant_arcs(n, reqs)):
        weights[(u, v)] = rng.bounded(rng.value(seed, 2 * n + r), weight_max + 1)
    return make_instance(n, reqs, weights)
