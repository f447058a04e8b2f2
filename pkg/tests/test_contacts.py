"""Contact tables and the two load-bearing identities.

The whole solver rests on objective_from_delta agreeing with the direct
tour cost of the selected assignment, and on delta_step_cost agreeing
with a full recomputation after one bit flip.  Both are checked on the
fixtures and on random draws, in sparse and dense table layouts.
"""

import pytest

from tspvr.contacts import (
    WorkTally,
    compute_contact_tables,
    delta_step_cost,
    objective_from_delta,
)
from tspvr.instance import tour_cost
from tspvr.structure import Infeasible, build_structure, solution_from_delta
from .conftest import raw_uniform_instance


def all_deltas(q):
    for mask in range(1 << q):
        yield tuple((mask >> j) & 1 for j in range(q))


def tables_for(inst, dense=False):
    s = build_structure(inst)
    return s, compute_contact_tables(inst, s, dense=dense)


class TestFrozenD1:
    def test_singles(self, inst4):
        _, t = tables_for(inst4)
        assert t.constant == 0
        assert t.p0 == (5, 3)
        assert t.p1 == (7, 6)

    def test_pair_table(self, inst4):
        _, t = tables_for(inst4)
        assert t.pairs == {(0, 1): (9, 9, 6, 11)}

    def test_adjacency(self, inst4):
        _, t = tables_for(inst4)
        assert t.adjacency == ((1,), (0,))

    def test_build_work(self, inst4):
        _, t = tables_for(inst4)
        assert t.build_work == 16

    def test_cost_cube(self, inst4):
        _, t = tables_for(inst4)
        expected = {(0, 0): 17, (1, 0): 16, (0, 1): 20, (1, 1): 24}
        for delta, cost in expected.items():
            assert objective_from_delta(t, delta) == cost

    def test_pair_value_orientation(self, inst4):
        _, t = tables_for(inst4)
        for k in (0, 1):
            for l in (0, 1):
                assert t.pair_value(0, 1, k, l) == t.pair_value(1, 0, l, k)

    def test_pair_value_absent_pair_is_zero(self):
        # Three forced 4-cycles in a row: cycles 0 and 2 never share a
        # contact, so their pair table reads zero everywhere.
        from tspvr.generator import GenConfig, generate
        inst = generate(GenConfig(n=8, seed=4, weight_max=30, forced_q=3))
        _, t = tables_for(inst)
        assert (0, 2) not in t.pairs
        assert all(t.pair_value(0, 2, k, l) == 0 for k in (0, 1) for l in (0, 1))
        assert 2 not in t.adjacency[0]


class TestIdentityObjective:
    @pytest.mark.parametrize("fixture", ["inst4", "inst8", "inst8_zero"])
    def test_objective_equals_tour_cost(self, fixture, request):
        inst = request.getfixturevalue(fixture)
        s, t = tables_for(inst)
        for delta in all_deltas(t.q):
            assert objective_from_delta(t, delta) == \
                tour_cost(inst, solution_from_delta(s, delta))

    @pytest.mark.parametrize("seed", range(30))
    def test_objective_equals_tour_cost_random(self, seed):
        inst = raw_uniform_instance(4 + seed % 7, seed * 31 + 5)
        try:
            s, t = tables_for(inst)
        except Infeasible:
            return
        for delta in all_deltas(t.q):
            assert objective_from_delta(t, delta) == \
                tour_cost(inst, solution_from_delta(s, delta))

    def test_delta_length_checked(self, inst4):
        _, t = tables_for(inst4)
        with pytest.raises(ValueError, match="delta must have length"):
            objective_from_delta(t, (0,))


class TestIdentityStep:
    @pytest.mark.parametrize("fixture", ["inst4", "inst8", "inst8_zero"])
    def test_step_equals_recomputation(self, fixture, request):
        inst = request.getfixturevalue(fixture)
        _, t = tables_for(inst)
        for delta in all_deltas(t.q):
            current = objective_from_delta(t, delta)
            for j in range(t.q):
                flipped = list(delta)
                flipped[j] ^= 1
                assert delta_step_cost(t, delta, j, current) == \
                    objective_from_delta(t, flipped)

    @pytest.mark.parametrize("seed", range(20))
    def test_step_equals_recomputation_random(self, seed):
        inst = raw_uniform_instance(5 + seed % 6, seed * 13 + 3)
        try:
            _, t = tables_for(inst)
        except Infeasible:
            return
        for delta in all_deltas(t.q):
            current = objective_from_delta(t, delta)
            for j in range(t.q):
                flipped = list(delta)
                flipped[j] ^= 1
                assert delta_step_cost(t, delta, j, current) == \
                    objective_from_delta(t, flipped)

    def test_tally_counts_adjacency_plus_one(self, inst4):
        _, t = tables_for(inst4)
        tally = WorkTally()
        delta_step_cost(t, (0, 0), 0, 17, tally)
        assert tally.steps == len(t.adjacency[0]) + 1
        delta_step_cost(t, (0, 0), 1, 17, tally)
        assert tally.steps == len(t.adjacency[0]) + len(t.adjacency[1]) + 2

    def test_step_value_frozen(self, inst4):
        _, t = tables_for(inst4)
        assert delta_step_cost(t, (0, 0), 0, 17) == 16


class TestDenseLayout:
    @pytest.mark.parametrize("seed", range(12))
    def test_dense_equals_sparse(self, seed):
        inst = raw_uniform_instance(6 + seed % 5, seed * 7 + 11)
        try:
            s = build_structure(inst)
        except Infeasible:
            return
        sparse = compute_contact_tables(inst, s, dense=False)
        dense = compute_contact_tables(inst, s, dense=True)
        assert sparse.constant == dense.constant
        assert sparse.p0 == dense.p0 and sparse.p1 == dense.p1
        assert sparse.adjacency == dense.adjacency
        for delta in all_deltas(sparse.q):
            assert objective_from_delta(sparse, delta) == \
                objective_from_delta(dense, delta)

    def test_dense_build_work_adds_allocation(self, inst4):
        _, sparse = tables_for(inst4)
        _, dense = tables_for(inst4, dense=True)
        assert dense.build_work == sparse.build_work + sparse.q ** 2


class TestAdjacency:
    def test_symmetric(self, inst8):
        _, t = tables_for(inst8)
        for j in range(t.q):
            for jp in t.adjacency[j]:
                assert j in t.adjacency[jp]

    def test_zero_weight_contacts_still_adjacent(self, inst8_zero):
        # All weights are zero, but positions of the two cycles are still
        # in contact; dropping them would break the step-work counters.
        _, t = tables_for(inst8_zero)
        assert t.adjacency == ((1,), (0,))
        assert t.pairs == {(0, 1): (0, 0, 0, 0)}

    def test_no_self_adjacency(self, inst8):
        _, t = tables_for(inst8)
        for j in range(t.q):
            assert j not in t.adjacency[j]


class TestPacked:
    def test_packed_round_trips_tables(self, inst4):
        _, t = tables_for(inst4)
        pt = t.packed()
        assert pt.q == 2
        assert list(pt.p0) == [5, 3]
        assert list(pt.p1) == [7, 6]
        assert list(pt.indptr) == [0, 1, 2]
        assert list(pt.neighbor) == [1, 0]
        # row for (0 -> 1) is the stored table; row for (1 -> 0) swaps the
        # middle entries because the owning bit comes first.
        assert list(pt.pair[0]) == [9, 9, 6, 11]
        assert list(pt.pair[1]) == [9, 6, 9, 11]

    def test_packed_empty(self):
        inst = raw_uniform_instance(5, 1)
        s = build_structure(inst)
        t = compute_contact_tables(inst, s)
        pt = t.packed()
        assert pt.pair.shape[1] == 4

    def test_build_work_bound(self):
        # No more than 8 units per position plus the dense allocation.
        for seed in range(10):
            inst = raw_uniform_instance(8, seed + 50)
            try:
                s = build_structure(inst)
            except Infeasible:
                continue
            t = compute_contact_tables(inst, s)
            assert t.build_work <= 8 * (s.q ** 2 + inst.n)
