import pytest

from chordpart.cycles import OrientedCycle, chord_count
from chordpart.generators import (
    _small_leftover_base,
    gen_large_leftover_state,
    gen_small_leftover_near_state,
    gen_small_leftover_state,
    gen_split_state,
)
from chordpart.graph import Graph, complete_graph, cycle_graph
from chordpart.partition import (
    Move,
    MoveApplicationError,
    PartitionState,
    apply_move,
    find_chorded_cycle_in,
    find_docking_edge,
    try_move_absorb_large_leftover,
    try_move_absorb_small_leftover,
    try_move_crossing,
    try_move_split,
    verify_state,
)


def spec_example_state():
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (0, 4), (4, 5), (3, 5)])
    state = PartitionState.from_cycles(g, 1, 1, [OrientedCycle((0, 1, 2, 3), g)])
    return g, state


class TestCrossing:
    def test_worked_example(self):
        g, state = spec_example_state()
        mv = try_move_crossing(state, 0, 0, 5)
        assert mv is not None and mv.kind == "crossing_rotation"
        assert mv.produced[0].seq == (1, 0, 4, 5, 3, 2)
        assert chord_count(g, mv.produced[0]) == 2
        new = apply_move(state, mv)
        assert state.potential[1] == 4 and new.potential[1] == 6
        assert new.uncovered == frozenset()

    def test_no_witness(self):
        _, state = spec_example_state()
        assert try_move_crossing(state, 0, 0, 4) is None

    def test_preconditions(self):
        g, state = spec_example_state()
        with pytest.raises(ValueError):
            try_move_crossing(state, 2, 0, 5)
        with pytest.raises(ValueError):
            try_move_crossing(state, 0, 0, 1)   # 1 is covered
        with pytest.raises(ValueError):
            try_move_crossing(state, 0, 4, 5)   # 4 is not on the cycle
        with pytest.raises(ValueError):
            try_move_crossing(state, 0, 1, 5)   # 1 has no neighbour in {4,5}

    def test_spanning_state_has_no_uncovered_vertex(self):
        g = complete_graph(4)
        state = PartitionState.from_cycles(g, 1, 1, [OrientedCycle((0, 1, 2, 3), g)])
        with pytest.raises(ValueError):
            try_move_crossing(state, 0, 0, 3)

    def test_external_bridge_kind(self):
        # component {4,5,6}: 4 sees the cycle, 5 is the target, 6 bridges
        # back to the successor vertex 1 without lying on the path
        g = Graph(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2),
                      (0, 4), (4, 5), (4, 6), (6, 1), (6, 5)])
        state = PartitionState.from_cycles(g, 1, 1, [OrientedCycle((0, 1, 2, 3), g)])
        mv = try_move_crossing(state, 0, 0, 5)
        assert mv is not None and mv.kind == "crossing_external"
        assert mv.details["bridge"] == 6
        new = apply_move(state, mv)
        assert new.potential > state.potential


class TestDocking:
    def test_single_cycle_has_no_partner(self):
        _, state = spec_example_state()
        assert find_docking_edge(state, 0, 1, 5) is None

    def test_clique_partner_returns_first_edge(self):
        g, state = two_cycle_state(full_visibility=True)
        dock = find_docking_edge(state, 0, 1, 12)
        assert dock is not None
        assert (dock.q, dock.w_prev, dock.w) == (1, 4, 5)
        assert not dock.flipped

    def test_alternating_pattern_yields_none(self):
        g, state = two_cycle_state(full_visibility=False)
        # u and x each see exactly half of the ring, same parity class, so
        # no oriented edge pairs them in either direction
        assert find_docking_edge(state, 0, 1, 12) is None


def two_cycle_state(full_visibility):
    ring = list(range(4, 12))
    edges = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]
    edges += [(ring[i], ring[(i + 1) % 8]) for i in range(8)]
    edges += [(4, 6)]                      # chord so the ring is 1-chorded
    targets = ring if full_visibility else ring[0::2]
    edges += [(1, t) for t in targets]
    edges += [(12, t) for t in targets]
    edges += [(12, 0)]                     # ties the leftover vertex in
    g = Graph(13, edges)
    state = PartitionState.from_cycles(
        g, 2, 1, [OrientedCycle((0, 1, 2, 3), g), OrientedCycle(tuple(ring), g)])
    return g, state


class TestSplit:
    @pytest.mark.parametrize("c", [1, 2, 3])
    def test_staged_split_fires(self, c):
        g, state = gen_split_state(c)
        mv = try_move_split(state, 0)
        assert mv is not None and mv.kind == "split"
        new = apply_move(state, mv)
        assert new.potential > state.potential
        assert verify_state(g, state.k, c, new.cycles).ok

    def test_absent_trigger(self):
        g, state = spec_example_state()
        # component {4,5} attaches at 0 and 3 only: 2 <= 2c
        assert try_move_split(state, 0) is None

    def test_single_cycle_cannot_split(self):
        # trigger present but no partner cycle to dock onto
        edges = [(i, (i + 1) % 8) for i in range(8)] + [(0, 2)]
        edges += [(8, 9), (9, 10)]
        edges += [(8, 1), (9, 4), (10, 6)]
        g = Graph(11, edges)
        state = PartitionState.from_cycles(
            g, 1, 1, [OrientedCycle(tuple(range(8)), g)])
        comp = state.uncovered_components[0]
        attach = [v for v in range(8) if g.neighbors(v) & set(comp)]
        assert len(attach) >= 3
        assert try_move_split(state, 0) is None


class TestFindChordedCycle:
    def test_prefers_spanning_in_clique(self):
        c = find_chorded_cycle_in(complete_graph(5), 1)
        assert c is not None and len(c) == 5

    def test_plain_ring_has_none(self):
        assert find_chorded_cycle_in(cycle_graph(7), 1) is None

    def test_clique_with_pendant(self):
        g = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
        c = find_chorded_cycle_in(g, 2)
        assert c is not None and sorted(c.seq) == [0, 1, 2, 3]

    def test_greedy_branch_on_larger_clique(self):
        c = find_chorded_cycle_in(complete_graph(20), 3, exhaustive_limit=10)
        assert c is not None
        assert chord_count(complete_graph(20), c) >= 3

    def test_tiny_inputs(self):
        assert find_chorded_cycle_in(Graph(2, [(0, 1)]), 1) is None


class TestAbsorbLarge:
    @pytest.mark.parametrize("k,c", [(2, 1), (2, 2), (3, 1)])
    def test_staged(self, k, c):
        g, state = gen_large_leftover_state(k, c)
        mv = try_move_absorb_large_leftover(state)
        assert mv is not None and mv.kind == "absorb_large_leftover"
        new = apply_move(state, mv)
        assert new.potential > state.potential
        assert len(mv.produced) == 2

    def test_trigger_absent(self):
        g, state = gen_small_leftover_state(3, 1)
        assert try_move_absorb_large_leftover(state) is None

    def test_single_cycle_cannot_dock(self):
        edges = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]
        edges += [(4 + i, 4 + j) for i in range(6) for j in range(i + 1, 6)]
        edges += [(0, 4)]
        g = Graph(10, edges)
        state = PartitionState.from_cycles(g, 1, 1, [OrientedCycle((0, 1, 2, 3), g)])
        assert 2 * len(state.uncovered) >= g.n - 4 * state.k * state.c + 2
        assert try_move_absorb_large_leftover(state) is None


class TestAbsorbSmall:
    @pytest.mark.parametrize("k,c", [(3, 1), (4, 1), (3, 2)])
    def test_far_branch(self, k, c):
        g, state = gen_small_leftover_state(k, c)
        mv = try_move_absorb_small_leftover(state)
        assert mv is not None and mv.kind == "absorb_small_leftover_far"
        assert len(mv.consumed) == 3 and len(mv.produced) == 3
        new = apply_move(state, mv)
        assert new.potential[0] == state.potential[0] + 1

    @pytest.mark.parametrize("k,c", [(2, 1), (2, 2), (3, 1)])
    def test_near_branch_docking_cycle(self, k, c):
        g, state = gen_small_leftover_near_state(k, c)
        mv = try_move_absorb_small_leftover(state)
        assert mv is not None and mv.kind == "absorb_small_leftover_near"
        assert len(mv.consumed) == 2 and len(mv.produced) == 2
        new = apply_move(state, mv)
        assert new.potential[0] == state.potential[0] + 1

    def test_near_branch_crossing_cycle(self):
        # the largest cycle carries the crossing vertex: role swap path
        g, state = _small_leftover_base(2, 1, big_index=0)
        mv = try_move_absorb_small_leftover(state)
        assert mv is not None and mv.kind == "absorb_small_leftover_near"
        new = apply_move(state, mv)
        assert new.potential[0] == state.potential[0] + 1

    def test_empty_leftover(self):
        g = complete_graph(4)
        state = PartitionState.from_cycles(g, 1, 1, [OrientedCycle((0, 1, 2, 3), g)])
        assert try_move_absorb_small_leftover(state) is None

    def test_wrong_regime(self):
        g, state = gen_large_leftover_state(2, 1)
        assert try_move_absorb_small_leftover(state) is None


class TestApplyMove:
    def test_rejects_unknown_kind(self):
        g, state = spec_example_state()
        mv = try_move_crossing(state, 0, 0, 5)
        bad = Move("teleport", mv.consumed, mv.produced, mv.absorbed, mv.dropped, {})
        with pytest.raises(MoveApplicationError):
            apply_move(state, bad)

    def test_rejects_wrong_absorbed_bookkeeping(self):
        g, state = spec_example_state()
        mv = try_move_crossing(state, 0, 0, 5)
        bad = Move(mv.kind, mv.consumed, mv.produced, frozenset({4}), mv.dropped, {})
        with pytest.raises(MoveApplicationError):
            apply_move(state, bad)

    def test_rejects_non_improving_replacement(self):
        g = complete_graph(6)
        state = PartitionState.from_cycles(g, 1, 1, [OrientedCycle((0, 1, 2, 3), g)])
        same = Move("crossing_rotation", (0,), (OrientedCycle((0, 1, 3, 2), g),),
                    frozenset(), frozenset(), {})
        with pytest.raises(MoveApplicationError):
            apply_move(state, same)
