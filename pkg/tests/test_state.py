import pytest

from chordpart.cycles import OrientedCycle
from chordpart.graph import Graph, complete_bipartite, complete_graph
from chordpart.partition import (
    PartitionState,
    low_degree_set,
    potential,
    verify_partition,
    verify_state,
)


def test_low_degree_set_examples():
    assert low_degree_set(complete_graph(5)) == frozenset()
    assert low_degree_set(complete_bipartite(2, 3)) == frozenset({2, 3, 4})
    star = Graph(5, [(0, i) for i in range(1, 5)])
    assert low_degree_set(star) == frozenset({1, 2, 3, 4})


def test_potential_spanning_state():
    g = complete_bipartite(3, 3)
    state = PartitionState.from_cycles(g, 1, 1, [OrientedCycle((0, 3, 1, 4, 2, 5), g)])
    assert potential(state) == (len(state.low), g.n)
    assert state.uncovered == frozenset()
    assert state.uncovered_components == ()


def test_potential_counts_covered_low_vertices():
    g = complete_bipartite(2, 3)
    cyc = OrientedCycle((0, 2, 1, 3), g)
    # built directly: a 4-cycle of K_{2,3} has no chords, so it can never be
    # part of a valid 1-chorded state; only the bookkeeping is under test
    covered = cyc.vertex_set
    low = low_degree_set(g)
    state = PartitionState(g, 1, 1, (cyc,), low, frozenset(range(5)) - covered,
                           (len(covered & low), len(covered)))
    assert potential(state) == (2, 4)


def test_from_cycles_rejects_bad_parameters():
    g = complete_graph(4)
    with pytest.raises(ValueError):
        PartitionState.from_cycles(g, 0, 1, [])
    with pytest.raises(ValueError):
        PartitionState.from_cycles(g, 2, 1, [OrientedCycle((0, 1, 2, 3), g)])
    with pytest.raises(ValueError):
        # chordless cycle cannot enter a 1-chorded state
        PartitionState.from_cycles(g, 1, 3, [OrientedCycle((0, 1, 2, 3), g)])


def test_verify_examples():
    k4 = complete_graph(4)
    cert = verify_partition(k4, 1, 2, [OrientedCycle((0, 1, 2, 3), k4)])
    assert cert.ok and cert.spanning and cert.chord_counts == (2,)

    k6 = complete_graph(6)
    cert = verify_partition(k6, 2, 1, [(0, 1, 2), (3, 4, 5)])
    assert not cert.ok
    assert cert.chord_counts == (0, 0)
    assert cert.disjoint and cert.spanning

    cert = verify_state(k6, 2, 1, [(0, 1, 2, 3), (3, 4, 5)])
    assert not cert.ok and not cert.disjoint


def test_verify_state_ignores_spanning():
    k6 = complete_graph(6)
    cert = verify_state(k6, 1, 1, [(0, 1, 2, 3)])
    assert cert.ok and not cert.spanning and cert.covered == 4
    assert not verify_partition(k6, 1, 1, [(0, 1, 2, 3)]).ok


def test_verify_flags_invalid_sequences():
    k4 = complete_graph(4)
    cert = verify_state(k4, 1, 1, [(0, 1)])
    assert not cert.ok and cert.cycles_valid == (False,)
    cert = verify_state(k4, 1, 1, [(0, 1, 9)])
    assert not cert.ok


def test_uncovered_components_mapping():
    g = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (4, 5), (6, 7)])
    state = PartitionState.from_cycles(g, 1, 1, [OrientedCycle((0, 1, 2, 3), g)])
    assert state.uncovered_components == ((4, 5), (6, 7))
    assert state.component_of(6) == (6, 7)
    with pytest.raises(ValueError):
        state.component_of(0)
