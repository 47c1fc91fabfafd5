import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chordpart.cycles import (
    CycleError,
    OrientedCycle,
    chord_count,
    chord_root_bipartite,
    chord_root_complete,
    chords,
    dirac_order_threshold,
    is_c_chorded,
    min_chorded_order,
    min_chorded_side,
    packing_order_threshold,
    packing_sigma2_threshold,
    partition_order_threshold,
)
from chordpart.graph import Graph, complete_bipartite, complete_graph, cycle_graph


def ham(g):
    return OrientedCycle(tuple(range(g.n)), g)


def test_cycle_validation():
    g = complete_graph(4)
    with pytest.raises(CycleError):
        OrientedCycle((0, 1), g)
    with pytest.raises(CycleError):
        OrientedCycle((0, 1, 2, 1), g)
    with pytest.raises(CycleError):
        OrientedCycle((0, 1, 2), cycle_graph(4))  # 0-2 is not an edge


def test_navigation():
    g = cycle_graph(6)
    c = ham(g)
    assert c.successor(5) == 0 and c.predecessor(0) == 5
    assert c.arc(4, 1) == (4, 5, 0, 1)
    assert c.arc(2, 2) == (2,)
    assert len(c) == 6 and 3 in c and 9 not in c
    r = c.reversed_view()
    assert r.seq == (0, 5, 4, 3, 2, 1)
    assert r.successor(0) == 5


def test_canonical_rotation_and_direction():
    g = complete_graph(5)
    base = OrientedCycle((2, 4, 0, 3, 1), g)
    canon = base.canonical()
    assert canon.seq[0] == 0
    assert canon.seq[1] <= canon.seq[-1]
    # all rotations and both directions collapse to the same form
    seq = base.seq
    for shift in range(5):
        rot = tuple(seq[(shift + i) % 5] for i in range(5))
        assert OrientedCycle(rot, g).canonical().seq == canon.seq
        assert OrientedCycle(rot, g).reversed_view().canonical().seq == canon.seq


def test_chords_examples():
    g5 = cycle_graph(5)
    assert chords(g5, ham(g5)).count == 0

    k4 = complete_graph(4)
    assert chords(k4, ham(k4)).count == 2  # t(t-3)/2 at t=4

    k33 = complete_bipartite(3, 3)
    c = OrientedCycle((0, 3, 1, 4, 2, 5), k33)
    assert chords(k33, c).count == 3  # t(t-2) - ... = 9 - 6


def test_chord_set_contents():
    k4 = complete_graph(4)
    assert chords(k4, ham(k4)).chords == frozenset({(0, 2), (1, 3)})


def test_is_c_chorded():
    k4 = complete_graph(4)
    assert is_c_chorded(k4, ham(k4), 2)
    assert not is_c_chorded(k4, ham(k4), 3)
    g6 = cycle_graph(6)
    assert not is_c_chorded(g6, ham(g6), 1)
    with pytest.raises(ValueError):
        is_c_chorded(k4, ham(k4), 0)


@st.composite
def graph_with_cycle(draw):
    n = draw(st.integers(min_value=3, max_value=9))
    length = draw(st.integers(min_value=3, max_value=n))
    verts = draw(st.permutations(range(n)))[:length]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    extra = draw(st.lists(st.sampled_from(pairs), unique=True))
    ring = [(min(a, b), max(a, b)) for a, b in zip(verts, verts[1:] + [verts[0]])]
    g = Graph(n, set(ring) | set(extra))
    return g, OrientedCycle(tuple(verts), g)


@given(graph_with_cycle())
@settings(max_examples=120, deadline=None)
def test_chord_count_identity(gc):
    g, cyc = gc
    vs = cyc.vertex_set
    inside = sum(1 for u, v in combinations(sorted(vs), 2) if g.has_edge(u, v))
    cs = chords(g, cyc)
    assert cs.count == inside - len(cyc)
    assert cs.count == chord_count(g, cyc)
    for u, v in cs.chords:
        assert g.has_edge(u, v)
        assert cyc.successor(u) != v and cyc.predecessor(u) != v


@given(graph_with_cycle())
@settings(max_examples=60, deadline=None)
def test_reversal_preserves_chords(gc):
    g, cyc = gc
    assert chords(g, cyc).chords == chords(g, cyc.reversed_view()).chords


def test_clique_cycle_chord_formula_small():
    for t in range(3, 8):
        g = complete_graph(t)
        assert chord_count(g, ham(g)) == t * (t - 3) // 2


def test_threshold_formulas():
    assert chord_root_complete(2) == 4.0
    assert chord_root_bipartite(3) == 3.0
    assert partition_order_threshold(1, 1) == 17
    assert partition_order_threshold(2, 1) == 47
    assert partition_order_threshold(1, 2) == 37
    assert packing_order_threshold(2, 1) == 8
    assert packing_sigma2_threshold(2, 1) == 11
    assert dirac_order_threshold(1, 1) == 14


def test_min_chorded_order_examples():
    assert min_chorded_order(1) == 4
    assert min_chorded_order(2) == 4
    assert min_chorded_order(5) == 5


@pytest.mark.parametrize("c", range(1, 31))
def test_min_orders_match_brute_force(c):
    brute = next(t for t in range(3, 100) if t * (t - 3) // 2 >= c)
    assert min_chorded_order(c) == brute
    assert min_chorded_order(c) == math.ceil(chord_root_complete(c))
    brute_side = next(t for t in range(1, 100) if t * (t - 2) >= c)
    assert min_chorded_side(c) == brute_side
    assert min_chorded_side(c) == math.ceil(chord_root_bipartite(c))


def test_dirac_threshold_is_exact_ceiling():
    for k in range(1, 6):
        for c in range(1, 8):
            exact = 12 * k * c - 2 * k * chord_root_complete(c) + c + 8
            t = dirac_order_threshold(k, c)
            assert t >= exact - 1e-9
            assert t - 1 < exact


def test_to_json_round_trip():
    k4 = complete_graph(4)
    payload = ham(k4).to_json()
    assert payload["seq"] == [0, 1, 2, 3]
    assert payload["chords"] == [[0, 2], [1, 3]]
