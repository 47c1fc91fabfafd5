import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chordpart.cycles import min_chorded_side
from chordpart.generators import (
    InstanceSpec,
    build_instance,
    canonical_bits,
    enumerate_nonisomorphic,
    families,
    gen_complete,
    gen_complete_bipartite,
    gen_dirac_random,
    gen_extremal_degree,
    gen_extremal_order,
    gen_large_leftover_state,
    gen_ore_random,
    gen_random,
    gen_small_leftover_near_state,
    gen_small_leftover_state,
    gen_split_state,
    graph_from_bits,
    graph_to_bits,
)
from chordpart.graph import Graph, min_degree, sigma2
from chordpart.oracle import oracle_partition

KNOWN_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


def test_simple_families():
    assert gen_complete(4).m == 6
    g = gen_complete_bipartite(3, 3)
    assert g.n == 6 and g.m == 9
    with pytest.raises(ValueError):
        gen_complete(0)


def test_extremal_degree():
    g = gen_extremal_degree(5)
    assert (g.n, g.m) == (5, 6)          # K_{2,3}
    assert sigma2(g) == 4
    assert gen_extremal_degree(3).m == 2  # K_{1,2} is a path
    for n in (5, 7, 9, 11, 13, 15, 17):
        assert sigma2(gen_extremal_degree(n)) == n - 1
    with pytest.raises(ValueError):
        gen_extremal_degree(6)


def test_extremal_order():
    assert min_chorded_side(1) == 3
    g = gen_extremal_order(1, 1)
    assert (g.n, g.m) == (4, 4)          # K_{2,2}
    assert gen_extremal_order(1, 3).n == 4
    g = gen_extremal_order(2, 1)
    assert g.n == 10                     # K_{5,5}
    assert 2 * min_degree(g) == g.n and sigma2(g) == g.n
    assert oracle_partition(g, 2, 1) is None


def test_seeded_generators_are_deterministic():
    for gen in (gen_ore_random, gen_dirac_random, gen_random):
        assert gen(12, 7) == gen(12, 7)
        assert gen(12, 7) != gen(12, 8)


def test_ore_random_invariant():
    for seed in range(25):
        g = gen_ore_random(13, seed)
        assert sigma2(g) >= 13


def test_dirac_random_invariant():
    for seed in range(25):
        g = gen_dirac_random(13, seed)
        assert 2 * min_degree(g) >= 13


def test_staged_states_expose_their_triggers():
    _, st1 = gen_split_state(2)
    assert st1.uncovered
    _, st2 = gen_large_leftover_state(2, 1)
    assert 2 * len(st2.uncovered) >= st2.g.n - 4 * 2 * 1 + 2
    _, st3 = gen_small_leftover_state(3, 1)
    assert st3.low == st3.uncovered
    _, st4 = gen_small_leftover_near_state(2, 1)
    assert len(st4.uncovered) == 1
    with pytest.raises(ValueError):
        gen_small_leftover_state(2, 1)
    with pytest.raises(ValueError):
        gen_large_leftover_state(1, 1)


@pytest.mark.parametrize("n", sorted(KNOWN_COUNTS))
def test_enumeration_counts(n):
    assert len(enumerate_nonisomorphic(n)) == KNOWN_COUNTS[n]


def test_enumeration_outputs_are_distinct_canonical_forms():
    graphs = enumerate_nonisomorphic(5)
    bits = set()
    for g in graphs:
        adj = [0] * g.n
        for u, v in g.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        bits.add(canonical_bits(g.n, adj))
    assert len(bits) == len(graphs)


@given(st.integers(2, 7), st.data())
@settings(max_examples=40, deadline=None)
def test_canonical_form_is_relabeling_invariant(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True))
    perm = data.draw(st.permutations(range(n)))
    g = Graph(n, edges)
    h = Graph(n, [(perm[u], perm[v]) for u, v in edges])
    def masks(x):
        adj = [0] * x.n
        for u, v in x.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj
    assert canonical_bits(n, masks(g)) == canonical_bits(n, masks(h))


def test_bits_round_trip():
    g = gen_random(7, 3)
    assert graph_from_bits(7, graph_to_bits(g)) == g


def test_build_instance_registry():
    assert "ore_random" in families()
    inst = build_instance(InstanceSpec("ore_random", {"n": 10, "seed": 4}))
    assert inst.graph.n == 10
    assert inst.metadata["repairs"] >= 0
    inst = build_instance(InstanceSpec("complete", {"t": 5}))
    assert inst.metadata["sigma2"] == "infinity"
    inst = build_instance(InstanceSpec("split_state", {"c": 1}))
    assert inst.state is not None
    assert inst.metadata["staged_cycles"]
    with pytest.raises(ValueError):
        build_instance(InstanceSpec("no_such_family", {}))
    with pytest.raises(ValueError):
        build_instance(InstanceSpec("complete", {}))
