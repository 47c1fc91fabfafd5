"""Instance generators: extremal families, seeded random graphs, staged
engine states, and exhaustive non-isomorphic enumeration at desk scale.

Randomness is a single 64-bit seed fed to random.Random (Mersenne Twister);
only rng.random() is drawn from it, so identical seeds reproduce instances
bit-exactly on every platform. Staged families return a graph together
with a hand-planted non-spanning PartitionState whose trigger condition is
asserted before returning.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .cycles import OrientedCycle, min_chorded_order, min_chorded_side
from .graph import Graph, complete_bipartite, complete_graph, min_degree, sigma2
from .partition import PartitionState, small_leftover_fact_violations


# ---------------------------------------------------------------------------
# deterministic extremal and random families


def gen_complete(t: int) -> Graph:
    if t < 1:
        raise ValueError(f"order must be >= 1, got {t}")
    return complete_graph(t)


def gen_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError(f"part sizes must be >= 1, got {a}, {b}")
    return complete_bipartite(a, b)


def gen_extremal_degree(n: int) -> Graph:
    """K_{(n-1)/2,(n+1)/2} for odd n: degree-sum exactly one short of n."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"order must be odd and >= 3, got {n}")
    g = complete_bipartite((n - 1) // 2, (n + 1) // 2)
    assert sigma2(g) == n - 1
    return g


def gen_extremal_order(k: int, c: int) -> Graph:
    """Balanced complete bipartite graph one side short of carrying k
    c-chorded cycles; meets the degree conditions yet has no partition."""
    _positive(k=k, c=c)
    side = k * min_chorded_side(c) - 1
    g = complete_bipartite(side, side)
    assert min_degree(g) * 2 == g.n and sigma2(g) == g.n
    return g


def gen_ore_random(n: int, seed: int) -> Graph:
    return _gen_ore_random_detailed(n, seed)[0]


def _gen_ore_random_detailed(n: int, seed: int) -> tuple[Graph, dict]:
    """Random graph repaired to degree-sum >= n by joining the poorest
    non-adjacent pairs first."""
    if n < 3:
        raise ValueError(f"order must be >= 3, got {n}")
    rng = random.Random(seed)
    p = 0.5 + 0.4 * rng.random()
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    g = Graph(n, edges)
    repairs = 0
    while sigma2(g) < n:
        best = None
        for u in range(n):
            for v in range(u + 1, n):
                if not g.has_edge(u, v):
                    key = (g.degree(u) + g.degree(v), u, v)
                    if best is None or key < best:
                        best = key
        edges.append((best[1], best[2]))
        g = Graph(n, edges)
        repairs += 1
    assert sigma2(g) >= n
    return g, {"p": p, "repairs": repairs}


def gen_dirac_random(n: int, seed: int) -> Graph:
    return _gen_dirac_random_detailed(n, seed)[0]


def _gen_dirac_random_detailed(n: int, seed: int) -> tuple[Graph, dict]:
    """Random graph repaired to minimum degree >= n/2, poorest vertex first."""
    if n < 3:
        raise ValueError(f"order must be >= 3, got {n}")
    rng = random.Random(seed)
    p = 0.5 + 0.4 * rng.random()
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    g = Graph(n, edges)
    repairs = 0
    while 2 * min_degree(g) < n:
        v = min(range(n), key=lambda w: (g.degree(w), w))
        u = min((w for w in range(n) if w != v and not g.has_edge(v, w)),
                key=lambda w: (g.degree(w), w))
        edges.append((min(u, v), max(u, v)))
        g = Graph(n, edges)
        repairs += 1
    assert 2 * min_degree(g) >= n
    return g, {"p": p, "repairs": repairs}


def gen_random(n: int, seed: int) -> Graph:
    """Plain seeded G(n, p) with p drawn from [0.1, 0.9]; no repair."""
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    rng = random.Random(seed)
    p = 0.1 + 0.8 * rng.random()
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# staged engine states


def gen_split_state(c: int) -> tuple[Graph, PartitionState]:
    """Two cycles plus a path component with 2c+1 attachments on the first,
    arming the split move: c chords of the first cycle sit in one arc, a
    clean gap exists, and the docking edges to the second cycle are planted."""
    _positive(c=c)
    m1 = 4 * c + 4
    t = min_chorded_order(c)
    clique = list(range(m1, m1 + t))
    hs = list(range(m1 + t, m1 + t + 2 * c + 1))
    edges = [(i, (i + 1) % m1) for i in range(m1)]
    edges += [(0, j) for j in range(2, c + 2)]                     # chords, packed in one arc
    edges += [(a, b) for a, b in itertools.combinations(clique, 2)]
    edges += [(hs[i], hs[i + 1]) for i in range(len(hs) - 1)]
    edges += [(hs[i], 2 * i) for i in range(len(hs))]              # attachments, every other slot
    edges += [(1, clique[0]), (1, clique[1])]                      # docking for the (0, 2) gap
    g = Graph(m1 + t + len(hs), edges)
    c1 = OrientedCycle(tuple(range(m1)), g)
    c2 = OrientedCycle(tuple(clique), g)
    state = PartitionState.from_cycles(g, 2, c, (c1, c2))
    assert len([v for v in c1.seq if g.neighbors(v) & state.uncovered]) >= 2 * c + 1
    return g, state


def gen_large_leftover_state(k: int, c: int) -> tuple[Graph, PartitionState]:
    """k clique cycles plus an uncovered clique big enough to trip the
    large-leftover absorb, touching the first cycle at one vertex."""
    _positive(k=k, c=c)
    if k < 2:
        raise ValueError("needs k >= 2: the absorb docks onto a second cycle")
    t = min_chorded_order(c)
    s = max(t + 1, k * t - 4 * k * c + 2, 4)
    n = k * t + s
    cliques = [list(range(p * t, (p + 1) * t)) for p in range(k)]
    left = list(range(k * t, n))
    x = left[0]
    edges = []
    for q in cliques + [left]:
        edges += [(a, b) for a, b in itertools.combinations(q, 2)]
    edges += [(0, x), (1, cliques[1][0]), (x, cliques[1][1])]
    g = Graph(n, edges)
    state = PartitionState.from_cycles(
        g, k, c, tuple(OrientedCycle(tuple(q), g) for q in cliques))
    assert 2 * len(state.uncovered) >= n - 4 * k * c + 2
    return g, state


def _lift_degrees(edges: list[tuple[int, int]], movers: list[int],
                  targets: list[int], need: int) -> None:
    present = set((min(a, b), max(a, b)) for a, b in edges)
    for y in movers:
        for r in targets[:need]:
            e = (min(y, r), max(y, r))
            if e not in present:
                present.add(e)
                edges.append(e)


def _small_leftover_base(k: int, c: int, big_index: int) -> tuple[Graph, PartitionState]:
    """k-1 clique cycles plus one huge clique cycle at position big_index,
    and a single degree-2 uncovered vertex wired for the absorb."""
    t = min_chorded_order(c)
    big = 8 * k * c + 10 * c - 4
    sizes = [big if p == big_index else t for p in range(k)]
    starts = list(itertools.accumulate([0] + sizes))
    groups = [list(range(starts[p], starts[p + 1])) for p in range(k)]
    n = starts[-1] + 1
    x = n - 1
    edges = []
    for q in groups:
        edges += [(a, b) for a, b in itertools.combinations(q, 2)]
    edges += [(x, groups[0][0]), (x, groups[1][1]), (groups[0][1], groups[1][0])]
    movers = [v for p, q in enumerate(groups) if p != big_index for v in q]
    _lift_degrees(edges, movers, groups[big_index], (n + 1) // 2)
    g = Graph(n, edges)
    state = PartitionState.from_cycles(
        g, k, c, tuple(OrientedCycle(tuple(q), g) for q in groups))
    assert state.uncovered == frozenset({x})
    assert 2 * len(state.uncovered) < n - 4 * k * c + 2
    assert state.low == frozenset({x})
    assert not small_leftover_fact_violations(state)
    return g, state


def gen_small_leftover_state(k: int, c: int) -> tuple[Graph, PartitionState]:
    """Small-leftover absorb where the largest cycle is a third party."""
    _positive(k=k, c=c)
    if k < 3:
        raise ValueError("needs k >= 3: the split target is a third cycle")
    return _small_leftover_base(k, c, big_index=2)


def gen_small_leftover_near_state(k: int, c: int) -> tuple[Graph, PartitionState]:
    """Small-leftover absorb where the largest cycle is the docking cycle."""
    _positive(k=k, c=c)
    if k < 2:
        raise ValueError("needs k >= 2: the absorb docks onto a second cycle")
    return _small_leftover_base(k, c, big_index=1)


# ---------------------------------------------------------------------------
# exhaustive non-isomorphic enumeration (desk scale)

_PAIRS_CACHE: dict[int, list[tuple[int, int]]] = {}


def _pairs(n: int) -> list[tuple[int, int]]:
    if n not in _PAIRS_CACHE:
        _PAIRS_CACHE[n] = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return _PAIRS_CACHE[n]


def graph_to_bits(g: Graph) -> int:
    bits = 0
    for idx, (i, j) in enumerate(_pairs(g.n)):
        if g.has_edge(i, j):
            bits |= 1 << idx
    return bits


def graph_from_bits(n: int, bits: int) -> Graph:
    edges = [pair for idx, pair in enumerate(_pairs(n)) if bits >> idx & 1]
    return Graph(n, edges)


def _refine_classes(n: int, adj: list[int]) -> list[list[int]]:
    colors = [adj[v].bit_count() for v in range(n)]
    while True:
        sigs = []
        for v in range(n):
            nb = []
            rest = adj[v]
            while rest:
                b = rest & -rest
                nb.append(colors[b.bit_length() - 1])
                rest ^= b
            sigs.append((colors[v], tuple(sorted(nb))))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if new == colors:
            break
        colors = new
    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(colors[v], []).append(v)
    return [classes[key] for key in sorted(classes)]


def canonical_bits(n: int, adj: list[int]) -> int:
    """Canonical upper-triangle encoding: minimum over all vertex orderings
    consistent with the refined colour classes. Exact, exponential only on
    colour-degenerate graphs; meant for n <= 10."""
    classes = _refine_classes(n, adj)
    pairs = _pairs(n)
    best = None
    for perm_parts in itertools.product(*(itertools.permutations(cl) for cl in classes)):
        order = [v for part in perm_parts for v in part]
        bits = 0
        for idx, (i, j) in enumerate(pairs):
            if adj[order[i]] >> order[j] & 1:
                bits |= 1 << idx
        if best is None or bits < best:
            best = bits
    return best


def enumerate_nonisomorphic(n: int) -> list[Graph]:
    """All graphs on n vertices up to isomorphism, as canonical representatives.

    Augments each (n-1)-vertex representative by every neighbourhood of a
    new vertex and keeps one graph per canonical form.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return [Graph(0, [])]
    level: set[int] = {0}  # canonical bit encodings at the current order
    for size in range(2, n + 1):
        nxt: set[int] = set()
        for bits in level:
            parent = graph_from_bits(size - 1, bits)
            padj = [0] * size
            for u, v in parent.edges:
                padj[u] |= 1 << v
                padj[v] |= 1 << u
            new = size - 1
            for mask in range(1 << new):
                adj = list(padj)
                adj[new] = mask
                rest = mask
                while rest:
                    b = rest & -rest
                    adj[b.bit_length() - 1] |= 1 << new
                    rest ^= b
                nxt.add(canonical_bits(size, adj))
        level = nxt
    return [graph_from_bits(n, bits) for bits in sorted(level)]


# ---------------------------------------------------------------------------
# instance specs


@dataclass(frozen=True)
class InstanceSpec:
    """One generator invocation: family name plus integer parameters."""

    family: str
    params: dict
    expected: str | None = None


@dataclass
class GeneratedInstance:
    spec: InstanceSpec
    graph: Graph
    metadata: dict
    state: PartitionState | None = None


_FAMILY_PARAMS = {
    "complete": ("t",),
    "complete_bipartite": ("a", "b"),
    "extremal_degree": ("n",),
    "extremal_order": ("k", "c"),
    "ore_random": ("n", "seed"),
    "dirac_random": ("n", "seed"),
    "random": ("n", "seed"),
    "split_state": ("c",),
    "large_leftover_state": ("k", "c"),
    "small_leftover_state": ("k", "c"),
    "small_leftover_near_state": ("k", "c"),
}


def families() -> tuple[str, ...]:
    return tuple(sorted(_FAMILY_PARAMS))


def build_instance(spec: InstanceSpec) -> GeneratedInstance:
    """Run one generator family and collect asserted properties."""
    if spec.family not in _FAMILY_PARAMS:
        raise ValueError(f"unknown family {spec.family!r}; known: {', '.join(families())}")
    wanted = _FAMILY_PARAMS[spec.family]
    missing = [name for name in wanted if name not in spec.params]
    if missing:
        raise ValueError(f"family {spec.family!r} needs params {wanted}, missing {missing}")
    args = {name: int(spec.params[name]) for name in wanted}
    state = None
    extra: dict = {}
    if spec.family == "complete":
        g = gen_complete(args["t"])
    elif spec.family == "complete_bipartite":
        g = gen_complete_bipartite(args["a"], args["b"])
    elif spec.family == "extremal_degree":
        g = gen_extremal_degree(args["n"])
    elif spec.family == "extremal_order":
        g = gen_extremal_order(args["k"], args["c"])
    elif spec.family == "ore_random":
        g, extra = _gen_ore_random_detailed(args["n"], args["seed"])
    elif spec.family == "dirac_random":
        g, extra = _gen_dirac_random_detailed(args["n"], args["seed"])
    elif spec.family == "random":
        g = gen_random(args["n"], args["seed"])
    elif spec.family == "split_state":
        g, state = gen_split_state(args["c"])
    elif spec.family == "large_leftover_state":
        g, state = gen_large_leftover_state(args["k"], args["c"])
    elif spec.family == "small_leftover_state":
        g, state = gen_small_leftover_state(args["k"], args["c"])
    else:
        g, state = gen_small_leftover_near_state(args["k"], args["c"])
    meta = {
        "family": spec.family,
        "params": args,
        "n": g.n,
        "m": g.m,
        "sigma2": sigma2(g) if g.n else None,
        "min_degree": min_degree(g) if g.n else None,
        **extra,
    }
    if isinstance(meta["sigma2"], float):
        meta["sigma2"] = "infinity"
    if state is not None:
        meta["staged_cycles"] = [list(cyc.seq) for cyc in state.cycles]
        meta["uncovered"] = sorted(state.uncovered)
    return GeneratedInstance(spec, g, meta, state)


def _positive(**kwargs: int) -> None:
    for name, value in kwargs.items():
        if value < 1:
            raise ValueError(f"{name} must be >= 1, got {value}")
