"""Exhaustive oracles for chorded-cycle packings and partitions.

Brute force with exact pruning only: a candidate vertex set X can carry a
cycle with >= c chords iff G[X] is hamiltonian and |E(G[X])| >= |X| + c,
so the search enumerates anchored vertex sets instead of vertex sequences.
Every prune (degree, connectivity, bipartite balance) is a theorem about
hamiltonicity, never a heuristic, and the result is a proof either way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cycles import OrientedCycle
from .graph import Graph

DEFAULT_ORACLE_LIMIT = 18


class OracleLimitError(ValueError):
    """Instance larger than the configured exhaustive-search cap."""


class _BudgetExhausted(Exception):
    pass


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def adjacency_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _connected_mask(adj: list[int], mask: int) -> bool:
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj[v] & mask
        frontier = nxt & ~seen
        seen |= frontier
    return seen == mask

def _bipartite_parts(adj: list[int], mask: int) -> tuple[int, int] | None:
    """Two-coloring of g[mask] if bipartite, as (side_a, side_b) masks; else None.

    Assumes g[mask] is connected.
    """
    start = mask & -mask
    color = {start.bit_length() - 1: 0}
    sides = [start, 0]
    frontier = [start.bit_length() - 1]
    while frontier:
        nxt = []
        for v in frontier:
            cv = color[v]
            for w in _bits(adj[v] & mask):
                if w in color:
                    if color[w] == cv:
                        return None
                else:
                    color[w] = 1 - cv
                    sides[1 - cv] |= 1 << w
                    nxt.append(w)
        frontier = nxt
    return sides[0], sides[1]


def _popcount(x: int) -> int:
    return x.bit_count()


class _CycleSearch:
    """Shared machinery: per-set feasibility, hamilton witnesses, memo tables."""

    def __init__(self, g: Graph, c: int, budget: int | None = None):
        self.g = g
        self.c = c
        self.adj = adjacency_masks(g)
        self.ham_cache: dict[int, tuple[int, ...] | None] = {}
        self.budget = budget
        self.nodes = 0

    def _charge(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetExhausted

    def feasible(self, mask: int) -> bool:
        """Cheap exact filters; hamiltonicity itself is checked separately."""
        self._charge()
        size = _popcount(mask)
        if size < 3:
            return False
        edges = 0
        for v in _bits(mask):
            d = _popcount(self.adj[v] & mask)
            if d < 2:
                return False
            edges += d
        if edges // 2 < size + self.c:
            return False
        if not _connected_mask(self.adj, mask):
            return False
        parts = _bipartite_parts(self.adj, mask)
        if parts is not None and _popcount(parts[0]) != _popcount(parts[1]):
            return False
        return True

    def hamilton(self, mask: int) -> tuple[int, ...] | None:
        """A Hamilton cycle of g[mask] as a vertex tuple, or None. Memoized."""
        if mask in self.ham_cache:
            return self.ham_cache[mask]
        self._charge()
        verts = _bits(mask)
        adj = self.adj
        result: tuple[int, ...] | None = None
        if all(adj[v] & mask == mask ^ (1 << v) for v in verts):
            result = tuple(verts)  # complete: any order closes
        else:
            anchor = verts[0]
            anchor_bit = 1 << anchor
            path = [anchor]
            failed: set[tuple[int, int]] = set()

            def extend(last: int, visited: int) -> bool:
                if visited == mask:
                    return bool(adj[last] & anchor_bit)
                key = (visited, last)
                if key in failed:
                    return False
                for nxt in _bits(adj[last] & mask & ~visited):
                    path.append(nxt)
                    if extend(nxt, visited | (1 << nxt)):
                        return True
                    path.pop()
                failed.add(key)
                return False

            if extend(anchor, anchor_bit):
                result = tuple(path)
        self.ham_cache[mask] = result
        return result

    def cycle_for(self, mask: int) -> OrientedCycle | None:
        seq = self.hamilton(mask)
        if seq is None:
            return None
        return OrientedCycle(seq, self.g)


def _global_partition_prunes(g: Graph, k: int, c: int) -> bool:
    """True when a partition into k cycles is still possible; exact tests only."""
    if g.n < 3 * k:
        return False
    if g.n == 0:
        return False
    adj = adjacency_masks(g)
    if any(_popcount(a) < 2 for a in adj):
        return False
    full = (1 << g.n) - 1
    comp_masks = []
    rest = full
    while rest:
        start = rest & -rest
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v] & rest
            frontier = nxt & ~seen
            seen |= frontier
        comp_masks.append(seen)
        rest &= ~seen
    if len(comp_masks) > k:
        return False
    capacity = 0
    for cm in comp_masks:
        size = _popcount(cm)
        if size < 3:
            return False
        parts = _bipartite_parts(adj, cm)
        if parts is not None and _popcount(parts[0]) != _popcount(parts[1]):
            return False
        capacity += size // 3
    return capacity >= k


def _solve_partition(search: _CycleSearch, mask: int, j: int,
                     memo: dict[tuple[int, int], list[int] | None]) -> list[int] | None:
    """Block masks partitioning `mask` into j feasible cycle sets, or None.

    The lowest uncovered vertex is forced into the next block, which kills
    the j! ordering symmetry; blocks are tried by increasing size.
    """
    if j == 0:
        return [] if mask == 0 else None
    count = _popcount(mask)
    if count < 3 * j:
        return None
    key = (mask, j)
    if key in memo:
        return memo[key]
    result: list[int] | None = None
    if j == 1:
        if search.feasible(mask) and search.hamilton(mask) is not None:
            result = [mask]
    else:
        anchor = mask & -mask
        others = _bits(mask ^ anchor)
        for size in range(3, count - 3 * (j - 1) + 1):
            done = False
            for combo in itertools.combinations(others, size - 1):
                x = anchor
                for v in combo:
                    x |= 1 << v
                if not search.feasible(x):
                    continue
                sub = _solve_partition(search, mask ^ x, j - 1, memo)
                if sub is None:
                    continue
                if search.hamilton(x) is None:
                    continue
                result = [x] + sub
                done = True
                break
            if done:
                break
    memo[key] = result
    return result


def _solve_packing(search: _CycleSearch, mask: int, j: int,
                   memo: dict[tuple[int, int], list[int] | None]) -> list[int] | None:
    """Like _solve_partition but blocks need not cover; the lowest available
    vertex is either skipped for good or anchored into the next block."""
    if j == 0:
        return []
    count = _popcount(mask)
    if count < 3 * j:
        return None
    key = (mask, j)
    if key in memo:
        return memo[key]
    result: list[int] | None = None
    anchor = mask & -mask
    others = _bits(mask ^ anchor)
    for size in range(3, count - 3 * (j - 1) + 1):
        done = False
        for combo in itertools.combinations(others, size - 1):
            x = anchor
            for v in combo:
                x |= 1 << v
            if not search.feasible(x):
                continue
            sub = _solve_packing(search, mask ^ x, j - 1, memo)
            if sub is None:
                continue
            if search.hamilton(x) is None:
                continue
            result = [x] + sub
            done = True
            break
        if done:
            break
    if result is None:
        result = _solve_packing(search, mask ^ anchor, j, memo)
    memo[key] = result
    return result


def oracle_partition(g: Graph, k: int, c: int,
                     limit: int = DEFAULT_ORACLE_LIMIT) -> tuple[OrientedCycle, ...] | None:
    """Exhaustive verdict: a partition of V(g) into k c-chorded cycles, or None."""
    _check_params(k, c)
    if g.n > limit:
        raise OracleLimitError(f"n={g.n} exceeds the oracle limit {limit}")
    if not _global_partition_prunes(g, k, c):
        return None
    search = _CycleSearch(g, c)
    masks = _solve_partition(search, (1 << g.n) - 1, k, {})
    if masks is None:
        return None
    return tuple(search.cycle_for(m) for m in masks)


def oracle_packing(g: Graph, k: int, c: int,
                   limit: int = DEFAULT_ORACLE_LIMIT) -> tuple[OrientedCycle, ...] | None:
    """Exhaustive verdict: k disjoint c-chorded cycles (not necessarily spanning)."""
    _check_params(k, c)
    if g.n > limit:
        raise OracleLimitError(f"n={g.n} exceeds the oracle limit {limit}")
    if g.n < 3 * k:
        return None
    search = _CycleSearch(g, c)
    masks = _solve_packing(search, (1 << g.n) - 1, k, {})
    if masks is None:
        return None
    return tuple(search.cycle_for(m) for m in masks)


@dataclass(frozen=True)
class PackingSearchOutcome:
    masks: list[int] | None
    nodes: int
    exhausted: bool


def budgeted_packing_search(g: Graph, k: int, c: int, budget: int) -> PackingSearchOutcome:
    """Exact packing search that stops after `budget` charged nodes.

    masks=None with exhausted=False is a proof that no packing exists;
    exhausted=True means the search ran out of budget, verdict unknown.
    """
    _check_params(k, c)
    if budget < 1:
        raise ValueError(f"budget must be positive, got {budget}")
    if g.n < 3 * k:
        return PackingSearchOutcome(None, 0, False)
    search = _CycleSearch(g, c, budget=budget)
    try:
        masks = _solve_packing(search, (1 << g.n) - 1, k, {})
    except _BudgetExhausted:
        return PackingSearchOutcome(None, search.nodes, True)
    return PackingSearchOutcome(masks, search.nodes, False)


def cycles_from_masks(g: Graph, c: int, masks: list[int]) -> tuple[OrientedCycle, ...]:
    search = _CycleSearch(g, c)
    out = []
    for m in masks:
        cyc = search.cycle_for(m)
        if cyc is None:
            raise ValueError("mask does not carry a hamiltonian induced subgraph")
        out.append(cyc)
    return tuple(out)


def _check_params(k: int, c: int) -> None:
    if k < 1 or c < 1:
        raise ValueError(f"k and c must be >= 1, got k={k}, c={c}")
