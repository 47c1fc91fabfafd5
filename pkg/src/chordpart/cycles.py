"""Oriented cycles, chord sets, and the closed-form order thresholds.

A chord of a cycle is a host-graph edge joining two non-consecutive cycle
vertices. Chord counting drives everything else: a cycle on vertex set X
has exactly |E(G[X])| - |X| chords, so the count depends only on X.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import Graph


class CycleError(ValueError):
    """Sequence that is not a valid cycle of its host graph."""


class OrientedCycle:
    """Cyclic vertex sequence with orientation, validated against its host graph."""

    __slots__ = ("seq", "host", "_vs", "_posmap")

    def __init__(self, seq, host: Graph):
        if not isinstance(seq, tuple):
            seq = tuple(seq)
        if len(seq) < 3:
            raise CycleError(f"cycle needs at least 3 vertices, got {len(seq)}")
        if len(set(seq)) != len(seq):
            raise CycleError(f"repeated vertex in cycle {seq}")
        adj = host._adj
        prev = seq[-1]
        try:
            for u in seq:
                if u < 0 or u not in adj[prev]:
                    raise CycleError(
                        f"consecutive pair ({prev}, {u}) is not an edge of the host")
                prev = u
        except IndexError:
            raise CycleError(f"vertex {prev} is out of range for the host") from None
        self.seq = seq
        self.host = host
        self._vs: frozenset[int] | None = None
        self._posmap: dict[int, int] | None = None

    def __len__(self) -> int:
        return len(self.seq)

    def __contains__(self, v: int) -> bool:
        return v in self.vertex_set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrientedCycle):
            return NotImplemented
        return self.seq == other.seq and self.host == other.host

    def __hash__(self) -> int:
        return hash(self.seq)

    def __repr__(self) -> str:
        return f"OrientedCycle({self.seq})"

    @property
    def vertex_set(self) -> frozenset[int]:
        if self._vs is None:
            self._vs = frozenset(self.seq)
        return self._vs

    @property
    def _pos(self) -> dict[int, int]:
        if self._posmap is None:
            self._posmap = {v: i for i, v in enumerate(self.seq)}
        return self._posmap

    def position(self, v: int) -> int:
        return self._pos[v]

    def successor(self, v: int) -> int:
        return self.seq[(self._pos[v] + 1) % len(self.seq)]

    def predecessor(self, v: int) -> int:
        return self.seq[(self._pos[v] - 1) % len(self.seq)]

    def at(self, i: int) -> int:
        return self.seq[i % len(self.seq)]

    def arc(self, u: int, v: int) -> tuple[int, ...]:
        """Vertices from u forward to v inclusive, following the orientation."""
        i, j = self._pos[u], self._pos[v]
        m = len(self.seq)
        span = (j - i) % m
        return tuple(self.seq[(i + t) % m] for t in range(span + 1))

    def oriented_edges(self) -> tuple[tuple[int, int], ...]:
        m = len(self.seq)
        return tuple((self.seq[i], self.seq[(i + 1) % m]) for i in range(m))

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) if u < v else (v, u) for u, v in self.oriented_edges())

    def reversed_view(self) -> "OrientedCycle":
        """Same cycle with the opposite orientation, anchored at the same start."""
        return OrientedCycle((self.seq[0],) + tuple(reversed(self.seq[1:])), self.host)

    def canonical(self) -> "OrientedCycle":
        """Rotate to the minimum vertex; orient so the second vertex is smaller."""
        i = self.seq.index(min(self.seq))
        m = len(self.seq)
        fwd = tuple(self.seq[(i + t) % m] for t in range(m))
        if fwd[1] <= fwd[-1]:
            return OrientedCycle(fwd, self.host)
        return OrientedCycle((fwd[0],) + tuple(reversed(fwd[1:])), self.host)

    def to_json(self) -> dict:
        return {
            "seq": list(self.seq),
            "chords": sorted(list(p) for p in chords(self.host, self).chords),
        }


@dataclass(frozen=True)
class ChordSet:
    """Unordered chord pairs of one cycle."""

    chords: frozenset[tuple[int, int]]

    @property
    def count(self) -> int:
        return len(self.chords)


def _validated(g: Graph, cycle: OrientedCycle) -> OrientedCycle:
    if cycle.host is g or cycle.host == g:
        return cycle
    return OrientedCycle(cycle.seq, g)


def chords(g: Graph, cycle: OrientedCycle) -> ChordSet:
    """All edges of g inside the cycle's vertex set that are not cycle edges."""
    cycle = _validated(g, cycle)
    vs = cycle.vertex_set
    on_cycle = cycle.edge_set()
    found = []
    for u in vs:
        for v in g.neighbors(u) & vs:
            if u < v and (u, v) not in on_cycle:
                found.append((u, v))
    return ChordSet(frozenset(found))


def chord_count(g: Graph, cycle: OrientedCycle) -> int:
    """Chord count without materialising the set: |E(g[V(C)])| - |C|."""
    cycle = _validated(g, cycle)
    bits = g.adjacency_bits()
    members = 0
    for v in cycle.seq:
        members |= 1 << v
    inside = 0
    for v in cycle.seq:
        inside += (bits[v] & members).bit_count()
    return inside // 2 - len(cycle.seq)


def is_c_chorded(g: Graph, cycle: OrientedCycle, c: int) -> bool:
    if c < 1:
        raise ValueError(f"chord requirement must be >= 1, got {c}")
    return chord_count(g, cycle) >= c


def chord_root_complete(c: int) -> float:
    """Positive real root of t(t-3)/2 = c: order where clique cycles reach c chords."""
    _require_positive(c=c)
    return (math.sqrt(8 * c + 9) + 3) / 2


def chord_root_bipartite(c: int) -> float:
    """Positive real root of t(t-2) = c: side where K_{t,t} cycles reach c chords."""
    _require_positive(c=c)
    return math.sqrt(c + 1) + 1


def min_chorded_order(c: int) -> int:
    """Smallest t whose complete-graph Hamilton cycle has at least c chords.

    Integer predicate t(t-3)/2 >= c decides the boundary; the float root is
    only a starting guess (exact roots like c=2 must not misround).
    """
    _require_positive(c=c)
    t = max(3, int(chord_root_complete(c)) - 1)
    while t * (t - 3) // 2 < c:
        t += 1
    return t


def min_chorded_side(c: int) -> int:
    """Smallest side t with t(t-2) >= c; bipartite hosts need order >= 2t."""
    _require_positive(c=c)
    t = max(1, int(chord_root_bipartite(c)) - 1)
    while t * (t - 2) < c:
        t += 1
    return t


def partition_order_threshold(k: int, c: int) -> int:
    """Order above which the degree condition forces a spanning chorded-cycle partition."""
    _require_positive(k=k, c=c)
    return 8 * k * k * c + 10 * k * c - 4 * k + 2 * c + 1


def dirac_order_threshold(k: int, c: int) -> int:
    """Ceiling of 12kc - 2k*chord_root_complete(c) + c + 8, computed exactly.

    t >= 12kc + c + 8 - k*(sqrt(8c+9) + 3) is decided by squaring: float
    ceilings near exact roots (8c+9 a perfect square) would be fragile.
    """
    _require_positive(k=k, c=c)
    base = 12 * k * c + c + 8 - 3 * k
    # smallest integer t with k*sqrt(8c+9) >= base - t
    guess = math.ceil(base - k * math.sqrt(8 * c + 9)) - 2
    t = guess
    while True:
        r = base - t
        if r <= 0 or k * k * (8 * c + 9) >= r * r:
            return t
        t += 1


def packing_order_threshold(k: int, c: int) -> int:
    """Minimum order under which k disjoint c-chorded cycles are guaranteed."""
    _require_positive(k=k, c=c)
    return k * (c + 3)


def packing_sigma2_threshold(k: int, c: int) -> int:
    """Degree-sum bound guaranteeing k disjoint c-chorded cycles."""
    _require_positive(k=k, c=c)
    return 2 * k * (c + 2) - 1


def _require_positive(**kwargs: int) -> None:
    for name, value in kwargs.items():
        if value < 1:
            raise ValueError(f"{name} must be >= 1, got {value}")
