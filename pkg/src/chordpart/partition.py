"""Exchange engine that grows a packing of chorded cycles into a spanning partition.

The engine keeps k disjoint cycles, each with at least c chords, and a set
of uncovered vertices. Every move replaces some cycles by new valid ones
and strictly increases the lexicographic potential

    (covered low-degree vertices, covered vertices),

so the loop terminates within (|low|+1)(n+1) moves. Move kinds, tried in a
fixed order:

  crossing_rotation / crossing_external
      reroute one cycle through an uncovered component, growing it;
  split
      a component with many attachments on one cycle lets that cycle and a
      partner be recut into two chorded cycles that swallow part of it;
  absorb_large_leftover
      when the uncovered region is large, merge two cycles plus one
      uncovered vertex into a single cycle and mint a replacement cycle
      inside the remaining uncovered region;
  absorb_small_leftover_(far|near)
      when the uncovered region is a small low-degree clique, merge two
      cycles with one leftover vertex and rebalance by splitting the
      largest cycle along two carefully chosen chords.

Every constructed cycle is re-validated and re-counted before a move is
accepted; a move that fails verification raises instead of corrupting the
state.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .cycles import CycleError, OrientedCycle, chord_count, chords, partition_order_threshold
from .graph import Graph, components, induced, sigma2
from .oracle import DEFAULT_ORACLE_LIMIT, _CycleSearch, oracle_partition
from .packing import DEFAULT_BUDGET, PackingSearchResult, find_packing_detailed


class EngineError(RuntimeError):
    """Internal invariant broke; indicates a bug, not a bad input."""


class MoveApplicationError(EngineError):
    """A move did not yield a valid, strictly better state."""


class TwoChordsError(RuntimeError):
    """Two-chord selection failed; `stage` names the step or bound that broke."""

    def __init__(self, message: str, stage: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


MOVE_KINDS = (
    "crossing_rotation",
    "crossing_external",
    "split",
    "absorb_large_leftover",
    "absorb_small_leftover_far",
    "absorb_small_leftover_near",
)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Certificate:
    """Verification result for a claimed packing or partition."""

    k_expected: int
    c_required: int
    n: int
    cycle_count: int
    cycles_valid: tuple[bool, ...]
    chord_counts: tuple[int, ...]
    disjoint: bool
    spanning: bool
    covered: int
    require_spanning: bool
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


def _coerce_cycle(g: Graph, item) -> OrientedCycle:
    if isinstance(item, OrientedCycle):
        if item.host is g or item.host == g:
            return item
        return OrientedCycle(item.seq, g)
    return OrientedCycle(tuple(item), g)


def _certify(g: Graph, k: int, c: int, cycles: Sequence, require_spanning: bool) -> Certificate:
    problems: list[str] = []
    valid_flags: list[bool] = []
    counts: list[int] = []
    coerced: list[OrientedCycle | None] = []
    for i, item in enumerate(cycles):
        try:
            cyc = _coerce_cycle(g, item)
            coerced.append(cyc)
            valid_flags.append(True)
            counts.append(chord_count(g, cyc))
        except (CycleError, KeyError, TypeError) as exc:
            coerced.append(None)
            valid_flags.append(False)
            counts.append(-1)
            problems.append(f"cycle {i}: {exc}")
    if len(cycles) != k:
        problems.append(f"expected {k} cycles, got {len(cycles)}")
    for i, cnt in enumerate(counts):
        if valid_flags[i] and cnt < c:
            problems.append(f"cycle {i}: {cnt} chords, required {c}")
    covered: set[int] = set()
    total = 0
    for cyc in coerced:
        if cyc is not None:
            covered |= cyc.vertex_set
            total += len(cyc)
    disjoint = total == len(covered)
    if not disjoint:
        problems.append("cycles are not pairwise vertex-disjoint")
    spanning = disjoint and len(covered) == g.n
    if require_spanning and not spanning:
        problems.append(f"cycles cover {len(covered)} of {g.n} vertices")
    return Certificate(
        k_expected=k,
        c_required=c,
        n=g.n,
        cycle_count=len(cycles),
        cycles_valid=tuple(valid_flags),
        chord_counts=tuple(counts),
        disjoint=disjoint,
        spanning=spanning,
        covered=len(covered),
        require_spanning=require_spanning,
        problems=tuple(problems),
    )


def verify_state(g: Graph, k: int, c: int, cycles: Sequence) -> Certificate:
    """Check k disjoint c-chorded cycles; spanning is reported but not required."""
    return _certify(g, k, c, cycles, require_spanning=False)


def verify_partition(g: Graph, k: int, c: int, cycles: Sequence) -> Certificate:
    """Check a full partition claim: verify_state plus coverage of every vertex."""
    return _certify(g, k, c, cycles, require_spanning=True)


# ---------------------------------------------------------------------------
# state


def low_degree_set(g: Graph) -> frozenset[int]:
    """Vertices with degree strictly below n/2, compared in integers."""
    return frozenset(v for v in range(g.n) if 2 * g.degree(v) < g.n)


@dataclass(frozen=True)
class PartitionState:
    """k disjoint c-chorded cycles plus the uncovered remainder of one graph.

    `low` is fixed by the graph alone and never changes during a run.
    """

    g: Graph
    k: int
    c: int
    cycles: tuple[OrientedCycle, ...]
    low: frozenset[int]
    uncovered: frozenset[int]
    potential: tuple[int, int]

    @classmethod
    def from_cycles(cls, g: Graph, k: int, c: int, cycles: Iterable) -> "PartitionState":
        if k < 1 or c < 1:
            raise ValueError(f"k and c must be >= 1, got k={k}, c={c}")
        cert = verify_state(g, k, c, tuple(cycles))
        if not cert.ok:
            raise ValueError("invalid state: " + "; ".join(cert.problems))
        cyc_tuple = tuple(_coerce_cycle(g, item) for item in cycles)
        low = low_degree_set(g)
        covered = frozenset(itertools.chain.from_iterable(cc.vertex_set for cc in cyc_tuple))
        uncovered = frozenset(range(g.n)) - covered
        pot = (len(covered & low), len(covered))
        return cls(g, k, c, cyc_tuple, low, uncovered, pot)

    @cached_property
    def uncovered_components(self) -> tuple[tuple[int, ...], ...]:
        if not self.uncovered:
            return ()
        sub, nodes = induced(self.g, self.uncovered)
        return tuple(tuple(nodes[i] for i in comp) for comp in components(sub))

    def component_of(self, x: int) -> tuple[int, ...]:
        for comp in self.uncovered_components:
            if x in comp:
                return comp
        raise ValueError(f"vertex {x} is not uncovered")

    def with_replaced(self, consumed: Sequence[int], produced: Sequence[OrientedCycle]) -> "PartitionState":
        new_cycles = list(self.cycles)
        for idx, cyc in zip(sorted(consumed), produced):
            new_cycles[idx] = cyc
        return PartitionState.from_cycles(self.g, self.k, self.c, new_cycles)


def potential(state: PartitionState) -> tuple[int, int]:
    """The lexicographic objective: (covered low-degree vertices, covered vertices)."""
    return state.potential


# ---------------------------------------------------------------------------
# moves


@dataclass(frozen=True, eq=False)
class Move:
    kind: str
    consumed: tuple[int, ...]
    produced: tuple[OrientedCycle, ...]
    absorbed: frozenset[int]
    dropped: frozenset[int]
    details: dict

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "consumed": list(self.consumed),
            "produced": [list(cyc.seq) for cyc in self.produced],
            "absorbed": sorted(self.absorbed),
            "dropped": sorted(self.dropped),
            "details": self.details,
        }


def apply_move(state: PartitionState, move: Move) -> PartitionState:
    """Apply a move, re-verify the state, and require a strict potential gain."""
    if move.kind not in MOVE_KINDS:
        raise MoveApplicationError(f"unknown move kind {move.kind!r}")
    if len(move.consumed) != len(move.produced):
        raise MoveApplicationError("consumed and produced cycle counts differ")
    if len(set(move.consumed)) != len(move.consumed):
        raise MoveApplicationError("duplicate consumed index")
    if any(not (0 <= i < state.k) for i in move.consumed):
        raise MoveApplicationError("consumed index out of range")
    try:
        new_state = state.with_replaced(move.consumed, move.produced)
    except ValueError as exc:
        raise MoveApplicationError(f"move produced an invalid state: {exc}") from exc
    if not new_state.potential > state.potential:
        raise MoveApplicationError(
            f"potential did not increase: {state.potential} -> {new_state.potential}"
        )
    if state.uncovered - new_state.uncovered != move.absorbed:
        raise MoveApplicationError("absorbed set does not match the state change")
    if new_state.uncovered - state.uncovered != move.dropped:
        raise MoveApplicationError("dropped set does not match the state change")
    return new_state


# ---------------------------------------------------------------------------
# docking edges


@dataclass(frozen=True)
class DockingEdge:
    """Oriented edge (w_prev, w) on cycle q whose tail sees `u` and head sees
    the partner vertex; `view` fixes the orientation in which it is forward."""

    q: int
    w_prev: int
    w: int
    view: OrientedCycle
    flipped: bool


def find_docking_edge(state: PartitionState, p: int, u: int, partner: int) -> DockingEdge | None:
    """Scan cycles other than p, in both orientations, for a docking edge."""
    g = state.g
    for q in range(state.k):
        if q == p:
            continue
        stored = state.cycles[q]
        for flipped, view in ((False, stored), (True, stored.reversed_view())):
            for w_prev, w in view.oriented_edges():
                if g.has_edge(u, w_prev) and g.has_edge(partner, w):
                    return DockingEdge(q, w_prev, w, view, flipped)
    return None


# ---------------------------------------------------------------------------
# crossing moves


def _component_path(g: Graph, comp: Iterable[int], a: int, b: int,
                    *, interior_required: bool = False) -> list[int] | None:
    """Shortest (a, b)-path through the component, BFS with sorted fronts.

    With interior_required the direct hop a->b is forbidden, so the path
    picks up at least one component vertex even when a and b are adjacent.
    """
    allowed = frozenset(comp) | {a, b}
    parent: dict[int, int | None] = {a: None}
    queue = deque([a])
    while queue:
        cur = queue.popleft()
        if cur == b:
            break
        for w in sorted(g.neighbors(cur) & allowed):
            if w in parent:
                continue
            if interior_required and cur == a and w == b:
                continue
            parent[w] = cur
            queue.append(w)
    if b not in parent:
        return None
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _crossing_move_for(state: PartitionState, p: int, v: int,
                       comp: tuple[int, ...], xs: Iterable[int]) -> Move | None:
    g = state.g
    C = state.cycles[p]
    v_next = C.successor(v)
    ring = list(C.arc(v_next, v))
    n_next = g.neighbors(v_next)
    for x in xs:
        tail = _component_path(g, comp, v, x)
        if tail is None:
            continue
        P = ring + tail[1:]
        n_x = g.neighbors(x)
        for i in range(len(P) - 1):
            # a vertex whose successor on P sees v_next while it sees x itself
            if P[i + 1] in n_next and P[i] in n_x:
                seq = [P[0]] + P[i + 1:] + P[i:0:-1]
                cyc = OrientedCycle(tuple(seq), g)
                return _finish_single_cycle_move(
                    state, p, cyc, "crossing_rotation",
                    {"v": v, "x": x, "pivot": P[i]},
                )
        off = sorted((n_next & n_x & state.uncovered) - set(P))
        for b in off:
            cyc = OrientedCycle(tuple(P + [b]), g)
            return _finish_single_cycle_move(
                state, p, cyc, "crossing_external",
                {"v": v, "x": x, "bridge": b},
            )
    return None


def _finish_single_cycle_move(state: PartitionState, p: int, cyc: OrientedCycle,
                              kind: str, details: dict) -> Move:
    if chord_count(state.g, cyc) < state.c:
        raise EngineError(f"{kind} built a cycle with too few chords")
    absorbed = cyc.vertex_set - state.cycles[p].vertex_set
    return Move(kind, (p,), (cyc,), frozenset(absorbed), frozenset(), details)


def try_move_crossing(state: PartitionState, p: int, v: int, x: int) -> Move | None:
    """Reroute cycle p through the uncovered component of x, starting at its
    attachment v. Returns the replacement-cycle move or None if no pivot or
    external bridge vertex exists."""
    if not (0 <= p < state.k):
        raise ValueError(f"cycle index {p} out of range")
    if x not in state.uncovered:
        raise ValueError(f"vertex {x} is not uncovered")
    comp = state.component_of(x)
    C = state.cycles[p]
    if v not in C.vertex_set:
        raise ValueError(f"vertex {v} is not on cycle {p}")
    if not (state.g.neighbors(v) & frozenset(comp)):
        raise ValueError(f"vertex {v} has no neighbour in the component of {x}")
    return _crossing_move_for(state, p, v, comp, [x])


# ---------------------------------------------------------------------------
# split move


def try_move_split(state: PartitionState, p: int) -> Move | None:
    """Split cycle p against a heavily attached component.

    Needs a component with at least 2c+1 attachments on cycle p: some gap
    between consecutive attachments then avoids the endpoints of c chosen
    chords, one cycle keeps those chords plus a path through the component,
    and the gap joins a docking partner cycle.
    """
    if not (0 <= p < state.k):
        raise ValueError(f"cycle index {p} out of range")
    g, c = state.g, state.c
    C = state.cycles[p]
    for comp in state.uncovered_components:
        comp_set = frozenset(comp)
        attach = [v for v in C.seq if g.neighbors(v) & comp_set]
        if len(attach) < 2 * c + 1:
            continue
        all_chords = sorted(chords(g, C).chords)
        if len(all_chords) < c:
            continue
        chosen = all_chords[:c]
        endpoints = set(itertools.chain.from_iterable(chosen))
        t = len(attach)
        for i in range(t):
            v1, v2 = attach[i], attach[(i + 1) % t]
            if v2 == C.successor(v1):
                continue
            gap = C.arc(C.successor(v1), C.predecessor(v2))
            if endpoints & set(gap):
                continue
            dock = find_docking_edge(state, p, C.successor(v1), C.predecessor(v2))
            if dock is None:
                continue
            path = _component_path(g, comp, v1, v2, interior_required=True)
            if path is None:
                continue
            d1 = OrientedCycle(tuple(C.arc(v2, v1)) + tuple(path[1:-1]), g)
            d2 = OrientedCycle(tuple(gap) + tuple(dock.view.arc(dock.w, dock.w_prev)), g)
            if chord_count(g, d1) < c or chord_count(g, d2) < c:
                raise EngineError("split produced a cycle with too few chords")
            return Move(
                "split", (p, dock.q), (d1, d2), frozenset(path[1:-1]), frozenset(),
                {"v1": v1, "v2": v2, "chords": [list(e) for e in chosen],
                 "dock": [dock.q, dock.w_prev, dock.w]},
            )
    return None


# ---------------------------------------------------------------------------
# chorded-cycle search inside the uncovered region


def find_chorded_cycle_in(g_sub: Graph, c: int, *, exhaustive_limit: int = 16) -> OrientedCycle | None:
    """A cycle of g_sub with at least c chords, preferring larger cycles.

    Exhaustive over vertex subsets up to `exhaustive_limit` vertices;
    beyond that a deterministic greedy path extension closes long cycles
    and checks their chord counts (best effort, may miss).
    """
    if c < 1:
        raise ValueError(f"chord requirement must be >= 1, got {c}")
    if g_sub.n < 3:
        return None
    search = _CycleSearch(g_sub, c)
    if g_sub.n <= exhaustive_limit:
        for size in range(g_sub.n, 2, -1):
            for combo in itertools.combinations(range(g_sub.n), size):
                mask = 0
                for v in combo:
                    mask |= 1 << v
                if search.feasible(mask):
                    cyc = search.cycle_for(mask)
                    if cyc is not None:
                        return cyc
        return None

    orderings = (
        lambda w: w,
        lambda w: (-g_sub.degree(w), w),
    )
    for key in orderings:
        for start in range(g_sub.n):
            path = [start]
            onpath = {start}
            while True:
                ext = [w for w in g_sub.neighbors(path[-1]) if w not in onpath]
                if not ext:
                    break
                nxt = min(ext, key=key)
                path.append(nxt)
                onpath.add(nxt)
            last = path[-1]
            for i in range(len(path) - 2):
                if g_sub.has_edge(last, path[i]):
                    cyc = OrientedCycle(tuple(path[i:]), g_sub)
                    if chord_count(g_sub, cyc) >= c:
                        return cyc
    return None


# ---------------------------------------------------------------------------
# absorb moves, large-leftover regime


def _merged_cycle(state: PartitionState, p: int, v: int, x: int, dock: DockingEdge) -> OrientedCycle:
    """One cycle through all of cycle p, the vertex x, and all of cycle q."""
    C = state.cycles[p]
    seq = tuple(C.arc(C.successor(v), v)) + (x,) + tuple(dock.view.arc(dock.w, dock.w_prev))
    return OrientedCycle(seq, state.g)


def try_move_absorb_large_leftover(state: PartitionState) -> Move | None:
    """When the uncovered region is large, merge two cycles with one of its
    vertices and mint a fresh chorded cycle inside what remains."""
    g, k, c = state.g, state.k, state.c
    if 2 * len(state.uncovered) < g.n - 4 * k * c + 2:
        return None
    for x in sorted(state.uncovered):
        rest = state.uncovered - {x}
        sub, nodes = induced(g, rest)
        local = find_chorded_cycle_in(sub, c)
        if local is None:
            continue
        d1 = OrientedCycle(tuple(nodes[i] for i in local.seq), g)
        for p in range(k):
            C = state.cycles[p]
            for v in sorted(g.neighbors(x) & C.vertex_set):
                dock = find_docking_edge(state, p, C.successor(v), x)
                if dock is None:
                    continue
                d2 = _merged_cycle(state, p, v, x, dock)
                if chord_count(g, d1) < c or chord_count(g, d2) < c:
                    raise EngineError("large-leftover absorb built a thin cycle")
                absorbed = frozenset({x}) | d1.vertex_set
                return Move(
                    "absorb_large_leftover", (p, dock.q), (d1, d2),
                    absorbed, frozenset(),
                    {"x": x, "v": v, "dock": [dock.q, dock.w_prev, dock.w]},
                )
    return None


# ---------------------------------------------------------------------------
# two-chord selection on a long cycle


@dataclass(frozen=True)
class TwoChords:
    """Two chords u1-v1, u2-v2 of one oriented cycle with u1 immediately
    before u2, picked so that the arcs [v1, u1] and [u2, v2] catch every
    attachment vertex, keep the marked edge, and are chord-rich at u1, u2."""

    u1: int
    u2: int
    v1: int
    v2: int
    tail_bound: int
    head_bound: int
    common: tuple[int, ...]
    attachments: tuple[int, ...]
    view: OrientedCycle


def find_two_chords(state: PartitionState, r: int, w_edge: tuple[int, int]) -> TwoChords:
    """Select the two chords of cycle r used by the small-leftover absorbs.

    w_edge is an oriented edge of cycle r in either orientation; the cycle
    is viewed in the direction that makes it forward. Raises TwoChordsError
    naming the stage when a precondition or selection bound breaks.
    """
    g, k, c = state.g, state.k, state.c
    if not (0 <= r < state.k):
        raise ValueError(f"cycle index {r} out of range")
    stored = state.cycles[r]
    w_prev, w = w_edge
    if w_prev not in stored.vertex_set or w not in stored.vertex_set:
        raise TwoChordsError("marked vertices are not on the cycle", stage="edge")
    if stored.successor(w_prev) == w:
        view = stored
    elif stored.successor(w) == w_prev:
        view = stored.reversed_view()
    else:
        raise TwoChordsError("marked pair is not a cycle edge", stage="edge")

    m = len(view)
    need = 8 * k * c + 10 * c - 4
    if m < need:
        raise TwoChordsError(f"cycle order {m} is below the required {need}", stage="order")
    cvs = view.vertex_set
    S = frozenset(v for v in view.seq if g.neighbors(v) & state.uncovered)
    if len(S) > 2 * c:
        raise TwoChordsError(f"{len(S)} attachments exceed the bound {2 * c}", stage="attachments")
    min_deg = m - 2 * k * c + 1
    for v in view.seq:
        if v not in S and len(g.neighbors(v) & cvs) < min_deg:
            raise TwoChordsError(
                f"vertex {v} has cycle degree below {min_deg}", stage="degree")

    # consecutive anchors just after w, dodging attachments and the marked tail
    blocked = S | {w_prev}
    pos_w = view.position(w)
    u1 = u2 = None
    span = 0
    for j in range(m - 1):
        a, b = view.at(pos_w + j), view.at(pos_w + j + 1)
        if a not in blocked and b not in blocked:
            u1, u2, span = a, b, j + 1
            break
    if u1 is None:
        raise TwoChordsError("no admissible consecutive pair", stage="anchor_pair")
    if span > 2 * len(S) + 1:
        raise TwoChordsError(f"anchor distance {span} exceeds {2 * len(S) + 1}", stage="anchor_pair")

    base = view.position(u2)

    def rel(vtx: int) -> int:
        return (view.position(vtx) - base) % m

    nbrs1 = sorted(g.neighbors(u1) & cvs, key=rel)
    nbrs2 = sorted(g.neighbors(u2) & cvs, key=rel)

    # rear window [tail_bound, u1]: contains w_prev, holds >= c+2 neighbours
    # of u1, and is as thin as those constraints allow
    rel_wprev = rel(w_prev)
    tail_bound = None
    tail_deg = 0
    desc = list(reversed(nbrs1))
    for i in range(c + 1, len(desc)):
        if rel(desc[i]) <= rel_wprev:
            tail_bound, tail_deg = desc[i], i + 1
            break
    if tail_bound is None:
        raise TwoChordsError("no rear window boundary", stage="rear_window")
    if tail_deg > 4 * c + 1:
        raise TwoChordsError(f"rear window degree {tail_deg} exceeds {4 * c + 1}", stage="rear_window")
    if m - rel(tail_bound) > 2 * k * c + 4 * c:
        raise TwoChordsError("rear window is too wide", stage="rear_window")

    # front window [u2, head_bound]: exactly c+2 neighbours of u2
    if len(nbrs2) < c + 2:
        raise TwoChordsError("u2 has too few cycle neighbours", stage="front_window")
    head_bound = nbrs2[c + 1]
    if rel(head_bound) + 1 > 2 * k * c + c + 1:
        raise TwoChordsError("front window is too wide", stage="front_window")
    if rel(head_bound) + 1 >= rel(tail_bound):
        raise TwoChordsError("windows meet", stage="window_order")

    lo, hi = rel(head_bound), rel(tail_bound)
    shared = set(nbrs1)
    common_fwd = [v for v in nbrs2 if lo < rel(v) < hi and v in shared]
    if len(common_fwd) < 2 * c:
        raise TwoChordsError(
            f"only {len(common_fwd)} shared neighbours between the windows", stage="common_neighbors")

    # consecutive candidates whose in-between arc misses every attachment
    seq_desc = [tail_bound] + list(reversed(common_fwd)) + [head_bound]
    v1 = v2 = None
    for i in range(len(seq_desc) - 1):
        hi_v, lo_v = seq_desc[i], seq_desc[i + 1]
        if hi_v == view.successor(lo_v):
            v1, v2 = hi_v, lo_v
            break
        between = view.arc(view.successor(lo_v), view.predecessor(hi_v))
        if not (S & set(between)):
            v1, v2 = hi_v, lo_v
            break
    if v1 is None:
        raise TwoChordsError("every candidate gap meets an attachment", stage="clean_gap")

    result = TwoChords(u1, u2, v1, v2, tail_bound, head_bound,
                       tuple(common_fwd), tuple(sorted(S)), view)
    _assert_two_chords(state, result, w_prev, w)
    return result


def _assert_two_chords(state: PartitionState, tc: TwoChords, w_prev: int, w: int) -> None:
    """Re-derive the promised facts from scratch; raise on any miss."""
    g, c = state.g, state.c
    view = tc.view
    m = len(view)
    base = view.position(tc.u2)

    def rel(vtx: int) -> int:
        return (view.position(vtx) - base) % m

    def fail(msg: str) -> None:
        raise TwoChordsError(msg, stage="postcondition")

    if view.successor(tc.u1) != tc.u2:
        fail("u2 does not follow u1")
    if not (0 < rel(tc.v2) < rel(tc.v1) < m - 1):
        fail("u1, u2, v2, v1 are not in forward order")
    back_arc = set(view.arc(tc.v1, tc.u1))
    front_arc = set(view.arc(tc.u2, tc.v2))
    if w_prev not in back_arc or w not in back_arc:
        fail("marked edge left the rear arc")
    if not set(tc.attachments) <= back_arc | front_arc:
        fail("an attachment escaped both arcs")
    if len(g.neighbors(tc.u1) & back_arc) < c + 2:
        fail("rear arc is chord-poor at u1")
    if len(g.neighbors(tc.u2) & front_arc) < c + 2:
        fail("front arc is chord-poor at u2")
    for a, b in ((tc.u1, tc.v1), (tc.u2, tc.v2)):
        if not g.has_edge(a, b):
            fail(f"({a}, {b}) is not an edge")
        if view.successor(a) == b or view.predecessor(a) == b:
            fail(f"({a}, {b}) is a cycle edge, not a chord")


# ---------------------------------------------------------------------------
# absorb moves, small-leftover regime


def small_leftover_fact_violations(state: PartitionState) -> list[str]:
    """Structural facts the small-leftover absorbs rely on; empty means ok."""
    g, k, c = state.g, state.k, state.c
    H = state.uncovered
    problems = []
    if not H <= state.low:
        problems.append("uncovered vertices include a high-degree vertex")
    for a, b in itertools.combinations(sorted(H), 2):
        if not g.has_edge(a, b):
            problems.append(f"uncovered vertices {a}, {b} are not adjacent")
            break
    if len(H) > 2 * c + 1:
        problems.append(f"uncovered region has {len(H)} > {2 * c + 1} vertices")
    for cyc in state.cycles:
        for v in cyc.seq:
            if v in state.low and not (g.neighbors(v) & H):
                problems.append(f"covered low-degree vertex {v} sees no uncovered vertex")
                break
    for p, cyc in enumerate(state.cycles):
        floor = len(cyc) - 2 * k * c + 1
        if floor <= 0:
            continue
        for v in cyc.seq:
            if not (g.neighbors(v) & H) and len(g.neighbors(v) & cyc.vertex_set) < floor:
                problems.append(f"cycle {p} vertex {v} has cycle degree below {floor}")
                break
    return problems


def _absorb_far(state: PartitionState, x: int, p: int, v: int,
                dock: DockingEdge, r: int) -> Move:
    g, c = state.g, state.c
    big = state.cycles[r]
    tc = find_two_chords(state, r, (big.seq[0], big.seq[1]))
    view = tc.view
    d1 = _merged_cycle(state, p, v, x, dock)
    d2 = OrientedCycle(view.arc(tc.v1, tc.u1), g)
    d3 = OrientedCycle(view.arc(tc.u2, tc.v2), g)
    dropped = big.vertex_set - d2.vertex_set - d3.vertex_set
    _check_absorb(state, (d1, d2, d3), x, dropped)
    return Move(
        "absorb_small_leftover_far", (p, dock.q, r), (d1, d2, d3),
        frozenset({x}), frozenset(dropped),
        {"x": x, "v": v, "dock": [dock.q, dock.w_prev, dock.w],
         "chords": [[tc.u1, tc.v1], [tc.u2, tc.v2]]},
    )


def _absorb_near(state: PartitionState, x: int, p: int, v: int,
                 dock: DockingEdge, r: int) -> Move:
    g, c = state.g, state.c
    if r == dock.q:
        view_a, va = state.cycles[p], v
        wb_prev, wb = dock.w_prev, dock.w
    else:
        # the big cycle carries the crossing vertex: swap the two roles,
        # reversing both orientations, so the chord surgery happens on it
        view_a, va = dock.view.reversed_view(), dock.w
        wb_prev, wb = state.cycles[p].successor(v), v
    tc = find_two_chords(state, r, (wb_prev, wb))
    view_b = tc.view
    arc_a = view_a.arc(view_a.successor(va), va)
    seg1 = view_b.arc(wb, tc.u1)
    seg2 = view_b.arc(tc.v1, wb_prev)
    d1 = OrientedCycle(tuple(arc_a) + (x,) + tuple(seg1) + tuple(seg2), g)
    d2 = OrientedCycle(view_b.arc(tc.u2, tc.v2), g)
    dropped = view_b.vertex_set - d1.vertex_set - d2.vertex_set
    _check_absorb(state, (d1, d2), x, dropped)
    return Move(
        "absorb_small_leftover_near", (p, dock.q), (d1, d2),
        frozenset({x}), frozenset(dropped),
        {"x": x, "v": v, "dock": [dock.q, dock.w_prev, dock.w],
         "chords": [[tc.u1, tc.v1], [tc.u2, tc.v2]], "split_cycle": r},
    )


def _check_absorb(state: PartitionState, produced: tuple[OrientedCycle, ...],
                  x: int, dropped: frozenset[int]) -> None:
    if x not in state.low:
        raise EngineError("small-leftover absorb picked a high-degree vertex")
    if dropped & state.low:
        raise EngineError("small-leftover absorb dropped a low-degree vertex")
    for cyc in produced:
        if chord_count(state.g, cyc) < state.c:
            raise EngineError("small-leftover absorb built a thin cycle")


def try_move_absorb_small_leftover(state: PartitionState) -> Move | None:
    """Absorb one vertex of a small low-degree uncovered clique.

    Merges two cycles with the vertex and rebalances by splitting the
    largest cycle along two chords; vertices dropped from that cycle are
    all high-degree, so the first potential coordinate strictly rises.
    """
    g, k, c = state.g, state.k, state.c
    H = state.uncovered
    if not H:
        return None
    if 2 * len(H) >= g.n - 4 * k * c + 2:
        return None
    if small_leftover_fact_violations(state):
        return None
    r = max(range(k), key=lambda i: (len(state.cycles[i]), -i))
    if len(state.cycles[r]) < 8 * k * c + 10 * c - 4:
        return None
    for x in sorted(H):
        for p in range(k):
            C = state.cycles[p]
            for v in sorted(g.neighbors(x) & C.vertex_set):
                dock = find_docking_edge(state, p, C.successor(v), x)
                if dock is None:
                    continue
                try:
                    if r not in (p, dock.q):
                        return _absorb_far(state, x, p, v, dock, r)
                    return _absorb_near(state, x, p, v, dock, r)
                except TwoChordsError:
                    continue
    return None


# ---------------------------------------------------------------------------
# stall diagnostics


@dataclass(frozen=True)
class StallDiagnostics:
    """Facts that must hold at any stalled state if the engine is correct."""

    ore_ok: bool
    successor_adjacency_violations: tuple[tuple[int, int, int], ...]
    attachment_bound_violations: tuple[tuple[int, int, int], ...]

    @property
    def clean(self) -> bool:
        if self.successor_adjacency_violations:
            return False
        return not (self.ore_ok and self.attachment_bound_violations)

    def to_json(self) -> dict:
        return {
            "ore_ok": self.ore_ok,
            "successor_adjacency_violations": [list(t) for t in self.successor_adjacency_violations],
            "attachment_bound_violations": [list(t) for t in self.attachment_bound_violations],
            "clean": self.clean,
        }


def stall_diagnostics(state: PartitionState) -> StallDiagnostics:
    """Exhaustive checks at a stall: no attachment successor may see the
    attached component, and under the degree-sum condition no component may
    attach to one cycle in more than 2c places."""
    g, c = state.g, state.c
    ore_ok = sigma2(g) >= g.n
    succ_viol: list[tuple[int, int, int]] = []
    attach_viol: list[tuple[int, int, int]] = []
    for p, cyc in enumerate(state.cycles):
        for comp in state.uncovered_components:
            comp_set = frozenset(comp)
            attach = [v for v in cyc.seq if g.neighbors(v) & comp_set]
            for v in attach:
                for x in sorted(g.neighbors(cyc.successor(v)) & comp_set):
                    succ_viol.append((p, v, x))
            if len(attach) > 2 * c:
                attach_viol.append((p, comp[0], len(attach)))
    return StallDiagnostics(ore_ok, tuple(succ_viol), tuple(attach_viol))


# ---------------------------------------------------------------------------
# driver


DEFAULT_ENGINE_BUDGET = DEFAULT_BUDGET


@dataclass
class MoveRecord:
    index: int
    kind: str
    consumed: tuple[int, ...]
    produced: tuple[tuple[int, ...], ...]
    absorbed: tuple[int, ...]
    dropped: tuple[int, ...]
    potential_before: tuple[int, int]
    potential_after: tuple[int, int]
    details: dict

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "kind": self.kind,
            "consumed": list(self.consumed),
            "produced": [list(s) for s in self.produced],
            "absorbed": list(self.absorbed),
            "dropped": list(self.dropped),
            "potential_before": list(self.potential_before),
            "potential_after": list(self.potential_after),
            "details": self.details,
        }


@dataclass
class MoveLog:
    records: list[MoveRecord] = field(default_factory=list)
    packing_nodes: int = 0
    initial_potential: tuple[int, int] | None = None
    final_potential: tuple[int, int] | None = None
    engine_stalled: bool = False
    oracle_rescued: bool = False
    stall: StallDiagnostics | None = None

    @property
    def move_count(self) -> int:
        return len(self.records)


@dataclass
class PartitionSuccess:
    cycles: tuple[OrientedCycle, ...]
    log: MoveLog

    @property
    def ok(self) -> bool:
        return True


@dataclass
class FailureReport:
    n: int
    sigma2: int | float
    order_threshold: int
    sigma2_ok: bool
    order_ok: bool
    packing_found: bool
    packing_exhausted: bool
    best_cycles: tuple[OrientedCycle, ...] | None
    best_potential: tuple[int, int] | None
    uncovered: tuple[int, ...]
    oracle_verdict: str  # "none" | "not_run"
    stall: StallDiagnostics | None
    log: MoveLog

    @property
    def ok(self) -> bool:
        return False


def find_next_move(state: PartitionState) -> Move | None:
    """Deterministic move search: crossing, then split, then the regime-
    appropriate absorb; candidates scanned in ascending order throughout."""
    g, k, c = state.g, state.k, state.c
    comps = state.uncovered_components
    for p in range(k):
        C = state.cycles[p]
        cands = []
        for comp in comps:
            comp_set = frozenset(comp)
            for v in C.seq:
                if g.neighbors(v) & comp_set:
                    cands.append((v, comp))
        for v, comp in sorted(cands, key=lambda t: (t[0], t[1][0])):
            mv = _crossing_move_for(state, p, v, comp, comp)
            if mv is not None:
                return mv
    for p in range(k):
        mv = try_move_split(state, p)
        if mv is not None:
            return mv
    if 2 * len(state.uncovered) >= g.n - 4 * k * c + 2:
        return try_move_absorb_large_leftover(state)
    return try_move_absorb_small_leftover(state)


def partition(g: Graph, k: int, c: int, *, budget: int = DEFAULT_ENGINE_BUDGET,
              oracle_threshold: int = DEFAULT_ORACLE_LIMIT,
              ) -> PartitionSuccess | FailureReport:
    """Partition g into k vertex-disjoint cycles, each with at least c chords.

    Finds an initial packing, then applies potential-increasing moves until
    the cycles span the graph. If the engine stalls (possible only when the
    order or degree-sum hypotheses fail), the exhaustive oracle settles the
    instance for n <= oracle_threshold; otherwise a FailureReport carries
    the best state reached and the failed hypotheses.
    """
    if k < 1 or c < 1:
        raise ValueError(f"k and c must be >= 1, got k={k}, c={c}")
    if g.n < 3:
        raise ValueError(f"graph must have at least 3 vertices, got {g.n}")
    if budget < 1:
        raise ValueError(f"budget must be positive, got {budget}")

    low = low_degree_set(g)
    bound = (len(low) + 1) * (g.n + 1)
    pres = find_packing_detailed(g, k, c, budget)
    log = MoveLog(packing_nodes=pres.nodes)
    if pres.packing is None:
        return _stall_exit(g, k, c, None, log, None, pres, oracle_threshold)

    state = PartitionState.from_cycles(g, k, c, pres.packing.cycles)
    log.initial_potential = state.potential
    while state.uncovered:
        mv = find_next_move(state)
        if mv is None:
            diag = stall_diagnostics(state)
            log.engine_stalled = True
            log.stall = diag
            log.final_potential = state.potential
            return _stall_exit(g, k, c, state, log, diag, pres, oracle_threshold)
        before = state.potential
        state = apply_move(state, mv)
        log.records.append(MoveRecord(
            index=len(log.records),
            kind=mv.kind,
            consumed=mv.consumed,
            produced=tuple(cyc.seq for cyc in mv.produced),
            absorbed=tuple(sorted(mv.absorbed)),
            dropped=tuple(sorted(mv.dropped)),
            potential_before=before,
            potential_after=state.potential,
            details=mv.details,
        ))
        if len(log.records) > bound:
            raise EngineError(f"move count exceeded the potential bound {bound}")
    log.final_potential = state.potential
    cert = verify_partition(g, k, c, state.cycles)
    if not cert.ok:
        raise EngineError("spanning state failed verification: " + "; ".join(cert.problems))
    return PartitionSuccess(state.cycles, log)


def _stall_exit(g: Graph, k: int, c: int, state: PartitionState | None, log: MoveLog,
                diag: StallDiagnostics | None, pres: PackingSearchResult,
                oracle_threshold: int) -> PartitionSuccess | FailureReport:
    if g.n <= oracle_threshold:
        witness = oracle_partition(g, k, c, limit=max(oracle_threshold, g.n))
        if witness is not None:
            log.oracle_rescued = True
            return PartitionSuccess(witness, log)
        verdict = "none"
    else:
        verdict = "not_run"
    s2 = sigma2(g)
    threshold = partition_order_threshold(k, c)
    return FailureReport(
        n=g.n,
        sigma2=s2,
        order_threshold=threshold,
        sigma2_ok=s2 >= g.n,
        order_ok=g.n >= threshold,
        packing_found=pres.packing is not None,
        packing_exhausted=pres.exhausted,
        best_cycles=state.cycles if state is not None else None,
        best_potential=state.potential if state is not None else None,
        uncovered=tuple(sorted(state.uncovered)) if state is not None else tuple(range(g.n)),
        oracle_verdict=verdict,
        stall=diag,
        log=log,
    )
