"""Simple undirected graphs on dense integer vertex ids.

The Graph type is immutable after construction and safe to share between
threads; every operation in this module is a pure function of its inputs.
Set-valued results are sorted ascending so repeated runs are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Malformed graph construction or query."""


class GraphParseError(GraphError):
    """Edge-list text that violates the input format."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class Graph:
    """Immutable simple graph: no loops, no parallel edges, vertices 0..n-1."""

    __slots__ = ("n", "edges", "_adj", "_bits", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphError(f"vertex count must be >= 0, got {n}")
        seen: set[tuple[int, int]] = set()
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self._adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)
        self._bits: tuple[int, ...] | None = None
        self._hash: int | None = None

    # -- basic accessors -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def adjacency_lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(s)) for s in self._adj)

    def adjacency_bits(self) -> tuple[int, ...]:
        """Per-vertex neighbour bitmasks, built once on first use."""
        if self._bits is None:
            bits = [0] * self.n
            for u, v in self.edges:
                bits[u] |= 1 << v
                bits[v] |= 1 << u
            self._bits = tuple(bits)
        return self._bits

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- edge-list text format -------------------------------------------
    # First payload line "n m", then m lines "u v" with 0 <= u < v < n.
    # Blank lines and '#' comments are ignored.

    @classmethod
    def from_edge_list_text(cls, text: str) -> "Graph":
        header: tuple[int, int] | None = None
        edges: list[tuple[int, int]] = []
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphParseError(line_no, f"expected two integers, got {line!r}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphParseError(line_no, f"non-integer token in {line!r}") from None
            if header is None:
                if a < 0 or b < 0:
                    raise GraphParseError(line_no, "header 'n m' must be non-negative")
                header = (a, b)
                continue
            n, _ = header
            if not (0 <= a < b < n):
                raise GraphParseError(line_no, f"edge ({a}, {b}) must satisfy 0 <= u < v < n={n}")
            edges.append((a, b))
        if header is None:
            raise GraphParseError(1, "missing 'n m' header line")
        n, m = header
        if len(edges) != m:
            raise GraphParseError(1, f"header declares m={m} edges but {len(edges)} were given")
        try:
            return cls(n, edges)
        except GraphError as exc:
            raise GraphParseError(1, str(exc)) from None

    def to_edge_list_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Block:
    """One biconnected block: its vertices plus the graph cut vertices it contains."""

    vertices: tuple[int, ...]
    is_end_block: bool
    cut_vertices: tuple[int, ...]


def sigma2(g: Graph) -> int | float:
    """Minimum degree sum over non-adjacent vertex pairs; infinity if complete."""
    best: int | float = math.inf
    for u in range(g.n):
        du = g.degree(u)
        for v in range(u + 1, g.n):
            if v not in g.neighbors(u):
                s = du + g.degree(v)
                if s < best:
                    best = s
    return best


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("minimum degree is undefined on the empty graph")
    return min(g.degree(v) for v in range(g.n))


def components(g: Graph) -> list[tuple[int, ...]]:
    """Connected components as sorted vertex tuples, ordered by minimum element."""
    seen = [False] * g.n
    out: list[tuple[int, ...]] = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return out


def blocks(g: Graph) -> list[Block]:
    """Biconnected blocks via iterative lowpoint DFS.

    Isolated vertices form singleton blocks with no edges. An end block
    contains at most one cut vertex of its component.
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    cut: set[int] = set()
    raw_blocks: list[set[int]] = []
    timer = 0

    for root in range(n):
        if disc[root] != -1:
            continue
        if not g.neighbors(root):
            raw_blocks.append({root})
            disc[root] = timer
            timer += 1
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        edge_stack: list[tuple[int, int]] = []
        stack: list[tuple[int, Iterator[int]]] = [(root, iter(sorted(g.neighbors(root))))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    parent[w] = v
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, iter(sorted(g.neighbors(w)))))
                    advanced = True
                    break
                if w != parent[v] and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if not stack:
                continue
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= disc[u]:
                blk: set[int] = set()
                while True:
                    e = edge_stack.pop()
                    blk.add(e[0])
                    blk.add(e[1])
                    if e == (u, v):
                        break
                raw_blocks.append(blk)
                if u != root:
                    cut.add(u)
        if root_children >= 2:
            cut.add(root)

    out = []
    for blk in raw_blocks:
        cut_in = tuple(sorted(cut & blk))
        out.append(Block(tuple(sorted(blk)), len(cut_in) <= 1, cut_in))
    out.sort(key=lambda b: b.vertices)
    return out


def induced(g: Graph, X: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on X, plus the sorted parent ids: new id i <-> nodes[i]."""
    nodes = tuple(sorted(set(X)))
    for v in nodes:
        if not (0 <= v < g.n):
            raise GraphError(f"unknown vertex id {v}")
    index = {v: i for i, v in enumerate(nodes)}
    node_set = set(nodes)
    sub_edges = [
        (index[u], index[v])
        for u, v in g.edges
        if u in node_set and v in node_set
    ]
    return Graph(len(nodes), sub_edges), nodes


def complete_graph(t: int) -> Graph:
    return Graph(t, [(i, j) for i in range(t) for j in range(i + 1, t)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise GraphError("part sizes must be non-negative")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle graph needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])
