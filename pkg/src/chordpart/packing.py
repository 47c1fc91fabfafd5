"""Initial collections of k disjoint c-chorded cycles.

A greedy pass extracts small dense cycle sets first (a 4-set with five
edges already carries a 1-chorded cycle); when greed stalls, an exact
budgeted backtracking search settles existence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import OrientedCycle, min_chorded_order, packing_order_threshold, packing_sigma2_threshold
from .graph import Graph, sigma2
from .oracle import _CycleSearch, budgeted_packing_search, cycles_from_masks

DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class Packing:
    """k pairwise disjoint cycles, each with at least c chords."""

    cycles: tuple[OrientedCycle, ...]
    k: int
    c: int

    def validate(self) -> None:
        from .partition import verify_state  # local import: partition depends on packing

        cert = verify_state(self.cycles[0].host, self.k, self.c, self.cycles)
        if not cert.ok:
            raise ValueError(f"invalid packing: {'; '.join(cert.problems)}")


@dataclass(frozen=True)
class PackingPreconditions:
    n: int
    sigma2: int | float
    order_threshold: int
    sigma2_threshold: int
    order_ok: bool
    sigma2_ok: bool


@dataclass(frozen=True)
class PackingSearchResult:
    packing: "Packing | None"
    nodes: int
    exhausted: bool


def check_packing_preconditions(g: Graph, k: int, c: int) -> PackingPreconditions:
    """Report the order and degree-sum bounds that guarantee a packing exists."""
    _check_params(k, c)
    s2 = sigma2(g)
    order_threshold = packing_order_threshold(k, c)
    sigma2_threshold = packing_sigma2_threshold(k, c)
    return PackingPreconditions(
        n=g.n,
        sigma2=s2,
        order_threshold=order_threshold,
        sigma2_threshold=sigma2_threshold,
        order_ok=g.n >= order_threshold,
        sigma2_ok=s2 >= sigma2_threshold,
    )


def find_packing(g: Graph, k: int, c: int, budget: int = DEFAULT_BUDGET) -> Packing | None:
    """A verified packing of k disjoint c-chorded cycles, or None.

    None means either a completed search proved absence or the budget ran
    out; use find_packing_detailed when the distinction matters.
    """
    return find_packing_detailed(g, k, c, budget).packing


def find_packing_detailed(g: Graph, k: int, c: int,
                          budget: int = DEFAULT_BUDGET) -> PackingSearchResult:
    _check_params(k, c)
    if budget < 1:
        raise ValueError(f"budget must be positive, got {budget}")
    if g.n < 3 * k:
        return PackingSearchResult(None, 0, False)

    greedy, nodes_greedy = _greedy_packing(g, k, c, budget)
    if greedy is not None:
        packing = Packing(tuple(greedy), k, c)
        packing.validate()
        return PackingSearchResult(packing, nodes_greedy, False)

    remaining = budget - nodes_greedy
    if remaining < 1:
        return PackingSearchResult(None, nodes_greedy, True)
    outcome = budgeted_packing_search(g, k, c, remaining)
    nodes = nodes_greedy + outcome.nodes
    if outcome.masks is None:
        return PackingSearchResult(None, nodes, outcome.exhausted)
    packing = Packing(cycles_from_masks(g, c, outcome.masks), k, c)
    packing.validate()
    return PackingSearchResult(packing, nodes, False)


def _greedy_packing(g: Graph, k: int, c: int,
                    budget: int) -> tuple[list[OrientedCycle] | None, int]:
    """Extract k small chorded cycles from dense edge neighbourhoods.

    Candidate sets are seeded by an edge plus its highest-degree common
    neighbours, scanning target sizes upward from the minimum feasible
    order. Failure here is not a verdict, only a handoff to exact search.
    """
    search = _CycleSearch(g, c)
    nodes = 0
    remaining = set(range(g.n))
    found: list[OrientedCycle] = []
    t0 = min_chorded_order(c)

    for _ in range(k):
        best_mask = None
        for size in range(t0, t0 + 3):
            if size > len(remaining):
                break
            for u, v in g.edges:
                if u not in remaining or v not in remaining:
                    continue
                common = sorted(
                    (w for w in (g.neighbors(u) & g.neighbors(v)) if w in remaining),
                    key=lambda w: (-len(g.neighbors(w) & remaining), w),
                )
                if len(common) < size - 2:
                    continue
                mask = (1 << u) | (1 << v)
                for w in common[: size - 2]:
                    mask |= 1 << w
                nodes += 1
                if nodes > budget:
                    return None, budget
                if search.feasible(mask) and search.hamilton(mask) is not None:
                    best_mask = mask
                    break
            if best_mask is not None:
                break
        if best_mask is None:
            return None, nodes + search.nodes
        cyc = search.cycle_for(best_mask)
        found.append(cyc)
        remaining -= set(cyc.seq)
    return found, nodes + search.nodes


def _check_params(k: int, c: int) -> None:
    if k < 1 or c < 1:
        raise ValueError(f"k and c must be >= 1, got k={k}, c={c}")
