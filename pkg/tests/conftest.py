import pathlib
from itertools import combinations, permutations

import pytest

from chordpart.generators import enumerate_nonisomorphic, graph_from_bits, graph_to_bits

DATA_DIR = pathlib.Path(__file__).parent / "data"
CORPUS_N8 = DATA_DIR / "graphs_n8.txt"


@pytest.fixture(scope="session")
def corpus_n8():
    """All 12346 graphs on 8 vertices up to isomorphism (cached on disk)."""
    if CORPUS_N8.exists():
        graphs = [graph_from_bits(8, int(line, 16))
                  for line in CORPUS_N8.read_text().split()]
    else:
        graphs = enumerate_nonisomorphic(8)
        DATA_DIR.mkdir(exist_ok=True)
        CORPUS_N8.write_text(
            "".join(format(graph_to_bits(g), "07x") + "\n" for g in graphs))
    assert len(graphs) == 12346
    return graphs


def naive_block_ok(g, X, c):
    """Permutation-scan hamiltonicity plus a direct chord-count bound."""
    xs = sorted(X)
    if len(xs) < 3:
        return False
    inside = sum(1 for u, v in combinations(xs, 2) if g.has_edge(u, v))
    if inside < len(xs) + c:
        return False
    first = xs[0]
    for perm in permutations(xs[1:]):
        seq = (first,) + perm
        if all(g.has_edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))):
            return True
    return False


def naive_partition_exists(g, k, c):
    """Reference verdict by unpruned recursion; only sane for n <= 7."""

    def rec(rest, j):
        if j == 0:
            return not rest
        if len(rest) < 3 * j:
            return False
        anchor = min(rest)
        others = sorted(rest - {anchor})
        for size in range(3, len(rest) - 3 * (j - 1) + 1):
            for combo in combinations(others, size - 1):
                block = frozenset((anchor,) + combo)
                if naive_block_ok(g, block, c) and rec(rest - block, j - 1):
                    return True
        return False

    return rec(frozenset(range(g.n)), k)


def naive_packing_exists(g, k, c):
    def rec(rest, j):
        if j == 0:
            return True
        if len(rest) < 3 * j:
            return False
        anchor = min(rest)
        others = sorted(rest - {anchor})
        for size in range(3, len(rest) - 3 * (j - 1) + 1):
            for combo in combinations(others, size - 1):
                block = frozenset((anchor,) + combo)
                if naive_block_ok(g, block, c) and rec(rest - block, j - 1):
                    return True
        return rec(rest - {anchor}, j)

    return rec(frozenset(range(g.n)), k)
