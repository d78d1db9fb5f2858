"""Hypothesis strategies and brute-force oracles shared by the test modules."""

from itertools import combinations

from hypothesis import strategies as st

from cactus_gcc.cactus import generate_cactus, max_cycles
from cactus_gcc.graph import Graph, components, induced_subgraph, is_connected, is_forest


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def cacti(draw, min_n=1, max_n=20):
    n = draw(st.integers(min_n, max_n))
    c = draw(st.integers(0, max_cycles(n)))
    seed = draw(st.integers(0, 2**32))
    return generate_cactus(n, c, seed)


def all_connected_graphs(max_n):
    for n in range(1, max_n + 1):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
            if is_connected(g):
                yield g


def brute_tree_cover_number(g: Graph) -> int:
    """Minimum number of disjoint induced trees covering V, by subset DP."""
    full = (1 << g.n) - 1
    trees = []
    for mask in range(1, full + 1):
        vs = [v for v in range(g.n) if mask >> v & 1]
        sub = induced_subgraph(g, vs)
        if is_connected(sub) and is_forest(sub):
            trees.append(mask)
    best = {0: 0}
    for covered in range(full + 1):
        if covered not in best:
            continue
        free = full & ~covered
        if not free:
            continue
        low = free & -free
        for t in trees:
            if t & low and not t & covered:
                u = covered | t
                if best.get(u, 1 << 30) > best[covered] + 1:
                    best[u] = best[covered] + 1
    return best[full]


def brute_edge_clique_cover(g: Graph) -> int:
    edges = g.edges()
    if not edges:
        return 0
    cliques = []
    for r in range(2, g.n + 1):
        for c in combinations(range(g.n), r):
            if all(g.has_edge(a, b) for a, b in combinations(c, 2)):
                cliques.append(frozenset(combinations(c, 2)))
    for k in range(1, len(edges) + 1):
        for pick in combinations(cliques, k):
            if set(edges) <= set().union(*pick):
                return k
    raise AssertionError("unreachable")


def deletion_disconnects(g: Graph, v: int) -> bool:
    rest = induced_subgraph(g, [u for u in range(g.n) if u != v])
    return len(components(rest)) > len(components(g))
