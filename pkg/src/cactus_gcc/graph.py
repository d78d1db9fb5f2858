"""Simple undirected graphs on vertices 0..n-1 and the structural queries used
throughout the package (complement, induced subgraphs, connectivity, blocks)."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable


class GraphError(ValueError):
    pass


class DisconnectedGraphError(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. ``adj[i]`` is the frozenset of neighbours of i."""

    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows, expected {self.n}")
        for i, nbrs in enumerate(self.adj):
            for j in nbrs:
                if not 0 <= j < self.n:
                    raise GraphError(f"neighbour {j} of {i} out of range")
                if j == i:
                    raise GraphError(f"loop at vertex {i}")
                if i not in self.adj[j]:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    def edges(self) -> list[tuple[int, int]]:
        return sorted((i, j) for i in range(self.n) for j in self.adj[i] if i < j)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# ---- small named families, used by tests, the CLI and the examples ----

def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def bowtie() -> Graph:
    """Two triangles sharing vertex 0."""
    return Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])


def prism3() -> Graph:
    """Triangles 0-2-4 and 1-3-5 joined by the matching 0-3, 1-4, 2-5."""
    return Graph.from_edges(6, [(0, 2), (2, 4), (0, 4), (1, 3), (3, 5), (1, 5),
                                (0, 3), (1, 4), (2, 5)])


# ---- operations ----

def complement(g: Graph) -> Graph:
    full = frozenset(range(g.n))
    return Graph(g.n, tuple(full - g.adj[i] - {i} for i in range(g.n)))


def induced_subgraph(g: Graph, vs: Iterable[int]) -> Graph:
    """Subgraph on ``vs``, relabelled 0..k-1 by ascending original index."""
    keep = sorted(set(vs))
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(keep)}
    return Graph(len(keep), tuple(frozenset(index[u] for u in g.adj[v] if u in index)
                                  for v in keep))


def degree_stats(g: Graph) -> tuple[int, int]:
    """(minimum degree, maximum degree); (0, 0) for the null graph."""
    if g.n == 0:
        return 0, 0
    degs = [len(s) for s in g.adj]
    return min(degs), max(degs)


def components(g: Graph) -> list[frozenset[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
                    comp.append(w)
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError(f"graph with {len(components(g))} components; "
                                     "a connected graph is required")


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and is_connected(g) and g.m == g.n - 1


def is_cycle(g: Graph) -> bool:
    return g.n >= 3 and is_connected(g) and all(len(s) == 2 for s in g.adj)


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(components(g))


# ---- block (2-connected component) decomposition ----

@dataclass(frozen=True)
class Block:
    vertices: frozenset[int]
    edges: tuple[tuple[int, int], ...]
    kind: str  # "edge", "cycle", or "biconnected" (2-connected but not a cycle)


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Block, ...]
    cut_vertices: frozenset[int]
    blocks_of: tuple[tuple[int, ...], ...] = field(repr=False)  # vertex -> block ids

    @property
    def cycle_blocks(self) -> list[Block]:
        return [b for b in self.blocks if b.kind == "cycle"]


def _block_kind(nv: int, ne: int) -> str:
    if nv == 2:
        return "edge"
    return "cycle" if ne == nv else "biconnected"


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Hopcroft-Tarjan biconnected components, iterative to avoid recursion limits."""
    require_connected(g)
    disc = [-1] * g.n
    low = [0] * g.n
    cuts: set[int] = set()
    raw_blocks: list[list[tuple[int, int]]] = []
    edge_stack: list[tuple[int, int]] = []
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        # frames: (vertex, parent, iterator over sorted neighbours)
        stack = [(root, -1, iter(sorted(g.adj[root])))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    stack.append((w, u, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] >= disc[p]:
                    if p != root:
                        cuts.add(p)
                    block = []
                    while True:
                        e = edge_stack.pop()
                        block.append(e)
                        if e == (p, u):
                            break
                    raw_blocks.append(block)
        if root_children >= 2:
            cuts.add(root)

    blocks = []
    for edges in raw_blocks:
        es = tuple(sorted((min(a, b), max(a, b)) for a, b in edges))
        vs = frozenset(v for e in es for v in e)
        blocks.append(Block(vs, es, _block_kind(len(vs), len(es))))
    blocks.sort(key=lambda b: (min(b.vertices), sorted(b.vertices)))
    blocks_of: list[list[int]] = [[] for _ in range(g.n)]
    for bi, b in enumerate(blocks):
        for v in b.vertices:
            blocks_of[v].append(bi)
    return BlockDecomposition(tuple(blocks), frozenset(cuts),
                              tuple(tuple(x) for x in blocks_of))


def cycle_walk(block: Block, start: int, toward: int | None = None) -> list[int]:
    """Vertices of a cycle block in cyclic order beginning at ``start``.

    The walk leaves ``start`` toward ``toward`` if given, else toward the smaller
    neighbour on the cycle.
    """
    if block.kind != "cycle":
        raise GraphError("cycle_walk needs a cycle block")
    nbrs: dict[int, list[int]] = {v: [] for v in block.vertices}
    for a, b in block.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    nxt = toward if toward is not None else min(nbrs[start])
    if nxt not in nbrs[start]:
        raise GraphError(f"{toward} is not a cycle neighbour of {start}")
    walk = [start]
    prev, cur = start, nxt
    while cur != start:
        walk.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    return walk
