"""Cactus recognition, random cactus generation and tree cover numbers."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .graph import (Graph, GraphError, block_decomposition, components, cycle_walk,
                    induced_subgraph, is_connected, is_forest, require_connected)

CYCLE_ORACLE_MAX_N = 12
TREE_COVER_ORACLE_MAX_N = 10


class NotCactusError(GraphError):
    pass


class SizeLimitError(GraphError):
    pass


@dataclass(frozen=True)
class CactusProfile:
    is_cactus: bool
    cycle_count: int
    cls: str  # "tree" | "unicyclic" | "multicyclic" | "none" when not a cactus

    def to_json(self) -> dict:
        return {"is_cactus": self.is_cactus, "cycle_count": self.cycle_count,
                "class": self.cls}


def _class_for(cycles: int) -> str:
    if cycles == 0:
        return "tree"
    return "unicyclic" if cycles == 1 else "multicyclic"


def recognize_cactus(g: Graph) -> CactusProfile:
    # A connected graph is a cactus iff every block is a bridge or a chordless cycle.
    require_connected(g)
    bd = block_decomposition(g)
    if any(b.kind == "biconnected" for b in bd.blocks):
        return CactusProfile(False, len(bd.cycle_blocks), "none")
    cycles = len(bd.cycle_blocks)
    return CactusProfile(True, cycles, _class_for(cycles))


def require_cactus(g: Graph) -> CactusProfile:
    profile = recognize_cactus(g)
    if not profile.is_cactus:
        raise NotCactusError("not a cactus: some edge lies on two cycles")
    return profile


def simple_cycles(g: Graph):
    """Yield every simple cycle once, as a frozenset of its edges.

    Each cycle is rooted at its smallest vertex and only the orientation whose
    second vertex is smaller than its last is reported.
    """
    for s in range(g.n):
        path = [s]
        on_path = {s}
        stack = [iter(sorted(w for w in g.adj[s] if w > s))]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            path.append(w)
            on_path.add(w)
            if len(path) >= 3 and s in g.adj[w] and path[1] < w:
                yield frozenset((min(a, b), max(a, b))
                                for a, b in zip(path, path[1:] + [s]))
            stack.append(iter(sorted(x for x in g.adj[w] if x > s and x not in on_path)))


def cactus_oracle(g: Graph) -> bool:
    """Decide the cactus property by explicit cycle enumeration (exponential)."""
    if g.n > CYCLE_ORACLE_MAX_N:
        raise SizeLimitError(f"cycle oracle limited to n <= {CYCLE_ORACLE_MAX_N}")
    require_connected(g)
    used: set[tuple[int, int]] = set()
    for cyc in simple_cycles(g):
        if used & cyc:
            return False
        used |= cyc
    return True


def max_cycles(n: int) -> int:
    return max(0, (n - 1) // 2)


def generate_cactus(n: int, cycles: int, seed: int) -> Graph:
    """Random connected cactus with exactly ``cycles`` cycles on ``n`` vertices.

    Pieces (cycles of random length and pendant edges) are glued one at a time
    onto a uniformly chosen existing vertex, then labels are shuffled.
    """
    if n < 1:
        raise GraphError("n must be >= 1")
    if cycles < 0 or cycles > max_cycles(n):
        raise GraphError(f"a cactus on {n} vertices supports at most "
                         f"{max_cycles(n)} cycles, requested {cycles}")
    rng = random.Random(seed)
    # every cycle of length k consumes k-1 new vertices; leftovers become bridges
    lengths = [3] * cycles
    spare = n - 1 - 2 * cycles
    bridges = 0
    for _ in range(spare):
        slot = rng.randrange(cycles + 1)
        if slot == cycles:
            bridges += 1
        else:
            lengths[slot] += 1
    pieces = [("cycle", k) for k in lengths] + [("edge", 2)] * bridges
    rng.shuffle(pieces)

    edges: list[tuple[int, int]] = []
    size = 1
    for kind, k in pieces:
        anchor = rng.randrange(size)
        if kind == "edge":
            edges.append((anchor, size))
            size += 1
        else:
            ring = [anchor] + list(range(size, size + k - 1))
            edges.extend((ring[i], ring[(i + 1) % k]) for i in range(k))
            size += k - 1
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph.from_edges(n, [(perm[u], perm[v]) for u, v in edges])


CLASSES = ("tree", "unicyclic", "multicyclic")


def derive_seed(master: int, key) -> int:
    digest = hashlib.blake2b(f"{master}:{key}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


@dataclass(frozen=True)
class CorpusInstance:
    index: int
    seed: int
    n: int
    cycles: int
    graph: Graph


def corpus_instance(master: int, index: int, n_min: int, n_max: int) -> CorpusInstance:
    """Instance ``index`` of a seeded corpus. Classes rotate tree, unicyclic,
    multicyclic by index; small n may force fewer cycles."""
    seed = derive_seed(master, index)
    rng = random.Random(seed)
    n = rng.randint(n_min, n_max)
    top = max_cycles(n)
    target = CLASSES[index % 3]
    if target == "tree" or top == 0:
        cycles = 0
    elif target == "unicyclic" or top == 1:
        cycles = 1
    else:
        cycles = rng.randint(2, top)
    return CorpusInstance(index, seed, n, cycles, generate_cactus(n, cycles, seed))


# ---- tree covers ----

@dataclass(frozen=True)
class TreeCover:
    parts: tuple[frozenset[int], ...]

    @property
    def value(self) -> int:
        return len(self.parts)

    def to_json(self) -> dict:
        return {"value": self.value, "parts": [sorted(p) for p in self.parts]}


@dataclass(frozen=True)
class TreeCoverBounds:
    lower: int
    upper: int
    exact: int | None = None


def constructive_tree_cover(g: Graph) -> TreeCover:
    """A tree cover with cycle_count + 1 parts.

    Blocks are visited outward from vertex 0. A bridge extends the part of the
    vertex it was reached from. A cycle entered at v keeps all its vertices in
    v's part except the first one on the walk, which opens a new part; hence no
    part ever contains a whole cycle.
    """
    profile = require_cactus(g)
    if g.n == 0:
        return TreeCover(())
    bd = block_decomposition(g)
    part_of = {0: 0}
    parts = 1
    done = [False] * len(bd.blocks)
    queue = [0]
    while queue:
        v = queue.pop(0)
        for bi in bd.blocks_of[v]:
            if done[bi]:
                continue
            done[bi] = True
            block = bd.blocks[bi]
            if block.kind == "edge":
                (u,) = block.vertices - {v}
                part_of[u] = part_of[v]
                queue.append(u)
                continue
            walk = cycle_walk(block, v)
            part_of[walk[1]] = parts
            parts += 1
            for u in walk[2:]:
                part_of[u] = part_of[v]
            queue.extend(walk[1:])
    groups: dict[int, set[int]] = {}
    for v, p in part_of.items():
        groups.setdefault(p, set()).add(v)
    cover = TreeCover(tuple(sorted((frozenset(s) for s in groups.values()), key=min)))
    assert cover.value == profile.cycle_count + 1
    return cover


def tree_cover_bounds(g: Graph, profile: CactusProfile,
                      oracle: TreeCover | None = None) -> TreeCoverBounds:
    if not profile.is_cactus:
        raise NotCactusError("tree cover bounds are only defined here for cacti")
    exact = oracle.value if oracle is not None else None
    if profile.cls == "tree":
        return TreeCoverBounds(1, 1, 1)
    if profile.cls == "unicyclic":
        return TreeCoverBounds(2, 2, 2)
    # upper bound witnessed by constructive_tree_cover
    return TreeCoverBounds(3, profile.cycle_count + 1, exact)


def is_tree_cover(g: Graph, parts) -> bool:
    seen: set[int] = set()
    for p in parts:
        if not p or seen & p:
            return False
        seen |= p
        sub = induced_subgraph(g, p)
        if not (is_connected(sub) and is_forest(sub)):
            return False
    return seen == set(range(g.n))


def tree_cover_oracle(g: Graph) -> TreeCover:
    """Minimum tree cover by exhaustive search over vertex partitions.

    Partitions are explored for k = 1, 2, ... parts; vertices are placed one at
    a time and a branch is cut as soon as a part stops inducing a forest.
    Connectivity of each part is checked once all vertices are placed.
    """
    if g.n > TREE_COVER_ORACLE_MAX_N:
        raise SizeLimitError(f"tree cover oracle limited to n <= {TREE_COVER_ORACLE_MAX_N}")
    if g.n == 0:
        return TreeCover(())

    def forest_after_adding(part: list[int], v: int) -> bool:
        # adding v keeps the part acyclic iff v's neighbours in it lie in distinct components
        inside = [u for u in part if u in g.adj[v]]
        if len(inside) <= 1:
            return True
        sub = induced_subgraph(g, part)
        index = {u: i for i, u in enumerate(sorted(part))}
        comp_of = {}
        for ci, comp in enumerate(components(sub)):
            for x in comp:
                comp_of[x] = ci
        labels = [comp_of[index[u]] for u in inside]
        return len(set(labels)) == len(labels)

    def search(k: int):
        parts: list[list[int]] = []

        def place(v: int):
            if v == g.n:
                if all(is_connected(induced_subgraph(g, p)) for p in parts):
                    return [frozenset(p) for p in parts]
                return None
            for p in parts:
                if forest_after_adding(p, v):
                    p.append(v)
                    found = place(v + 1)
                    p.pop()
                    if found:
                        return found
            if len(parts) < k:
                parts.append([v])
                found = place(v + 1)
                parts.pop()
                if found:
                    return found
            return None

        return place(0)

    for k in range(1, g.n + 1):
        found = search(k)
        if found:
            return TreeCover(tuple(sorted(found, key=min)))
    raise AssertionError("singleton partition is always a tree cover")
