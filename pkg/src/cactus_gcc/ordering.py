"""Construction orderings (every new vertex has at most two earlier neighbours)
and validators for delta / C-delta labelings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cactus import CactusProfile, NotCactusError, recognize_cactus
from .graph import (Graph, GraphError, block_decomposition, complement, cycle_walk,
                    induced_subgraph, is_connected)


class OrderingError(GraphError):
    pass


class PreconditionError(GraphError):
    """The graph itself is outside the domain of a labelling definition."""


@dataclass(frozen=True)
class ConstructionOrdering:
    order: tuple[int, ...]
    prior_neighbors: tuple[tuple[int, ...], ...]  # positions, per position

    @classmethod
    def from_order(cls, g: Graph, order: Sequence[int]) -> "ConstructionOrdering":
        order = tuple(order)
        _check_permutation(g, order)
        pos = {v: i for i, v in enumerate(order)}
        prior = tuple(tuple(sorted(pos[u] for u in g.adj[v] if pos[u] < i))
                      for i, v in enumerate(order))
        return cls(order, prior)

    @property
    def prior_counts(self) -> list[int]:
        return [len(p) for p in self.prior_neighbors]


@dataclass
class Validation:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _check_permutation(g: Graph, order: Sequence[int]) -> None:
    if sorted(order) != list(range(g.n)):
        raise OrderingError(f"order is not a permutation of 0..{g.n - 1}: {list(order)}")


def find_construction_ordering(g: Graph, profile: CactusProfile | None = None
                               ) -> ConstructionOrdering:
    """Lay out a cactus block by block, depth first, from an initial P_3.

    A cycle entered at vertex v is walked as a path starting next to v, so only
    its last vertex sees two earlier neighbours (its predecessor and v). A bridge
    contributes one earlier neighbour.
    """
    profile = profile or recognize_cactus(g)
    if not profile.is_cactus:
        raise NotCactusError("construction ordering requires a cactus")
    if g.n < 3:
        raise OrderingError("construction ordering needs at least 3 vertices")
    bd = block_decomposition(g)
    center = min(v for v in range(g.n) if g.degree(v) >= 2)
    done = [False] * len(bd.blocks)
    placed: set[int] = set()
    order: list[int] = []

    def place(vs):
        for v in vs:
            placed.add(v)
            order.append(v)

    cyc = [bi for bi in bd.blocks_of[center] if bd.blocks[bi].kind == "cycle"]
    if cyc:
        done[cyc[0]] = True
        place(cycle_walk(bd.blocks[cyc[0]], center))
    else:
        a, b = sorted(g.adj[center])[:2]
        for bi in bd.blocks_of[center]:
            if bd.blocks[bi].vertices & {a, b}:
                done[bi] = True
        place([a, center, b])

    stack = list(reversed(order))
    while stack:
        v = stack.pop()
        fresh: list[int] = []
        for bi in bd.blocks_of[v]:
            if done[bi]:
                continue
            done[bi] = True
            block = bd.blocks[bi]
            if block.kind == "edge":
                (u,) = block.vertices - {v}
                new = [u]
            else:
                new = cycle_walk(block, v)[1:]
            place(new)
            fresh.extend(new)
        stack.extend(reversed(fresh))
    assert len(order) == g.n
    result = ConstructionOrdering.from_order(g, order)
    if g.n >= 6 and not _cdelta_head_ok(result):
        alt = _cdelta_prefix_search(g)
        if alt is not None:
            return ConstructionOrdering.from_order(g, alt)
    return result


def _cdelta_head_ok(ordering: ConstructionOrdering) -> bool:
    # from 1-based position 6 on the C-delta bound is >= 2, which every
    # cactus ordering with connected prefixes already meets
    return all(len(p) <= 1 for p in ordering.prior_neighbors[3:5])


def _cdelta_prefix_search(g: Graph) -> list[int] | None:
    """An ordering whose 4th and 5th vertices each have exactly one earlier
    neighbour, or None. The five-vertex head is found by backtracking; the
    rest is appended by always taking the smallest vertex adjacent to the
    placed set."""
    def extend(prefix: list[int]) -> list[int] | None:
        k = len(prefix)
        if k == 5:
            return prefix
        placed = set(prefix)
        frontier = sorted({u for v in prefix for u in g.adj[v]} - placed)
        for u in frontier:
            hits = len(g.adj[u] & placed)
            if k == 2 and hits < 1:
                continue
            if k >= 3 and hits != 1:
                continue
            found = extend(prefix + [u])
            if found:
                return found
        return None

    for start in range(g.n):
        head = extend([start])
        if head is None:
            continue
        order = list(head)
        placed = set(order)
        while len(order) < g.n:
            u = min(u for v in order for u in g.adj[v] if u not in placed)
            order.append(u)
            placed.add(u)
        return order
    return None


def validate_ordering(g: Graph, ordering: ConstructionOrdering | Sequence[int],
                      require_connected_prefix: bool = True) -> Validation:
    if not isinstance(ordering, ConstructionOrdering):
        ordering = ConstructionOrdering.from_order(g, ordering)
    _check_permutation(g, ordering.order)
    expected = ConstructionOrdering.from_order(g, ordering.order)
    out = Validation(True)

    def bad(msg):
        out.ok = False
        out.violations.append(msg)

    if expected.prior_neighbors != ordering.prior_neighbors:
        bad("prior_neighbors do not match the graph")
    counts = expected.prior_counts
    if g.n >= 3:
        head = induced_subgraph(g, ordering.order[:3])
        if not is_connected(head):
            bad("positions 0-2 induce neither P_3 nor K_3")
    for m in range(3, g.n):
        if counts[m] > 2:
            bad(f"position {m} has {counts[m]} prior neighbours (max 2)")
        elif require_connected_prefix and counts[m] == 0:
            bad(f"position {m} has no prior neighbour")
    return out


def _labelling_preconditions(g: Graph, order: Sequence[int]) -> None:
    _check_permutation(g, order)
    if g.n < 4:
        raise PreconditionError("labelling definitions need n >= 4")
    if not is_connected(g):
        raise PreconditionError("graph is disconnected")
    if not is_connected(complement(g)):
        raise PreconditionError("complement is disconnected")


def validate_delta_graph(g: Graph, order: Sequence[int]) -> Validation:
    """First three vertices induce 3K_1 or K_2+K_1, and vertex m (1-based, m >= 4)
    misses at most floor(m/2) - 1 earlier vertices."""
    _labelling_preconditions(g, order)
    out = Validation(True)
    if induced_subgraph(g, order[:3]).m > 1:
        out.ok = False
        out.violations.append("first three vertices induce more than one edge")
    for i in range(3, g.n):
        m = i + 1
        v = order[i]
        missed = sum(1 for u in order[:i] if u not in g.adj[v])
        if missed > m // 2 - 1:
            out.ok = False
            out.violations.append(f"position {i} misses {missed} prior vertices "
                                  f"(max {m // 2 - 1})")
    return out


def validate_cdelta_graph(g: Graph, order: Sequence[int]) -> Validation:
    """First three vertices induce P_3 or K_3, and vertex m (1-based, m >= 4) is
    adjacent to at most floor(m/2) - 1 earlier vertices."""
    _labelling_preconditions(g, order)
    out = Validation(True)
    if induced_subgraph(g, order[:3]).m < 2:
        out.ok = False
        out.violations.append("first three vertices induce neither P_3 nor K_3")
    for i in range(3, g.n):
        m = i + 1
        v = order[i]
        hit = sum(1 for u in order[:i] if u in g.adj[v])
        if hit > m // 2 - 1:
            out.ok = False
            out.violations.append(f"position {i} has {hit} prior neighbours "
                                  f"(max {m // 2 - 1})")
    return out
