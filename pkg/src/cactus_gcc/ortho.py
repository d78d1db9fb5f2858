"""Exact orthogonal representations of the complement of a graph.

Vertices are processed in a construction ordering. Each new vector is drawn
from the exact nullspace of its (at most two) earlier neighbours' vectors, so
G-adjacent pairs are orthogonal, and is accepted only after checking exactly
that it has nonzero inner product with every other earlier vector and is not
parallel to any of them. A rejected draw is repeated with a wider coefficient
range.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .cactus import recognize_cactus
from .formats import format_rational, parse_rational
from .graph import Graph, GraphError, complement, is_connected
from .linalg import dot, integer_kernel, parallel, primitive
from .ordering import ConstructionOrdering, find_construction_ordering, validate_ordering

log = logging.getLogger(__name__)

INITIAL_RANGE = 8
DEFAULT_RETRIES = 24
AUTO_DIMS = {"tree": 3, "unicyclic": 4, "multicyclic": 5}
GUARANTEED_DIM = 5


class RepresentationError(GraphError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class RationalVector:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if not all(isinstance(x, Fraction) for x in self.coords):
            object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))
        if not any(self.coords):
            raise ValueError("zero vector")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def to_json(self) -> list[str]:
        return [format_rational(x) for x in self.coords]

    @classmethod
    def from_json(cls, data) -> "RationalVector":
        return cls(tuple(parse_rational(x) for x in data))


@dataclass(frozen=True)
class OrthoRepresentation:
    """Vectors indexed by vertex; ``target`` is the graph they represent (the
    complement of the input graph)."""

    target: Graph
    dim: int
    vectors: tuple[RationalVector, ...]
    ordering: ConstructionOrdering | None = None
    requested_dim: int | None = None

    @property
    def fell_back(self) -> bool:
        return self.requested_dim is not None and self.requested_dim != self.dim

    def to_json(self, labels: Sequence | None = None) -> dict:
        labels = list(labels) if labels is not None else list(range(self.target.n))
        return {
            "dim": self.dim,
            "vectors": [v.to_json() for v in self.vectors],
            "ordering": [labels[v] for v in self.ordering.order] if self.ordering else None,
            "target": {"n": self.target.n, "edges": [list(e) for e in self.target.edges()]},
        }

    @classmethod
    def from_json(cls, doc: dict, source: Graph | None = None) -> "OrthoRepresentation":
        """Rebuild from JSON. ``source`` (the graph whose complement is
        represented) is used when the document carries no target."""
        if "target" in doc and doc["target"] is not None:
            t = doc["target"]
            target = Graph.from_edges(t["n"], [tuple(e) for e in t["edges"]])
        elif source is not None:
            target = complement(source)
        else:
            raise GraphError("representation JSON has no target graph")
        vectors = tuple(RationalVector.from_json(v) for v in doc["vectors"])
        if any(v.dim != doc["dim"] for v in vectors):
            raise GraphError("vector length does not match declared dim")
        ordering = None
        if doc.get("ordering") is not None:
            ordering = ConstructionOrdering.from_order(complement(target), doc["ordering"])
        return cls(target, doc["dim"], vectors, ordering)


def _pick(basis: list[list[int]], radius: int, rng: random.Random) -> list[int]:
    coeffs = [rng.randint(-radius, radius) for _ in basis]
    w = [sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(len(basis[0]))]
    return primitive(w) if any(w) else w


def extend_vector(prior: Sequence[Sequence[int]], adjacent: Sequence[int], dim: int,
                  rng: random.Random, retries: int = DEFAULT_RETRIES,
                  position: int | None = None) -> list[int]:
    """A new integer vector for the next vertex.

    ``prior`` holds the vectors already placed and ``adjacent`` the indices into
    it of the new vertex's neighbours in G. The result is orthogonal to exactly
    those and not parallel to any prior vector. Draws with a zero coordinate are
    rejected during the first half of the budget.
    """
    rows = [prior[i] for i in adjacent]
    basis = integer_kernel(rows, dim)
    if not basis:
        raise RepresentationError(
            f"no nonzero vector in R^{dim} is orthogonal to {len(rows)} constraint vectors",
            position)
    others = [p for i, p in enumerate(prior) if i not in set(adjacent)]
    radius = INITIAL_RANGE
    for attempt in range(retries):
        w = _pick(basis, radius, rng)
        radius *= 2
        if not any(w):
            continue
        if attempt < retries // 2 and not all(w):
            continue
        if any(dot(w, p) == 0 for p in others):
            continue
        if any(parallel(w, p) for p in prior):
            continue
        return w
    raise RepresentationError(
        f"retry budget of {retries} exhausted at position {position} "
        f"({len(rows)} orthogonality constraints, {len(others)} nonzero constraints, "
        f"nullspace dimension {len(basis)}, dim {dim})", position)


def base_vectors(g: Graph, ordering: ConstructionOrdering, dim: int,
                 rng: random.Random) -> list[list[int]]:
    """Vectors for the first three ordered vertices (an induced P_3 or K_3)."""
    if dim < 3:
        raise RepresentationError("base triple needs dim >= 3", 0)
    head = ordering.order[:3]
    if len(head) < 3 or sum(1 for i in range(3) for j in range(i) if g.has_edge(head[i], head[j])) < 2:
        raise RepresentationError("first three ordered vertices induce neither P_3 nor K_3", 0)
    out: list[list[int]] = []
    for m in range(3):
        out.append(extend_vector(out, ordering.prior_neighbors[m], dim, rng, position=m))
    return out


def build_steps(g: Graph, ordering: ConstructionOrdering, dim: int,
                rng: random.Random) -> Iterator[tuple[int, int, list[int]]]:
    """Yield (position, vertex, vector) as the construction proceeds."""
    placed: list[list[int]] = []
    if len(ordering.order) >= 3:
        placed = base_vectors(g, ordering, dim, rng)
        for m in range(3):
            yield m, ordering.order[m], placed[m]
    for m in range(len(placed), len(ordering.order)):
        v = ordering.order[m]
        w = extend_vector(placed, ordering.prior_neighbors[m], dim, rng, position=m)
        placed.append(w)
        yield m, v, w


def auto_dim(g: Graph) -> int:
    profile = recognize_cactus(g)
    return AUTO_DIMS[profile.cls] if profile.is_cactus else GUARANTEED_DIM


def _ordering_for(g: Graph, ordering: ConstructionOrdering | None) -> ConstructionOrdering:
    if ordering is not None:
        if g.n >= 3:
            check = validate_ordering(g, ordering)
            if not check:
                raise RepresentationError("invalid ordering: " + "; ".join(check.violations))
        return ordering
    if g.n <= 2:
        return ConstructionOrdering.from_order(g, range(g.n))
    return find_construction_ordering(g)


def _build_fixed(g: Graph, ordering: ConstructionOrdering, dim: int,
                 seed: int) -> tuple[RationalVector, ...]:
    rng = random.Random(seed)
    vecs: list[RationalVector | None] = [None] * g.n
    for _, v, w in build_steps(g, ordering, dim, rng):
        vecs[v] = RationalVector(tuple(Fraction(x) for x in w))
    return tuple(vecs)


def build_representation(g: Graph, dim: int | str = "auto", seed: int = 0,
                         ordering: ConstructionOrdering | None = None
                         ) -> OrthoRepresentation:
    """Orthogonal representation of complement(g), witnessing msr(complement(g)) <= dim.

    With ``dim="auto"`` trees use 3, unicyclic cacti 4 and everything else 5; a
    failed lowered build falls back to 5 with a warning.
    """
    if g.n == 0:
        raise GraphError("empty graph")
    if not is_connected(g):
        raise GraphError("build_representation needs a connected graph")
    ordering = _ordering_for(g, ordering)
    target = complement(g)
    if dim == "auto":
        want = auto_dim(g)
        try:
            vecs = _build_fixed(g, ordering, want, seed)
            return OrthoRepresentation(target, want, vecs, ordering, want)
        except RepresentationError as exc:
            if want == GUARANTEED_DIM:
                raise
            log.warning("dimension %d failed (%s); falling back to %d",
                        want, exc, GUARANTEED_DIM)
            vecs = _build_fixed(g, ordering, GUARANTEED_DIM, seed)
            return OrthoRepresentation(target, GUARANTEED_DIM, vecs, ordering, want)
    if not isinstance(dim, int) or dim < 1:
        raise GraphError(f"invalid dimension {dim!r}")
    vecs = _build_fixed(g, ordering, dim, seed)
    return OrthoRepresentation(target, dim, vecs, ordering, dim)
