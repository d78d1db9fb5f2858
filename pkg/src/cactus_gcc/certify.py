"""Independent verification of representations, the msr rule base, and GCC+
verdicts for cacti."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

from . import __version__
from .cactus import (CactusProfile, TreeCover, require_cactus, tree_cover_bounds,
                     tree_cover_oracle, TREE_COVER_ORACLE_MAX_N)
from .graph import (Graph, GraphError, complement, components, degree_stats,
                    induced_subgraph, is_connected, is_cycle, is_tree, require_connected)
from .linalg import rank
from .ordering import (PreconditionError, find_construction_ordering,
                       validate_cdelta_graph, validate_delta_graph)
from .ortho import OrthoRepresentation, build_representation


class ContradictionError(AssertionError):
    """Two facts about the same graph disagree; always an implementation bug."""


class NotChordalError(GraphError):
    pass


def graph_id(g: Graph) -> str:
    canon = json.dumps([g.n, g.edges()], separators=(",", ":"))
    return "g" + hashlib.sha1(canon.encode()).hexdigest()[:12]


# ---- Gram certificates ----

@dataclass(frozen=True)
class GramCertificate:
    pattern_ok: bool
    rank: int
    dim: int
    mismatches: tuple[tuple[int, int], ...]
    dependent_pairs: tuple[tuple[int, int], ...] = ()
    psd_witness: str = "Gram matrix equals M^T M for the vector matrix M"

    @property
    def ok(self) -> bool:
        return self.pattern_ok and not self.dependent_pairs

    def to_json(self) -> dict:
        return {"pattern_ok": self.pattern_ok, "rank": self.rank, "dim": self.dim,
                "mismatches": [list(p) for p in self.mismatches],
                "dependent_pairs": [list(p) for p in self.dependent_pairs],
                "psd_witness": self.psd_witness}


def _integer_rows(rep: OrthoRepresentation) -> list[list[int]]:
    # positive rescaling keeps zero/nonzero inner products, parallelism and rank
    rows = []
    for v in rep.vectors:
        den = lcm(*(x.denominator for x in v.coords))
        rows.append([int(x * den) for x in v.coords])
    return rows


def gram_matrix(rep: OrthoRepresentation) -> list[list[Fraction]]:
    vs = [v.coords for v in rep.vectors]
    return [[sum((a * b for a, b in zip(u, w)), Fraction(0)) for w in vs] for u in vs]


def verify_representation(rep: OrthoRepresentation, expected: Graph) -> GramCertificate:
    """Check exactly that nonzero inner products occur precisely on the edges of
    ``expected`` and that no two vectors are parallel."""
    if len(rep.vectors) != expected.n:
        raise GraphError(f"{len(rep.vectors)} vectors for a graph on {expected.n} vertices")
    if any(v.dim != rep.dim for v in rep.vectors):
        raise GraphError("vector dimension differs from the declared dim")
    rows = _integer_rows(rep)
    mismatches = []
    dependent = []
    for i, j in combinations(range(expected.n), 2):
        u, w = rows[i], rows[j]
        if (sum(a * b for a, b in zip(u, w)) != 0) != expected.has_edge(i, j):
            mismatches.append((i, j))
        if all(u[a] * w[b] == u[b] * w[a] for a, b in combinations(range(rep.dim), 2)):
            dependent.append((i, j))
    r = rank(rows) if rows else 0
    return GramCertificate(not mismatches, r, rep.dim, tuple(mismatches), tuple(dependent))


# ---- chordal graphs ----

def perfect_elimination_ordering(g: Graph) -> list[int]:
    """Reverse maximum cardinality search order; raises NotChordalError if it is
    not a perfect elimination ordering."""
    weight = [0] * g.n
    numbered: list[int] = []
    unnumbered = set(range(g.n))
    while unnumbered:
        v = max(unnumbered, key=lambda x: (weight[x], -x))
        unnumbered.remove(v)
        numbered.append(v)
        for u in g.adj[v]:
            if u in unnumbered:
                weight[u] += 1
    peo = numbered[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        if not later:
            continue
        first = min(later, key=pos.__getitem__)
        if any(u != first and u not in g.adj[first] for u in later):
            raise NotChordalError("graph is not chordal")
    return peo


def is_chordal(g: Graph) -> bool:
    try:
        perfect_elimination_ordering(g)
    except NotChordalError:
        return False
    return True


def clique_cover_chordal(g: Graph) -> int:
    """Edge clique cover number of a chordal graph.

    Along a perfect elimination ordering, a vertex with an uncovered edge to a
    later neighbour contributes the clique formed by itself and all its later
    neighbours.
    """
    peo = perfect_elimination_ordering(g)
    pos = {v: i for i, v in enumerate(peo)}
    covered: set[tuple[int, int]] = set()
    count = 0
    for v in peo:
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        if any((min(v, u), max(v, u)) not in covered for u in later):
            count += 1
            clique = [v] + later
            covered.update((min(a, b), max(a, b)) for a, b in combinations(clique, 2))
    return count


# ---- msr facts ----

EXACT, UPPER, LOWER = "exact", "upper_bound", "lower_bound"


@dataclass(frozen=True)
class MsrFact:
    graph_id: str
    kind: str
    value: int
    rule: str
    premises: tuple["MsrFact", ...] = ()
    note: str = ""

    def rule_chain(self) -> list[str]:
        out = [self.rule]
        for p in self.premises:
            out.extend(p.rule_chain())
        return out

    def to_json(self) -> dict:
        d = {"graph_id": self.graph_id, "kind": self.kind, "value": self.value,
             "rule": self.rule}
        if self.note:
            d["note"] = self.note
        if self.premises:
            d["premises"] = [p.to_json() for p in self.premises]
        return d


def _vertex_sum_parts(g: Graph, v: int) -> tuple[list[int], list[int]]:
    """Split G at cut vertex v into G1 (first component of G - v, plus v) and G2 (the rest, plus v)."""
    rest = induced_subgraph(g, [u for u in range(g.n) if u != v])
    keep = [u for u in range(g.n) if u != v]
    comps = sorted(components(rest), key=min)
    first = {keep[i] for i in comps[0]}
    g1 = sorted(first | {v})
    g2 = sorted((set(range(g.n)) - first))
    return g1, g2


def _tree_fact(g: Graph) -> MsrFact | None:
    if g.n == 1 or is_tree(g):
        return MsrFact(graph_id(g), EXACT, g.n - 1, "tree", note="msr(T) = |T| - 1")
    return None


def _chordal_fact(g: Graph) -> MsrFact | None:
    if is_connected(g) and is_chordal(g):
        return MsrFact(graph_id(g), EXACT, clique_cover_chordal(g), "chordal",
                       note="msr(G) = cc(G) for connected chordal G")
    return None


def _cycle_fact(g: Graph) -> MsrFact | None:
    if is_cycle(g):
        return MsrFact(graph_id(g), EXACT, g.n - 2, "cycle", note="msr(C_n) = n - 2")
    return None


def direct_facts(g: Graph) -> list[MsrFact]:
    """Facts from the closed-form families, applied to g as a whole."""
    return [f for f in (_tree_fact(g), _chordal_fact(g), _cycle_fact(g)) if f is not None]


def msr_chain(g: Graph) -> MsrFact | None:
    """Exact msr by recursive pendant / cut-vertex reduction.

    Trees are closed off directly; pieces left without pendants or cut
    vertices must be chordal or a cycle. Returns None if neither applies.
    """
    require_connected(g)
    tree = _tree_fact(g)
    if tree is not None:
        return tree
    gid = graph_id(g)
    pendants = [v for v in range(g.n) if g.degree(v) == 1]
    if pendants:
        v = pendants[0]
        sub = msr_chain(induced_subgraph(g, [u for u in range(g.n) if u != v]))
        if sub is None:
            return None
        return MsrFact(gid, EXACT, sub.value + 1, "pendant", (sub,),
                       note=f"msr(G) = msr(G - {v}) + 1")
    for v in range(g.n):
        rest = induced_subgraph(g, [u for u in range(g.n) if u != v])
        if len(components(rest)) < 2:
            continue
        g1, g2 = _vertex_sum_parts(g, v)
        a = msr_chain(induced_subgraph(g, g1))
        b = msr_chain(induced_subgraph(g, g2))
        if a is None or b is None:
            return None
        return MsrFact(gid, EXACT, a.value + b.value, "cut_vertex", (a, b),
                       note=f"msr(G) = msr(G1) + msr(G2) at cut vertex {v}")
    return _chordal_fact(g) or _cycle_fact(g)


def msr_rules(g: Graph, profile: CactusProfile | None = None,
              cover: TreeCover | None = None,
              delta_order: Sequence[int] | None = None) -> list[MsrFact]:
    """Every msr fact the rule base can produce for connected g."""
    require_connected(g)
    gid = graph_id(g)
    facts = direct_facts(g)
    chain = msr_chain(g)
    if chain is not None and chain not in facts:
        facts.append(chain)
    if profile is not None and profile.is_cactus:
        # cacti are outerplanar, where msr(G) = |G| - T(G)
        tb = tree_cover_bounds(g, profile, cover)
        if tb.exact is not None or tb.lower == tb.upper:
            t = tb.exact if tb.exact is not None else tb.lower
            facts.append(MsrFact(gid, EXACT, g.n - t, "outerplanar_tree_cover",
                                 note=f"msr(G) = |G| - T(G), T(G) = {t}"))
        else:
            facts.append(MsrFact(gid, UPPER, g.n - tb.lower, "outerplanar_tree_cover",
                                 note=f"msr(G) = |G| - T(G), T(G) >= {tb.lower}"))
            facts.append(MsrFact(gid, LOWER, g.n - tb.upper, "outerplanar_tree_cover",
                                 note=f"msr(G) = |G| - T(G), T(G) <= {tb.upper}"))
    if delta_order is not None:
        try:
            ok = validate_delta_graph(g, delta_order)
        except PreconditionError:
            ok = False
        if ok:
            facts.append(MsrFact(gid, UPPER, g.n - degree_stats(g)[0], "delta_graph",
                                 note="msr(G) <= |G| - min degree for delta-graphs"))
    combine_facts(facts)
    return facts


@dataclass(frozen=True)
class MsrInterval:
    lower: int
    upper: int | None
    exact: MsrFact | None
    best_upper: MsrFact | None


def combine_facts(facts: Sequence[MsrFact]) -> MsrInterval:
    exact = [f for f in facts if f.kind == EXACT]
    if len({f.value for f in exact}) > 1:
        raise ContradictionError("exact msr facts disagree: "
                                 + ", ".join(f"{f.rule}={f.value}" for f in exact))
    uppers = [f for f in facts if f.kind in (EXACT, UPPER)]
    lowers = [f.value for f in facts if f.kind in (EXACT, LOWER)]
    best_upper = min(uppers, key=lambda f: (f.value, f.kind != EXACT)) if uppers else None
    lo = max(lowers, default=0)
    hi = best_upper.value if best_upper else None
    if hi is not None and lo > hi:
        raise ContradictionError(f"msr lower bound {lo} exceeds upper bound {hi}")
    return MsrInterval(lo, hi, exact[0] if exact else None, best_upper)


def max_nullity(fact: MsrFact, n: int) -> tuple[str, int]:
    """M_+(G) from an msr fact via msr(G) + M_+(G) = |G|; bound direction flips."""
    kind = {EXACT: EXACT, UPPER: LOWER, LOWER: UPPER}[fact.kind]
    return kind, n - fact.value


# ---- GCC+ reports ----

@dataclass
class GccReport:
    graph_id: str
    n: int
    cls: str
    msr_g: MsrFact
    msr_comp: MsrFact
    lhs: int
    rhs: int
    holds: bool
    verdict: str
    dim: int
    ordering: list
    provenance: list[str] = field(default_factory=list)
    reason: str = ""
    seed: int = 0
    certificate: GramCertificate | None = None
    representation_ref: str | None = None
    extra_facts: list[MsrFact] = field(default_factory=list)
    tree_cover: dict | None = None

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    def to_json(self) -> dict:
        return {
            "graph": self.graph_id,
            "n": self.n,
            "class": self.cls,
            "ordering": self.ordering,
            "representation_ref": self.representation_ref,
            "dim": self.dim,
            "msr_g": {"value": self.msr_g.value, "kind": self.msr_g.kind,
                      "rule_chain": self.msr_g.rule_chain(), "fact": self.msr_g.to_json()},
            "msr_comp_bound": self.msr_comp.value,
            "msr_comp": self.msr_comp.to_json(),
            "mplus_g": dict(zip(("kind", "value"), max_nullity(self.msr_g, self.n))),
            "inequality": {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds},
            "verdict": self.verdict,
            "reason": self.reason,
            "provenance": self.provenance,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "supplementary_facts": [f.to_json() for f in self.extra_facts],
            "tree_cover": self.tree_cover,
            "seed": self.seed,
            "version": __version__,
        }


DEFERRED = {
    "tree": "lowered construction in R^3 unavailable; the tree bound is deferred to prior work",
    "unicyclic": "lowered construction in R^4 unavailable; the unicyclic bound is "
                 "deferred to prior work",
}


def _assemble(g: Graph, profile: CactusProfile, rep: OrthoRepresentation,
              cert: GramCertificate, g_facts: list[MsrFact], seed: int,
              labels: Sequence, cover: TreeCover | None) -> GccReport:
    gid = graph_id(g)
    interval = combine_facts(g_facts)
    msr_g = interval.exact or interval.best_upper
    comp_fact = MsrFact(graph_id(rep.target), UPPER, cert.rank, "orthogonal_representation",
                        note=f"verified exact representation of the complement in "
                             f"R^{rep.dim}, vector rank {cert.rank}")
    provenance = [f"class={profile.cls}, cycles={profile.cycle_count}"]
    for f in g_facts:
        provenance.append(f"msr(G) {f.kind} {f.value} via {' > '.join(f.rule_chain())}")
    provenance.append(f"msr(complement) <= {cert.rank} via representation in R^{rep.dim}")
    extra: list[MsrFact] = []
    if rep.ordering is not None and g.n >= 4 and is_connected(rep.target):
        try:
            cdelta = validate_cdelta_graph(g, rep.ordering.order)
        except PreconditionError:
            cdelta = None
        if cdelta:
            _, max_deg = degree_stats(g)
            extra.append(MsrFact(graph_id(rep.target), UPPER, max_deg + 1, "delta_graph",
                                 note="complement is a delta-graph under the construction "
                                      "ordering; cited bound, not used for the verdict"))
            provenance.append(f"supplementary: msr(complement) <= {max_deg + 1} "
                              "(delta-graph bound, not used for verdict)")
    lhs = msr_g.value + comp_fact.value
    rhs = g.n + 2
    holds = lhs <= rhs
    reason = ""
    if not cert.ok:
        verdict, reason = "not_certified", "representation failed verification"
    elif msr_g.kind == LOWER:
        verdict, reason = "not_certified", "no upper bound on msr(G)"
    elif not holds:
        verdict = "not_certified"
        reason = DEFERRED.get(profile.cls, "inequality does not hold on certified bounds")
        if rep.fell_back:
            reason += f" (requested R^{rep.requested_dim}, built R^{rep.dim})"
    else:
        verdict = "certified"
    order = [labels[v] for v in rep.ordering.order] if rep.ordering else []
    return GccReport(gid, g.n, profile.cls, msr_g, comp_fact, lhs, rhs, holds, verdict,
                     rep.dim, order, provenance, reason, seed, cert,
                     extra_facts=extra,
                     tree_cover=cover.to_json() if cover is not None else None)


def gcc_check(g: Graph, seed: int = 0, dim: int | str = "auto", oracle: bool = False,
              labels: Sequence | None = None
              ) -> tuple[GccReport, OrthoRepresentation]:
    """Certify msr(G) + msr(complement G) <= |G| + 2 for a connected cactus."""
    require_connected(g)
    profile = require_cactus(g)
    labels = list(labels) if labels is not None else list(range(g.n))
    ordering = find_construction_ordering(g, profile) if g.n >= 3 else None
    rep = build_representation(g, dim, seed, ordering)
    cert = verify_representation(rep, complement(g))
    cover = tree_cover_oracle(g) if oracle and g.n <= TREE_COVER_ORACLE_MAX_N else None
    facts = msr_rules(g, profile, cover)
    report = _assemble(g, profile, rep, cert, facts, seed, labels, cover)
    return report, rep


def replay_report(report: dict, rep_doc: dict, g: Graph) -> str:
    """Recompute the verdict from serialized artifacts alone.

    The representation is re-verified against the complement of ``g`` and the
    rule base is re-run; the recomputed verdict is returned and must equal the
    stored one.
    """
    profile = require_cactus(g)
    rep = OrthoRepresentation.from_json(rep_doc, source=g)
    if rep.target != complement(g):
        return "not_certified"
    cert = verify_representation(rep, complement(g))
    if not cert.ok or cert.rank != report["msr_comp_bound"]:
        return "not_certified"
    interval = combine_facts(msr_rules(g, profile))
    msr_g = interval.exact or interval.best_upper
    if msr_g is None or msr_g.value != report["msr_g"]["value"]:
        return "not_certified"
    return "certified" if msr_g.value + cert.rank <= g.n + 2 else "not_certified"

