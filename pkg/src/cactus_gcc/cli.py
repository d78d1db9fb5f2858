"""Command-line driver.

Machine output is JSON (stdout or ``--out``); a short human summary goes to
stderr. Exit codes: 0 certified / ok, 1 input error, 2 not certified,
3 not a cactus.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .cactus import (CYCLE_ORACLE_MAX_N, TREE_COVER_ORACLE_MAX_N, NotCactusError,
                     cactus_oracle, constructive_tree_cover, corpus_instance,
                     generate_cactus, recognize_cactus, tree_cover_bounds, tree_cover_oracle)
from .certify import gcc_check, graph_id, replay_report, verify_representation
from .formats import graph_to_edge_list, graph_to_json, parse_graph
from .graph import GraphError, block_decomposition, complement, is_connected
from .ordering import (ConstructionOrdering, PreconditionError, find_construction_ordering,
                       validate_cdelta_graph, validate_ordering)
from .ortho import OrthoRepresentation, RepresentationError, build_representation

EXIT_OK, EXIT_INPUT, EXIT_NOT_CERTIFIED, EXIT_NOT_CACTUS = 0, 1, 2, 3
MAX_FIXED_DIM = 16


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    dim: int | str = "auto"
    seed: int | None = None
    out: str | None = None
    oracle: bool = False
    fmt: str = "json"
    n: int | None = None
    cycles: int | None = None
    count: int = 100
    n_min: int = 6
    n_max: int = 40
    workers: int = 1
    timings: bool = False
    rep: str | None = None
    report: str | None = None
    rep_out: str | None = None
    order: str | None = None

    def __post_init__(self):
        if self.dim != "auto":
            self.dim = int(self.dim)
            if not 1 <= self.dim <= MAX_FIXED_DIM:
                raise GraphError(f"--dim must be 'auto' or in [1, {MAX_FIXED_DIM}]")
        if self.command in ("generate", "batch") and self.seed is None:
            raise GraphError(f"{self.command} requires --seed")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise GraphError("--seed must fit in 64 bits")


def _read_graph(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_graph(text)


def _emit(cfg: RunConfig, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---- subcommands ----

def cmd_recognize(cfg: RunConfig) -> int:
    g, labels = _read_graph(cfg.input)
    if not is_connected(g):
        raise GraphError("input graph is disconnected")
    profile = recognize_cactus(g)
    bd = block_decomposition(g)
    doc = {"graph": graph_id(g), "n": g.n, "m": g.m, "labels": labels,
           "profile": profile.to_json(),
           "blocks": [{"kind": b.kind, "vertices": sorted(labels[v] for v in b.vertices)}
                      for b in bd.blocks],
           "cut_vertices": sorted(labels[v] for v in bd.cut_vertices)}
    if profile.is_cactus:
        tb = tree_cover_bounds(g, profile)
        doc["tree_cover_bounds"] = {"lower": tb.lower, "upper": tb.upper, "exact": tb.exact}
        doc["constructive_tree_cover"] = constructive_tree_cover(g).to_json()
    if cfg.oracle:
        if g.n <= CYCLE_ORACLE_MAX_N:
            doc["cactus_oracle"] = cactus_oracle(g)
        if profile.is_cactus and g.n <= TREE_COVER_ORACLE_MAX_N:
            cover = tree_cover_oracle(g)
            doc["tree_cover_oracle"] = cover.to_json()
            doc["tree_cover_bounds"]["exact"] = cover.value
    _emit(cfg, doc)
    _say(f"n={g.n} cactus={profile.is_cactus} class={profile.cls} cycles={profile.cycle_count}")
    return EXIT_OK if profile.is_cactus else EXIT_NOT_CACTUS


def cmd_order(cfg: RunConfig) -> int:
    g, labels = _read_graph(cfg.input)
    if cfg.order:
        index = {lab: i for i, lab in enumerate(labels)}
        raw = json.loads(Path(cfg.order).read_text())
        try:
            order = ConstructionOrdering.from_order(g, [index[x] for x in raw])
        except KeyError as exc:
            raise GraphError(f"unknown vertex label {exc}") from None
    else:
        order = find_construction_ordering(g)
    check = validate_ordering(g, order)
    try:
        cdelta = bool(validate_cdelta_graph(g, order.order))
    except PreconditionError:
        cdelta = None
    _emit(cfg, {"graph": graph_id(g), "ordering": [labels[v] for v in order.order],
                "prior_counts": order.prior_counts, "valid": check.ok,
                "violations": check.violations, "cdelta": cdelta})
    _say(f"ordering valid={check.ok} cdelta={cdelta}")
    return EXIT_OK if check.ok else EXIT_NOT_CERTIFIED


def cmd_build_rep(cfg: RunConfig) -> int:
    g, labels = _read_graph(cfg.input)
    rep = build_representation(g, cfg.dim, cfg.seed or 0)
    doc = rep.to_json(labels)
    doc.update({"graph": graph_id(g), "seed": cfg.seed or 0,
                "requested_dim": rep.requested_dim, "version": __version__})
    _emit(cfg, doc)
    _say(f"built representation of the complement in R^{rep.dim}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    g, labels = _read_graph(cfg.input)
    rep_doc = json.loads(Path(cfg.rep).read_text())
    if rep_doc.get("ordering") is not None:
        index = {lab: i for i, lab in enumerate(labels)}
        rep_doc = dict(rep_doc, ordering=[index[x] for x in rep_doc["ordering"]])
    rep = OrthoRepresentation.from_json(rep_doc, source=g)
    cert = verify_representation(rep, complement(g))
    doc = {"graph": graph_id(g), "certificate": cert.to_json(),
           "target_matches": rep.target == complement(g)}
    ok = cert.ok and doc["target_matches"]
    if cfg.report:
        report = json.loads(Path(cfg.report).read_text())
        verdict = replay_report(report, rep_doc, g)
        doc["replayed_verdict"] = verdict
        doc["replay_matches"] = verdict == report.get("verdict")
        ok = ok and doc["replay_matches"]
    _emit(cfg, doc)
    _say(f"pattern_ok={cert.pattern_ok} rank={cert.rank} dim={cert.dim}")
    return EXIT_OK if ok else EXIT_NOT_CERTIFIED


def cmd_certify(cfg: RunConfig) -> int:
    g, labels = _read_graph(cfg.input)
    seed = cfg.seed or 0
    report, rep = gcc_check(g, seed=seed, dim=cfg.dim, oracle=cfg.oracle, labels=labels)
    if cfg.rep_out:
        Path(cfg.rep_out).write_text(json.dumps(rep.to_json(labels), indent=2) + "\n")
        report.representation_ref = cfg.rep_out
    _emit(cfg, report.to_json())
    _say(f"{report.verdict}: {report.lhs} <= {report.rhs} is {report.holds} "
         f"(msr(G)={report.msr_g.value}, msr(complement)<={report.msr_comp.value})")
    return EXIT_OK if report.certified else EXIT_NOT_CERTIFIED


def cmd_generate(cfg: RunConfig) -> int:
    if cfg.n is None or cfg.cycles is None:
        raise GraphError("generate requires --n and --cycles")
    g = generate_cactus(cfg.n, cfg.cycles, cfg.seed)
    _emit(cfg, graph_to_edge_list(g) if cfg.fmt == "edgelist" else graph_to_json(g))
    return EXIT_OK


def batch_instance(master: int, index: int, n_min: int, n_max: int, oracle: bool) -> dict:
    """Generate and certify graph ``index`` of a batch; everything is derived
    from (master seed, index)."""
    inst = corpus_instance(master, index, n_min, n_max)
    seed, n, cycles, g = inst.seed, inst.n, inst.cycles, inst.graph
    start = time.perf_counter()
    report, _ = gcc_check(g, seed=seed, oracle=oracle)
    elapsed = time.perf_counter() - start
    out = {"id": index, "seed": seed, "n": n, "cycles": cycles, "class": report.cls,
           "verdict": report.verdict, "report": report.to_json(), "seconds": elapsed}
    if oracle:
        out["oracle"] = oracle_checks(g, report.cls, cycles)
    return out


def oracle_checks(g, cls: str, cycles: int) -> dict:
    checks = {}
    if g.n <= CYCLE_ORACLE_MAX_N:
        checks["cactus_oracle_agrees"] = cactus_oracle(g) == recognize_cactus(g).is_cactus
    if g.n <= TREE_COVER_ORACLE_MAX_N:
        profile = recognize_cactus(g)
        value = tree_cover_oracle(g).value
        tb = tree_cover_bounds(g, profile)
        checks["tree_cover"] = value
        checks["tree_cover_within_bounds"] = tb.lower <= value <= tb.upper
        if cls == "unicyclic":
            checks["unicyclic_is_two"] = value == 2
        if cls == "multicyclic":
            checks["multicyclic_at_least_three"] = value >= 3
    return checks


def _percentile(xs, q):
    if not xs:
        return None
    if len(xs) == 1:
        return xs[0]
    return statistics.quantiles(xs, n=100, method="inclusive")[q - 1]


def cmd_batch(cfg: RunConfig) -> int:
    if not 1 <= cfg.n_min <= cfg.n_max:
        raise GraphError("need 1 <= --n-min <= --n-max")
    if cfg.count < 1:
        raise GraphError("--count must be positive")
    args = [(cfg.seed, i, cfg.n_min, cfg.n_max, cfg.oracle) for i in range(cfg.count)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(batch_instance, *zip(*args)))
    else:
        results = [batch_instance(*a) for a in args]
    results.sort(key=lambda r: r["id"])
    failures = [r["report"] for r in results if r["verdict"] != "certified"]
    oracle_fail = [r["id"] for r in results
                   if cfg.oracle and not all(v for k, v in r["oracle"].items()
                                             if k != "tree_cover")]
    classes: dict[str, int] = {}
    for r in results:
        classes[r["class"]] = classes.get(r["class"], 0) + 1
    secs = sorted(r["seconds"] for r in results)
    summary = {
        "version": __version__, "seed": cfg.seed, "count": cfg.count,
        "n_range": [cfg.n_min, cfg.n_max], "class_counts": classes,
        "certified_count": cfg.count - len(failures), "failure_count": len(failures),
        "failures": failures,
        "instances": [{k: r[k] for k in ("id", "seed", "n", "cycles", "class", "verdict")}
                      for r in results],
    }
    if cfg.oracle:
        summary["oracle"] = {"checked": sum(1 for r in results if r["oracle"]),
                             "failed_ids": oracle_fail}
    timing = {"p50": _percentile(secs, 50), "p90": _percentile(secs, 90),
              "p99": _percentile(secs, 99), "max": secs[-1] if secs else None}
    if cfg.timings:
        summary["timing_seconds"] = timing
    _emit(cfg, summary)
    _say(f"certified {summary['certified_count']}/{cfg.count}; "
         f"p50 {timing['p50']:.4f}s p90 {timing['p90']:.4f}s max {timing['max']:.4f}s")
    if failures:
        _say(f"RED FLAG: {len(failures)} instance(s) not certified")
    return EXIT_OK if not failures and not oracle_fail else EXIT_NOT_CERTIFIED


COMMANDS = {
    "recognize": cmd_recognize, "order": cmd_order, "build-rep": cmd_build_rep,
    "verify": cmd_verify, "certify": cmd_certify, "generate": cmd_generate,
    "batch": cmd_batch,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cactus-gcc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("input", help="edge-list or JSON graph file ('-' for stdin)")
        sp.add_argument("--out", help="write JSON output here instead of stdout")
        return sp

    r = common(sub.add_parser("recognize", help="cactus profile and block structure"))
    r.add_argument("--oracle", action="store_true", help="run exhaustive cross-checks")

    o = common(sub.add_parser("order", help="construction ordering"))
    o.add_argument("--order", help="JSON array of vertex labels to validate instead")

    for name in ("build-rep", "certify"):
        sp = common(sub.add_parser(name))
        sp.add_argument("--dim", default="auto")
        sp.add_argument("--seed", type=int, default=0)
    sub.choices["certify"].add_argument("--oracle", action="store_true")
    sub.choices["certify"].add_argument("--rep-out", help="also write the representation")

    v = common(sub.add_parser("verify", help="re-verify a stored representation"))
    v.add_argument("rep", help="representation JSON")
    v.add_argument("--report", help="certify report JSON to replay")

    gp = common(sub.add_parser("generate", help="random cactus"), needs_input=False)
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--cycles", type=int, required=True)
    gp.add_argument("--seed", type=int, required=True)
    gp.add_argument("--format", dest="fmt", choices=["json", "edgelist"], default="json")

    b = common(sub.add_parser("batch", help="generate and certify many cacti"),
               needs_input=False)
    b.add_argument("--count", type=int, default=100)
    b.add_argument("--n-min", type=int, default=6)
    b.add_argument("--n-max", type=int, default=40)
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--oracle", action="store_true")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--timings", action="store_true",
                   help="include wall-clock percentiles in the JSON (breaks byte-identity)")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors, which would read as "not certified"
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    try:
        cfg = RunConfig(**fields)
        return COMMANDS[cfg.command](cfg)
    except NotCactusError as exc:
        _say(f"not a cactus: {exc}")
        return EXIT_NOT_CACTUS
    except RepresentationError as exc:
        _say(f"construction failed: {exc}")
        return EXIT_NOT_CERTIFIED
    except (GraphError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        _say(f"input error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
