"""Certify a seeded corpus of random cacti and summarise per class.

    python3 scripts/run_corpus.py --count 300 --n-min 6 --n-max 60 --seed 1
"""

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass

from cactus_gcc.cactus import corpus_instance
from cactus_gcc.certify import gcc_check


@dataclass
class CorpusConfig:
    count: int = 300
    n_min: int = 6
    n_max: int = 60
    seed: int = 1


def run(cfg: CorpusConfig) -> dict:
    verdicts: Counter = Counter()
    dims: Counter = Counter()
    slack: dict[str, list[int]] = {}
    max_bits = 0
    start = time.perf_counter()
    for i in range(cfg.count):
        inst = corpus_instance(cfg.seed, i, cfg.n_min, cfg.n_max)
        report, rep = gcc_check(inst.graph, seed=inst.seed)
        verdicts[(report.cls, report.verdict)] += 1
        dims[(report.cls, rep.dim)] += 1
        slack.setdefault(report.cls, []).append(report.rhs - report.lhs)
        max_bits = max(max_bits, max(abs(x.numerator).bit_length()
                                     for v in rep.vectors for x in v.coords))
    return {
        "config": asdict(cfg),
        "verdicts": {f"{c}/{v}": k for (c, v), k in sorted(verdicts.items())},
        "dims": {f"{c}/R^{d}": k for (c, d), k in sorted(dims.items())},
        "min_slack": {c: min(s) for c, s in slack.items()},
        "max_coordinate_bits": max_bits,
        "seconds": round(time.perf_counter() - start, 2),
    }


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f, v in asdict(CorpusConfig()).items():
        p.add_argument("--" + f.replace("_", "-"), type=int, default=v)
    print(json.dumps(run(CorpusConfig(**vars(p.parse_args()))), indent=2))


if __name__ == "__main__":
    main()
