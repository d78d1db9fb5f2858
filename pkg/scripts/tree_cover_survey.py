"""Exact tree cover numbers of small random cacti against the closed-form
bounds and the msr identity |G| - T(G).

    python3 scripts/tree_cover_survey.py --count 200 --seed 3
"""

import argparse
import json
from collections import Counter
from dataclasses import asdict, dataclass

from cactus_gcc.cactus import (TREE_COVER_ORACLE_MAX_N, corpus_instance, recognize_cactus,
                               tree_cover_bounds, tree_cover_oracle)
from cactus_gcc.certify import msr_chain


@dataclass
class SurveyConfig:
    count: int = 200
    n_min: int = 4
    n_max: int = TREE_COVER_ORACLE_MAX_N
    seed: int = 3


def run(cfg: SurveyConfig) -> dict:
    table: Counter = Counter()
    outside_bounds = []
    identity_failures = []
    for i in range(cfg.count):
        g = corpus_instance(cfg.seed, i, cfg.n_min, cfg.n_max).graph
        profile = recognize_cactus(g)
        t = tree_cover_oracle(g).value
        tb = tree_cover_bounds(g, profile)
        table[(profile.cls, profile.cycle_count, t)] += 1
        if not tb.lower <= t <= tb.upper:
            outside_bounds.append(i)
        if msr_chain(g).value != g.n - t:
            identity_failures.append(i)
    return {
        "config": asdict(cfg),
        "T_by_class_and_cycles": [{"class": c, "cycles": k, "T": t, "count": m}
                                  for (c, k, t), m in sorted(table.items())],
        "outside_bounds": outside_bounds,
        "identity_failures": identity_failures,
    }


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f, v in asdict(SurveyConfig()).items():
        p.add_argument("--" + f.replace("_", "-"), type=int, default=v)
    print(json.dumps(run(SurveyConfig(**vars(p.parse_args()))), indent=2))


if __name__ == "__main__":
    main()
