"""Which templates the configuration finder returns, and a hunt for rare ones.

Random triangulations with minimum inner degree five almost always contain
the path of three degree-5 vertices.  The hunt repeatedly flips edges of an
instance to kill such paths while keeping minimum degree five, then records
what the finder returns instead.  Every result is re-checked for being
induced with degrees within the marks.
"""
import argparse
import json
import random
from collections import Counter
from dataclasses import asdict, dataclass

from recolor10.catalog import load_catalog
from recolor10.discharge import find_induced_configuration
from recolor10.embed import generate, spread_fives

CATALOG = {t.id: t for t in load_catalog()}


@dataclass
class AppearanceRun:
    instances: int = 500
    min_n: int = 12
    max_n: int = 200
    hunt_flips: int = 2000
    seed: int = 0
    out: str = "appearance_stats.json"


def check(g, app) -> None:
    t = CATALOG[app.template]
    for a in range(t.m):
        assert g.degree(app.injection[a]) <= t.mark_degree(a)
        for b in range(a):
            assert g.adjacent(app.injection[a], app.injection[b]) == t.adjacent(a, b)


def main(cfg: AppearanceRun) -> int:
    rng = random.Random(cfg.seed)
    plain, hunted = Counter(), Counter()
    for i in range(cfg.instances):
        g = generate("random_mindeg5", n=rng.randint(cfg.min_n, cfg.max_n), seed=cfg.seed * 100_003 + i)
        app = find_induced_configuration(g)
        check(g, app)
        plain[app.template] += 1
        h = spread_fives(g, seed=cfg.seed * 100_003 + i, flips=cfg.hunt_flips)
        app = find_induced_configuration(h)
        check(h, app)
        hunted[app.template] += 1
    summary = {"config": asdict(cfg), "plain": dict(sorted(plain.items())),
               "hunted": dict(sorted(hunted.items()))}
    print(json.dumps(summary, indent=2, sort_keys=True))
    with open(cfg.out, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
    return 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(AppearanceRun()).items():
        p.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    raise SystemExit(main(AppearanceRun(**vars(p.parse_args()))))
