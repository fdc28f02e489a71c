"""Batch statistics for the scene solver and the full transformation.

Records sequence length relative to n, branch usage and the templates the
solver reduced, over random triangulations of a range of sizes.
"""
import argparse
import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass

from recolor10.embed import generate
from recolor10.recolor import Coloring, Scene, replay, verify_valid_sequence
from recolor10.solver import solve_scene, transform_10


@dataclass
class BatchRun:
    scenes: int = 200
    transforms: int = 50
    min_n: int = 12
    max_n: int = 200
    seed: int = 0
    out: str = "solver_batch.json"


def random_coloring(g, rng):
    """Greedy colouring in random order, restarted when a vertex is blocked."""
    while True:
        cols = [0] * g.n
        for v in rng.sample(range(g.n), g.n):
            free = [c for c in range(1, 11) if all(cols[u] != c for u in g.neighbors(v))]
            if not free:
                break
            cols[v] = rng.choice(free)
        else:
            return Coloring(tuple(cols), 10)


def main(cfg: BatchRun) -> int:
    rng = random.Random(cfg.seed)
    branches, configs, ratios = Counter(), Counter(), []
    start = time.perf_counter()
    for i in range(cfg.scenes):
        kind = "random_mindeg5" if i % 2 else "random"
        g = generate(kind, n=rng.randint(cfg.min_n, cfg.max_n), seed=cfg.seed * 100_003 + i)
        sc = Scene(g, random_coloring(g, rng))
        seq, _, stats = solve_scene(sc)
        assert verify_valid_sequence(sc, seq).valid
        branches.update(stats.branch_counts)
        configs.update(stats.configs_used)
        ratios.append(len(seq) / g.n)
    scene_time = time.perf_counter() - start
    t_ratios, parts = [], Counter()
    for i in range(cfg.transforms):
        g = generate("random", n=rng.randint(max(4, cfg.min_n), min(100, cfg.max_n)), seed=cfg.seed + i)
        a, b = random_coloring(g, rng), random_coloring(g, rng)
        seq, stats = transform_10(g, a, b)
        assert tuple(replay(g, a.colors, seq, 10)) == b.colors
        t_ratios.append(len(seq) / g.n)
        parts.update(stats.parts)
    summary = {
        "config": asdict(cfg),
        "scenes": {"count": cfg.scenes, "max_ratio": max(ratios, default=0),
                   "mean_ratio": sum(ratios) / max(len(ratios), 1),
                   "branches": dict(sorted(branches.items())), "configs": dict(sorted(configs.items())),
                   "seconds": round(scene_time, 1)},
        "transforms": {"count": cfg.transforms, "max_ratio": max(t_ratios, default=0),
                       "mean_ratio": sum(t_ratios) / max(len(t_ratios), 1),
                       "parts": dict(sorted(parts.items()))},
    }
    print(json.dumps(summary, indent=2, sort_keys=True))
    with open(cfg.out, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
    return 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(BatchRun()).items():
        p.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    raise SystemExit(main(BatchRun(**vars(p.parse_args()))))
