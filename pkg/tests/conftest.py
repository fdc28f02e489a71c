import random

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_proper_coloring(g, k, rng: random.Random, palette=None):
    """Greedy random proper colouring (retries until every vertex has a colour)."""
    palette = list(range(1, k + 1)) if palette is None else list(palette)
    adj = [list(g.neighbors(v)) for v in range(g.n)] if hasattr(g, "neighbors") else g
    n = len(adj)
    while True:
        cols = [0] * n
        for v in rng.sample(range(n), n):
            free = [c for c in palette if all(cols[u] != c for u in adj[v])]
            if not free:
                break
            cols[v] = rng.choice(free)
        else:
            return cols
