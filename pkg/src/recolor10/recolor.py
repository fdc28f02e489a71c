"""Proper colourings, single-vertex recolouring steps and the reconfiguration graph."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .embed import PlaneGraph

Step = tuple[int, int]


class ColoringError(ValueError):
    pass


class StepError(ValueError):
    def __init__(self, index: int, message: str):
        super().__init__(f"step {index}: {message}")
        self.index = index


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    k: int

    def __post_init__(self):
        for v, c in enumerate(self.colors):
            if not 1 <= c <= self.k:
                raise ColoringError(f"vertex {v}: color {c} outside 1..{self.k}")

    def __len__(self):
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]


@dataclass(frozen=True)
class Scene:
    graph: PlaneGraph
    alpha: Coloring

    def __post_init__(self):
        if self.alpha.k != 10:
            raise ColoringError("a scene carries a 10-coloring")
        if len(self.alpha) != self.graph.n:
            raise ColoringError("coloring length does not match the graph")
        if not is_proper(self.graph, self.alpha):
            raise ColoringError("scene coloring is not proper")


def _colors(phi) -> Sequence[int]:
    return phi.colors if isinstance(phi, Coloring) else phi


def is_proper(g: PlaneGraph, phi) -> bool:
    if isinstance(phi, Coloring) and len(phi) != g.n:
        raise ColoringError("coloring length does not match the graph")
    col = _colors(phi)
    return all(col[u] != col[v] for u, v in g.edges())


def reconfig_moves(g: PlaneGraph, phi: Coloring, k: int | None = None) -> list[Step]:
    k = phi.k if k is None else k
    if not is_proper(g, phi):
        raise ColoringError("coloring is not proper")
    col = phi.colors
    out = []
    for v in range(g.n):
        used = {col[u] for u in g.neighbors(v)}
        used.add(col[v])
        out.extend((v, c) for c in range(1, k + 1) if c not in used)
    return out


def is_frozen(g: PlaneGraph, phi: Coloring, k: int | None = None) -> bool:
    k = phi.k if k is None else k
    col = phi.colors
    return all(len({col[u] for u in g.neighbors(v)} | {col[v]}) >= k for v in range(g.n))


def replay(g: PlaneGraph, phi, steps: Iterable[Step], k: int) -> list[int]:
    """Apply steps one at a time, raising StepError on the first illegal one."""
    cur = list(_colors(phi))
    for i, (v, c) in enumerate(steps):
        if not 0 <= v < g.n:
            raise StepError(i, f"vertex {v} out of range")
        if not 1 <= c <= k:
            raise StepError(i, f"color {c} outside 1..{k}")
        if cur[v] == c:
            raise StepError(i, f"vertex {v} already has color {c}")
        for u in g.neighbors(v):
            if cur[u] == c:
                raise StepError(i, f"vertex {v} -> {c} clashes with neighbor {u}")
        cur[v] = c
    return cur


@dataclass
class SequenceReport:
    valid: bool
    length: int
    counts: dict[int, int]
    errors: list[tuple[int, str]] = field(default_factory=list)
    final: list[int] = field(default_factory=list)


def verify_valid_sequence(scene: Scene, steps: Sequence[Step]) -> SequenceReport:
    """Check the at-most-once / ten-then-once recolouring pattern."""
    g = scene.graph
    cur = list(scene.alpha.colors)
    history: dict[int, list[int]] = {}
    errors: list[tuple[int, str]] = []
    for i, (v, c) in enumerate(steps):
        if not 0 <= v < g.n or not 1 <= c <= 10:
            errors.append((i, f"malformed step ({v}, {c})"))
            continue
        if cur[v] == c:
            errors.append((i, f"no-op step on vertex {v}"))
        clash = [u for u in g.neighbors(v) if cur[u] == c]
        if clash:
            errors.append((i, f"improper: vertex {v} -> {c} clashes with {clash[0]}"))
        hist = history.setdefault(v, [])
        hist.append(c)
        ok = (len(hist) == 1) or (len(hist) == 2 and hist[0] == 10 and hist[1] != 10)
        if not ok:
            errors.append((i, f"pattern violation at vertex {v}: targets {hist}"))
        cur[v] = c
    for v, hist in history.items():
        if hist == [10]:
            errors.append((len(steps), f"pattern violation at vertex {v}: left at color 10"))
    bad = [v for v in range(g.n) if cur[v] == 10]
    if bad:
        errors.append((len(steps), f"final coloring uses color 10 at vertex {bad[0]}"))
    counts = {v: len(h) for v, h in sorted(history.items())}
    return SequenceReport(not errors, len(steps), counts, errors, cur)


# -- reconfiguration graph exploration ---------------------------------------

@dataclass
class ExploreReport:
    states: int
    budget_exceeded: bool
    component_sizes: list[int] = field(default_factory=list)
    component_diameters: list[int] = field(default_factory=list)
    diameter: int | None = None
    frozen: int = 0
    eccentricity_histogram: dict[int, int] = field(default_factory=dict)


def proper_colorings(g: PlaneGraph, k: int, budget: int) -> np.ndarray | None:
    """All proper k-colourings as an (N, n) array, or None beyond ``budget``."""
    order = _bfs_order(g)
    placed: dict[int, int] = {}
    table = np.zeros((1, 0), dtype=np.int8)
    for v in order:
        earlier = [placed[u] for u in g.neighbors(v) if u in placed]
        blocks = []
        for c in range(1, k + 1):
            ok = np.ones(len(table), dtype=bool)
            for j in earlier:
                ok &= table[:, j] != c
            sub = table[ok]
            blocks.append(np.hstack([sub, np.full((len(sub), 1), c, dtype=np.int8)]))
        table = np.vstack(blocks)
        placed[v] = len(placed)
        if len(table) > budget * k:
            return None
    if len(table) > budget:
        return None
    out = np.empty_like(table)
    for v, j in placed.items():
        out[:, v] = table[:, j]
    return out


def _bfs_order(g: PlaneGraph) -> list[int]:
    seen, order = set(), []
    for comp in g.components():
        queue = [comp[0]]
        seen.add(comp[0])
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return order


def explore(g: PlaneGraph, k: int, budget: int = 2_000_000) -> ExploreReport:
    """Exact structure of R_k(G) by explicit BFS, when it fits the budget.

    Colour permutations are automorphisms of R_k(G), so eccentricities are
    computed once per colouring up to renaming of colours.
    """
    states = proper_colorings(g, k, budget)
    if states is None:
        return ExploreReport(states=-1, budget_exceeded=True)
    num, n = states.shape
    if num == 0:
        return ExploreReport(states=0, budget_exceeded=False)
    weights = np.array([k ** v for v in range(n)], dtype=np.int64)
    codes = (states.astype(np.int64) - 1) @ weights
    perm = np.argsort(codes, kind="stable")
    states, codes = states[perm], codes[perm]
    rows, cols = [], []
    for v in range(n):
        cur = states[:, v].astype(np.int64)
        for c in range(1, k + 1):
            cand = codes + (c - cur) * weights[v]
            mask = cur != c
            pos = np.searchsorted(codes, cand)
            pos = np.minimum(pos, num - 1)
            hit = mask & (codes[pos] == cand)
            rows.append(np.nonzero(hit)[0])
            cols.append(pos[hit])
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    adj = csr_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(num, num))
    degree = np.diff(adj.indptr)
    ncomp, labels = connected_components(adj, directed=False)

    canon = _canonical_labels(states)
    rep_keys, rep_index, rep_of = np.unique(canon, axis=0, return_index=True, return_inverse=True)
    rep_of = rep_of.ravel()
    dist = shortest_path(adj, unweighted=True, indices=rep_index, directed=False)
    ecc = np.array([int(np.max(d[np.isfinite(d)])) for d in dist])
    state_ecc = ecc[rep_of]
    sizes = np.bincount(labels, minlength=ncomp)
    diam = np.zeros(ncomp, dtype=np.int64)
    np.maximum.at(diam, labels, state_ecc)
    order = np.lexsort((diam, -sizes))
    hist = Counter(int(x) for x in state_ecc)
    return ExploreReport(
        states=int(num),
        budget_exceeded=False,
        component_sizes=[int(sizes[i]) for i in order],
        component_diameters=[int(diam[i]) for i in order],
        diameter=int(diam.max()),
        frozen=int(np.sum(degree == 0)),
        eccentricity_histogram=dict(sorted(hist.items())),
    )


def _canonical_labels(states: np.ndarray) -> np.ndarray:
    """Rename colours in order of first appearance (vertex 0 first)."""
    num, n = states.shape
    out = np.zeros_like(states)
    k = int(states.max())
    mapping = np.zeros((num, k + 1), dtype=states.dtype)
    nxt = np.ones(num, dtype=states.dtype)
    rows = np.arange(num)
    for v in range(n):
        col = states[:, v]
        fresh = mapping[rows, col] == 0
        mapping[rows[fresh], col[fresh]] = nxt[fresh]
        nxt[fresh] += 1
        out[:, v] = mapping[rows, col]
    return out


# -- file formats ------------------------------------------------------------

def parse_coloring(text: str) -> Coloring:
    k = None
    colors = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if k is None:
            try:
                k = int(line)
            except ValueError:
                raise ColoringError(f"line {lineno}: expected palette size") from None
        elif line.startswith("colors:"):
            try:
                colors = tuple(int(x) for x in line[len("colors:"):].split())
            except ValueError:
                raise ColoringError(f"line {lineno}: bad color list") from None
        else:
            raise ColoringError(f"line {lineno}: unexpected content")
    if k is None or colors is None:
        raise ColoringError("coloring file needs a palette line and a colors line")
    return Coloring(colors, k)


def format_coloring(phi: Coloring) -> str:
    return f"{phi.k}\ncolors: {' '.join(map(str, phi.colors))}\n"


_STEP = re.compile(r"^recolor\s+(\d+)\s*->\s*(\d+)$")


def parse_sequence(text: str) -> list[Step]:
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _STEP.match(line)
        if not match:
            raise ValueError(f"line {lineno}: expected 'recolor v -> c'")
        steps.append((int(match.group(1)), int(match.group(2))))
    return steps


def format_sequence(steps: Iterable[Step]) -> str:
    return "".join(f"recolor {v} -> {c}\n" for v, c in steps)
