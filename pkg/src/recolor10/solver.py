"""Constructive recolouring.

``solve_scene`` recolours a 10-coloured plane graph to a 9-colouring, moving
every vertex at most once (or twice, the first time to colour 10).
``transform_10`` joins two 10-colourings of a plane graph by at most ``8n``
single-vertex recolourings.
"""
from __future__ import annotations

import heapq
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .catalog import ConfigurationTemplate, load_catalog, licensed_hypotheses
from .discharge import find_induced_configuration
from .embed import (PlaneGraph, add_edge_at, contract_edge, delete_vertices, surgery_add_edge,
                    surgery_identify, validate)
from .motif import Motif, format_motif, oo_recolorable
from .recolor import Coloring, Scene, StepError, replay, verify_valid_sequence

Step = tuple[int, int]
NINE = frozenset(range(1, 10))


class SolverError(RuntimeError):
    pass


class MotifCounterexample(SolverError):
    """A motif that should be oo-recolourable is not."""

    def __init__(self, motif: Motif, context: str):
        super().__init__(f"{context}: motif is not oo-recolorable")
        self.motif = motif
        self.motif_text = format_motif(motif)


# -- available lists ---------------------------------------------------------

def size_bound(g: PlaneGraph, H: Iterable[int], v: int, alpha: Sequence[int] | None = None) -> int:
    """9 - 2 (outside degree), plus outside neighbours of colour 10 when alpha is given."""
    hs = set(H)
    outside = [u for u in g.neighbors(v) if u not in hs]
    bonus = sum(1 for u in outside if alpha is not None and alpha[u] == 10)
    return 9 - 2 * len(outside) + bonus


def compute_available_lists(g: PlaneGraph, alpha: Sequence[int], H: Sequence[int],
                            gamma_outside: dict[int, int]) -> dict[int, frozenset[int]]:
    hs = set(H)
    out = {}
    for v in H:
        banned = set()
        for u in g.neighbors(v):
            if u not in hs:
                banned.add(alpha[u])
                banned.add(gamma_outside[u])
        lst = NINE - banned
        if len(lst) < size_bound(g, hs, v, alpha):
            raise SolverError(f"list of vertex {v} is smaller than its size bound")
        out[v] = frozenset(lst)
    return out


# -- the scene solver --------------------------------------------------------

@dataclass
class SolveStats:
    n: int
    length: int
    branch_counts: dict[str, int] = field(default_factory=dict)
    configs_used: dict[str, int] = field(default_factory=dict)


def _measure(g: PlaneGraph, alpha: Sequence[int]) -> tuple[int, int, int]:
    return (g.n, 3 * g.n - 6 - g.m, g.n - sum(1 for c in alpha if c == 10))


def _face_pair(g: PlaneGraph):
    """A face with two non-adjacent vertices, or two components to join."""
    for f in g.faces():
        if len(f) <= 3 and len(set(f)) == len(f):
            continue
        seen = []
        for x in f:
            if x in seen:
                continue
            for y in seen:
                if not g.adjacent(x, y):
                    return f, y, x
            seen.append(x)
    return None


def _induced_motif(g: PlaneGraph, H: Sequence[int], alpha: Sequence[int], lists: dict[int, frozenset[int]]) -> Motif:
    idx = {v: i for i, v in enumerate(H)}
    edges = tuple((idx[u], idx[w]) for u in H for w in g.neighbors(u) if w in idx and idx[u] < idx[w])
    return Motif(len(H), edges, tuple(alpha[v] for v in H), tuple(lists[v] for v in H))


def _pick_subgraph(g: PlaneGraph, alpha: Sequence[int], templates: Sequence[ConfigurationTemplate]):
    """H for the reduction step: a low-degree vertex or a catalog configuration."""
    low = min(range(g.n), key=lambda v: (g.degree(v), v))
    if g.degree(low) <= 4:
        return [low], "low_degree", None
    if g.n >= 3:
        faces = g.faces()
        if any(len(f) != 3 for f in faces):
            raise SolverError("reduction reached a non-triangulated graph")
    if g.outer is None:
        g = g.with_outer(g.faces()[0])
    app = find_induced_configuration(g, templates)
    t = next(t for t in templates if t.id == app.template)
    for h in sorted(licensed_hypotheses(t)):
        s = h.ten_set()
        if s is not None and not any(alpha[app.injection[i]] == 10 for i in s):
            # the colouring breaks a hypothesis; its own substructure reduces
            return [app.injection[i] for i in h.vertices], h.kind, t.id
    return list(app.injection), "configuration", t.id


def solve_scene(scene: Scene, templates: Sequence[ConfigurationTemplate] | None = None,
                check: bool = True) -> tuple[list[Step], Coloring, SolveStats]:
    """Valid recolouring sequence from the scene's colouring to a 9-colouring."""
    templates = load_catalog() if templates is None else templates
    g = scene.graph
    alpha = list(scene.alpha.colors)
    frames: list[tuple] = []
    branches: Counter = Counter()
    configs: Counter = Counter()
    last = None
    while g.n > 0:
        measure = _measure(g, alpha)
        if last is not None and not measure < last:
            raise SolverError(f"termination measure did not decrease: {last} -> {measure}")
        last = measure
        comps = g.components()
        pair = None
        if len(comps) > 1:
            u, v = comps[0][0], comps[1][0]
            pair = (None, u, v)
        else:
            pair = _face_pair(g)
        if pair is not None:
            face, u, v = pair
            if alpha[u] == alpha[v]:
                branches["identify"] += 1
                if face is None:
                    joined = add_edge_at(g, u, None, v, None)
                    h, vmap = contract_edge(joined, u, v)
                    validate(h)
                else:
                    h, vmap = surgery_identify(g, face, u, v)
                new_alpha = [0] * h.n
                for x, y in vmap.items():
                    new_alpha[y] = alpha[x]
                frames.append(("identify", vmap, g.n))
                g, alpha = h, new_alpha
            else:
                branches["add_edge"] += 1
                g = add_edge_at(g, u, None, v, None) if face is None else surgery_add_edge(g, face, u, v)
                frames.append(("add_edge",))
            continue
        lacking = next((v for v in range(g.n)
                        if alpha[v] != 10 and all(alpha[u] != 10 for u in g.neighbors(v))), None)
        if lacking is not None:
            branches["recolor_10"] += 1
            alpha = alpha[:]
            alpha[lacking] = 10
            frames.append(("ten", lacking))
            continue
        H, kind, cid = _pick_subgraph(g, alpha, templates)
        branches[kind] += 1
        if cid is not None:
            configs[cid] += 1
        h, index = delete_vertices(g, H)
        frames.append(("remove", g, alpha, H, index))
        new_alpha = [0] * h.n
        for x, y in index.items():
            new_alpha[y] = alpha[x]
        g, alpha = h, new_alpha

    seq: list[Step] = []
    gamma: list[int] = []
    for frame in reversed(frames):
        kind = frame[0]
        if kind == "add_edge":
            continue
        if kind == "ten":
            seq = [(frame[1], 10)] + seq
        elif kind == "identify":
            _, vmap, n_old = frame
            pre: dict[int, list[int]] = {}
            for x in range(n_old):
                pre.setdefault(vmap[x], []).append(x)
            seq = [(x, c) for w, c in seq for x in pre[w]]
            gamma = [gamma[vmap[x]] for x in range(n_old)]
        else:
            _, gg, al, H, index = frame
            outside = {x: gamma[y] for x, y in index.items()}
            lists = compute_available_lists(gg, al, H, outside)
            motif = _induced_motif(gg, H, al, lists)
            verdict = oo_recolorable(motif)
            if not verdict.yes:
                raise MotifCounterexample(motif, f"reduction of {H}")
            inv = {y: x for x, y in index.items()}
            seq = [(H[i], verdict.gamma[i]) for i in verdict.order] + [(inv[w], c) for w, c in seq]
            full = [0] * gg.n
            for x, y in index.items():
                full[x] = gamma[y]
            for i, v in enumerate(H):
                full[v] = verdict.gamma[i]
            gamma = full
    final = Coloring(tuple(gamma), 9) if gamma else Coloring((), 9)
    stats = SolveStats(scene.graph.n, len(seq), dict(sorted(branches.items())), dict(sorted(configs.items())))
    if check:
        report = verify_valid_sequence(scene, seq)
        if not report.valid:
            raise SolverError(f"invalid sequence: {report.errors[:3]}")
        if report.final != list(final.colors):
            raise SolverError("final colouring mismatch")
        if len(seq) > 2 * scene.graph.n:
            raise SolverError(f"sequence length {len(seq)} exceeds 2n")
    return seq, final, stats


# -- partition into an independent set and a 3-degenerate graph ---------------

def _adjacency(g) -> list[set[int]]:
    return [set(g.neighbors(v)) for v in range(g.n)]


def degeneracy_order(adj: Sequence[set[int]], vertices: Iterable[int], k: int) -> list[int] | None:
    """Peeling order where each vertex has at most k neighbours left; None if impossible."""
    alive = set(vertices)
    deg = {v: len(adj[v] & alive) for v in alive}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if v not in alive or d != deg[v]:
            continue
        if d > k:
            return None
        order.append(v)
        alive.discard(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return order


def _core(adj: Sequence[set[int]], alive: set[int], k: int) -> set[int]:
    alive = set(alive)
    deg = {v: len(adj[v] & alive) for v in alive}
    stack = [v for v, d in deg.items() if d <= k]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
                if deg[u] == k:
                    stack.append(u)
    return alive


def thomassen_partition(g: PlaneGraph, exact_cap: int = 40, node_budget: int = 200_000,
                        restarts: int = 50, seed: int = 0) -> tuple[list[int], list[int]]:
    """Independent set I with G - I 3-degenerate.

    Branches on vertices of the 4-core not adjacent to I; exhaustive for
    graphs up to ``exact_cap`` vertices (within ``node_budget``), randomised
    restarts above.
    """
    adj = _adjacency(g)
    verts = set(range(g.n))

    def finish(I: set[int]) -> tuple[list[int], list[int]]:
        D = sorted(verts - I)
        assert all(not (adj[v] & I) for v in I)
        assert degeneracy_order(adj, D, 3) is not None
        return sorted(I), D

    nodes = 0
    seen: set[frozenset[int]] = set()

    def dfs(I: set[int], blocked: set[int], order_key) -> set[int] | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            return None
        core = _core(adj, verts - I, 3)
        if not core:
            return I
        key = frozenset(I)
        if key in seen:
            return None
        seen.add(key)
        options = sorted((v for v in core if v not in blocked), key=order_key)
        for v in options:
            res = dfs(I | {v}, blocked | adj[v] | {v}, order_key)
            if res is not None:
                return res
            if nodes > node_budget:
                return None
        return None

    def by_core_degree(v):
        return (-len(adj[v]), v)

    res = dfs(set(), set(), by_core_degree)
    if res is not None:
        return finish(res)
    if g.n <= exact_cap and nodes <= node_budget:
        raise SolverError("no partition exists")
    rng = random.Random(seed)
    for _ in range(restarts):
        nodes = 0
        seen.clear()
        weights = {v: rng.random() for v in verts}
        res = dfs(set(), set(), lambda v: (-len(adj[v]) + weights[v], v))
        if res is not None:
            return finish(res)
    raise SolverError("partition search failed within its budget")


# -- recolouring degenerate graphs --------------------------------------------

def recolor_degenerate(adj: Sequence[set[int]] | PlaneGraph, alpha: dict[int, int] | Sequence[int],
                       beta: dict[int, int] | Sequence[int], c: int, k: int,
                       vertices: Iterable[int] | None = None, bfs_budget: int = 200_000) -> list[Step]:
    """Proper walk from alpha to beta in R_c(D) for a k-degenerate D, c >= 2k+2.

    Vertices are peeled in degeneracy order and re-inserted in reverse; a
    re-inserted vertex dodges a neighbour's incoming colour by moving to the
    admissible colour whose next use among its neighbours is farthest away,
    which keeps every vertex at most k+1 moves.
    """
    if isinstance(adj, PlaneGraph):
        adj = _adjacency(adj)
    vertices = list(range(len(adj))) if vertices is None else list(vertices)
    if c < 2 * k + 2:
        raise SolverError(f"need c >= 2k+2, got c={c}, k={k}")
    alpha = {v: alpha[v] for v in vertices}
    beta = {v: beta[v] for v in vertices}
    vs = set(vertices)
    local = {v: adj[v] & vs for v in vertices}
    for col in (alpha, beta):
        for v in vertices:
            if not 1 <= col[v] <= c or any(col[u] == col[v] for u in local[v]):
                raise SolverError("endpoint colourings must be proper c-colourings")
    order = degeneracy_order(local, vertices, k)
    if order is None:
        raise SolverError(f"graph is not {k}-degenerate")
    seq: list[Step] = []
    done: set[int] = set()
    for v in reversed(order):
        seq = _insert_vertex(v, local[v] & done, seq, alpha, beta, c)
        done.add(v)
    counts = Counter(v for v, _ in seq)
    if len(seq) > (k + 1) * len(vertices) or any(x > k + 1 for x in counts.values()):
        if c ** len(vertices) > bfs_budget:
            raise SolverError("recolouring exceeded its (k+1)n budget")
        seq = shortest_walk(local, alpha, beta, c)
    return seq


def shortest_walk(adj: dict[int, set[int]], alpha: dict[int, int], beta: dict[int, int], c: int) -> list[Step]:
    """Breadth-first search for a shortest proper walk in R_c."""
    vs = sorted(adj)
    start = tuple(alpha[v] for v in vs)
    goal = tuple(beta[v] for v in vs)
    pos = {v: i for i, v in enumerate(vs)}
    parent: dict[tuple, tuple | None] = {start: None}
    frontier = [start]
    while frontier and goal not in parent:
        nxt = []
        for state in frontier:
            for i, v in enumerate(vs):
                used = {state[pos[u]] for u in adj[v]}
                for col in range(1, c + 1):
                    if col == state[i] or col in used:
                        continue
                    new = state[:i] + (col,) + state[i + 1:]
                    if new not in parent:
                        parent[new] = (state, (v, col))
                        nxt.append(new)
        frontier = nxt
    if goal not in parent:
        raise SolverError("colourings lie in different components")
    out = []
    state = goal
    while parent[state] is not None:
        state, step = parent[state]
        out.append(step)
    return out[::-1]


def _insert_vertex(v: int, nbrs: set[int], seq: list[Step], alpha, beta, c: int) -> list[Step]:
    cur = {u: alpha[u] for u in nbrs}
    mine = alpha[v]
    nbr_steps = [i for i, (u, _) in enumerate(seq) if u in nbrs]
    out: list[Step] = []
    ptr = 0
    for i, (u, col) in enumerate(seq):
        if u in nbrs:
            ptr += 1
            if col == mine:
                mine = _dodge(v, mine, cur, seq, nbr_steps[ptr - 1:], beta[v], c)
                out.append((v, mine))
            cur[u] = col
        out.append((u, col))
    if mine != beta[v]:
        out.append((v, beta[v]))
    return out


def _dodge(v, mine, cur, seq, upcoming, target, c) -> int:
    taken = set(cur.values()) | {mine}
    next_use: dict[int, int] = {}
    for i in upcoming:
        col = seq[i][1]
        next_use.setdefault(col, i)
    best = None
    for col in range(1, c + 1):
        if col in taken:
            continue
        key = (next_use.get(col, len(seq) + 1), col == target, -col)
        if best is None or key > best[0]:
            best = (key, col)
    if best is None:
        raise SolverError(f"vertex {v} has no colour to dodge to")
    return best[1]


# -- the full transformation ----------------------------------------------------

@dataclass
class TransformStats:
    n: int
    length: int
    independent: int
    parts: dict[str, int] = field(default_factory=dict)


def reverse_steps(start: Sequence[int], steps: Sequence[Step]) -> list[Step]:
    """Inverse walk: from the end state of ``steps`` back to ``start``."""
    cur = list(start)
    back = []
    for v, col in steps:
        back.append((v, cur[v]))
        cur[v] = col
    return back[::-1]


def transform_10(g: PlaneGraph, alpha: Coloring, beta: Coloring,
                 templates: Sequence[ConfigurationTemplate] | None = None,
                 partition: tuple[list[int], list[int]] | None = None) -> tuple[list[Step], TransformStats]:
    if alpha.colors == beta.colors:
        return [], TransformStats(g.n, 0, 0)
    templates = load_catalog() if templates is None else templates
    s1, a1, _ = solve_scene(Scene(g, alpha), templates)
    s2, b1, _ = solve_scene(Scene(g, beta), templates)
    I, D = thomassen_partition(g) if partition is None else partition
    to10_a = [(v, 10) for v in I]
    adj = _adjacency(g)
    mid = recolor_degenerate(adj, a1.colors, b1.colors, 9, 3, vertices=D)
    back_b = [(v, b1.colors[v]) for v in I]
    tail = reverse_steps(beta.colors, s2)
    seq = s1 + to10_a + mid + back_b + tail
    parts = {"solve_alpha": len(s1), "to_ten": len(to10_a), "degenerate": len(mid),
             "from_ten": len(back_b), "solve_beta_reversed": len(tail)}
    try:
        final = replay(g, alpha.colors, seq, 10)
    except StepError as exc:
        raise SolverError(f"transformation does not replay: {exc}") from None
    if tuple(final) != beta.colors:
        raise SolverError("transformation ends at the wrong colouring")
    if len(seq) > 8 * g.n:
        raise SolverError(f"length {len(seq)} exceeds 8n")
    return seq, TransformStats(g.n, len(seq), len(I), parts)
