"""Plane graphs as rotation systems.

A plane graph is stored as, for every vertex, the clockwise cyclic order of
its neighbours.  Faces are traced with the rule: the dart following
``u -> v`` is ``v -> w`` where ``w`` precedes ``u`` in the rotation of ``v``.
"""
from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed or non-planar rotation systems."""


class GraphFormatError(GraphError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Wheel:
    center: int
    rim: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.rim)


@dataclass(frozen=True)
class TriangulationReport:
    is_triangulation: bool
    min_degree: int
    degree_map: dict[int, int]


@dataclass(frozen=True, eq=True)
class PlaneGraph:
    rotation: tuple[tuple[int, ...], ...]
    outer: tuple[int, int, int] | None = None

    @property
    def n(self) -> int:
        return len(self.rotation)

    @cached_property
    def m(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    @cached_property
    def _adj(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(r) for r in self.rotation)

    @cached_property
    def _pos(self) -> tuple[dict[int, int], ...]:
        return tuple({u: i for i, u in enumerate(r)} for r in self.rotation)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.rotation[u] if u < v]

    def succ(self, v: int, u: int) -> int:
        """Neighbour of ``v`` following ``u`` clockwise."""
        r = self.rotation[v]
        return r[(self._pos[v][u] + 1) % len(r)]

    def pred(self, v: int, u: int) -> int:
        r = self.rotation[v]
        return r[(self._pos[v][u] - 1) % len(r)]

    @cached_property
    def _faces(self) -> tuple[tuple[int, ...], ...]:
        seen: set[tuple[int, int]] = set()
        out = []
        for u in range(self.n):
            for v in self.rotation[u]:
                if (u, v) in seen:
                    continue
                walk = []
                a, b = u, v
                while (a, b) not in seen:
                    seen.add((a, b))
                    walk.append(a)
                    a, b = b, self.pred(b, a)
                out.append(tuple(walk))
        return tuple(out)

    def faces(self) -> list[tuple[int, ...]]:
        """Directed face walks; walk[i] -> walk[i+1] is a dart of the face."""
        return list(self._faces)

    @cached_property
    def _face_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(f) for f in self._faces if len(f) == 3)

    def is_triangular_face(self, a: int, b: int, c: int) -> bool:
        return frozenset((a, b, c)) in self._face_sets

    def components(self) -> list[list[int]]:
        comp = [-1] * self.n
        out = []
        for s in range(self.n):
            if comp[s] >= 0:
                continue
            comp[s] = len(out)
            part = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.rotation[x]:
                    if comp[y] < 0:
                        comp[y] = comp[s]
                        part.append(y)
                        queue.append(y)
            out.append(sorted(part))
        return out

    @cached_property
    def outer_set(self) -> frozenset[int]:
        return frozenset(self.outer) if self.outer else frozenset()

    def with_outer(self, outer: Sequence[int] | None) -> "PlaneGraph":
        return PlaneGraph(self.rotation, tuple(outer) if outer else None)


def make_graph(rotation: Iterable[Iterable[int]], outer: Sequence[int] | None = None) -> PlaneGraph:
    """Build and fully validate a plane graph."""
    g = PlaneGraph(tuple(tuple(r) for r in rotation), tuple(outer) if outer else None)
    validate(g)
    return g


def validate(g: PlaneGraph) -> None:
    n = g.n
    for v, r in enumerate(g.rotation):
        if len(set(r)) != len(r):
            raise GraphError(f"vertex {v}: repeated neighbor in rotation")
        for u in r:
            if not 0 <= u < n:
                raise GraphError(f"vertex {v}: neighbor {u} out of range")
            if u == v:
                raise GraphError(f"vertex {v}: loop")
            if v not in g.neighbor_set(u):
                raise GraphError(f"asymmetric adjacency: {u} in rotation of {v} but not vice versa")
    face_count: dict[int, int] = {}
    comp_of = {}
    comps = g.components()
    for i, part in enumerate(comps):
        for v in part:
            comp_of[v] = i
    for f in g.faces():
        c = comp_of[f[0]]
        face_count[c] = face_count.get(c, 0) + 1
    for i, part in enumerate(comps):
        nv = len(part)
        ne = sum(g.degree(v) for v in part) // 2
        nf = face_count.get(i, 1 if ne == 0 else 0)
        if nv - ne + nf != 2:
            raise GraphError(
                f"Euler check failed on component containing {part[0]}: "
                f"n - m + F = {nv} - {ne} + {nf} != 2 (not a genus-0 rotation system)"
            )
    if g.outer is not None:
        if len(g.outer) != 3 or len(set(g.outer)) != 3:
            raise GraphError("outer face must be three distinct vertices")
        if any(not 0 <= x < n for x in g.outer) or not g.is_triangular_face(*g.outer):
            raise GraphError(f"declared outer face {g.outer} is not a face")


def euler_characteristic(g: PlaneGraph) -> int:
    """n - m + F for a connected graph (F counts traced faces)."""
    return g.n - g.m + max(len(g.faces()), 1)


# -- file format -------------------------------------------------------------

_ROW = re.compile(r"^\s*(\d+)\s*:(.*)$")


def parse_plane_graph(text: str) -> PlaneGraph:
    n = None
    rows: dict[int, tuple[int, ...]] = {}
    outer = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if n is None:
            try:
                n = int(line.strip())
            except ValueError:
                raise GraphFormatError("expected vertex count", lineno) from None
            if n < 0:
                raise GraphFormatError("negative vertex count", lineno)
            continue
        if line.lstrip().startswith("outer:"):
            body = line.split(":", 1)[1]
            try:
                outer = tuple(int(x) for x in body.split())
            except ValueError:
                raise GraphFormatError("bad outer face", lineno, line.index(":") + 2) from None
            if len(outer) != 3:
                raise GraphFormatError("outer face needs three vertices", lineno)
            continue
        match = _ROW.match(line)
        if not match:
            raise GraphFormatError("expected 'i: c1 c2 ...'", lineno)
        v = int(match.group(1))
        if v >= n:
            raise GraphFormatError(f"vertex id {v} out of range", lineno)
        if v in rows:
            raise GraphFormatError(f"duplicate row for vertex {v}", lineno)
        items = []
        col = match.start(2) + 1
        for tok in re.finditer(r"\S+", match.group(2)):
            try:
                items.append(int(tok.group()))
            except ValueError:
                raise GraphFormatError(f"bad neighbor {tok.group()!r}", lineno, col + tok.start()) from None
        rows[v] = tuple(items)
    if n is None:
        raise GraphFormatError("empty graph file", 1)
    missing = [v for v in range(n) if v not in rows]
    if missing:
        raise GraphError(f"missing rotation rows for vertices {missing[:5]}")
    return make_graph([rows[v] for v in range(n)], outer)


def format_plane_graph(g: PlaneGraph) -> str:
    lines = [str(g.n)]
    for v, r in enumerate(g.rotation):
        lines.append(f"{v}: " + " ".join(map(str, r)) if r else f"{v}:")
    if g.outer is not None:
        lines.append("outer: " + " ".join(map(str, g.outer)))
    return "\n".join(lines) + "\n"


# -- queries -----------------------------------------------------------------

def validate_triangulation(g: PlaneGraph) -> TriangulationReport:
    degrees = {v: g.degree(v) for v in range(g.n)}
    faces = g.faces()
    tri = g.n >= 3 and len(g.components()) == 1 and all(len(f) == 3 for f in faces)
    return TriangulationReport(tri, min(degrees.values(), default=0), degrees)


def wheel_of(g: PlaneGraph, v: int) -> Wheel:
    rim = g.rotation[v]
    if len(rim) < 3:
        raise GraphError(f"vertex {v} has degree {len(rim)} < 3")
    for i, a in enumerate(rim):
        b = rim[(i + 1) % len(rim)]
        if not g.adjacent(a, b):
            raise GraphError(f"rim of {v} is not a cycle: {a} and {b} not adjacent")
    return Wheel(v, tuple(rim))


def triangles(g: PlaneGraph) -> list[tuple[int, int, int]]:
    out = []
    for a in range(g.n):
        for b in g.rotation[a]:
            if b <= a:
                continue
            for c in g.neighbor_set(a) & g.neighbor_set(b):
                if c > b:
                    out.append((a, b, c))
    return sorted(out)


def _components_without(g: PlaneGraph, removed: frozenset[int]) -> list[set[int]]:
    seen = set(removed)
    out = []
    for s in range(g.n):
        if s in seen:
            continue
        part = {s}
        seen.add(s)
        queue = [s]
        while queue:
            x = queue.pop()
            for y in g.rotation[x]:
                if y not in seen:
                    seen.add(y)
                    part.add(y)
                    queue.append(y)
        out.append(part)
    return out


def separating_triangles(g: PlaneGraph) -> list[tuple[tuple[int, int, int], frozenset[int]]]:
    """Non-facial triangles with the vertex set strictly inside them.

    Innermost (smallest interior) first; ties broken by the triangle.
    """
    outer = g.outer if g.outer is not None else tuple(g.faces()[0])
    out = []
    for t in triangles(g):
        if g.is_triangular_face(*t):
            continue
        tset = frozenset(t)
        anchors = set(outer) - tset
        parts = _components_without(g, tset)
        if len(parts) < 2:
            continue
        inside = frozenset().union(*(p for p in parts if not (p & anchors)))
        if inside:
            out.append((t, inside))
    out.sort(key=lambda item: (len(item[1]), item[0]))
    return out


def induced_subgraph(g: PlaneGraph, keep: Iterable[int], outer: Sequence[int] | None = None):
    """Restrict the embedding to ``keep``; returns (graph, old->new map)."""
    keep = sorted(set(keep))
    index = {v: i for i, v in enumerate(keep)}
    rot = [tuple(index[u] for u in g.rotation[v] if u in index) for v in keep]
    new_outer = tuple(index[x] for x in outer) if outer else None
    if new_outer is None and g.outer and all(x in index for x in g.outer):
        new_outer = tuple(index[x] for x in g.outer)
    h = PlaneGraph(tuple(rot), None)
    if new_outer is not None and h.is_triangular_face(*new_outer):
        h = h.with_outer(new_outer)
    return h, index


def delete_vertices(g: PlaneGraph, gone: Iterable[int]):
    gone = set(gone)
    h, index = induced_subgraph(g, [v for v in range(g.n) if v not in gone])
    return h, index


# -- surgery -----------------------------------------------------------------

def _corner_successor(face: Sequence[int], x: int) -> int:
    """Neighbour after which a new edge at ``x`` is inserted to lie in ``face``."""
    i = face.index(x)
    return face[(i + 1) % len(face)]


def _insert_after(rot: list[list[int]], v: int, after: int | None, new: int) -> None:
    if after is None:
        rot[v].append(new)
    else:
        rot[v].insert(rot[v].index(after) + 1, new)


def _check_face_pair(g: PlaneGraph, face: Sequence[int], u: int, v: int) -> None:
    if tuple(face) not in set(g._faces):
        raise GraphError(f"{tuple(face)} is not a face walk of the graph")
    if u == v:
        raise GraphError("vertices must be distinct")
    if u not in face or v not in face:
        raise GraphError(f"{u} or {v} is not incident with the face")
    if g.adjacent(u, v):
        raise GraphError(f"{u} and {v} are already adjacent")


def _keep_outer(rot, outer) -> PlaneGraph:
    h = PlaneGraph(tuple(tuple(r) for r in rot))
    if outer and all(0 <= x < h.n for x in outer) and h.is_triangular_face(*outer):
        return h.with_outer(outer)
    return h


def add_edge_at(g: PlaneGraph, u: int, u_after: int | None, v: int, v_after: int | None) -> PlaneGraph:
    """Insert edge uv with explicit corners (also joins separate components)."""
    rot = [list(r) for r in g.rotation]
    _insert_after(rot, u, u_after, v)
    _insert_after(rot, v, v_after, u)
    return _keep_outer(rot, g.outer)


def surgery_add_edge(g: PlaneGraph, face: Sequence[int], u: int, v: int) -> PlaneGraph:
    _check_face_pair(g, face, u, v)
    h = add_edge_at(g, u, _corner_successor(face, u), v, _corner_successor(face, v))
    validate(h)
    return h


def contract_edge(g: PlaneGraph, u: int, v: int):
    """Contract edge uv into u; parallel edges are collapsed.

    Returns (graph, vertex_map) where vertex_map sends every old id to its new id.
    """
    ru, rv = g.rotation[u], g.rotation[v]
    iu, iv = ru.index(v), rv.index(u)
    from_u = [x for x in ru[iu + 1:] + ru[:iu]]
    from_v = [x for x in rv[iv + 1:] + rv[:iv]]
    dup = set(from_u) & set(from_v)
    merged = from_u + [x for x in from_v if x not in dup]
    rot = [list(r) for r in g.rotation]
    rot[u] = merged
    for w in from_v:
        r = rot[w]
        if w in dup:
            r.remove(v)
        else:
            r[r.index(v)] = u
    vertex_map = {}
    for old in range(g.n):
        if old == v:
            continue
        vertex_map[old] = old - (old > v)
    vertex_map[v] = vertex_map[u]
    new_rot = [[vertex_map[x] for x in rot[old]] for old in range(g.n) if old != v]
    outer = tuple(vertex_map[x] for x in g.outer) if g.outer else None
    if outer and len(set(outer)) < 3:
        outer = None
    return _keep_outer(new_rot, outer), vertex_map


def surgery_identify(g: PlaneGraph, face: Sequence[int], u: int, v: int):
    _check_face_pair(g, face, u, v)
    h = add_edge_at(g, u, _corner_successor(face, u), v, _corner_successor(face, v))
    out, vmap = contract_edge(h, u, v)
    validate(out)
    return out, vmap


def flip_edge(g: PlaneGraph, a: int, b: int) -> PlaneGraph:
    rot = [list(r) for r in g.rotation]
    _flip(rot, a, b)
    return _keep_outer(rot, g.outer)


def _pred(rot, v, u):
    r = rot[v]
    return r[r.index(u) - 1]


def _flip(rot: list[list[int]], a: int, b: int) -> tuple[int, int]:
    """Replace edge ab by cd in a triangulation; assumes the flip is legal."""
    c = _pred(rot, b, a)
    d = _pred(rot, a, b)
    rot[a].remove(b)
    rot[b].remove(a)
    rc = rot[c]
    rc.insert(rc.index(a) + 1, d)
    rd = rot[d]
    rd.insert(rd.index(b) + 1, c)
    return c, d


# -- generators --------------------------------------------------------------

def _from_faces(n: int, faces: Sequence[Sequence[int]], outer=None) -> PlaneGraph:
    """Triangulation from consistently oriented faces (a, b, c)."""
    nxt: list[dict[int, int]] = [dict() for _ in range(n)]
    for a, b, c in faces:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            # walk x -> y -> z: at y, z precedes x
            if z in nxt[y]:
                raise GraphError("inconsistent face orientation")
            nxt[y][z] = x
    rot = []
    for v in range(n):
        start = min(nxt[v])
        r = [start]
        while nxt[v][r[-1]] != start:
            r.append(nxt[v][r[-1]])
        rot.append(r)
    return make_graph(rot, outer if outer is not None else tuple(faces[0]))


def _named_faces(name: str) -> tuple[int, list[tuple[int, int, int]]]:
    if name == "k4":
        return 4, [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    if name == "octahedron":
        return 6, [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1),
                   (5, 2, 1), (5, 3, 2), (5, 4, 3), (5, 1, 4)]
    if name == "icosahedron":
        def up(i):
            return 1 + (i - 1) % 5

        def lo(i):
            return 6 + (i - 1) % 5

        faces = []
        for i in range(1, 6):
            faces.append((0, up(i), up(i + 1)))
            faces.append((up(i + 1), up(i), lo(i + 1)))
            faces.append((lo(i + 1), up(i), lo(i)))
            faces.append((11, lo(i + 1), lo(i)))
        return 12, faces
    raise GraphError(f"unknown named graph {name!r}")


def named(name: str) -> PlaneGraph:
    n, faces = _named_faces(name)
    return _from_faces(n, faces)


def _random_rotation(n: int, rng: random.Random, flips: int) -> list[list[int]]:
    n0, faces = _named_faces("k4")
    rot = [list(r) for r in _from_faces(n0, faces).rotation]
    outer = {0, 1, 2}
    face_list = [f for f in faces if set(f) != outer]
    for w in range(4, n):
        i = rng.randrange(len(face_list))
        a, b, c = face_list[i]
        rot.append([a, b, c])
        rot[b].insert(rot[b].index(c) + 1, w)
        rot[c].insert(rot[c].index(a) + 1, w)
        rot[a].insert(rot[a].index(b) + 1, w)
        face_list[i] = (a, b, w)
        face_list.append((b, c, w))
        face_list.append((c, a, w))
    for _ in range(flips):
        a = rng.randrange(n)
        b = rng.choice(rot[a])
        _try_flip(rot, a, b, outer, min_inner=3)
    return rot


def _try_flip(rot, a, b, outer, min_inner: int) -> bool:
    if a in outer and b in outer:
        return False
    c = _pred(rot, b, a)
    d = _pred(rot, a, b)
    if c == d or d in rot[c]:
        return False
    for x in (a, b):
        floor = 3 if x in outer else min_inner
        if len(rot[x]) - 1 < floor:
            return False
    _flip(rot, a, b)
    return True


def generate(kind: str, n: int | None = None, seed: int = 0, flips: int | None = None,
             budget: int | None = None) -> PlaneGraph:
    """Generate a plane triangulation.

    ``kind`` is one of ``k4``, ``octahedron``, ``icosahedron``, ``random`` or
    ``random_mindeg5``.  Random graphs have outer face ``(0, 1, 2)``.
    """
    if kind in ("k4", "octahedron", "icosahedron"):
        return named(kind)
    if n is None or n < 4:
        raise GraphError("random generation needs n >= 4")
    rng = random.Random(seed)
    if kind == "random":
        rot = _random_rotation(n, rng, flips if flips is not None else 2 * n)
        return make_graph(rot, (0, 1, 2))
    if kind == "random_mindeg5":
        if n < 12:
            raise GraphError("random_mindeg5 needs n >= 12")
        return _mindeg5(n, rng, budget if budget is not None else 400 * n)
    raise GraphError(f"unknown generator {kind!r}")


def _mindeg5(n: int, rng: random.Random, budget: int) -> PlaneGraph:
    outer = {0, 1, 2}
    rot = _random_rotation(n, rng, 2 * n)
    spent = 0
    while True:
        low = [v for v in range(n) if v not in outer and len(rot[v]) < 5]
        if not low:
            return make_graph(rot, (0, 1, 2))
        if spent >= budget:
            raise GraphError(f"random_mindeg5: flip budget {budget} exhausted")
        v = rng.choice(low)
        options = []
        r = rot[v]
        for i, a in enumerate(r):
            b = r[(i + 1) % len(r)]
            # the face v b a lies on the far side of edge ab from v
            d = _pred(rot, a, b) if _pred(rot, b, a) == v else _pred(rot, b, a)
            if d == v or d in rot[v] or (a in outer and b in outer):
                continue
            slack = min(len(rot[x]) - (3 if x in outer else 5) for x in (a, b))
            options.append((slack, a, b))
        spent += 1
        good = [o for o in options if o[0] >= 1]
        if good:
            _, a, b = rng.choice(good)
            _flip(rot, a, b)
        elif options:
            _, a, b = rng.choice(options)
            _try_flip(rot, a, b, outer, min_inner=3)
        else:
            a = rng.randrange(n)
            _try_flip(rot, a, rng.choice(rot[a]), outer, min_inner=3)


def _five_edges(g: PlaneGraph) -> int:
    fives = {v for v in range(g.n) if g.degree(v) == 5 and v not in g.outer_set}
    return sum(1 for v in fives for u in g.rotation[v] if u in fives and u > v)


def spread_fives(g: PlaneGraph, seed: int = 0, flips: int = 2000) -> PlaneGraph:
    """Flip edges to separate inner degree-5 vertices, keeping inner degree >= 5.

    Hill-climbs on the number of edges joining two inner degree-5 vertices;
    such instances avoid the most common small configurations.
    """
    rng = random.Random(seed)
    rot = [list(r) for r in g.rotation]
    outer = tuple(g.outer) if g.outer else ()
    score = _five_edges(g)
    for _ in range(flips):
        if score == 0:
            break
        a = rng.randrange(g.n)
        b = rng.choice(rot[a])
        trial = [list(r) for r in rot]
        if not _try_flip(trial, a, b, outer, min_inner=5):
            continue
        h = _keep_outer(trial, g.outer)
        new = _five_edges(h)
        if new <= score:
            rot, score = trial, new
    return _keep_outer(rot, g.outer)


def antipodal_pairs(g: PlaneGraph) -> list[tuple[int, int]]:
    """Pairs at maximum BFS distance (used for the icosahedron's frozen colouring)."""
    dist = []
    for s in range(g.n):
        d = [-1] * g.n
        d[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.rotation[x]:
                if d[y] < 0:
                    d[y] = d[x] + 1
                    queue.append(y)
        dist.append(d)
    diam = max(max(d) for d in dist)
    return [(u, v) for u, v in combinations(range(g.n), 2) if dist[u][v] == diam]
