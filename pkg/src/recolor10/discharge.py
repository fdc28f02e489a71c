"""Charge redistribution on plane triangulations and the configuration finder.

Every vertex starts with ``10 deg(v) - 60``.  Big vertices push charge
towards small ones along prescribed faces and edges; the resulting ledger
is checked for conservation.  The appearance search looks for catalog
templates on wheels of the triangulation.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .catalog import ConfigurationTemplate, load_catalog
from .embed import PlaneGraph, induced_subgraph, separating_triangles, validate_triangulation, wheel_of


class DischargeError(ValueError):
    pass


class AppearanceError(RuntimeError):
    """No configuration found where one is guaranteed to exist."""


Face = tuple[int, int, int]
Edge = tuple[int, int]


def _face(*vs: int) -> Face:
    return tuple(sorted(vs))  # type: ignore[return-value]


def _edge(u: int, v: int) -> Edge:
    return (min(u, v), max(u, v))


def classify(g: PlaneGraph) -> list[str]:
    """big / medium / small; inner vertices of degree at most 4 are ``low``."""
    if g.outer is None:
        raise DischargeError("outer face is not set")
    out = []
    for v in range(g.n):
        d = g.degree(v)
        if d >= 7 or v in g.outer_set:
            out.append("big")
        elif d == 6:
            out.append("medium")
        elif d == 5:
            out.append("small")
        else:
            out.append("low")
    return out


def initial_charges(g: PlaneGraph) -> list[int]:
    return [10 * g.degree(v) - 60 for v in range(g.n)]


@dataclass(frozen=True)
class Transfer:
    rule: str
    source: int
    sink: int
    amount: int
    leave_faces: tuple[Face, ...]
    pass_face: Face
    arrive_edge: Edge


@dataclass
class ChargeLedger:
    initial: list[int]
    transfers: list[Transfer]
    final: list[int]

    def to_json(self) -> str:
        return json.dumps([asdict(t) for t in self.transfers])


def _require_triangulation(g: PlaneGraph) -> None:
    if g.outer is None:
        raise DischargeError("outer face is not set")
    if not validate_triangulation(g).is_triangulation:
        raise DischargeError("graph is not a triangulation")


def apply_rules(g: PlaneGraph) -> ChargeLedger:
    _require_triangulation(g)
    cls = classify(g)
    transfers: list[Transfer] = []
    # R1: two unit halves through the two faces on the edge
    for v in range(g.n):
        if cls[v] != "big":
            continue
        for u in g.neighbors(v):
            if cls[u] != "small":
                continue
            for f in (_face(v, u, g.pred(u, v)), _face(u, v, g.pred(v, u))):
                transfers.append(Transfer("R1", v, u, 1, (f,), f, _edge(v, u)))
    # R2: per face v u x with v big, u small, x medium or small
    for walk in g.faces():
        f = _face(*walk)
        for i in range(3):
            v = walk[i]
            if cls[v] != "big":
                continue
            for u, x in ((walk[(i + 1) % 3], walk[(i + 2) % 3]), (walk[(i + 2) % 3], walk[(i + 1) % 3])):
                if cls[u] == "small" and cls[x] in ("medium", "small"):
                    transfers.append(Transfer("R2", v, u, 1, (f,), f, _edge(x, u)))
    # R3: around a medium x, small v1, medium v2..v_{m-1}, big v_m, m <= 6
    for x in range(g.n):
        if cls[x] != "medium":
            continue
        rot = g.neighbors(x)
        d = len(rot)
        for step in (1, -1):
            for i in range(d):
                seq = [rot[(i + step * j) % d] for j in range(d)]
                if cls[seq[0]] != "small" or cls[seq[1]] != "medium":
                    continue
                j = 2
                while j < min(d, 6) and cls[seq[j]] == "medium":
                    j += 1
                if j >= 6 or j >= d or cls[seq[j]] != "big":
                    continue
                v1, v2, vm, vprev = seq[0], seq[1], seq[j], seq[j - 1]
                transfers.append(Transfer("R3", vm, v1, 1, (_face(x, vprev, vm),),
                                          _face(x, v1, v2), _edge(v2, v1)))
    init = initial_charges(g)
    final = init[:]
    for t in transfers:
        final[t.source] -= t.amount
        final[t.sink] += t.amount
    return ChargeLedger(init, transfers, final)


@dataclass
class FinalCharges:
    final: list[int]
    total_initial: int
    total_final: int
    conserved: bool
    small_incoming: dict[int, int] = field(default_factory=dict)


def final_charges(g: PlaneGraph, ledger: ChargeLedger | None = None) -> FinalCharges:
    ledger = apply_rules(g) if ledger is None else ledger
    cls = classify(g)
    incoming: dict[int, int] = {v: 0 for v in range(g.n) if cls[v] == "small"}
    for t in ledger.transfers:
        if t.sink in incoming:
            incoming[t.sink] += t.amount
    ti, tf = sum(ledger.initial), sum(ledger.final)
    if ti != tf:
        raise DischargeError(f"charge not conserved: {ti} -> {tf}")
    return FinalCharges(ledger.final, ti, tf, ti == tf == -120, incoming)


def face_outflow(g: PlaneGraph, v: int, ledger: ChargeLedger | None = None) -> dict[Face, int]:
    """t(f): charge leaving big inner vertex v through each incident face."""
    cls = classify(g)
    if cls[v] != "big" or v in g.outer_set:
        raise DischargeError(f"vertex {v} is not a big inner vertex")
    ledger = apply_rules(g) if ledger is None else ledger
    rot = g.neighbors(v)
    out = {_face(v, rot[i], rot[(i + 1) % len(rot)]): 0 for i in range(len(rot))}
    for t in ledger.transfers:
        if t.source == v:
            for f in t.leave_faces:
                out[f] += t.amount
    return out


# -- appearances -------------------------------------------------------------

@dataclass(frozen=True)
class Appearance:
    template: str
    center: int
    rim: tuple[int, ...]
    injection: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps({"template": self.template, "center": self.center,
                           "rim": list(self.rim), "injection": list(self.injection)})


def _wheel_adjacency(center: int, rim: Sequence[int]) -> dict[int, set[int]]:
    adj = {center: set(rim)}
    k = len(rim)
    for i, x in enumerate(rim):
        adj.setdefault(x, set()).update({center, rim[(i + 1) % k], rim[(i - 1) % k]})
    return adj


def _embed_template(t: ConfigurationTemplate, g: PlaneGraph, adj: dict[int, set[int]]) -> tuple[int, ...] | None:
    cands = sorted(x for x in adj if x not in g.outer_set)
    image: list[int] = []

    def rec(i: int) -> bool:
        if i == t.m:
            return True
        for x in cands:
            if x in image or g.degree(x) > t.mark_degree(i):
                continue
            if all((x in adj[image[j]]) == t.adjacent(i, j) for j in range(i)):
                image.append(x)
                if rec(i + 1):
                    return True
                image.pop()
        return False

    return tuple(image) if rec(0) else None


def _check_appearance_input(g: PlaneGraph) -> None:
    _require_triangulation(g)
    if g.n < 4:
        raise DischargeError("need at least four vertices")
    low = [v for v in range(g.n) if v not in g.outer_set and g.degree(v) < 5]
    if low:
        raise DischargeError(f"inner vertex {low[0]} has degree {g.degree(low[0])} < 5")


def find_appearance(g: PlaneGraph, templates: Sequence[ConfigurationTemplate] | None = None) -> Appearance | None:
    _check_appearance_input(g)
    templates = load_catalog() if templates is None else templates
    for c in range(g.n):
        w = wheel_of(g, c)
        adj = _wheel_adjacency(c, w.rim)
        for t in templates:
            inj = _embed_template(t, g, adj)
            if inj is not None:
                return Appearance(t.id, c, w.rim, inj)
    return None


@dataclass(frozen=True)
class InducedAppearance(Appearance):
    disk: tuple[int, int, int] | None = None


def _oriented_face(h: PlaneGraph, tri: set[int]) -> tuple[int, int, int]:
    for f in h.faces():
        if set(f) == tri and len(f) == 3:
            return f  # type: ignore[return-value]
    raise DischargeError("triangle is not a face of the disk")


def find_induced_configuration(g: PlaneGraph,
                               templates: Sequence[ConfigurationTemplate] | None = None) -> InducedAppearance:
    """A template occurring as an induced subgraph of g with degrees read in g.

    The search runs inside the innermost separating triangle, where no
    separating triangle remains and every wheel is induced.
    """
    _check_appearance_input(g)
    templates = load_catalog() if templates is None else templates
    seps = separating_triangles(g)
    if seps:
        tri, inside = seps[0]
        keep = sorted(set(tri) | inside)
        h, index = induced_subgraph(g, keep)
        back = {i: v for v, i in index.items()}
        h = h.with_outer(_oriented_face(h, {index[x] for x in tri}))
    else:
        tri, h, back = None, g, {v: v for v in range(g.n)}
    app = find_appearance(h, templates)
    if app is None:
        raise AppearanceError("no configuration appears; the catalog or the embedding is wrong")
    inj = tuple(back[x] for x in app.injection)
    t = next(t for t in templates if t.id == app.template)
    for i in range(t.m):
        if g.degree(inj[i]) > t.mark_degree(i):
            raise AppearanceError(f"degree bound broken at v{i + 1}")
        for j in range(i):
            if g.adjacent(inj[i], inj[j]) != t.adjacent(i, j):
                raise AppearanceError("configuration is not induced in the graph")
    return InducedAppearance(app.template, back[app.center], tuple(back[x] for x in app.rim), inj,
                             tuple(tri) if tri else None)
