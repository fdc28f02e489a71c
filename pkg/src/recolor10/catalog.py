"""Reducible configurations and the machine check of their reducibility.

Each template is a small graph with degree marks.  Placed in a minimal
counterexample it induces a family of motifs: every proper colouring that
satisfies the template's hypotheses, with lists of the minimum size forced
by the marks.  A template is verified when every motif of its family is
oo-recolourable.
"""
from __future__ import annotations

import json
import re
import time
from dataclasses import asdict, dataclass
from functools import cached_property
from importlib import resources
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _fast
from .motif import (DescriptionVector, Motif, format_motif, oo_recolorable,
                    parse_vector)

MARK_DEGREE = {"eq5": 5, "le6": 6, "le7": 7}
PALETTE = tuple(range(1, 10))


class CatalogError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Hypothesis:
    kind: str
    vertices: tuple[int, ...] = ()

    def ten_set(self) -> frozenset[int] | None:
        """Vertex set that must contain a vertex of colour 10."""
        return None if self.kind == "nbhd10" else frozenset(self.vertices)

    def __str__(self):
        if not self.vertices:
            return self.kind
        return f"{self.kind}(" + ",".join(f"v{v + 1}" for v in self.vertices) + ")"


@dataclass(frozen=True)
class ConfigurationTemplate:
    id: str
    marks: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    hypotheses: tuple[Hypothesis, ...]
    vectors: tuple[DescriptionVector, ...]

    @property
    def m(self) -> int:
        return len(self.marks)

    @cached_property
    def _nbrs(self) -> tuple[frozenset[int], ...]:
        out = [set() for _ in range(self.m)]
        for u, v in self.edges:
            out[u].add(v)
            out[v].add(u)
        return tuple(frozenset(x) for x in out)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbrs[v]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def mark_degree(self, v: int) -> int:
        return MARK_DEGREE[self.marks[v]]

    def base_size(self, v: int) -> int:
        """List size forced when v has the largest degree its mark allows."""
        return 9 - 2 * (self.mark_degree(v) - self.degree(v))

    @property
    def nbhd10(self) -> bool:
        return any(h.kind == "nbhd10" for h in self.hypotheses)

    def ten_sets(self) -> list[frozenset[int]]:
        return sorted({h.ten_set() for h in self.hypotheses if h.ten_set() is not None},
                      key=lambda s: (len(s), sorted(s)))

    def motif(self, alpha: Sequence[int], lists: Sequence[Iterable[int]]) -> Motif:
        return Motif(self.m, self.edges, tuple(alpha), tuple(frozenset(x) for x in lists))


# -- hypotheses licensed by marks and edges ----------------------------------

def licensed_hypotheses(t: ConfigurationTemplate) -> set[Hypothesis]:
    """All colour constraints that the marks and edges justify."""
    deg = [t.mark_degree(v) for v in range(t.m)]
    out = {Hypothesis("nbhd10")}
    for u, v in t.edges:
        if deg[u] == 5 and deg[v] == 5:
            out.add(Hypothesis("lem55", (u, v)))
    for a, b, c in permutations(range(t.m), 3):
        if b < c and deg[a] == 5 and deg[b] <= 6 and deg[c] <= 6 and \
                t.adjacent(a, b) and t.adjacent(a, c) and t.adjacent(b, c):
            out.add(Hypothesis("triangle", (a, b, c)))
    for a, b, c, d in permutations(range(t.m), 4):
        if deg[b] != 5 or deg[c] > 6 or deg[d] > 6:
            continue
        present = [(a, b), (a, c), (a, d), (b, c), (c, d)]
        if all(t.adjacent(x, y) for x, y in present) and not t.adjacent(b, d):
            out.add(Hypothesis("fan", (a, b, c, d)))
    return out


def _is_licensed(t: ConfigurationTemplate, h: Hypothesis) -> bool:
    lic = licensed_hypotheses(t)
    if h.kind == "lem55":
        return Hypothesis("lem55", tuple(sorted(h.vertices))) in lic or h in lic
    if h.kind == "triangle":
        a, b, c = h.vertices
        return Hypothesis("triangle", (a, min(b, c), max(b, c))) in lic
    return h in lic


# -- catalog file ------------------------------------------------------------

_VERTEX = re.compile(r"^v(\d+)$")
_HYP = re.compile(r"^(\w+)(?:\(([^)]*)\))?$")


def _vertex(tok: str, m: int, where: str) -> int:
    match = _VERTEX.match(tok.strip())
    if not match or not 1 <= int(match.group(1)) <= m:
        raise CatalogError(f"{where}: bad vertex {tok!r}")
    return int(match.group(1)) - 1


def load_catalog(text: str | None = None) -> list[ConfigurationTemplate]:
    """Parse and validate the catalog; the packaged one by default."""
    if text is None:
        text = resources.files(__package__).joinpath("catalog.txt").read_text()
    blocks: list[dict] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, body = line.partition(" ") if line.startswith("config") else line.partition(":")
        key = key.strip()
        if key == "config":
            blocks.append({"id": body.strip(), "line": lineno})
            continue
        if not blocks:
            raise CatalogError(f"line {lineno}: content before the first config")
        if key not in ("marks", "edges", "hypotheses", "vectors"):
            raise CatalogError(f"line {lineno}: unknown field {key!r}")
        blocks[-1][key] = (body.strip(), lineno)
    return [_build(b) for b in blocks]


def _build(block: dict) -> ConfigurationTemplate:
    cid = block["id"]
    for key in ("marks", "edges", "hypotheses", "vectors"):
        if key not in block:
            raise CatalogError(f"{cid}: missing {key}")
    marks_text, _ = block["marks"]
    marks = []
    for i, tok in enumerate(marks_text.split()):
        name, _, mark = tok.partition("=")
        if name != f"v{i + 1}" or mark not in MARK_DEGREE:
            raise CatalogError(f"{cid}: bad mark {tok!r}")
        marks.append(mark)
    m = len(marks)
    edges = []
    for tok in block["edges"][0].split():
        a, _, b = tok.partition("-")
        u, v = _vertex(a, m, cid), _vertex(b, m, cid)
        if u == v:
            raise CatalogError(f"{cid}: loop {tok}")
        edges.append((min(u, v), max(u, v)))
    hyps = []
    for tok in block["hypotheses"][0].split():
        match = _HYP.match(tok)
        if not match:
            raise CatalogError(f"{cid}: bad hypothesis {tok!r}")
        verts = tuple(_vertex(x, m, cid) for x in match.group(2).split(",")) if match.group(2) else ()
        hyps.append(Hypothesis(match.group(1), verts))
    vectors = tuple(parse_vector(v) for v in re.findall(r'"([^"]*)"', block["vectors"][0]))
    t = ConfigurationTemplate(cid, tuple(marks), tuple(sorted(set(edges))), tuple(hyps), vectors)
    check_template(t)
    return t


def check_template(t: ConfigurationTemplate) -> None:
    """Consistency of marks, edges, hypotheses and size vectors."""
    for v in range(t.m):
        if t.degree(v) > t.mark_degree(v):
            raise CatalogError(f"{t.id}: v{v + 1} has more neighbours than its mark allows")
    for h in t.hypotheses:
        if h.kind not in ("nbhd10", "lem55", "triangle", "fan"):
            raise CatalogError(f"{t.id}: unknown hypothesis {h}")
        if not _is_licensed(t, h):
            raise CatalogError(f"{t.id}: hypothesis {h} is not justified by marks and edges")
    if not t.vectors:
        raise CatalogError(f"{t.id}: no size vector")
    base = [t.base_size(v) for v in range(t.m)]
    for i, vec in enumerate(t.vectors):
        if len(vec.entries) != t.m:
            raise CatalogError(f"{t.id}: vector {vec} has {len(vec.entries)} entries for {t.m} vertices")
        for v, s in enumerate(vec.entries):
            if s is None:
                continue
            allowed = {base[v]} if i == 0 else {base[v], base[v] + 1}
            if s not in allowed:
                raise CatalogError(
                    f"{t.id}: vector {vec} entry v{v + 1}={s} inconsistent with "
                    f"9 - 2({t.mark_degree(v)} - {t.degree(v)}) = {base[v]}")


# -- the induced family ------------------------------------------------------

def automorphisms(t: ConfigurationTemplate) -> list[tuple[int, ...]]:
    """Vertex permutations preserving edges and marks."""
    es = set(t.edges)
    out = []
    for p in permutations(range(t.m)):
        if any(t.marks[p[v]] != t.marks[v] for v in range(t.m)):
            continue
        if {(min(p[u], p[v]), max(p[u], p[v])) for u, v in t.edges} == es:
            out.append(p)
    return out


def _relabel(alpha: Sequence[int]) -> tuple[int, ...]:
    """Rename colours 1..9 by first appearance; 10 stays."""
    mp: dict[int, int] = {}
    out = []
    for c in alpha:
        if c == 10:
            out.append(10)
        else:
            if c not in mp:
                mp[c] = len(mp) + 1
            out.append(mp[c])
    return tuple(out)


def canonical_alpha(alpha: Sequence[int], auts: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return min(_relabel([alpha[p[v]] for v in range(len(alpha))]) for p in auts)


def family_sizes(t: ConfigurationTemplate, alpha: Sequence[int]) -> tuple[int, ...] | None:
    """Minimum list sizes for colouring alpha, or None if alpha is ruled out."""
    for s in t.ten_sets():
        if not any(alpha[v] == 10 for v in s):
            return None
    sizes = []
    for v in range(t.m):
        size = t.base_size(v)
        if t.nbhd10 and not any(alpha[u] == 10 for u in t.neighbors(v) | {v}):
            if t.degree(v) == t.mark_degree(v):
                return None
            size += 1
        sizes.append(max(0, min(size, 9)))
    return tuple(sizes)


def _proper_colorings(t: ConfigurationTemplate) -> Iterator[tuple[int, ...]]:
    """Proper colourings with colours in restricted-growth form (10 kept)."""
    alpha = [0] * t.m

    def rec(v: int, top: int):
        if v == t.m:
            yield tuple(alpha)
            return
        for c in list(range(1, min(top + 1, 9) + 1)) + [10]:
            if any(alpha[u] == c for u in t.neighbors(v) if u < v):
                continue
            alpha[v] = c
            yield from rec(v + 1, max(top, c) if c != 10 else top)

    yield from rec(0, 0)


def alpha_classes(t: ConfigurationTemplate) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Canonical colourings admitted by the hypotheses, with their list sizes."""
    auts = automorphisms(t)
    reps = set()
    for alpha in _proper_colorings(t):
        if family_sizes(t, alpha) is not None:
            reps.add(canonical_alpha(alpha, auts))
    return [(a, family_sizes(t, a)) for a in sorted(reps)]


def list_classes(alpha: Sequence[int], sizes: Sequence[int]) -> Iterator[tuple[frozenset[int], ...]]:
    """List assignments of exact sizes, one per orbit of colours unused by alpha.

    Each colour chooses the set of vertices whose list contains it; colours
    absent from alpha are interchangeable and choose a non-decreasing
    sequence of vertex sets.
    """
    m = len(alpha)
    used = sorted({c for c in alpha if c != 10})
    free = [c for c in PALETTE if c not in used]
    colors = used + free
    n_used = len(used)
    masks = list(range(1 << m))
    need = list(sizes)
    chosen = [0] * len(colors)

    def rec(j: int, floor: int):
        remaining = len(colors) - j
        if any(x > remaining or x < 0 for x in need):
            return
        if j == len(colors):
            lists = tuple(frozenset(colors[i] for i in range(len(colors)) if chosen[i] >> v & 1)
                          for v in range(m))
            yield lists
            return
        start = 0 if j < n_used else floor
        for mask in masks[start:]:
            if any(mask >> v & 1 and need[v] == 0 for v in range(m)):
                continue
            for v in range(m):
                if mask >> v & 1:
                    need[v] -= 1
            chosen[j] = mask
            yield from rec(j + 1, mask if j >= n_used else 0)
            for v in range(m):
                if mask >> v & 1:
                    need[v] += 1

    yield from rec(0, 0)


def _list_key(alpha: Sequence[int], lists: Sequence[frozenset[int]], p: Sequence[int]) -> tuple:
    """Lists under vertex permutation p, normalised over colour renamings fixing alpha."""
    m = len(alpha)
    perm = [lists[p[v]] for v in range(m)]

    def mask(c: int) -> int:
        return sum(1 << v for v in range(m) if c in perm[v])
    order: list[int] = []
    for v in range(m):
        c = alpha[p[v]]
        if c != 10 and c not in order:
            order.append(c)
    return (tuple(mask(c) for c in order), tuple(sorted(mask(c) for c in PALETTE if c not in order)))


def induced_motif_family(t: ConfigurationTemplate) -> Iterator[Motif]:
    """Every motif of the family, one per orbit of colour and template symmetry."""
    auts = automorphisms(t)
    for alpha, sizes in alpha_classes(t):
        stab = [p for p in auts if _relabel([alpha[p[v]] for v in range(t.m)]) == tuple(alpha)]
        for lists in list_classes(alpha, sizes):
            own = _list_key(alpha, lists, tuple(range(t.m)))
            if all(own <= _list_key(alpha, lists, p) for p in stab):
                yield t.motif(alpha, lists)


# -- verification ------------------------------------------------------------

@dataclass
class VerificationReport:
    config: str
    mode: str
    classes_checked: int
    samples: int
    verdict: str
    runtime: float
    method: str = ""
    refinements: int = 0
    counterexample: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _lex_geq(solver, pool, a: Sequence[int], b: Sequence[int]) -> None:
    """Clauses forcing bit-vector a >= b lexicographically."""
    eq = pool.id(("lex", tuple(a), tuple(b), 0))
    solver.add_clause([eq])
    for i, (x, y) in enumerate(zip(a, b)):
        nxt = pool.id(("lex", tuple(a), tuple(b), i + 1))
        solver.add_clause([-eq, -y, x])
        solver.add_clause([-eq, x, y, nxt])
        solver.add_clause([-eq, -x, -y, nxt])
        eq = nxt


def verify_alpha_cegar(t: ConfigurationTemplate, alpha: Sequence[int], sizes: Sequence[int]):
    """Complete check of all exact-size list assignments for one colouring.

    Returns (refinements, counterexample lists or None).
    """
    return cegar_lists(t.m, t.edges, alpha, sizes)


def cegar_lists(m: int, edges: Sequence[tuple[int, int]], alpha: Sequence[int], sizes: Sequence[int],
                at_least: bool = False):
    """Counterexample-guided search over list assignments for one colouring.

    A SAT solver proposes list assignments of the given sizes (or larger,
    with ``at_least``); each oo-recolourable proposal yields a colouring
    gamma and every assignment containing gamma is excluded.
    Unsatisfiability means the whole family is covered.
    """
    from pysat.card import CardEnc, EncType
    from pysat.formula import IDPool
    from pysat.solvers import Solver

    pool = IDPool()
    x = [[pool.id((v, c)) for c in PALETTE] for v in range(m)]
    solver = Solver(name="minisat22")
    card = CardEnc.atleast if at_least else CardEnc.equals
    for v in range(m):
        if at_least and sizes[v] <= 0:
            continue
        enc = card(lits=x[v], bound=sizes[v], vpool=pool, encoding=EncType.seqcounter)
        for cl in enc.clauses:
            solver.add_clause(cl)
    used = {c for c in alpha if c != 10}
    free = [c for c in PALETTE if c not in used]
    for c1, c2 in zip(free, free[1:]):
        _lex_geq(solver, pool, [x[v][c1 - 1] for v in range(m)], [x[v][c2 - 1] for v in range(m)])
    mm, nb, al, _ = _fast.encode(Motif(m, tuple(edges), tuple(alpha), (frozenset(),) * m))
    order = _fast.search_order(mm, nb)
    gout = np.zeros(m, dtype=np.int64)
    lst = np.zeros(m, dtype=np.int64)
    refinements = 0
    try:
        while solver.solve():
            model = set(l for l in solver.get_model() if l > 0)
            for v in range(m):
                lst[v] = sum(1 << c for c in PALETTE if x[v][c - 1] in model)
            if not _fast.oo_fast(mm, nb, al, lst, order, gout):
                lists = [frozenset(c for c in PALETTE if lst[v] >> c & 1) for v in range(m)]
                return refinements, lists
            solver.add_clause([-x[v][int(gout[v]) - 1] for v in range(m)])
            refinements += 1
    finally:
        solver.delete()
    return refinements, None


def _counterexample(t, alpha, lists) -> str:
    return format_motif(t.motif(alpha, lists))


def verify_configuration(t: ConfigurationTemplate, mode: str = "exhaustive",
                         samples: int = 1_000_000, seed: int = 0,
                         method: str = "cegar", jobs: int = 1) -> VerificationReport:
    start = time.perf_counter()
    classes = alpha_classes(t)
    if mode == "exhaustive":
        if method == "enumerate":
            count = 0
            for M in induced_motif_family(t):
                count += 1
                if not _fast.decide(M)[0] or not oo_recolorable(M).yes:
                    return VerificationReport(t.id, mode, count, 0, "counterexample",
                                              time.perf_counter() - start, method,
                                              counterexample=format_motif(M))
            return VerificationReport(t.id, mode, count, 0, "verified",
                                      time.perf_counter() - start, method)
        results = _map(jobs, _cegar_job, [(t, a, s) for a, s in classes])
        refinements = 0
        for (alpha, _), (ref, bad) in zip(classes, results):
            refinements += ref
            if bad is not None:
                return VerificationReport(t.id, mode, len(classes), 0, "counterexample",
                                          time.perf_counter() - start, method, refinements,
                                          _counterexample(t, alpha, bad))
        return VerificationReport(t.id, mode, len(classes), 0, "verified",
                                  time.perf_counter() - start, method, refinements)
    if mode == "randomized":
        alphas = np.array([a for a, _ in classes], dtype=np.int64)
        sizes = np.array([s for _, s in classes], dtype=np.int64)
        mm, nb, _, _ = _fast.encode(t.motif(classes[0][0], [()] * t.m))
        chunks = _split(samples, max(jobs, 1))
        args = [(mm, nb, alphas, sizes, n, seed + i) for i, n in enumerate(chunks)]
        for i, (fail, j, lst) in enumerate(_map(jobs, _sample_job, args)):
            if fail >= 0:
                lists = [frozenset(c for c in PALETTE if int(lst[v]) >> c & 1) for v in range(t.m)]
                return VerificationReport(t.id, mode, len(classes), samples, "counterexample",
                                          time.perf_counter() - start, "sampling",
                                          counterexample=_counterexample(t, classes[j][0], lists))
        return VerificationReport(t.id, mode, len(classes), samples, "verified",
                                  time.perf_counter() - start, "sampling")
    raise CatalogError(f"unknown mode {mode!r}")


def _split(total: int, parts: int) -> list[int]:
    return [total // parts + (1 if i < total % parts else 0) for i in range(parts)]


def _cegar_job(args):
    t, alpha, sizes = args
    return verify_alpha_cegar(t, alpha, sizes)


def _sample_job(args):
    mm, nb, alphas, sizes, n, seed = args
    return _fast.sample_family(mm, nb, alphas, sizes, n, seed)


def _map(jobs: int, fn, items: list) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


EXHAUSTIVE = ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C12", "C13", "C14", "C16")
RANDOMIZED = ("C8", "C9", "C10", "C11", "C15")


def verify_catalog(templates: Sequence[ConfigurationTemplate] | None = None, samples: int = 1_000_000,
                   seed: int = 42, jobs: int = 1, only: Sequence[str] | None = None) -> list[VerificationReport]:
    templates = load_catalog() if templates is None else templates
    out = []
    for t in templates:
        if only and t.id not in only:
            continue
        mode = "randomized" if t.id in RANDOMIZED else "exhaustive"
        out.append(verify_configuration(t, mode, samples=samples, seed=seed, jobs=jobs))
    return out


# -- base lemmas -------------------------------------------------------------

@dataclass
class BaseLemmaReport:
    lemma: str
    statement: str
    alphas: int
    classes_checked: int
    yes: int
    exceptions: int
    verdict: str
    runtime: float
    counterexample: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class BaseLemma:
    """Motifs on a fixed graph with lists of at least the given sizes."""
    name: str
    statement: str
    m: int
    edges: tuple[tuple[int, int], ...]
    minsize: tuple[int, ...]
    exception: int = _fast.EXC_NONE
    needs_ten: bool = False


PATH3 = ((0, 1), (1, 2))
TRIANGLE = ((0, 1), (0, 2), (1, 2))

BASE_LEMMAS = (
    BaseLemma("single_vertex", "one vertex with a non-empty list is oo-recolorable", 1, (), (1,)),
    BaseLemma("edge_21", "edge described by (2,1): oo-recolorable unless no 10, L1={a1,a2}, L2={a1}",
              2, ((0, 1),), (2, 1), _fast.EXC_EDGE),
    BaseLemma("path_222", "path described by (2,2,2) with a 10 is oo-recolorable", 3, PATH3, (2, 2, 2),
              needs_ten=True),
    BaseLemma("path_141", "path described by (1,4,1) is oo-recolorable", 3, PATH3, (1, 4, 1)),
    BaseLemma("triangle_431", "triangle described by (4,3,1) is oo-recolorable", 3, TRIANGLE, (4, 3, 1)),
    BaseLemma("triangle_331", "triangle described by (3,3,1): oo-recolorable unless no 10, "
              "L1=L2={a1,a2,a3}, L3 within {a1,a2}", 3, TRIANGLE, (3, 3, 1), _fast.EXC_TRIANGLE),
    BaseLemma("triangle_332", "triangle described by (3,3,2): oo-recolorable unless no 10, "
              "L1=L2={a1,a2,a3}, L3 within {a1,a2}", 3, TRIANGLE, (3, 3, 2), _fast.EXC_TRIANGLE),
)


def graph_colorings(m: int, edges: Iterable[tuple[int, int]]) -> Iterator[tuple[int, ...]]:
    """Proper colourings over 1..10 with colours 1..9 in restricted-growth form."""
    nbrs: list[set[int]] = [set() for _ in range(m)]
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    alpha = [0] * m

    def rec(v: int, top: int):
        if v == m:
            yield tuple(alpha)
            return
        for c in list(range(1, min(top + 1, 9) + 1)) + [10]:
            if any(alpha[u] == c for u in nbrs[v] if u < v):
                continue
            alpha[v] = c
            yield from rec(v + 1, max(top, c) if c != 10 else top)

    yield from rec(0, 0)


def small_graphs(max_vertices: int = 4) -> list[tuple[int, tuple[tuple[int, int], ...]]]:
    """All graphs with 1..max_vertices vertices up to isomorphism."""
    out = []
    for m in range(1, max_vertices + 1):
        pairs = list(combinations(range(m), 2))
        seen = set()
        for mask in range(1 << len(pairs)):
            es = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            canon = min(tuple(sorted((min(p[u], p[v]), max(p[u], p[v])) for u, v in es))
                        for p in permutations(range(m)))
            if canon not in seen:
                seen.add(canon)
                out.append((m, canon))
    return out


def _scan_base(lemma: BaseLemma) -> BaseLemmaReport:
    start = time.perf_counter()
    nb = np.zeros(lemma.m, dtype=np.int64)
    for u, v in lemma.edges:
        nb[u] |= 1 << v
        nb[v] |= 1 << u
    minsize = np.array(lemma.minsize, dtype=np.int64)
    alphas = classes = yes = exc = 0
    for alpha in graph_colorings(lemma.m, lemma.edges):
        if lemma.needs_ten and 10 not in alpha:
            continue
        alphas += 1
        used = np.array(sorted({c for c in alpha if c != 10}), dtype=np.int64)
        unused = np.array([c for c in PALETTE if c not in used], dtype=np.int64)
        al = np.array(alpha, dtype=np.int64)
        c, y, e, bad, lst = _fast.scan_lists(lemma.m, nb, al, used, unused, minsize, lemma.exception)
        classes, yes, exc = classes + c, yes + y, exc + e
        if bad:
            lists = [frozenset(x for x in PALETTE if int(lst[v]) >> x & 1) for v in range(lemma.m)]
            M = Motif(lemma.m, lemma.edges, alpha, tuple(lists))
            return BaseLemmaReport(lemma.name, lemma.statement, alphas, classes, yes, exc,
                                   "counterexample", time.perf_counter() - start, format_motif(M))
    return BaseLemmaReport(lemma.name, lemma.statement, alphas, classes, yes, exc, "verified",
                           time.perf_counter() - start)


def _degree_bound_report(max_vertices: int = 4) -> BaseLemmaReport:
    """Lists larger than the degree everywhere: complete search per colouring."""
    start = time.perf_counter()
    alphas = refinements = 0
    for m, edges in small_graphs(max_vertices):
        deg = [0] * m
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        for alpha in graph_colorings(m, edges):
            alphas += 1
            ref, bad = cegar_lists(m, edges, alpha, [d + 1 for d in deg], at_least=True)
            refinements += ref
            if bad is not None:
                M = Motif(m, edges, alpha, tuple(bad))
                return BaseLemmaReport("degree_bound", "", alphas, refinements, 0, 0, "counterexample",
                                       time.perf_counter() - start, format_motif(M))
    return BaseLemmaReport("degree_bound",
                           f"lists larger than the degree on every graph with at most {max_vertices} "
                           "vertices: oo-recolorable", alphas, refinements, refinements, 0, "verified",
                           time.perf_counter() - start)


def verify_base_lemmas(only: Sequence[str] | None = None, max_vertices: int = 4) -> list[BaseLemmaReport]:
    """Exhaustive checks of the base lemmas, exceptional families included.

    Lemmas with lists bounded from below are scanned over all list classes
    (colours unused by alpha are interchangeable); the degree bound is
    checked with the complete SAT-guided search.  For ``degree_bound`` the
    ``classes_checked`` field counts SAT refinements.
    """
    out = []
    for lemma in BASE_LEMMAS:
        if only is None or lemma.name in only:
            out.append(_scan_base(lemma))
    if only is None or "degree_bound" in only:
        out.append(_degree_bound_report(max_vertices))
    return out
