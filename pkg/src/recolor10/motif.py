"""Motifs: a graph with a 10-colouring and lists of target colours from 1..9.

A motif is *oo-recolourable* if the vertices can be recoloured, each at most
once and directly to its final colour, so that every intermediate colouring
is proper and the final one picks every vertex's colour from its list.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Sequence

PALETTE = frozenset(range(1, 10))


class MotifError(ValueError):
    pass


@dataclass(frozen=True)
class Motif:
    m: int
    edges: tuple[tuple[int, int], ...]
    alpha: tuple[int, ...]
    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.alpha) != self.m or len(self.lists) != self.m:
            raise MotifError("alpha and lists must have one entry per vertex")
        norm = tuple(sorted({(min(e), max(e)) for e in self.edges}))
        object.__setattr__(self, "edges", norm)
        object.__setattr__(self, "lists", tuple(frozenset(x) for x in self.lists))
        for u, v in norm:
            if u == v or not (0 <= u < self.m and 0 <= v < self.m):
                raise MotifError(f"bad edge {u}-{v}")
            if self.alpha[u] == self.alpha[v]:
                raise MotifError(f"alpha is not proper on edge {u}-{v}")
        for v, a in enumerate(self.alpha):
            if not 1 <= a <= 10:
                raise MotifError(f"vertex {v}: alpha {a} outside 1..10")
            if not self.lists[v] <= PALETTE:
                raise MotifError(f"vertex {v}: list must be a subset of 1..9")

    @property
    def n(self) -> int:
        return self.m

    @cached_property
    def _nbrs(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.m)]
        for u, v in self.edges:
            out[u].append(v)
            out[v].append(u)
        return tuple(tuple(sorted(x)) for x in out)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def degree_prime(self, v: int) -> int:
        """Neighbours whose colour is not 10."""
        return sum(1 for u in self._nbrs[v] if self.alpha[u] != 10)

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    def with_lists(self, lists: Sequence[Iterable[int]]) -> "Motif":
        return Motif(self.m, self.edges, self.alpha, tuple(frozenset(x) for x in lists))

    def permute_colors(self, pi: dict[int, int]) -> "Motif":
        """Apply a colour permutation of 1..9 (10 is fixed)."""
        f = lambda c: pi.get(c, c)  # noqa: E731
        return Motif(self.m, self.edges, tuple(f(a) for a in self.alpha),
                     tuple(frozenset(f(c) for c in lst) for lst in self.lists))

    def without(self, v: int, list_update=None) -> "Motif":
        """Delete v; ``list_update(u, L)`` adjusts lists of v's neighbours."""
        keep = [u for u in range(self.m) if u != v]
        idx = {u: i for i, u in enumerate(keep)}
        nb = set(self._nbrs[v])
        lists = []
        for u in keep:
            lst = self.lists[u]
            if list_update is not None and u in nb:
                lst = list_update(u, lst)
            lists.append(lst)
        edges = tuple((idx[a], idx[b]) for a, b in self.edges if v not in (a, b))
        return Motif(self.m - 1, edges, tuple(self.alpha[u] for u in keep), tuple(lists))


@dataclass(frozen=True)
class Verdict:
    yes: bool
    gamma: tuple[int, ...] | None = None
    order: tuple[int, ...] | None = None

    def steps(self) -> list[tuple[int, int]]:
        return [(v, self.gamma[v]) for v in self.order] if self.yes else []

    def to_json(self) -> str:
        """Stable record; ``order`` uses the 1-based labels of the motif file."""
        record = {
            "verdict": "yes" if self.yes else "no",
            "gamma": list(self.gamma) if self.gamma is not None else None,
            "order": [v + 1 for v in self.order] if self.order is not None else None,
        }
        return json.dumps(record)


NO = Verdict(False)


# -- decision procedure -------------------------------------------------------

def conflict_digraph(M: Motif, gamma: Sequence[int]) -> list[tuple[int, int]]:
    """Arcs u -> v meaning u must be recoloured before v."""
    moved = [gamma[v] != M.alpha[v] for v in range(M.m)]
    arcs = []
    for u, v in M.edges:
        if moved[u] and moved[v]:
            if gamma[v] == M.alpha[u]:
                arcs.append((u, v))
            if gamma[u] == M.alpha[v]:
                arcs.append((v, u))
    return sorted(arcs)


def topological_order(m: int, nodes: Iterable[int], arcs: Iterable[tuple[int, int]]) -> list[int] | None:
    """Kahn's algorithm taking the smallest available label; None on a cycle."""
    import heapq

    nodes = set(nodes)
    indeg = {v: 0 for v in nodes}
    out: dict[int, list[int]] = {v: [] for v in nodes}
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
    heap = [v for v in nodes if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in out[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    return order if len(order) == len(nodes) else None


def _search_order(M: Motif) -> list[int]:
    return sorted(range(M.m), key=lambda v: (-M.degree(v), v))


def oo_recolorable(M: Motif) -> Verdict:
    """Decide once-only recolourability by a search over proper list colourings.

    A list colouring gamma is realisable iff its conflict digraph is acyclic;
    the witness order is the smallest-label topological order.
    """
    order = _search_order(M)
    pos = {v: i for i, v in enumerate(order)}
    gamma = [0] * M.m
    domains = [sorted(M.lists[v]) for v in range(M.m)]
    # successors in the conflict digraph restricted to assigned vertices
    reach = [0] * M.m

    def reaches(src_mask: int, target: int) -> bool:
        seen, stack = 0, [u for u in range(M.m) if src_mask >> u & 1]
        while stack:
            u = stack.pop()
            if u == target:
                return True
            if seen >> u & 1:
                continue
            seen |= 1 << u
            stack.extend(w for w in range(M.m) if reach[u] >> w & 1)
        return False

    def assign(i: int, blocked: list[set[int]]) -> bool:
        if i == M.m:
            return True
        v = order[i]
        for c in domains[v]:
            if c in blocked[v]:
                continue
            moved_v = c != M.alpha[v]
            into, out_of = 0, 0
            for u in M.neighbors(v):
                if pos[u] < i and moved_v and gamma[u] != M.alpha[u]:
                    if c == M.alpha[u]:
                        into |= 1 << u
                    if gamma[u] == M.alpha[v]:
                        out_of |= 1 << u
            # adding u -> v for u in into and v -> w for w in out_of closes a
            # cycle iff some w reaches some u (or w == u)
            if into and out_of and any(into >> u & 1 and (out_of >> u & 1 or reaches(out_of, u))
                                       for u in range(M.m)):
                continue
            later = [u for u in M.neighbors(v) if pos[u] > i and c not in blocked[u]]
            for u in later:
                blocked[u].add(c)
            if all(any(x not in blocked[u] for x in domains[u]) for u in later):
                gamma[v] = c
                saved = reach[:]
                reach[v] = out_of
                for u in range(M.m):
                    if into >> u & 1:
                        reach[u] |= 1 << v
                if assign(i + 1, blocked):
                    return True
                reach[:] = saved
            for u in later:
                blocked[u].discard(c)
        return False

    if not assign(0, [set() for _ in range(M.m)]):
        return NO
    g = tuple(gamma)
    moved = [v for v in range(M.m) if g[v] != M.alpha[v]]
    seq = topological_order(M.m, moved, conflict_digraph(M, g))
    assert seq is not None
    return Verdict(True, g, tuple(seq))


def brute_force_oo(M: Motif) -> bool:
    """Literal check over every list colouring and every recolouring order."""
    for gamma in product(*(sorted(x) for x in M.lists)):
        moved = [v for v in range(M.m) if gamma[v] != M.alpha[v]]
        for perm in permutations(moved):
            if _replays(M, gamma, perm):
                return True
    return False


def _replays(M: Motif, gamma, order) -> bool:
    cur = list(M.alpha)
    for v in order:
        c = gamma[v]
        if any(cur[u] == c for u in M.neighbors(v)):
            return False
        cur[v] = c
    return all(cur[u] != cur[v] for u, v in M.edges) and all(
        cur[v] in M.lists[v] for v in range(M.m))


def check_witness(M: Motif, verdict: Verdict) -> bool:
    """Replay a yes-verdict through the step checker and list constraints."""
    from .recolor import StepError, replay

    if not verdict.yes:
        return False
    if len(set(verdict.order)) != len(verdict.order):
        return False
    try:
        final = replay(M, M.alpha, verdict.steps(), 10)
    except StepError:
        return False
    return all(final[v] in M.lists[v] for v in range(M.m)) and tuple(final) == verdict.gamma


# -- reductions and their constructive lifts ---------------------------------

def reduce_delete(M: Motif, v: int, mode: str = "plain") -> Motif:
    if mode == "plain":
        need = M.degree(v) + M.degree_prime(v)
        if len(M.lists[v]) <= need:
            raise MotifError(f"plain deletion needs |L(v)| > {need}")
    elif mode == "colored10":
        if M.alpha[v] != 10:
            raise MotifError("colored10 deletion needs alpha(v) = 10")
        if len(M.lists[v]) <= M.degree(v):
            raise MotifError(f"colored10 deletion needs |L(v)| > {M.degree(v)}")
    else:
        raise MotifError(f"unknown mode {mode!r}")
    return M.without(v)


def reduce_forward(M: Motif, v: int, c: int) -> Motif:
    if c not in M.lists[v]:
        raise MotifError(f"color {c} not in the list of vertex {v}")
    if any(M.alpha[u] == c for u in M.neighbors(v)):
        raise MotifError(f"color {c} is the current color of a neighbor of {v}")
    return M.without(v, lambda u, lst: lst - {c})


def reduce_reserve(M: Motif, v: int, c: int | None = None) -> Motif:
    if c is None:
        if len(M.lists[v]) != 1:
            raise MotifError("the color may be omitted only for a singleton list")
        (c,) = M.lists[v]
    if c not in M.lists[v]:
        raise MotifError(f"color {c} not in the list of vertex {v}")
    a = M.alpha[v]
    return M.without(v, lambda u, lst: lst - {a, c})


def xycons_color(M: Motif, v: int) -> int | None:
    """Colour for the forward reduction that costs each neighbour at most one list entry."""
    singles = [u for u in M.neighbors(v) if len(M.lists[u]) <= 1]
    if len(M.lists[v]) <= M.degree_prime(v) + sum(1 for u in singles if len(M.lists[u]) == 1):
        return None
    bad = {M.alpha[u] for u in M.neighbors(v)}
    for u in singles:
        bad |= M.lists[u]
    free = sorted(M.lists[v] - bad)
    return free[0] if free else None


def _expand(sub: Verdict, v: int) -> tuple[list[int], list[int]]:
    """Re-index a witness of M - v into the vertex ids of M."""
    gamma = list(sub.gamma[:v]) + [0] + list(sub.gamma[v:])
    order = [u + (u >= v) for u in sub.order]
    return gamma, order


def lift_delete(M: Motif, v: int, mode: str, sub: Verdict) -> Verdict:
    if not sub.yes:
        return NO
    gamma, order = _expand(sub, v)
    nb = M.neighbors(v)
    if mode == "plain":
        bad = {M.alpha[u] for u in nb} | {gamma[u] for u in nb}
        c = min(M.lists[v] - bad)
        gamma[v] = c
        order = ([v] if c != M.alpha[v] else []) + order
    else:
        c = min(M.lists[v] - {gamma[u] for u in nb})
        gamma[v] = c
        order = order + [v]
    return Verdict(True, tuple(gamma), tuple(order))


def lift_forward(M: Motif, v: int, c: int, sub: Verdict) -> Verdict:
    if not sub.yes:
        return NO
    gamma, order = _expand(sub, v)
    gamma[v] = c
    order = ([v] if c != M.alpha[v] else []) + order
    return Verdict(True, tuple(gamma), tuple(order))


def lift_reserve(M: Motif, v: int, c: int, sub: Verdict) -> Verdict:
    if not sub.yes:
        return NO
    gamma, order = _expand(sub, v)
    gamma[v] = c
    order = order + ([v] if c != M.alpha[v] else [])
    return Verdict(True, tuple(gamma), tuple(order))


# -- description vectors -----------------------------------------------------

@dataclass(frozen=True)
class DescriptionVector:
    entries: tuple[int | None, ...]
    groups: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for e in self.entries:
            if e is not None and e < 0:
                raise MotifError("negative size in description vector")
        for a, b in self.groups:
            if not 0 <= a <= b < len(self.entries):
                raise MotifError("bracket group out of range")

    def __str__(self):
        parts = []
        starts = {a for a, _ in self.groups}
        ends = {b for _, b in self.groups}
        for i, e in enumerate(self.entries):
            s = "•" if e is None else str(e)
            if i in starts:
                s = "[" + s
            if i in ends:
                s = s + "]"
            parts.append(s)
        return "(" + ",".join(parts) + ")"


_TOKEN = re.compile(r"\s*(\[|\]|,|\d+|•|\*)")


def parse_vector(text: str) -> DescriptionVector:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise MotifError(f"description vector must be parenthesised: {text!r}")
    body = body[1:-1]
    entries: list[int | None] = []
    groups = []
    open_at = None
    pos = 0
    while pos < len(body):
        match = _TOKEN.match(body, pos)
        if not match:
            raise MotifError(f"bad description vector {text!r}")
        tok = match.group(1)
        pos = match.end()
        if tok == "[":
            if open_at is not None:
                raise MotifError("nested brackets")
            open_at = len(entries)
        elif tok == "]":
            if open_at is None or open_at == len(entries):
                raise MotifError("unbalanced brackets")
            groups.append((open_at, len(entries) - 1))
            open_at = None
        elif tok == ",":
            continue
        elif tok in ("•", "*"):
            entries.append(None)
        else:
            entries.append(int(tok))
    if open_at is not None:
        raise MotifError("unclosed bracket")
    return DescriptionVector(tuple(entries), tuple(groups))


def describes(M: Motif, d: DescriptionVector) -> bool:
    if len(d.entries) != M.m:
        raise MotifError(f"vector has {len(d.entries)} entries, motif has {M.m} vertices")
    for v, s in enumerate(d.entries):
        if s is not None and s > len(M.lists[v]):
            return False
    return all(any(M.alpha[v] == 10 for v in range(a, b + 1)) for a, b in d.groups)


def truncate_to(M: Motif, d: DescriptionVector) -> Iterator[Motif]:
    if not describes(M, d):
        raise MotifError("vector does not describe the motif")
    choices = []
    for v, s in enumerate(d.entries):
        lst = sorted(M.lists[v])
        if s is None or s == len(lst):
            choices.append([frozenset(lst)])
        else:
            choices.append([frozenset(c) for c in combinations(lst, s)])
    for lists in product(*choices):
        yield M.with_lists(lists)


# -- motif file --------------------------------------------------------------

def parse_motif(text: str) -> Motif:
    """Motif file with 1-based vertex labels."""
    m = None
    edges: list[tuple[int, int]] = []
    alpha = None
    lists: dict[int, frozenset[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith("vertices"):
                m = int(line.split()[1])
            elif line.startswith("edges:"):
                for tok in line[len("edges:"):].split():
                    a, b = tok.split("-")
                    edges.append((int(a) - 1, int(b) - 1))
            elif line.startswith("alpha:"):
                alpha = tuple(int(x) for x in line[len("alpha:"):].split())
            elif line.startswith("L "):
                head, body = line[2:].split(":", 1)
                lists[int(head) - 1] = frozenset(int(x) for x in body.split())
            else:
                raise ValueError("unknown directive")
        except (ValueError, IndexError) as exc:
            raise MotifError(f"line {lineno}: {exc}") from None
    if m is None or alpha is None:
        raise MotifError("motif file needs 'vertices' and 'alpha' lines")
    return Motif(m, tuple(edges), alpha, tuple(lists.get(v, frozenset()) for v in range(m)))


def format_motif(M: Motif) -> str:
    lines = [f"vertices {M.m}",
             "edges: " + " ".join(f"{u + 1}-{v + 1}" for u, v in M.edges),
             "alpha: " + " ".join(map(str, M.alpha))]
    for v in range(M.m):
        lines.append(f"L {v + 1}: " + " ".join(map(str, sorted(M.lists[v]))))
    return "\n".join(lines) + "\n"
