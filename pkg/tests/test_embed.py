import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from recolor10.embed import (GraphError, GraphFormatError, add_edge_at, antipodal_pairs,
                             contract_edge, euler_characteristic, flip_edge, format_plane_graph,
                             generate, induced_subgraph, make_graph, named, parse_plane_graph,
                             separating_triangles, spread_fives, surgery_add_edge, surgery_identify, triangles,
                             validate, validate_triangulation, wheel_of)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def cycle(n):
    return make_graph([[(i - 1) % n, (i + 1) % n] for i in range(n)])


def subdivided_icosahedron():
    """Icosahedron with a new vertex inside one inner face, joined to its corners."""
    g = named("icosahedron")
    a, b, c = next(f for f in g.faces() if g.outer is None or set(f) != set(g.outer))
    rot = [list(r) for r in g.rotation]
    v = g.n
    for x, y in ((a, b), (b, c), (c, a)):
        rot[y].insert(rot[y].index(x), v)
    for center in ([a, b, c], [a, c, b]):
        try:
            return make_graph(rot + [center], g.outer), (a, b, c)
        except GraphError:
            continue
    raise AssertionError("no consistent rotation for the new vertex")


@pytest.mark.parametrize("name,n,m,f", [("k4", 4, 6, 4), ("octahedron", 6, 12, 8), ("icosahedron", 12, 30, 20)])
def test_named_counts(name, n, m, f):
    g = named(name)
    assert (g.n, g.m, len(g.faces())) == (n, m, f)
    assert all(len(face) == 3 for face in g.faces())
    assert euler_characteristic(g) == 2


def test_parse_roundtrip_and_errors():
    g = named("octahedron")
    text = format_plane_graph(g)
    assert parse_plane_graph(text) == g
    assert format_plane_graph(parse_plane_graph(text)) == text
    with pytest.raises(GraphError, match="repeated"):
        parse_plane_graph("2\n0: 1 1\n1: 0\n")
    with pytest.raises(GraphFormatError) as info:
        parse_plane_graph("2\n0: 1 x\n1: 0\n")
    assert info.value.line == 2
    with pytest.raises(GraphError, match="asymmetric"):
        parse_plane_graph("3\n0: 1\n1: 2\n2: 1\n")
    k4 = format_plane_graph(named("k4")).split("outer")[0]
    with pytest.raises(GraphError, match="not a face|out of range"):
        parse_plane_graph(k4 + "outer: 0 1 9\n")


def test_non_planar_rotation_rejected():
    # K4 with one rotation reversed traces a torus-like embedding
    with pytest.raises(GraphError, match="Euler"):
        make_graph([[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]])


def test_triangulation_report():
    assert validate_triangulation(named("icosahedron")).min_degree == 5
    rep = validate_triangulation(named("octahedron"))
    assert rep.is_triangulation and rep.min_degree == 4
    assert not validate_triangulation(cycle(4)).is_triangulation


@pytest.mark.parametrize("name,k", [("icosahedron", 5), ("octahedron", 4), ("k4", 3)])
def test_wheels(name, k):
    g = named(name)
    for v in range(g.n):
        w = wheel_of(g, v)
        assert w.k == k and set(w.rim) == set(g.neighbors(v))
        assert all(g.adjacent(w.rim[i], w.rim[(i + 1) % k]) for i in range(k))
    if name == "k4":
        assert set(wheel_of(g, 0).rim) == {1, 2, 3}


def separating_oracle(g):
    h = to_nx(g)
    out = set()
    for t in itertools.combinations(range(g.n), 3):
        if all(g.adjacent(a, b) for a, b in itertools.combinations(t, 2)):
            rest = h.copy()
            rest.remove_nodes_from(t)
            if rest.number_of_nodes() and not nx.is_connected(rest):
                out.add(frozenset(t))
    return out


def test_separating_triangles():
    for name in ("icosahedron", "octahedron", "k4"):
        assert separating_triangles(named(name).with_outer(named(name).faces()[0])) == []
    g, tri = subdivided_icosahedron()
    if g.outer is None:
        g = g.with_outer(next(f for f in g.faces() if g.n - 1 not in f))
    seps = separating_triangles(g)
    assert {frozenset(t) for t, _ in seps} == separating_oracle(g)
    assert set(seps[0][0]) == set(tri) and seps[0][1] == frozenset({g.n - 1})


@given(st.integers(0, 10_000), st.integers(6, 40))
def test_separating_triangles_match_oracle(seed, n):
    g = generate("random", n=n, seed=seed)
    seps = separating_triangles(g)
    assert {frozenset(t) for t, _ in seps} == separating_oracle(g)
    sizes = [len(inside) for _, inside in seps]
    assert sizes == sorted(sizes)
    for t, inside in seps:
        assert not (inside & set(g.outer))


def test_surgery_add_edge_on_cycles():
    g = cycle(4)
    face = g.faces()[0]
    h = surgery_add_edge(g, face, 0, 2)
    assert h.m == 5 and sorted(len(f) for f in h.faces()) == [3, 3, 4]
    g5 = cycle(5)
    face = g5.faces()[0]
    h5 = surgery_add_edge(g5, face, face[0], face[2])
    assert sorted(len(f) for f in h5.faces()) == [3, 4, 5]
    tri = named("k4")
    with pytest.raises(GraphError):
        surgery_add_edge(tri, tri.faces()[0], tri.faces()[0][0], tri.faces()[0][1])


def test_surgery_identify_cycles():
    g = cycle(4)
    h, vmap = surgery_identify(g, g.faces()[0], 0, 2)
    assert h.n == 3 and h.m == 2 and vmap[0] == vmap[2]
    merged = vmap[0]
    assert h.degree(merged) == 2
    g6 = cycle(6)
    h6, vmap6 = surgery_identify(g6, g6.faces()[0], 0, 3)
    assert h6.n == 5 and h6.m == 6
    assert nx.check_planarity(to_nx(h6))[0]
    assert sorted(len(f) for f in h6.faces()) == [3, 3, 6]
    g5 = cycle(5)
    face = g5.faces()[0]
    h5, _ = surgery_identify(g5, face, face[0], face[2])
    # the digon from the collapsed parallel edge disappears: a triangle and a
    # 5-walk around the pendant vertex remain
    assert sorted(len(f) for f in h5.faces()) == [3, 5]


@given(st.integers(0, 10_000), st.integers(5, 30), st.data())
def test_surgery_properties(seed, n, data):
    g = generate("random", n=n, seed=seed)
    rng = random.Random(seed)
    # delete a random vertex: its link becomes a face with non-adjacent pairs
    v = rng.randrange(g.n)
    h, _ = induced_subgraph(g, [x for x in range(g.n) if x != v])
    faces = [f for f in h.faces() if len(f) > 3]
    if not faces:
        return
    f = data.draw(st.sampled_from(faces))
    pairs = [(a, b) for a, b in itertools.combinations(sorted(set(f)), 2) if not h.adjacent(a, b)]
    if not pairs:
        return
    a, b = data.draw(st.sampled_from(pairs))
    added = surgery_add_edge(h, f, a, b)
    assert len(added.faces()) == len(h.faces()) + 1 and added.m == h.m + 1
    merged, vmap = surgery_identify(h, f, a, b)
    validate(merged)
    assert merged.n == h.n - 1 and vmap[a] == vmap[b]
    assert nx.check_planarity(to_nx(merged))[0]
    expect = nx.contracted_nodes(to_nx(h), a, b, self_loops=False)
    assert nx.is_isomorphic(expect, to_nx(merged))


def test_join_components_and_contract():
    g = make_graph([[1], [0], [3], [2]])
    assert len(g.components()) == 2
    h = add_edge_at(g, 0, None, 2, None)
    validate(h)
    assert len(h.components()) == 1
    c, vmap = contract_edge(h, 0, 2)
    validate(c)
    assert c.n == 3 and vmap[0] == vmap[2]


@pytest.mark.parametrize("kind,n,seed", [("random", 50, 7), ("random_mindeg5", 30, 1), ("random", 4, 0)])
def test_generate(kind, n, seed):
    g = generate(kind, n=n, seed=seed)
    assert g.n == n and validate_triangulation(g).is_triangulation
    assert g == generate(kind, n=n, seed=seed)
    if kind == "random_mindeg5":
        assert all(g.degree(v) >= 5 for v in range(g.n) if v not in g.outer_set)


def test_generate_errors():
    with pytest.raises(GraphError):
        generate("random_mindeg5", n=11)
    with pytest.raises(GraphError):
        generate("random", n=3)


@given(st.integers(0, 10_000), st.integers(4, 60))
def test_random_generation_invariants(seed, n):
    g = generate("random", n=n, seed=seed)
    assert sum(len(f) for f in g.faces()) == 2 * g.m
    assert g.n - g.m + len(g.faces()) == 2
    assert validate_triangulation(g).is_triangulation
    assert nx.check_planarity(to_nx(g))[0]
    darts = [(f[i], f[(i + 1) % len(f)]) for f in g.faces() for i in range(len(f))]
    assert len(darts) == len(set(darts)) == 2 * g.m


def test_flip_and_antipodes():
    g = named("icosahedron")
    a, b = g.edges()[0]
    h = flip_edge(g, a, b)
    assert not h.adjacent(a, b) and h.m == g.m
    pairs = antipodal_pairs(g)
    assert len(pairs) == 6 and len({x for p in pairs for x in p}) == 12
    assert len(triangles(g)) == 20


@given(st.integers(0, 10_000), st.integers(12, 80))
def test_spread_fives_invariants(seed, n):
    g = generate("random_mindeg5", n=n, seed=seed)
    h = spread_fives(g, seed=seed)
    validate(h)
    assert h.n == g.n and h.m == g.m and validate_triangulation(h).is_triangulation
    assert tuple(h.outer) == tuple(g.outer)
    assert all(h.degree(v) >= 5 for v in range(h.n) if v not in h.outer_set)
    fives = lambda x: sum(1 for v in range(x.n) for u in x.neighbors(v)
                          if u > v and {v, u}.isdisjoint(x.outer_set) and x.degree(v) == x.degree(u) == 5)
    assert fives(h) <= fives(g)
