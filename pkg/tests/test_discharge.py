import re

import pytest
from hypothesis import given, strategies as st

from recolor10.catalog import load_catalog
from recolor10.discharge import (AppearanceError, DischargeError, apply_rules, classify,
                                 face_outflow, final_charges, find_appearance,
                                 find_induced_configuration, initial_charges)
from recolor10.embed import GraphError, _from_faces, _named_faces, generate, named

CATALOG = {t.id: t for t in load_catalog()}


def glued_icosahedra():
    """Two icosahedra glued along a face: that face becomes a separating triangle."""
    n, faces = _named_faces("icosahedron")
    glue = (11, 7, 6)
    assert glue in faces
    outer_a = [f for f in faces if f != glue]
    for image in ((11, 7, 6), (11, 6, 7)):
        ren = {0: image[0], 1: image[1], 2: image[2]}
        ren.update({v: v + 9 for v in range(3, 12)})
        inner = [tuple(ren[x] for x in f) for f in faces if f != (0, 1, 2)]
        try:
            return _from_faces(21, outer_a + inner, outer=(0, 1, 2)), set(range(12, 21)), glue
        except GraphError:
            continue
    raise AssertionError("gluing failed")


def test_initial_charges():
    ico = named("icosahedron")
    assert set(initial_charges(ico)) == {-10}
    g = generate("random", n=30, seed=1)
    ch = initial_charges(g)
    assert sum(ch) == 20 * g.m - 60 * g.n == -120
    for v in range(g.n):
        if g.degree(v) == 7:
            assert ch[v] == 10


def test_classes_on_icosahedron():
    cls = classify(named("icosahedron"))
    assert cls.count("big") == 3 and cls.count("small") == 9


def r3_oracle(g):
    """R3 rows found by pattern matching class strings around medium vertices."""
    cls = classify(g)
    rows = set()
    for x in range(g.n):
        if cls[x] != "medium":
            continue
        rot = list(g.neighbors(x))
        d = len(rot)
        for seq in (rot, rot[::-1]):
            word = "".join({"big": "b", "medium": "m", "small": "s", "low": "l"}[cls[u]] for u in seq)
            for i in range(d):
                rolled = (word[i:] + word[:i])
                match = re.match(r"sm{1,4}b", rolled)
                if match and len(match.group()) <= d:
                    k = len(match.group())
                    vs = [seq[(i + j) % d] for j in range(k)]
                    rows.add((vs[-1], vs[0], tuple(sorted((x, vs[-2], vs[-1]))),
                              tuple(sorted((x, vs[0], vs[1]))), (min(vs[0], vs[1]), max(vs[0], vs[1]))))
    return rows


def rules_oracle(g):
    """Per-pair R1 and R2 totals straight from the rule statements."""
    cls = classify(g)
    r1, r2 = {}, {}
    for v in range(g.n):
        for u in g.neighbors(v):
            if cls[v] == "big" and cls[u] == "small":
                r1[(v, u)] = 2
    for f in g.faces():
        for v in f:
            for u in f:
                x = ({*f} - {v, u}).pop() if u != v else None
                if x is not None and cls[v] == "big" and cls[u] == "small" and cls[x] in ("medium", "small"):
                    r2[(v, u)] = r2.get((v, u), 0) + 1
    return r1, r2


@given(st.integers(0, 5000), st.sampled_from(["random", "random_mindeg5"]), st.integers(12, 80))
def test_ledger_matches_rule_oracles(seed, kind, n):
    g = generate(kind, n=n, seed=seed)
    ledger = apply_rules(g)
    r1, r2 = rules_oracle(g)
    got1, got2 = {}, {}
    for t in ledger.transfers:
        assert t.amount == 1
        if t.rule == "R1":
            got1[(t.source, t.sink)] = got1.get((t.source, t.sink), 0) + 1
            assert t.leave_faces == (t.pass_face,) and g.is_triangular_face(*t.pass_face)
            assert set(t.arrive_edge) == {t.source, t.sink}
        if t.rule == "R2":
            got2[(t.source, t.sink)] = got2.get((t.source, t.sink), 0) + 1
            assert g.is_triangular_face(*t.pass_face) and t.sink in t.arrive_edge
            assert t.source not in t.arrive_edge
    assert got1 == r1 and got2 == r2
    r3 = {(t.source, t.sink, t.leave_faces[0], t.pass_face, t.arrive_edge)
          for t in ledger.transfers if t.rule == "R3"}
    assert r3 == r3_oracle(g)
    fc = final_charges(g, ledger)
    assert fc.total_initial == fc.total_final == -120 and fc.conserved
    cls = classify(g)
    for v in range(g.n):
        if cls[v] == "medium":
            assert fc.final[v] == 0


def test_r3_example_present():
    # find a medium vertex whose neighbours read small, medium, big in rotation order
    for seed in range(200):
        g = generate("random_mindeg5", n=40, seed=seed)
        cls = classify(g)
        for x in range(g.n):
            if cls[x] != "medium":
                continue
            rot = g.neighbors(x)
            for i in range(6):
                v1, v2, v3 = rot[i], rot[(i + 1) % 6], rot[(i + 2) % 6]
                if (cls[v1], cls[v2], cls[v3]) == ("small", "medium", "big"):
                    rows = [t for t in apply_rules(g).transfers if t.rule == "R3" and t.source == v3
                            and t.sink == v1 and t.pass_face == tuple(sorted((x, v1, v2)))
                            and t.arrive_edge == (min(v1, v2), max(v1, v2))]
                    assert len(rows) == 1
                    assert rows[0].leave_faces == (tuple(sorted((x, v2, v3))),)
                    return
    pytest.skip("no instance of the pattern found")


@given(st.integers(0, 5000), st.integers(12, 80))
def test_face_outflow_bounds(seed, n):
    g = generate("random_mindeg5", n=n, seed=seed)
    cls = classify(g)
    ledger = apply_rules(g)
    for v in range(g.n):
        if cls[v] != "big" or v in g.outer_set:
            continue
        out = face_outflow(g, v, ledger)
        assert sum(out.values()) == sum(t.amount for t in ledger.transfers if t.source == v)
        for f, t in out.items():
            a, b = sorted(set(f) - {v}, key=lambda u: cls[u])
            pair = {cls[a], cls[b]}
            if pair == {"small"}:
                assert t == 4
            elif pair == {"small", "medium"}:
                assert t == 2
            elif pair == {"medium"}:
                assert t <= 2
            elif pair == {"small", "big"}:
                assert t == 1
            else:
                assert t == 0


def test_rule_errors():
    with pytest.raises(DischargeError):
        apply_rules(named("icosahedron").with_outer(None))
    with pytest.raises(DischargeError):
        find_appearance(named("octahedron"))


def test_icosahedron_appearance():
    ico = named("icosahedron")
    app = find_appearance(ico)
    assert app.template == "C1"
    ind = find_induced_configuration(ico)
    assert ind.template == "C1" and ind.disk is None
    assert all(ico.degree(v) == 5 for v in ind.injection)
    assert final_charges(ico).total_final == -120


def test_search_runs_in_innermost_disk():
    g, inside, glue = glued_icosahedra()
    ind = find_induced_configuration(g)
    assert set(ind.disk) == set(glue)
    assert set(ind.injection) <= inside | set(glue)
    t = CATALOG[ind.template]
    for i in range(t.m):
        assert g.degree(ind.injection[i]) <= t.mark_degree(i)
        for j in range(i):
            assert g.adjacent(ind.injection[i], ind.injection[j]) == t.adjacent(i, j)


@given(st.integers(0, 10_000), st.integers(12, 120))
def test_induced_configuration_always_found(seed, n):
    g = generate("random_mindeg5", n=n, seed=seed)
    ind = find_induced_configuration(g)
    t = CATALOG[ind.template]
    assert not set(ind.injection) & g.outer_set
    for i in range(t.m):
        assert g.degree(ind.injection[i]) <= t.mark_degree(i)
        for j in range(i):
            assert g.adjacent(ind.injection[i], ind.injection[j]) == t.adjacent(i, j)


def test_missing_template_is_loud():
    only_c15 = [CATALOG["C15"]]
    with pytest.raises(AppearanceError):
        find_induced_configuration(named("icosahedron"), only_c15)
