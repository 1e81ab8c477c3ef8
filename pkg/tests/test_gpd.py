import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ttk.gpd import (FiniteGroup, Functor, Groupoid, MalformedGroupoid, NotAbelian, NotComposable,
                     StrictlyAbelianGroupoid, UnknownId, aut_group, change_of_basepoint,
                     cyclic_group, disjoint_groups, find_isomorphism, group_as_sag,
                     groupoid_from_json, groupoid_violations, groupoid_violations_json,
                     identity_functor, is_group_isomorphism, product_group, skeleton,
                     skeleton_representatives, symmetric_group, trivial_group,
                     validate_strictly_abelian)
from ttk.report import clauses

import helpers

GROUPS = [trivial_group("e"), cyclic_group(2, "z"), cyclic_group(3, "t"), symmetric_group(3),
          product_group(cyclic_group(2, "u"), cyclic_group(2, "v"))]


def component_groupoid(spec):
    """Disjoint union of components; component i has the given number of
    objects and vertex group G, with arrows (s, t, g) composing as g's."""
    arrows, comp, inv, ident = {}, {}, {}, {}
    objs = []
    for i, (n, G) in enumerate(spec):
        os_ = [f"c{i}o{j}" for j in range(n)]
        objs += os_
        for s, t in itertools.product(os_, repeat=2):
            for g in G.elements:
                arrows[f"{s}>{t}:{g}"] = (s, t)
                inv[f"{s}>{t}:{g}"] = f"{t}>{s}:{G.inv(g)}"
        for s, t, u in itertools.product(os_, repeat=3):
            for g, h in itertools.product(G.elements, repeat=2):
                comp[(f"{t}>{u}:{h}", f"{s}>{t}:{g}")] = f"{s}>{u}:{G.mul(h, g)}"
        for x in os_:
            ident[x] = f"{x}>{x}:{G.identity}"
    return Groupoid(objs, arrows, ident, comp, inv)


specs = st.lists(st.tuples(st.integers(1, 3), st.sampled_from(GROUPS)), min_size=1, max_size=3)


@settings(max_examples=25, deadline=None)
@given(specs)
def test_associativity_on_all_composable_triples(spec):
    G = component_groupoid(spec)
    for f in G.morphisms:
        for g in G.hom(G.tgt(f), G.tgt(f)) + tuple(m for m in G.morphisms if G.src(m) == G.tgt(f)):
            for h in (m for m in G.morphisms if G.src(m) == G.tgt(g)):
                assert G.compose(G.compose(h, g), f) == G.compose(h, G.compose(g, f))


@settings(max_examples=25, deadline=None)
@given(specs)
def test_change_of_basepoint_is_functorial(spec):
    G = component_groupoid(spec)
    for f in G.morphisms:
        for g in (m for m in G.morphisms if G.src(m) == G.tgt(f)):
            # phi^f ∘ phi^g = phi^(g□f) on Aut(tgt g)
            pf, pg, pgf = (change_of_basepoint(G, f), change_of_basepoint(G, g),
                           change_of_basepoint(G, G.compose(g, f)))
            for a in G.aut(G.tgt(g)):
                assert pf[pg[a]] == pgf[a]


@settings(max_examples=25, deadline=None)
@given(specs)
def test_skeleton_has_one_object_per_component(spec):
    G = component_groupoid(spec)
    sk, inc = skeleton(G)
    assert len(sk.objects) == len(G.components()) == len(spec)
    assert sorted(G.component_of(x) for x in sk.objects) == sorted(c[0] for c in G.components())
    assert inc.violations() == []
    assert inc.is_equivalence()
    assert sk.is_skeletal()


def test_groupoid_tables_and_accessors():
    G = helpers.gf1_doc()
    H = groupoid_from_json(G)
    assert H.objects == ("x", "y")
    assert H.compose("f-", "f") == "id_x"
    assert H.compose_path("f", "f-", "f") == "f"
    assert H.inverse("f") == "f-"
    assert H.hom("x", "y") == ("f",)
    assert H.is_connected() and not H.is_skeletal()
    assert H.connecting("x", "y") == "f"
    with pytest.raises(NotComposable):
        H.compose("f", "f")
    with pytest.raises(UnknownId):
        H.src("nope")


def test_json_round_trip_preserves_tables():
    S = helpers.two_object_z3()
    doc = S.to_json()
    T = groupoid_from_json(doc)
    assert isinstance(T, StrictlyAbelianGroupoid)
    assert T.tables() == S.tables()
    assert T.psi_table("y") == S.psi_table("y")
    assert validate_strictly_abelian(T) == []


def test_malformed_tables_raise_with_the_clause():
    doc = helpers.z3_doc()
    doc["inverse"] = [[f, f] for f, _ in doc["inverse"]]
    with pytest.raises(MalformedGroupoid) as e:
        groupoid_from_json(doc)
    assert "gpd.inverse" in clauses(e.value.report)


def test_violations_direct_api_reports_all_clauses_of_a_broken_table():
    objs = ["x"]
    arrows = {"i": ("x", "x"), "a": ("x", "x")}
    ident = {"x": "i"}
    comp = {("i", "i"): "i", ("i", "a"): "a", ("a", "i"): "a", ("a", "a"): "a"}
    inv = {"i": "i", "a": "a"}
    rep = groupoid_violations(objs, arrows, ident, comp, inv)
    assert "gpd.inverse" in clauses(rep)


@pytest.mark.parametrize("clause,valid,mutated,report",
                         [m for m in helpers.gpd_mutations()], ids=lambda v: v if isinstance(v, str) else "")
def test_single_mutations_are_caught(clause, valid, mutated, report):
    assert report(valid) == set()
    assert clause in report(mutated)


def test_non_abelian_vertex_group_is_rejected():
    assert "sag.abelian" in clauses(groupoid_violations_json(helpers.sag_abelian_case()))
    with pytest.raises(NotAbelian):
        group_as_sag(symmetric_group(3))


def test_every_validated_sag_has_abelian_aut0():
    for G in (group_as_sag(cyclic_group(4, "r")), helpers.two_object_z3(),
              disjoint_groups({"p": cyclic_group(2, "k"), "q": cyclic_group(2, "k")}, "p")):
        assert validate_strictly_abelian(G) == []
        A0 = aut_group(G, G.basepoint)
        assert A0.is_abelian()


def test_finite_groups():
    S3 = symmetric_group(3)
    assert S3.order == 6 and not S3.is_abelian()
    Z6 = cyclic_group(6, "s")
    assert find_isomorphism(S3, Z6) is None
    V = product_group(cyclic_group(2, "a"), cyclic_group(2, "b"))
    assert find_isomorphism(V, cyclic_group(4, "c")) is None
    phi = find_isomorphism(product_group(cyclic_group(2, "a"), cyclic_group(3, "b")), Z6)
    assert phi is not None
    assert is_group_isomorphism(phi, product_group(cyclic_group(2, "a"), cyclic_group(3, "b")), Z6)
    assert FiniteGroup.from_json(S3.to_json()).elements == S3.elements
    with pytest.raises(Exception):
        FiniteGroup(["e", "a"], {("e", "e"): "e", ("e", "a"): "a", ("a", "e"): "a", ("a", "a"): "a"}, "e")


def test_skeleton_keeps_the_basepoint():
    S = helpers.two_object_z3()
    assert skeleton_representatives(S) == ["x"]
    pointed = groupoid_from_json({**S.to_json(), "basepoint": "y", "psi": None})
    assert skeleton_representatives(pointed) == ["y"]


def test_functors():
    G = groupoid_from_json(helpers.gf1_doc())
    I = identity_functor(G)
    assert I.violations() == [] and I.is_equivalence()
    bad = Functor(G, G, {"x": "x", "y": "y"}, {"id_x": "id_x", "id_y": "id_y", "f": "f", "f-": "f"})
    assert bad.violations() != []
    assert I.then(I).mor("f") == "f"
