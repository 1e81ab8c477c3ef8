import copy

import pytest

from ttk.gpd import cyclic_group, product_group, symmetric_group, validate_strictly_abelian
from ttk.models2types import (DoubleGroupoid, InvalidDouble, abelian_double,
                              double_from_crossed_module, dg1, forget_double, homotopy_relation,
                              trivial_double, validate_double)
from ttk.report import clauses
from ttk.ttg import homotopy_groups, validate_ttg

D = dg1()
E0 = D.eps[D.basepoint]
UB = sorted(u for u, (l, b, r, t) in D.squares.items() if r == E0 and t == E0)


def box(v, u):
    # v □ u = (Γ+(b) +2 u) +1 v for u: a => b
    b = D.bottom(u)
    return D.comp1[(D.comp2[(D.gamma_plus[b], u)], v)]


def test_fixture_doubles_validate():
    for X in (D, abelian_double(cyclic_group(3, "m")), trivial_double()):
        assert validate_double(X) == []


def test_appendix_composite_is_associative_on_all_triples():
    n = 0
    for u in UB:
        for v in (v for v in UB if D.left(v) == D.bottom(u)):
            for w in (w for w in UB if D.left(w) == D.bottom(v)):
                assert box(w, box(v, u)) == box(box(w, v), u)
                n += 1
    assert n > 0


def test_units_and_inverses():
    for u in UB:
        a, b = D.left(u), D.bottom(u)
        assert box(u, D.gamma_minus[a]) == u
        assert box(D.gamma_minus[b], u) == u
        inv = D.comp1[(D.comp2[(D.neg1[D.gamma_plus[b]], D.neg1[u])], D.gamma_minus[a])]
        assert box(inv, u) == D.gamma_minus[a]


def test_forget_double_gives_a_two_track_groupoid():
    for X, orders in ((D, (2, 2)), (abelian_double(cyclic_group(3, "m")), (1, 3)),
                      (trivial_double(), (1, 1))):
        G = forget_double(X)
        assert validate_ttg(G) == []
        assert validate_strictly_abelian(G.g2) == []
        hg = homotopy_groups(G)
        assert (hg.pi1.order, hg.pi2.order) == orders


def test_homotopy_relation_on_dg1():
    H = homotopy_relation(D)
    # edges p0..p3 modulo the image of mu = {p0, p2}
    assert len(H.classes) == 2
    assert H.rep("p2") == H.rep("p0") and H.rep("p1") == H.rep("p3")


def test_json_round_trip():
    again = DoubleGroupoid.from_json(D.to_json())
    assert again.to_json() == D.to_json()
    assert validate_double(again) == []


def test_mutated_doubles_are_reported():
    doc = D.to_json()
    bad = copy.deepcopy(doc)
    u, v, w = bad["comp1"][0]
    bad["comp1"][0] = [u, v, next(x for x, *_ in bad["squares"] if x != w)]
    rep = validate_double(DoubleGroupoid.from_json(bad))
    assert rep and all(c.startswith("double.") for c in clauses(rep))
    with pytest.raises(InvalidDouble):
        forget_double(DoubleGroupoid.from_json(bad))
    bad2 = copy.deepcopy(doc)
    bad2["basepoint"] = "nowhere"
    assert "double.ids" in clauses(validate_double(DoubleGroupoid.from_json(bad2)))


def test_crossed_module_builder_needs_abelian_groups():
    S3 = symmetric_group(3)
    with pytest.raises(ValueError):
        double_from_crossed_module(S3, cyclic_group(2, "m"), lambda p, m: m, lambda m: S3.identity)
    V = product_group(cyclic_group(2, "a"), cyclic_group(2, "b"))
    X = double_from_crossed_module(cyclic_group(2, "p"), V, lambda p, m: m, lambda m: "p0")
    G = forget_double(X)
    hg = homotopy_groups(G)
    assert (hg.pi1.order, hg.pi2.order) == (2, 4)
