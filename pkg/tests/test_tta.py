import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import helpers
from ttk.fixtures.catalog import ad1, s1, t1, t1_core, t1_named
from ttk.report import clauses
from ttk.tta import (DEGREE, CompositesNotNull, DegreeOverflow, EnumerationCapExceeded,
                     NotComposable, NotDefined, TwoTrackAlgebra, check_axioms, cls,
                     homotopy_category, identity_tta_morphism, is_weak_equivalence, relabel_tta,
                     toda3, toda4)

CORE = t1_core().algebra
GRADED = [x for k in ("obj0", "obj1", "mor2") for x in CORE.all_elements(k)]


def _deg(A, x):
    return DEGREE[A.kind(x)]


def _composable_after(A, y, budget):
    S = A.element(y).source
    return [z for z in GRADED if A.element(z).target == S and _deg(A, z) <= budget]


def test_fixture_algebras_satisfy_every_axiom():
    for A in (t1().algebra, CORE, s1().algebra, ad1().algebra):
        assert check_axioms(A) == []


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_tensor_degree_is_additive(data):
    x = data.draw(st.sampled_from(GRADED))
    ys = _composable_after(CORE, x, 2 - _deg(CORE, x))
    if not ys:
        return
    y = data.draw(st.sampled_from(ys))
    assert _deg(CORE, CORE.tensor(x, y)) == _deg(CORE, x) + _deg(CORE, y)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_tensor_is_associative(data):
    A = CORE
    x = data.draw(st.sampled_from(GRADED))
    ys = _composable_after(A, x, 2 - _deg(A, x))
    if not ys:
        return
    y = data.draw(st.sampled_from(ys))
    zs = _composable_after(A, y, 2 - _deg(A, x) - _deg(A, y))
    if not zs:
        return
    z = data.draw(st.sampled_from(zs))
    assert A.tensor(A.tensor(x, y), z) == A.tensor(x, A.tensor(y, z))


def test_tensor_errors():
    A = t1().algebra
    n = t1_named()
    with pytest.raises(NotComposable):
        A.tensor(n["x1"], n["x3"])
    x = n["a"]
    y = next(u for u in A.all_elements("mor2") if A.element(u).target == A.element(x).source)
    with pytest.raises(DegreeOverflow):
        A.tensor(x, y)


@pytest.mark.parametrize("clause,valid,mutated,report", helpers.tta_mutations(),
                         ids=lambda v: v if isinstance(v, str) else "")
def test_single_tensor_mutations_are_caught(clause, valid, mutated, report):
    assert report(valid) == set()
    assert clause in report(mutated)


def test_json_round_trip():
    doc = CORE.to_json()
    B = TwoTrackAlgebra.from_json(doc)
    assert B.to_json() == doc
    assert check_axioms(B) == []


def test_homotopy_category_and_weak_equivalences():
    A = t1().algebra
    hc = homotopy_category(A)
    n = t1_named()
    assert hc.compose[(cls(A, n["x1"]), cls(A, n["x2"]))] == hc.zero[("Y2", "Y0")]
    assert is_weak_equivalence(identity_tta_morphism(A))
    B, F = relabel_tta(A, lambda x: "n" + x, lambda X: "Z" + X)
    assert F.violations() == [] and is_weak_equivalence(F)
    assert check_axioms(B) == []


def test_toda3_nonzero_bracket():
    A = t1().algebra
    n = t1_named()
    vals = toda3(A, n["x1"], n["x2"], n["w"])
    assert any(not A.is_zero(v) for v in vals)
    plain = toda3(A, n["x1"], n["x2"], n["x3"])
    assert plain


def test_toda3_monotone_under_fewer_representatives():
    A = t1().algebra
    n = t1_named()
    full = set(toda3(A, n["x1"], n["x2"], n["w"]))
    sub = set(toda3(A, n["x1"], n["x2"], n["w"],
                    representatives=([n["x1"]], [n["x2"]], [n["w"]])))
    assert sub and sub <= full


def test_toda_errors():
    A = t1().algebra
    n = t1_named()
    with pytest.raises(CompositesNotNull):
        toda3(A, n["x2"], n["w"], n["x4"])
    with pytest.raises(NotComposable):
        toda3(A, n["x1"], n["x3"], n["x4"])
    with pytest.raises(EnumerationCapExceeded):
        toda3(A, n["x1"], n["x2"], n["x3"], cap=0)
    with pytest.raises(EnumerationCapExceeded):
        toda4(A, n["x1"], n["x2"], n["x3"], n["x4"], cap=0)


def test_toda4_on_t1():
    A = t1().algebra
    n = t1_named()
    vals = toda4(A, n["x1"], n["x2"], n["x3"], n["x4"])
    H = A.homs[("Y4", "Y0")].g2
    assert set(vals) <= set(H.aut(H.basepoint))


def test_toda4_not_defined_without_two_tracks():
    # the starved secondary chain has no 2-cell between the two left paths
    # over d0 d1 d2, so alpha never exists
    from ttk.fixtures.catalog import chain_fixture
    fx = chain_fixture(4, 1, "secondary", starved=True)
    C, A = fx.complex, fx.algebra
    with pytest.raises(NotDefined):
        toda4(A, C.d[0], C.d[1], C.d[2], C.d[3])
