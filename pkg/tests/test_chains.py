import pytest

from ttk.chains import (AdamsSetup, ChainComplexInCat, ChainError, D2Nonzero, IndexOutOfWindow,
                        InvalidComplex, NotACocycle, NotAResolution,
                        WindowExceeded, build_resolution, check_chain, complex_from_json,
                        correct_1tracks, d2_element, d2_values, d3_element, e_page, e_page_json,
                        ext_groups, is_a_exact, is_secondary_chain_complex,
                        is_tertiary_chain_complex, secondary_obstruction, secondary_window,
                        tertiary_obstruction, tertiary_window)
from ttk.fixtures.catalog import (ad1, chain_fixture, correction_fixtures, s1,
                                  steenrod_wrapper, t1c)
from ttk.report import clauses
from ttk.steenrod import minimal_resolution
from ttk.tta import toda3, toda4

ALL_FIXTURES = correction_fixtures() + correction_fixtures(starved=True)


@pytest.mark.parametrize("fx", ALL_FIXTURES, ids=lambda f: f.name)
def test_obstructions_lie_in_toda_sets(fx):
    C, A = fx.complex, fx.algebra
    for n in secondary_window(C):
        assert secondary_obstruction(C, n) in toda3(A, C.d[n - 1], C.d[n], C.d[n + 1])
    if fx.kind == "tertiary":
        for n in tertiary_window(C):
            vals = toda4(A, C.d[n - 1], C.d[n], C.d[n + 1], C.d[n + 2])
            assert tertiary_obstruction(C, n) in vals


@pytest.mark.parametrize("fx", correction_fixtures(), ids=lambda f: f.name)
def test_fixture_is_a_resolution_with_one_broken_obstruction(fx):
    C, A = fx.complex, fx.algebra
    assert check_chain(C) == []
    assert is_a_exact(C, fx.a_objects)
    if fx.kind == "secondary":
        bad = [n for n in secondary_window(C) if not A.is_zero(secondary_obstruction(C, n))]
    else:
        assert is_secondary_chain_complex(C)
        bad = [n for n in tertiary_window(C) if not A.is_zero(tertiary_obstruction(C, n))]
    assert bad == [fx.broken_at]


def test_windows_are_enforced():
    C = s1().complex
    lo, hi = C.window
    with pytest.raises(IndexOutOfWindow):
        secondary_obstruction(C, lo)
    with pytest.raises(IndexOutOfWindow):
        secondary_obstruction(C, hi - 1)
    T = t1c().complex
    with pytest.raises(IndexOutOfWindow):
        tertiary_obstruction(T, T.n_max - 2)


def test_correct_2tracks_keeps_d_and_gamma():
    from ttk.chains import correct_2tracks
    fx = t1c()
    out = correct_2tracks(fx.complex, fx.a_objects)
    assert out.d == fx.complex.d and out.gamma == fx.complex.gamma
    assert out.xi != fx.complex.xi


def test_json_round_trip_of_complexes():
    for fx in (s1(), t1c()):
        C = fx.complex
        D = complex_from_json(fx.algebra, C.to_json())
        assert D.to_json() == C.to_json()
        assert type(D) is type(C)


def test_invalid_complexes_are_rejected():
    fx = s1()
    C = fx.complex
    with pytest.raises(InvalidComplex):
        ChainComplexInCat(fx.algebra, {0: "A0", 2: "A2"}, {})
    with pytest.raises(InvalidComplex):
        ChainComplexInCat(fx.algebra, C.objects, {**C.d, 0: C.d[1]})


def test_correction_requires_a_resolution():
    fx = s1()
    bad = _bad_complex(fx)
    assert not is_a_exact(bad, fx.a_objects)
    with pytest.raises(NotAResolution):
        build_resolution(fx.algebra, fx.a_objects, "A0", bad)


def _bad_complex(fx):
    # A0 <- A1 <- A2 with d0 replaced by the zero map is not exact at A1
    A, C = fx.algebra, fx.complex
    d = dict(C.d)
    d[0] = A.zero(C.objects[1], C.objects[0])
    return ChainComplexInCat(A, C.objects, d)


# ---------------------------------------------------------------------------
# Steenrod wrapper: the Resolution Theorem workflow on a real resolution


def test_steenrod_wrapper_lifts_to_a_tertiary_complex():
    res = minimal_resolution(s_max=4, t_max=8)
    C = steenrod_wrapper(res, 4)
    objs = tuple(C.objects.values())
    assert check_chain(C) == []
    assert is_a_exact(C, objs)
    T = build_resolution(C.algebra, objs, "F0", C)
    assert is_secondary_chain_complex(T)
    assert is_tertiary_chain_complex(T)


def test_ext_groups_from_the_resolution():
    res = minimal_resolution(s_max=3, t_max=9)
    assert ext_groups(res, 0, 0) == 1
    for t in range(1, 10):
        assert ext_groups(res, t, 1) == (1 if t in (1, 2, 4, 8) else 0)
    with pytest.raises(WindowExceeded):
        ext_groups(res, 0, 3)


# ---------------------------------------------------------------------------
# AD1: frozen d2, d3 and E-pages

X0, X1, Y = "x0|A0>T", "x1|A1>T", "y|A1>T"


def test_ad1_d2_values():
    S = ad1().setup
    c = d2_element(S, X1, 1)
    assert not c.is_zero and (c.n, c.k, c.page) == (3, 1, 2)
    assert c.rep == "0~g1.d2|A3>T"
    # x1 and y are homotopic: same class
    assert d2_element(S, Y, 1).vector == c.vector
    assert d2_element(S, X0, 0).is_zero


def test_ad1_d3_value():
    S = ad1().setup
    c = d3_element(S, X0, 0)
    assert (c.n, c.k, c.page) == (3, 2, 3)
    assert c.vector == 4
    with pytest.raises(D2Nonzero):
        d3_element(S, X1, 1)


def test_d2_and_d3_outputs_are_cocycles():
    S = ad1().setup
    c2 = d2_element(S, X1, 1)
    assert S.is_cocycle(c2.n, c2.k, c2.vector)
    c3 = d3_element(S, X0, 0)
    assert S.is_cocycle(c3.n, c3.k, c3.vector)
    for _, val in d2_values(S, X1, 1):
        assert S.is_cocycle(3, 1, S.vector(3, 1, val))


def test_ad1_e_pages():
    S = ad1().setup
    e2 = {k: v for k, v in e_page(S, 2).items() if v}
    assert e2 == {(0, 0): 1, (1, 0): 1, (1, 1): 1, (3, 1): 1, (3, 2): 2,
                  (4, 0): "unknown", (4, 1): "unknown", (4, 2): "unknown"}
    e3 = e_page(S, 3)
    assert e3[(0, 0)] == 1 and e3[(3, 2)] == 1 and e3[(1, 0)] == 0
    e4 = e_page(S, 4)
    assert e4[(0, 0)] == 0 and e4[(3, 2)] == 0 and e4[(1, 0)] == "unknown"
    rows = e_page_json(e4)
    assert rows[0] == {"n": 0, "k": 0, "dim": 0}
    with pytest.raises(ChainError):
        e_page(S, 5)


def test_adams_errors():
    S = ad1().setup
    with pytest.raises(IndexOutOfWindow):
        d3_element(S, S.A.zero("A2", "T"), 2)
    with pytest.raises(IndexOutOfWindow):
        d2_element(S, S.A.zero("A3", "T"), 3)
    with pytest.raises(NotACocycle):
        d2_element(S, S.element(2, 1, 1), 2)


def test_unknown_target_is_rejected():
    with pytest.raises(ChainError):
        AdamsSetup(ad1().setup.C, "nowhere")
