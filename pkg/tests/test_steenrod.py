import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ttk.chains import WindowExceeded
from ttk.steenrod import (ModulePresentation, SteenrodElement, SteenrodError, UnknownFormat,
                          adem_reduce, admissible_basis, chart_from_tsv, cocycle_rep, dim_A,
                          emit_chart, ext_chart, is_admissible, minimal_resolution, multiply,
                          parse_element)
from ttk.steenrod.algebra import binom2
from ttk.steenrod.oracle import milnor_basis, milnor_mul_elements, milnor_product, oracle_chart
from ttk.steenrod.resolution import IndexOutOfRange, InvalidModule

GOLDEN = Path(__file__).parent / "golden"

words = st.lists(st.integers(0, 12), max_size=5).filter(lambda w: sum(w) <= 30)


def basis_element(n, i):
    b = admissible_basis(n)
    return SteenrodElement(frozenset({b[i % len(b)]}), n) if b else SteenrodElement.zero(n)


def random_element(rng, n):
    b = admissible_basis(n)
    return SteenrodElement(frozenset(m for m in b if rng.random() < 0.5), n)


def to_milnor(el):
    """Admissible monomial Sq^a1...Sq^ak as the Milnor product Sq(a1)...Sq(ak)."""
    out = set()
    for m in el.support:
        acc = frozenset({()})
        for a in m:
            acc = milnor_mul_elements(acc, frozenset({(a,)}))
        out ^= set(acc)
    return frozenset(out)


@given(words)
def test_adem_reduce_is_idempotent_and_preserves_degree(w):
    r = adem_reduce(w)
    assert r.degree == sum(w)
    assert all(is_admissible(m) for m in r.terms)
    again = SteenrodElement.zero(r.degree)
    for m in r.terms:
        again = again + adem_reduce(m)
    assert again == r


@given(words)
def test_adem_reduce_agrees_with_the_milnor_basis(w):
    # Sq^a1 ... Sq^ak computed in both bases
    acc = frozenset({()})
    for a in w:
        if a:
            acc = milnor_mul_elements(acc, frozenset({(a,)}))
    assert to_milnor(adem_reduce(w)) == acc


def test_multiplication_is_associative_on_ten_thousand_triples():
    rng = random.Random(11)
    for _ in range(10_000):
        a, b, c = (random_element(rng, rng.randint(0, 9)) for _ in range(3))
        assert (a * b) * c == a * (b * c)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10), st.integers(0, 10), st.integers(0, 50), st.integers(0, 50))
def test_products_match_the_milnor_route(p, q, i, j):
    x, y = basis_element(p, i), basis_element(q, j)
    assert to_milnor(x * y) == milnor_mul_elements(to_milnor(x), to_milnor(y))


def test_small_products():
    assert adem_reduce([1, 1]).is_zero()
    assert str(adem_reduce([2, 2])) == "Sq(3,1)"
    assert str(adem_reduce([1, 2])) == "Sq(3)"
    assert str(adem_reduce([0, 3, 0])) == "Sq(3)"
    assert milnor_product((2,), (2,)) == frozenset({(1, 1)})
    assert milnor_product((1,), (2,)) == frozenset({(3,)})
    with pytest.raises(ValueError):
        adem_reduce([2, -1])


def test_dimensions():
    assert [dim_A(n) for n in range(8)] == [1, 1, 1, 2, 2, 2, 3, 4]
    for n in range(41):
        assert len(admissible_basis(n)) == len(milnor_basis(n))
    assert binom2(5, 1) == 1 and binom2(5, 2) == 0 and binom2(3, 5) == 0


def test_parse_and_print():
    e = parse_element("Sq(2,1) + Sq(3)")
    assert e.degree == 3 and str(e) == "Sq(2,1) + Sq(3)"
    assert parse_element("1") == SteenrodElement.unit()
    assert parse_element("0").is_zero()
    assert parse_element("Sq(1,1)").is_zero()
    with pytest.raises(SteenrodError):
        parse_element("Sq[2]")
    with pytest.raises(SteenrodError):
        parse_element("Sq(1) + Sq(2)")


# ---------------------------------------------------------------------------
# resolutions


def test_chart_matches_oracle_on_smaller_windows():
    for s_max, t_max in ((3, 3), (5, 12), (6, 16)):
        chart = ext_chart(minimal_resolution(s_max=s_max, t_max=t_max))
        ours = {k: v for k, v in chart.dims.items() if v}
        assert ours == {k: v for k, v in oracle_chart(s_max, t_max).items() if v}


def test_golden_small_chart_via_tsv():
    text = (GOLDEN / "ext_chart_s3_t3.tsv").read_text()
    chart = ext_chart(minimal_resolution(s_max=3, t_max=3))
    assert emit_chart(chart, "tsv") == text
    assert chart_from_tsv(text).rows() == chart.rows()


def test_known_classes():
    chart = ext_chart(minimal_resolution(s_max=8, t_max=21))
    # h1^2, h1^3, h2^2, c0, and the vanishing h1^4
    assert chart.get(2, 4) == 1 and chart.get(3, 6) == 1 and chart.get(2, 8) == 1
    assert chart.get(3, 11) == 1
    assert chart.get(4, 8) == 0


def test_resolution_checks():
    res = minimal_resolution(s_max=5, t_max=14)
    assert res.d_squared_violations() == []
    assert res.minimality_violations() == []
    assert res.exactness_violations() == []


def test_caps_are_errors():
    with pytest.raises(WindowExceeded):
        minimal_resolution(s_max=11, t_max=5)
    with pytest.raises(WindowExceeded):
        minimal_resolution(s_max=2, t_max=27)
    with pytest.raises(ValueError):
        minimal_resolution(s_max=-1, t_max=3)


def test_change_of_rings_module():
    # A / A Sq1 is induced up from A(0), so its Ext is the h0 tower alone
    M = ModulePresentation.from_json({"name": "A//A0", "generators": [{"id": "g", "degree": 0}],
                                      "relations": [["g", "Sq(1)", "0"]]})
    chart = ext_chart(minimal_resolution(M, s_max=5, t_max=12))
    assert {k for k, v in chart.dims.items() if v} == {(s, s) for s in range(6)}


def test_direct_sum_module():
    # F2 plus a copy of F2 in degree 3: two shifted copies of the F2 chart
    rels = [[g, f"Sq({i})", "0"] for g in ("a", "b") for i in (1, 2, 4, 8)]
    M = ModulePresentation.from_json({"generators": [{"id": "a", "degree": 0}, {"id": "b", "degree": 3}],
                                      "relations": rels})
    chart = ext_chart(minimal_resolution(M, s_max=3, t_max=10))
    base = oracle_chart(3, 10)
    for s in range(4):
        for t in range(11):
            want = base.get((s, t), 0) + (base.get((s, t - 3), 0) if t >= 3 else 0)
            assert chart.get(s, t) == want, (s, t)


def test_module_json_round_trip_and_errors():
    M = ModulePresentation.f2(8)
    doc = M.to_json()
    again = ModulePresentation.from_json(json.loads(json.dumps(doc)))
    assert again.to_json() == doc
    M2 = ModulePresentation.from_json({"generators": [{"id": "a", "degree": 0}, {"id": "b", "degree": 2}],
                                       "relations": [["a", "Sq(2)", "b"]]})
    assert M2.relation_degree(M2.relations[0]) == 2
    with pytest.raises(InvalidModule):
        ModulePresentation.from_json({"generators": [{"id": "a", "degree": 0}],
                                      "relations": [["c", "Sq(1)", "0"]]})
    with pytest.raises(InvalidModule):
        ModulePresentation.from_json({"generators": [{"id": "a", "degree": 0}, {"id": "b", "degree": 0}],
                                      "relations": [["a", "Sq(1)", "b"]]})
    with pytest.raises(InvalidModule):
        ModulePresentation.from_json({"generators": [{"id": "a", "degree": 0}, {"id": "a", "degree": 1}]})


def test_emit_formats():
    chart = ext_chart(minimal_resolution(s_max=3, t_max=8))
    svg = emit_chart(chart, "svg")
    assert svg.startswith("<svg") and svg.count('<circle class="dot"') == sum(chart.dims.values())
    doc = json.loads(emit_chart(chart, "json"))
    assert doc
    with pytest.raises(UnknownFormat):
        emit_chart(chart, "pdf")
    with pytest.raises(UnknownFormat):
        chart_from_tsv("a\tb\n")


def test_cocycle_representatives():
    res = minimal_resolution(s_max=3, t_max=8)
    c = cocycle_rep(res, 1, 4, 0)
    assert c.values == {c.generator: 1}
    assert c.as_dict()["s"] == 1
    with pytest.raises(IndexOutOfRange):
        cocycle_rep(res, 1, 3, 0)


def test_resolution_is_deterministic():
    a = minimal_resolution(s_max=4, t_max=12).to_json()
    b = minimal_resolution(s_max=4, t_max=12).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
