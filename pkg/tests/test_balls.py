import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ttk.balls import (BallChain, InvalidChain, InvalidK, alg_cub, canonical_orientation,
                       make_chain, normalize_ball, obstruction, random_chain, validate_chain)
from ttk.fixtures.catalog import t1, t1_core
from ttk.report import clauses

A = t1().algebra
HOMS = [("Y4", "Y0"), ("Y3", "Y0"), ("Y4", "Y1")]


def _aut0(hom):
    G2 = A.homs[hom].g2
    return set(G2.aut(G2.basepoint))


chains = st.builds(lambda seed, k, hom: random_chain(A, hom, k, random.Random(seed)),
                   st.integers(0, 2**32), st.integers(2, 6), st.sampled_from(HOMS))


@settings(max_examples=200, deadline=None)
@given(chains)
def test_obstruction_is_rotation_invariant(ch):
    o = obstruction(ch)
    assert o in _aut0(ch.hom)
    for r in range(ch.k):
        assert obstruction(ch.rotate(r)) == o


@settings(max_examples=200, deadline=None)
@given(chains, st.data())
def test_inserting_a_cancelling_pair_changes_nothing(ch, data):
    i = data.draw(st.integers(0, ch.k - 1))
    a, e = ch.entries[i]
    G2 = A.homs[ch.hom].g2
    # the vertex after cell i
    end = G2.tgt(a) if e == 1 else G2.src(a)
    beta = data.draw(st.sampled_from(sorted(m for m in G2.morphisms if G2.src(m) == end)))
    entries = ch.entries[:i + 1] + ((beta, 1), (beta, -1)) + ch.entries[i + 1:]
    longer = BallChain(A, ch.hom, entries)
    assert validate_chain(longer) == []
    assert obstruction(longer) == obstruction(ch)


@settings(max_examples=100, deadline=None)
@given(chains)
def test_reversal_inverts_the_obstruction(ch):
    G2 = A.homs[ch.hom].g2
    assert obstruction(ch.reversed()) == G2.inverse(obstruction(ch))
    c = canonical_orientation(ch)
    assert c.entries[0][1] == 1
    assert obstruction(c) in (obstruction(ch), G2.inverse(obstruction(ch)))


def test_normalize_ball():
    b = normalize_ball(4)
    assert b.k == 4 and len(b.cells) == 4 and len(b.edges) == 4
    assert b.adjacency[0] == ("e1", "c4", "c1")
    assert b.as_dict()["k"] == 4
    for bad in (0, 1, -3, "3"):
        with pytest.raises(InvalidK):
            normalize_ball(bad)


def test_invalid_chains_are_reported():
    ch = random_chain(A, ("Y4", "Y0"), 3, random.Random(1))
    a, _ = ch.entries[0]
    assert "ball.sign" in clauses(validate_chain(BallChain(A, ch.hom, ((a, 2),) + ch.entries[1:])))
    n = next(iter(A.all_elements("obj1")))
    assert "ball.entry" in clauses(validate_chain(BallChain(A, ch.hom, ((n, 1),) + ch.entries[1:])))
    other = random_chain(A, ("Y3", "Y0"), 2, random.Random(2))
    assert "ball.hom" in clauses(validate_chain(BallChain(A, ch.hom, other.entries[:1] + ch.entries[1:])))
    assert "ball.k" in clauses(validate_chain(BallChain(A, ch.hom, ch.entries[:1])))
    with pytest.raises(InvalidChain):
        obstruction(BallChain(A, ch.hom, ch.entries[:1]))


def test_a_non_closing_chain_is_rejected():
    G2 = A.homs[("Y4", "Y0")].g2
    u = next(m for m in G2.morphisms if G2.src(m) != G2.tgt(m))
    ch = make_chain(A, [(u, 1), (u, 1)])
    assert "ball.composable" in clauses(validate_chain(ch))


def test_nonzero_obstruction_from_two_parallel_cells():
    # two different 2-tracks between the same left paths bound a C_2 ball
    G2 = A.homs[("Y4", "Y0")].g2
    found = False
    for x in G2.objects:
        for y in G2.objects:
            hs = G2.hom(x, y)
            if len(hs) > 1:
                o = obstruction(make_chain(A, [(hs[0], 1), (hs[1], -1)]))
                found |= o != G2.identity(G2.basepoint)
    assert found


def test_json_round_trip():
    ch = random_chain(A, ("Y4", "Y0"), 5, random.Random(7))
    again = BallChain.from_json(A, ch.to_json())
    assert again == ch


def test_alg_cub_functoriality():
    view = alg_cub(t1_core().algebra)
    assert view.functoriality_violations() == []
    D = view.D("Y3", "Y0")
    assert len(D) >= 1
    table = view.D_table("Y3", "Y0")
    assert all(table[(u, v)] == table[(v, u)] for u in D for v in D)
