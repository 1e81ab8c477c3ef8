"""Shared fixtures for the test modules: mutation catalogues and small
hand-built groupoids."""
from __future__ import annotations

import copy

from ttk.fixtures.catalog import t1, t1_core
from ttk.gpd import (StrictlyAbelianGroupoid, cyclic_group, groupoid_violations_json,
                     symmetric_group)
from ttk.report import clauses
from ttk.tta import TwoTrackAlgebra, check_axioms
from ttk.ttg import TwoTrackGroupoid, build_skeletal, validate_ttg


# ---------------------------------------------------------------------------
# small groupoid documents


def z3_doc():
    return cyclic_group(3, "a").to_groupoid("*").to_json()


def gf1_doc():
    from ttk.fixtures.catalog import gf1
    return gf1().to_json()


def two_object_z3():
    """x and y with three arrows between any two objects, indexed by Z/3;
    psi_y identifies Aut(y) with Aut(x) by index."""
    objs = ["x", "y"]
    arrows, comp, inv = {}, {}, {}
    for s in objs:
        for t in objs:
            for i in range(3):
                arrows[f"{s}{t}{i}"] = (s, t)
                inv[f"{s}{t}{i}"] = f"{t}{s}{(-i) % 3}"
    for f, (s, t) in arrows.items():
        for g, (s2, u) in arrows.items():
            if s2 == t:
                comp[(g, f)] = f"{s}{u}{(int(f[2]) + int(g[2])) % 3}"
    ident = {"x": "xx0", "y": "yy0"}
    psi = {"x": {f"xx{i}": f"xx{i}" for i in range(3)},
           "y": {f"yy{i}": f"xx{i}" for i in range(3)}}
    return StrictlyAbelianGroupoid(objs, arrows, ident, comp, inv, "x", psi)


def _entry(doc, key, n, new):
    for e in doc[key]:
        if tuple(e[:n]) == new[:n]:
            e[n] = new[n]
            return doc
    raise KeyError(new)


def _psi_set(doc, obj, a, b):
    for x, table in doc["psi"]:
        if x == obj:
            for e in table:
                if e[0] == a:
                    e[1] = b
                    return doc
    raise KeyError((obj, a))


def _drop(doc, key, first):
    doc[key] = [e for e in doc[key] if tuple(e[:len(first)]) != first]
    return doc


def _gpd_report(doc):
    return clauses(groupoid_violations_json(doc))


def gpd_mutations():
    """(clause, valid doc, mutated doc, checker) for the groupoid and
    strictly abelian clauses."""
    z3, gf = z3_doc(), gf1_doc()
    sag = two_object_z3().to_json()
    out = [
        ("gpd.ids", z3, _drop(copy.deepcopy(z3), "identity", ("*",))),
        ("gpd.compose-domain", gf, _drop(copy.deepcopy(gf), "compose", ("f", "id_x"))),
        ("gpd.endpoints", gf, _entry(copy.deepcopy(gf), "compose", 2, ("f", "id_x", "f-"))),
        ("gpd.unit", z3, _entry(copy.deepcopy(z3), "compose", 2, ("a0", "a1", "a2"))),
        ("gpd.inverse", z3, _entry(copy.deepcopy(z3), "inverse", 1, ("a1", "a1"))),
        ("gpd.associativity", z3, _entry(copy.deepcopy(z3), "compose", 2, ("a1", "a1", "a0"))),
        ("sag.square", sag, _psi_set(_psi_set(copy.deepcopy(sag), "y", "yy1", "xx2"), "y", "yy2", "xx1")),
        ("sag.psi-homomorphism", sag, _psi_set(_psi_set(copy.deepcopy(sag), "y", "yy0", "xx1"), "y", "yy1", "xx0")),
        ("sag.psi-bijective", sag, _psi_set(copy.deepcopy(sag), "y", "yy1", "xx0")),
    ]
    return [(c, v, m, _gpd_report) for c, v, m in out]


def sag_abelian_case():
    """S3 with psi = id: a valid group table whose Aut(0) is not abelian.
    No single-entry change of a valid table reaches this clause, because
    every psi_x forces Aut(x) to be isomorphic to Aut(0)."""
    doc = symmetric_group(3).to_groupoid("*").to_json()
    doc["psi"] = [["*", [[g, g] for g in symmetric_group(3).elements]]]
    return doc


# ---------------------------------------------------------------------------
# 2-track groupoids


def _ttg_report(doc):
    G = TwoTrackGroupoid.from_json(doc, check=False)
    return clauses(validate_ttg(G))


def _set_q(doc, a, f):
    for e in doc["q"]:
        if e[0] == a:
            e[1] = f
            return doc
    raise KeyError(a)


def ttg_mutations():
    A = t1().algebra
    H = A.homs[("Y3", "Y0")]
    hd = H.to_json()
    # a 2-track between distinct left paths: redirecting q on one end breaks constancy
    u = next(m for m in H.g2.morphisms if H.g2.src(m) != H.g2.tgt(m))
    a = H.g2.src(u)
    other = next(f for f in H.g1.star() if f != H.q[a])
    non_star = next(f for f in H.g1.morphisms if H.g1.tgt(f) != H.g1.basepoint)
    base = H.g2.basepoint
    other0 = next(f for f in H.g1.star() if f != H.q[base])
    S = build_skeletal(cyclic_group(2, "p"), cyclic_group(3, "m")).to_json()
    return [
        ("ttg.q-star", hd, _set_q(copy.deepcopy(hd), a, non_star), _ttg_report),
        ("ttg.q-pointed", hd, _set_q(copy.deepcopy(hd), base, other0), _ttg_report),
        ("ttg.q-constant", hd, _set_q(copy.deepcopy(hd), a, other), _ttg_report),
        ("ttg.q-surjective", S, _set_q(copy.deepcopy(S), "<p1>", "p0"), _ttg_report),
        ("ttg.q-bijective", S, _set_q(copy.deepcopy(S), "<p1>", "p0"), _ttg_report),
    ]


# ---------------------------------------------------------------------------
# 2-track algebras: single tensor-entry mutations on the T1 core

TTA_MUTATIONS = {
    "tta.degree": (("0|Y0>Y0", "0|Y0>Y0"), "<0>|Y0>Y0"),
    "tta.data-q": (("<a>|Y2>Y0", "x3|Y3>Y2"), "<0>|Y3>Y0"),
    "tta.associativity": (("1~0|Y0>Y0", "x1.x2.x3|Y3>Y0"), "0~0|Y3>Y0"),
    "tta.units": (("1|Y0>Y0", "<a.x3+x1.b>|Y3>Y0"), "<0>|Y3>Y0"),
    "tta.pointedness": (("0|Y0>Y0", "0|Y0>Y0"), "1|Y0>Y0"),
    "tta.4-boundary": (("<a>|Y2>Y0", "x3|Y3>Y2"), "<x1.b>|Y3>Y0"),
    "tta.4-box": (("<a>~0|Y2>Y0", "x3|Y3>Y2"), "<0>~al|Y3>Y0"),
    "tta.5": (("<0>|Y0>Y0", "<0>|Y2>Y0"), "<a>~0|Y2>Y0"),
    "tta.6": (("<0>~0|Y0>Y0", "x1.x2.x3|Y3>Y0"), "<a.x3+x1.b>~0|Y3>Y0"),
    "tta.whisker-box": (("<a>~0|Y2>Y0", "x3|Y3>Y2"), "<0>~al|Y3>Y0"),
    "tta.track-functor": (("0~a|Y2>Y0", "x3|Y3>Y2"), "0~0|Y3>Y0"),
}


def _tta_report(doc):
    B = TwoTrackAlgebra.from_json(doc, check=False)
    return clauses(check_axioms(B, per_clause=1))


def _set_tensor(doc, key, value):
    for e in doc["tensor"]:
        if (e[0], e[1]) == key:
            e[2] = value
            return doc
    raise KeyError(key)


def _set_additive(doc):
    # the additive clause: one coordinate entry duplicated onto another element
    hk, table = next((k, t) for k, t in doc["additive"].items() if len(t) >= 2)
    table[1][1] = table[0][1]
    return doc


def tta_mutations():
    doc = t1_core().algebra.to_json()
    out = [(clause, doc, _set_tensor(copy.deepcopy(doc), key, val), _tta_report)
           for clause, (key, val) in TTA_MUTATIONS.items()]
    if doc.get("additive"):
        out.append(("tta.additive", doc, _set_additive(copy.deepcopy(doc)), _tta_report))
    return out


def all_mutations():
    return gpd_mutations() + ttg_mutations() + tta_mutations()
