"""Named fixture algebras and complexes.

T1      five objects Y0..Y4 with a nonzero length-3 and length-4 Toda bracket.
T1 core the Y0..Y3 part of T1, used for mutation sweeps.
chain   the family A0 <- A1 <- ... <- AL with one broken obstruction and the
        cells needed to repair it (or, starved, without them).
AD1     a three-stage resolution with a target T carrying designed nonzero
        d2 and d3.
wrapper the stages of a Steenrod minimal resolution as a path algebra.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..chains import AdamsSetup, ChainComplexInCat, SecondaryPreChainComplex, TertiaryPreChainComplex
from .dg import LinearAlgebraData, LinearQuiver


# ---------------------------------------------------------------------------
# T1


T1_GENERATORS = [
    ("x1", "Y1", "Y0", 0), ("x2", "Y2", "Y1", 0), ("x3", "Y3", "Y2", 0), ("x4", "Y4", "Y3", 0),
    ("w", "Y3", "Y2", 0),
    ("a", "Y2", "Y0", 1, "x1.x2"), ("b", "Y3", "Y1", 1, "x2.x3"), ("c", "Y4", "Y2", 1, "x3.x4"),
    ("e", "Y3", "Y1", 1, "x2.w"),
    ("al", "Y3", "Y0", 2, "a.x3+x1.b"), ("be", "Y4", "Y1", 2, "b.x4+x2.c"),
]


@lru_cache(maxsize=None)
def t1() -> LinearAlgebraData:
    return LinearQuiver(["Y0", "Y1", "Y2", "Y3", "Y4"], T1_GENERATORS).to_algebra()


def t1_named(D: LinearAlgebraData | None = None) -> dict[str, str]:
    """Element ids of the T1 generators (degree 0 ones and the left paths)."""
    D = D or t1()
    out = {}
    for g in T1_GENERATORS:
        name, S, T, deg = g[:4]
        out[name] = D.el0(S, T, name) if deg == 0 else (D.el1(S, T, name) if deg == 1 else None)
    return {k: v for k, v in out.items() if v is not None}


# ---------------------------------------------------------------------------
# chain fixtures


@dataclass
class ChainFixture:
    name: str
    kind: str               # "secondary" or "tertiary"
    length: int
    broken_at: int
    starved: bool
    data: LinearAlgebraData
    complex: SecondaryPreChainComplex

    @property
    def algebra(self):
        return self.data.algebra

    @property
    def a_objects(self):
        return tuple(self.complex.objects.values())


def _A(n):
    return f"A{n}"


def chain_quiver(length: int, broken_at: int, kind: str, starved: bool = False) -> LinearQuiver:
    """Quiver for A0 <- ... <- A{length}.

    kind "secondary": every xi cell except xi_{b-1}, so the secondary
    obstruction at b is the nonzero class of g_{b-1}.d_{b+1} + d_{b-1}.g_b.
    A cycle z: A{b+2} -> A{b} and a 2-cell th killing the obstruction of
    (g_{b-1}, g_b + z) make the correction possible unless starved.

    kind "tertiary": all xi, and 3-cells T_n killing every tertiary
    obstruction except at b; there a 2-cycle w and a 3-cell W repair
    xi_b -> xi_b + w unless starved.
    """
    L, b = length, broken_at
    if L < 3 or L > 6:
        raise ValueError("length must be in 3..6")
    hi = L - 2 if kind == "secondary" else L - 3
    if kind not in ("secondary", "tertiary") or not 1 <= b <= hi:
        raise ValueError(f"broken_at must lie in [1, {hi}] for kind {kind!r}")
    gens = []
    forbidden = []
    for n in range(L):
        gens.append((f"d{n}", _A(n + 1), _A(n), 0))
    for n in range(L - 1):
        gens.append((f"g{n}", _A(n + 2), _A(n), 1, f"d{n}.d{n + 1}"))
    for n in range(L - 2):
        if kind == "secondary" and n == b - 1:
            continue
        gens.append((f"x{n}", _A(n + 3), _A(n), 2, f"g{n}.d{n + 2}+d{n}.g{n + 1}"))
    if kind == "secondary":
        if not starved:
            gens.append(("z", _A(b + 2), _A(b), 1))
            gens.append(("th", _A(b + 2), _A(b - 1), 2, f"g{b - 1}.d{b + 1}+d{b - 1}.g{b}+d{b - 1}.z"))
            if b + 2 < L:
                forbidden.append(f"z.d{b + 2}")
    else:
        for n in range(1, L - 2):
            if n == b:
                continue
            gens.append((f"T{n}", _A(n + 3), _A(n - 1), 3,
                         f"x{n - 1}.d{n + 2}+g{n - 1}.g{n + 1}+d{n - 1}.x{n}"))
        if not starved:
            gens.append(("w", _A(b + 3), _A(b), 2))
            gens.append(("W", _A(b + 3), _A(b - 1), 3,
                         f"x{b - 1}.d{b + 2}+g{b - 1}.g{b + 1}+d{b - 1}.x{b}+d{b - 1}.w"))
            if b + 3 < L:
                forbidden.append(f"w.d{b + 3}")
    return LinearQuiver([_A(n) for n in range(L + 1)], gens, forbidden)


@lru_cache(maxsize=None)
def chain_fixture(length: int, broken_at: int, kind: str = "secondary",
                  starved: bool = False) -> ChainFixture:
    D = chain_quiver(length, broken_at, kind, starved).to_algebra()
    A = D.algebra
    L = length
    objects = {n: _A(n) for n in range(L + 1)}
    d = {n: D.el0(_A(n + 1), _A(n), f"d{n}") for n in range(L)}
    gamma = {n: D.el1(_A(n + 2), _A(n), f"g{n}") for n in range(L - 1)}
    if kind == "secondary":
        C = SecondaryPreChainComplex(A, objects, d, gamma)
    else:
        xi = {n: D.el2(_A(n + 3), _A(n), f"g{n}.d{n + 2}", f"x{n}") for n in range(L - 2)}
        C = TertiaryPreChainComplex(A, objects, d, gamma, xi)
    tag = "starved" if starved else "ok"
    return ChainFixture(f"{kind}-L{L}-b{broken_at}-{tag}", kind, L, broken_at, starved, D, C)


# the shipped correction fixtures; S1 and T1c are the first of each kind
SECONDARY_CASES = [(4, 1), (4, 2), (5, 2), (5, 3), (6, 4)]
TERTIARY_CASES = [(4, 1), (5, 1), (5, 2), (6, 3)]


def s1(starved: bool = False) -> ChainFixture:
    return chain_fixture(4, 1, "secondary", starved)


def t1c(starved: bool = False) -> ChainFixture:
    return chain_fixture(4, 1, "tertiary", starved)


def correction_fixtures(starved: bool = False) -> list[ChainFixture]:
    return ([chain_fixture(L, b, "secondary", starved) for L, b in SECONDARY_CASES]
            + [chain_fixture(L, b, "tertiary", starved) for L, b in TERTIARY_CASES])


# ---------------------------------------------------------------------------
# AD1


AD1_GENERATORS = [
    ("d0", "A1", "A0", 0), ("d1", "A2", "A1", 0), ("d2", "A3", "A2", 0), ("d3", "A4", "A3", 0),
    ("x0", "A0", "T", 0), ("x1", "A1", "T", 0), ("y", "A1", "T", 0),
    ("g0", "A1", "T", 1, "x0.d0"), ("g1", "A2", "T", 1, "x1.d1"), ("k", "A1", "T", 1, "x1+y"),
    ("u", "A2", "T", 1), ("u0", "A1", "T", 1),
    ("h", "A2", "T", 2, "g0.d1"), ("v", "A2", "T", 2), ("m", "A2", "T", 2, "u0.d1"),
]
AD1_FORBIDDEN = ["d0.d1", "d1.d2", "d2.d3"]


@dataclass
class AdamsFixture:
    data: LinearAlgebraData
    setup: AdamsSetup

    @property
    def algebra(self):
        return self.data.algebra

    def el(self, S, T, expr, deg=0):
        D = self.data
        return D.el0(S, T, expr) if deg == 0 else D.el1(S, T, expr)


@lru_cache(maxsize=None)
def ad1() -> AdamsFixture:
    """A0 <- A1 <- A2 <- A3 <- A4 with every d.d a zero word, so gamma and xi
    are the zero cells, and a target T where

    * x0 has d2 = 0 and d3 = [h.d2] != 0 in E3^{3,2};
    * x1 (homotopic to y) has d2 = [g1.d2] != 0 in E2^{3,1};
    * the row 1 class u0 has d2 = [m.d2] != 0 in E2^{3,2}.
    """
    Q = LinearQuiver(["A0", "A1", "A2", "A3", "A4", "T"], AD1_GENERATORS, AD1_FORBIDDEN)
    D = Q.to_algebra()
    A = D.algebra
    objects = {n: f"A{n}" for n in range(5)}
    d = {n: D.el0(f"A{n + 1}", f"A{n}", f"d{n}") for n in range(4)}
    gamma = {n: A.zero(f"A{n + 2}", f"A{n}", 1) for n in range(3)}
    xi = {n: A.zero(f"A{n + 3}", f"A{n}", 2) for n in range(2)}
    C = TertiaryPreChainComplex(A, objects, d, gamma, xi)
    return AdamsFixture(D, AdamsSetup(C, "T"))


# ---------------------------------------------------------------------------
# Steenrod wrapper


def steenrod_wrapper(res, length: int | None = None) -> ChainComplexInCat:
    """The stages F_0 <- ... <- F_L of a minimal resolution as a chain complex
    in a small path algebra: one object per stage, one arrow per
    differential, and d.d declared a zero word.  That is only legitimate
    because d^2 = 0 holds exactly in the resolution, which is checked here.
    """
    L = res.s_max if length is None else length
    if not 1 <= L <= res.s_max:
        raise ValueError(f"length must lie in [1, {res.s_max}]")
    bad = res.d_squared_violations()
    if bad:
        raise ValueError(f"resolution has d^2 != 0: {bad[0]}")
    objs = [f"F{s}" for s in range(L + 1)]
    gens = [(f"d{s}", f"F{s + 1}", f"F{s}", 0) for s in range(L)]
    forbidden = [f"d{s}.d{s + 1}" for s in range(L - 1)]
    D = LinearQuiver(objs, gens, forbidden).to_algebra()
    d = {s: D.el0(f"F{s + 1}", f"F{s}", f"d{s}") for s in range(L)}
    return ChainComplexInCat(D.algebra, {s: f"F{s}" for s in range(L + 1)}, d)


# ---------------------------------------------------------------------------
# GF1


def gf1():
    """Two objects x, y joined by f: x -> y and its inverse."""
    from ..gpd import Groupoid

    arrows = {"id_x": ("x", "x"), "id_y": ("y", "y"), "f": ("x", "y"), "f-": ("y", "x")}
    ident = {"x": "id_x", "y": "id_y"}
    comp = {}
    for g, (gs, gt) in arrows.items():
        for h, (hs, ht) in arrows.items():
            if gs == ht:
                # the composite h -> g is determined by its endpoints
                comp[(g, h)] = next(k for k, e in arrows.items() if e == (hs, gt) and
                                    (hs != gt or k.startswith("id")))
    inv = {"id_x": "id_x", "id_y": "id_y", "f": "f-", "f-": "f"}
    return Groupoid(["x", "y"], arrows, ident, comp, inv)


# ---------------------------------------------------------------------------
# T1 core: the Y0..Y3 part of T1 without w and e, small enough for
# mutation sweeps


T1_CORE_GENERATORS = [
    ("x1", "Y1", "Y0", 0), ("x2", "Y2", "Y1", 0), ("x3", "Y3", "Y2", 0),
    ("a", "Y2", "Y0", 1, "x1.x2"), ("b", "Y3", "Y1", 1, "x2.x3"),
    ("al", "Y3", "Y0", 2, "a.x3+x1.b"),
]


@lru_cache(maxsize=None)
def t1_core() -> LinearAlgebraData:
    return LinearQuiver(["Y0", "Y1", "Y2", "Y3"], T1_CORE_GENERATORS).to_algebra()
