"""2-track algebras: hom-wise 2-track groupoids with a graded, partially
defined ⊗-composition, stored as explicit tables.

Element ids are global: every degree 0 element, track, left path and
left 2-track of every hom lives in one namespace.  For ``x: B -> C`` and
``y: A -> B`` the product ``x ⊗ y`` lies in ``hom(A, C)``.

The table holds products of elements with degree sum at most 2 and the
whiskering of tracks by degree 0 elements.  A product of two tracks is
derived from whiskering by the interchange law.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping

from .gpd import FiniteGroup, Functor, GroupoidError, aut_group
from .report import ReportBuilder, Violation
from .ttg import (InvalidMorphism, TtgMorphism, TwoTrackGroupoid, is_weak_equivalence as ttg_weq,
                  validate_ttg)

DEFAULT_CAP = 10 ** 6

KINDS = ("obj0", "track", "obj1", "mor2")
DEGREE = {"obj0": 0, "obj1": 1, "mor2": 2}


class AlgebraError(Exception):
    pass


class MalformedAlgebra(AlgebraError):
    pass


class NotComposable(AlgebraError):
    pass


class DegreeOverflow(AlgebraError):
    pass


class MissingTableEntry(AlgebraError):
    pass


class IllDefinedComposition(AlgebraError):
    pass


class CompositesNotNull(AlgebraError):
    pass


class NotDefined(AlgebraError):
    pass


class EnumerationCapExceeded(AlgebraError):
    pass


class NotAdditive(AlgebraError):
    pass


def hom_key(A: str, B: str) -> str:
    return f"{A}->{B}"


def parse_hom_key(s: str) -> tuple[str, str]:
    A, sep, B = s.partition("->")
    if not sep:
        raise MalformedAlgebra(f"bad hom key {s!r}")
    return A, B


@dataclass(frozen=True)
class Element:
    id: str
    source: str
    target: str
    kind: str

    @property
    def degree(self):
        return DEGREE.get(self.kind)


def thread_count() -> int:
    try:
        n = int(os.environ.get("TTK_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


class TwoTrackAlgebra:
    """Objects, hom 2-track groupoids ``homs[(A, B)]``, units and the
    ⊗-table.  The constructor checks referential integrity only; use
    :func:`check_axioms` for the equations.

    ``additive`` optionally gives, per hom, F2 coordinates (ints used as
    bit vectors) of the degree 0 elements; it is needed wherever pi0 hom
    sets are treated as groups.
    """

    def __init__(self, objects: Iterable[str], homs: Mapping[tuple[str, str], TwoTrackGroupoid],
                 units: Mapping[str, str], tensor: Mapping[tuple[str, str], str], *,
                 additive: Mapping[tuple[str, str], Mapping[str, int]] | None = None):
        self.objects = tuple(sorted(set(objects)))
        self.homs = dict(homs)
        self.units = dict(units)
        self._tensor = dict(tensor)
        self.additive = None if additive is None else {k: dict(v) for k, v in additive.items()}
        self._info: dict[str, Element] = {}
        self._by_kind: dict[tuple[str, str, str], tuple[str, ...]] = {}
        for A in self.objects:
            for B in self.objects:
                if (A, B) not in self.homs:
                    raise MalformedAlgebra(f"missing hom {hom_key(A, B)}")
        for (A, B), G in sorted(self.homs.items()):
            if A not in self.objects or B not in self.objects:
                raise MalformedAlgebra(f"hom {hom_key(A, B)} uses an unknown object")
            for kind, ids in (("obj0", G.g1.objects), ("track", G.g1.morphisms),
                              ("obj1", G.g2.objects), ("mor2", G.g2.morphisms)):
                self._by_kind[(A, B, kind)] = tuple(ids)
                for x in ids:
                    if x in self._info:
                        raise MalformedAlgebra(f"id {x!r} is used twice")
                    self._info[x] = Element(x, A, B, kind)
        for A in self.objects:
            u = self.units.get(A)
            e = self._info.get(u)
            if e is None or e.kind != "obj0" or (e.source, e.target) != (A, A):
                raise MalformedAlgebra(f"unit of {A} is not a degree 0 element of {hom_key(A, A)}")
        for (x, y), z in self._tensor.items():
            for w in (x, y, z):
                if w not in self._info:
                    raise MalformedAlgebra(f"tensor entry ({x}, {y}) uses unknown id {w!r}")

    # -- element access -------------------------------------------------
    def element(self, x: str) -> Element:
        try:
            return self._info[x]
        except KeyError:
            raise GroupoidError(f"unknown element {x!r}") from None

    def has_element(self, x: str) -> bool:
        return x in self._info

    def kind(self, x: str) -> str:
        return self.element(x).kind

    def degree(self, x: str) -> int:
        e = self.element(x)
        if e.kind == "track":
            raise AlgebraError(f"{x!r} is a track and has no degree")
        return DEGREE[e.kind]

    def hom_of(self, x: str) -> TwoTrackGroupoid:
        e = self.element(x)
        return self.homs[(e.source, e.target)]

    def elements(self, A: str, B: str, kind: str) -> tuple[str, ...]:
        return self._by_kind[(A, B, kind)]

    def all_elements(self, kind: str | None = None):
        for (A, B, k), ids in sorted(self._by_kind.items()):
            if kind is None or k == kind:
                yield from ids

    def tensor_table(self) -> dict[tuple[str, str], str]:
        return dict(self._tensor)

    # -- structure maps --------------------------------------------------
    def zero(self, A: str, B: str, degree: int = 0) -> str:
        return self.homs[(A, B)].zero(degree)

    def is_zero(self, x: str) -> bool:
        e = self.element(x)
        G = self.homs[(e.source, e.target)]
        if e.kind == "track":
            return x == G.g1.zero_track()
        return x == G.zero(DEGREE[e.kind])

    def q(self, a: str) -> str:
        return self.hom_of(a).q[a]

    def delta(self, a: str) -> str:
        """Boundary of a left path (degree 1)."""
        if self.kind(a) != "obj1":
            raise AlgebraError(f"delta needs a degree 1 element, got {a!r}")
        return self.hom_of(a).delta(a)

    def delta0(self, alpha: str) -> str:
        if self.kind(alpha) != "mor2":
            raise AlgebraError(f"delta0 needs a degree 2 element, got {alpha!r}")
        return self.hom_of(alpha).g2.src(alpha)

    def delta1(self, alpha: str) -> str:
        if self.kind(alpha) != "mor2":
            raise AlgebraError(f"delta1 needs a degree 2 element, got {alpha!r}")
        return self.hom_of(alpha).g2.tgt(alpha)

    def box(self, g: str, f: str) -> str:
        """Pointwise composite g□f of two tracks or two left 2-tracks."""
        k = self.kind(f)
        G = self.hom_of(f)
        if k == "track":
            return G.g1.compose(g, f)
        if k == "mor2":
            return G.g2.compose(g, f)
        raise AlgebraError(f"□ is not defined on {k}")

    def box_path(self, *xs: str) -> str:
        acc = xs[-1]
        for g in reversed(xs[:-1]):
            acc = self.box(g, acc)
        return acc

    def inv(self, f: str) -> str:
        k = self.kind(f)
        G = self.hom_of(f)
        if k == "track":
            return G.g1.inverse(f)
        if k == "mor2":
            return G.g2.inverse(f)
        raise AlgebraError(f"inverse is not defined on {k}")

    def id_track(self, x: str) -> str:
        k = self.kind(x)
        G = self.hom_of(x)
        if k == "obj0":
            return G.g1.identity(x)
        if k == "obj1":
            return G.g2.identity(x)
        raise AlgebraError(f"no identity for {k}")

    def psi(self, alpha: str) -> str:
        """psi of an automorphism of a left path, landing in pi2."""
        G = self.hom_of(alpha)
        a = G.g2.src(alpha)
        if G.g2.tgt(alpha) != a:
            raise AlgebraError(f"{alpha!r} is not an automorphism")
        return G.g2.psi(a, alpha)

    def tensor(self, x: str, y: str) -> str:
        z = self._tensor.get((x, y))
        if z is not None:
            return z
        ex, ey = self.element(x), self.element(y)
        if ex.source != ey.target:
            raise NotComposable(f"{x} ⊗ {y}: source of {x} is {ex.source}, target of {y} is {ey.target}")
        if ex.kind == "track" and ey.kind == "track":
            G = self.hom_of(x)
            return self.box(self.tensor(G.g1.tgt(x), y), self.tensor(x, self.hom_of(y).g1.src(y)))
        if ex.kind == "track" or ey.kind == "track":
            other = ey if ex.kind == "track" else ex
            if other.kind != "obj0":
                raise DegreeOverflow(f"tracks only whisker with degree 0 elements ({x}, {y})")
        elif DEGREE[ex.kind] + DEGREE[ey.kind] > 2:
            raise DegreeOverflow(f"degree {DEGREE[ex.kind] + DEGREE[ey.kind]} exceeds 2 for ({x}, {y})")
        try:
            return self._tensor[(x, y)]
        except KeyError:
            raise MissingTableEntry(f"no ⊗ entry for ({x}, {y})") from None

    def tensor_path(self, *xs: str) -> str:
        acc = xs[-1]
        for x in reversed(xs[:-1]):
            acc = self.tensor(x, acc)
        return acc

    # -- JSON --------------------------------------------------------------
    def to_json(self) -> dict:
        doc = {
            "objects": list(self.objects),
            "homs": {hom_key(A, B): self.homs[(A, B)].to_json() for (A, B) in sorted(self.homs)},
            "units": {A: self.units[A] for A in self.objects},
            "tensor": [[x, y, z] for (x, y), z in sorted(self._tensor.items())],
        }
        if self.additive is not None:
            doc["additive"] = {hom_key(*k): sorted([e, v] for e, v in t.items())
                               for k, t in sorted(self.additive.items())}
        return doc

    @classmethod
    def from_json(cls, doc, *, check: bool = True) -> "TwoTrackAlgebra":
        homs = {parse_hom_key(k): TwoTrackGroupoid.from_json(v, check=check) for k, v in doc["homs"].items()}
        tensor = {}
        for x, y, z in doc["tensor"]:
            if (x, y) in tensor:
                raise MalformedAlgebra(f"duplicate tensor entry ({x}, {y})")
            tensor[(x, y)] = z
        additive = None
        if doc.get("additive") is not None:
            additive = {parse_hom_key(k): {e: int(v) for e, v in t} for k, t in doc["additive"].items()}
        return cls(doc["objects"], homs, doc["units"], tensor, additive=additive)

    def __repr__(self):
        return f"TwoTrackAlgebra({len(self.objects)} objects, {len(self._tensor)} ⊗ entries)"


# ---------------------------------------------------------------------------
# axiom checking

TTA_CLAUSES = (
    "tta.degree", "tta.data-q", "tta.associativity", "tta.units", "tta.pointedness",
    "tta.4-boundary", "tta.4-box", "tta.5", "tta.6", "tta.whisker-box", "tta.track-functor",
    "tta.additive",
)


class _Checker:
    def __init__(self, A: TwoTrackAlgebra, rb: ReportBuilder):
        self.A = A
        self.rb = rb

    def t(self, x, y, clause):
        """x ⊗ y or None, reporting a missing or ill-typed entry."""
        try:
            return self.A.tensor(x, y)
        except MissingTableEntry:
            self.rb.add(clause, f"missing ⊗ entry ({x}, {y})")
        except AlgebraError as exc:
            self.rb.add(clause, str(exc))
        return None


def _expected_kind(kx: str, ky: str) -> str | None:
    if kx == "track" or ky == "track":
        return "track"
    d = DEGREE[kx] + DEGREE[ky]
    return {0: "obj0", 1: "obj1", 2: "mor2"}.get(d)


def _box_or_none(G2, b, a):
    # a failed boundary clause can leave the two sides non-composable
    return G2.compose(b, a) if G2.src(b) == G2.tgt(a) else None


def check_axioms(A: TwoTrackAlgebra, per_clause: int | None = None) -> list[Violation]:
    """Every violated instance of the 2-track algebra equations, including
    the hom-wise 2-track groupoid conditions."""
    rb = ReportBuilder(per_clause)
    for (S, T), G in sorted(A.homs.items()):
        for v in validate_ttg(G, per_clause):
            rb.add(v.clause, f"[{hom_key(S, T)}] {v.detail}")
    if rb.items:
        return rb.result()
    ck = _Checker(A, rb)
    objs = A.objects
    E = A.elements

    # degree and hom of every table entry, plus totality on composable pairs
    for B in objs:
        for C in objs:
            for Z in objs:
                for kx in KINDS:
                    for ky in KINDS:
                        want = _expected_kind(kx, ky)
                        if want is None or (kx == "track" and ky not in ("obj0", "track")) \
                                or (ky == "track" and kx not in ("obj0", "track")):
                            continue
                        if kx == "track" and ky == "track":
                            continue
                        for x in E(B, C, kx):
                            for y in E(Z, B, ky):
                                z = ck.t(x, y, "tta.degree")
                                if z is None:
                                    continue
                                ez = A.element(z)
                                if (ez.source, ez.target) != (Z, C) or ez.kind != want:
                                    rb.add("tta.degree", f"{x} ⊗ {y} = {z} has the wrong degree or hom")
    if rb.items:
        return rb.result()

    def zero_of(S, T, kind):
        G = A.homs[(S, T)]
        if kind == "track":
            return G.g1.zero_track()
        return G.zero(DEGREE[kind])

    # units and pointedness
    for (S, T) in sorted(A.homs):
        uS, uT = A.units[S], A.units[T]
        for kind in KINDS:
            for x in E(S, T, kind):
                if A.tensor(uT, x) != x or A.tensor(x, uS) != x:
                    rb.add("tta.units", f"1 ⊗ {x} or {x} ⊗ 1 differs from {x}")
        for C in objs:
            z0 = A.zero(T, C)
            for kind in KINDS:
                for x in E(S, T, kind):
                    if A.tensor(z0, x) != zero_of(S, C, kind):
                        rb.add("tta.pointedness", f"0 ⊗ {x} is not 0")
            z0 = A.zero(C, S)
            for kind in KINDS:
                for x in E(S, T, kind):
                    if A.tensor(x, z0) != zero_of(C, T, kind):
                        rb.add("tta.pointedness", f"{x} ⊗ 0 is not 0")

    # data clause (3): q commutes with whiskering
    for (S, T) in sorted(A.homs):
        for C in objs:
            for a in E(S, T, "obj1"):
                qa = A.q(a)
                for x in E(T, C, "obj0"):
                    if A.q(A.tensor(x, a)) != A.tensor(x, qa):
                        rb.add("tta.data-q", f"q({x} ⊗ {a}) != {x} ⊗ q({a})")
                for x in E(C, S, "obj0"):
                    if A.q(A.tensor(a, x)) != A.tensor(qa, x):
                        rb.add("tta.data-q", f"q({a} ⊗ {x}) != q({a}) ⊗ {x}")

    # associativity for all triples of total degree <= 2 (tracks count as degree 1)
    def deg(kind):
        return 1 if kind == "track" else DEGREE[kind]

    for W, X, Y, Z in itertools.product(objs, repeat=4):
        for kx, ky, kz in itertools.product(KINDS, repeat=3):
            if deg(kx) + deg(ky) + deg(kz) > 2:
                continue
            kinds = (kx, ky, kz)
            if "track" in kinds and any(k not in ("obj0", "track") for k in kinds):
                continue
            if kinds.count("track") > 1:
                continue
            xs, ys, zs = E(Y, Z, kx), E(X, Y, ky), E(W, X, kz)
            if not (xs and ys and zs):
                continue
            for x in xs:
                for y in ys:
                    xy = A.tensor(x, y)
                    for z in zs:
                        if A.tensor(xy, z) != A.tensor(x, A.tensor(y, z)):
                            rb.add("tta.associativity", f"({x} ⊗ {y}) ⊗ {z} != {x} ⊗ ({y} ⊗ {z})")

    # whiskered tracks: functoriality and interchange
    for (S, T) in sorted(A.homs):
        G = A.homs[(S, T)]
        for C in objs:
            for x in E(T, C, "obj0"):
                for y in G.g1.objects:
                    if A.tensor(x, G.g1.identity(y)) != A.homs[(S, C)].g1.identity(A.tensor(x, y)):
                        rb.add("tta.track-functor", f"{x} ⊗ id({y}) is not an identity")
                for f in G.g1.morphisms:
                    xf = A.tensor(x, f)
                    H = A.homs[(S, C)].g1
                    if (H.src(xf), H.tgt(xf)) != (A.tensor(x, G.g1.src(f)), A.tensor(x, G.g1.tgt(f))):
                        rb.add("tta.track-functor", f"{x} ⊗ {f} has the wrong endpoints")
                        continue
                    for g in (g for z in G.g1.objects for g in G.g1.hom(G.g1.tgt(f), z)):
                        if A.tensor(x, G.g1.compose(g, f)) != _box_or_none(H, A.tensor(x, g), xf):
                            rb.add("tta.track-functor", f"{x} ⊗ ({g}□{f}) != ({x} ⊗ {g})□({x} ⊗ {f})")
            for y in E(C, S, "obj0"):
                H = A.homs[(C, T)].g1
                for x in G.g1.objects:
                    if A.tensor(G.g1.identity(x), y) != H.identity(A.tensor(x, y)):
                        rb.add("tta.track-functor", f"id({x}) ⊗ {y} is not an identity")
                for f in G.g1.morphisms:
                    fy = A.tensor(f, y)
                    if (H.src(fy), H.tgt(fy)) != (A.tensor(G.g1.src(f), y), A.tensor(G.g1.tgt(f), y)):
                        rb.add("tta.track-functor", f"{f} ⊗ {y} has the wrong endpoints")
                        continue
                    for g in (g for z in G.g1.objects for g in G.g1.hom(G.g1.tgt(f), z)):
                        if A.tensor(G.g1.compose(g, f), y) != _box_or_none(H, A.tensor(g, y), fy):
                            rb.add("tta.track-functor", f"({g}□{f}) ⊗ {y} != ({g} ⊗ {y})□({f} ⊗ {y})")
    # interchange: (f ⊗ y')□(x ⊗ g) = (x' ⊗ g)□(f ⊗ y)
    for B, C, Z in itertools.product(objs, repeat=3):
        G1, H1, K1 = A.homs[(B, C)].g1, A.homs[(Z, B)].g1, A.homs[(Z, C)].g1
        for f in G1.morphisms:
            x, x2 = G1.src(f), G1.tgt(f)
            for g in H1.morphisms:
                y, y2 = H1.src(g), H1.tgt(g)
                lhs = _box_or_none(K1, A.tensor(f, y2), A.tensor(x, g))
                rhs = _box_or_none(K1, A.tensor(x2, g), A.tensor(f, y))
                if lhs is None or lhs != rhs:
                    rb.add("tta.track-functor", f"interchange fails for {f} and {g}")

    # (4), Prop. 4.1 and (6) on degree 2 elements
    for (S, T) in sorted(A.homs):
        G2 = A.homs[(S, T)].g2
        pairs = [(b, a) for a in G2.morphisms for b in G2.morphisms if G2.src(b) == G2.tgt(a)]
        for C in objs:
            H2 = A.homs[(S, C)].g2
            for x in E(T, C, "obj0"):
                for al in G2.morphisms:
                    xa = A.tensor(x, al)
                    if (H2.src(xa), H2.tgt(xa)) != (A.tensor(x, G2.src(al)), A.tensor(x, G2.tgt(al))):
                        rb.add("tta.4-boundary", f"boundary of {x} ⊗ {al}")
                for b, a in pairs:
                    if A.tensor(x, G2.compose(b, a)) != _box_or_none(H2, A.tensor(x, b), A.tensor(x, a)):
                        rb.add("tta.whisker-box", f"{x} ⊗ ({b}□{a})")
            H2 = A.homs[(C, T)].g2
            for y in E(C, S, "obj0"):
                for al in G2.morphisms:
                    ay = A.tensor(al, y)
                    if (H2.src(ay), H2.tgt(ay)) != (A.tensor(G2.src(al), y), A.tensor(G2.tgt(al), y)):
                        rb.add("tta.4-boundary", f"boundary of {al} ⊗ {y}")
                for b, a in pairs:
                    if A.tensor(G2.compose(b, a), y) != _box_or_none(H2, A.tensor(b, y), A.tensor(a, y)):
                        rb.add("tta.whisker-box", f"({b}□{a}) ⊗ {y}")
        # two-sided forms of (4)
        for C, Z in itertools.product(objs, repeat=2):
            xs, ys = E(T, C, "obj0"), E(Z, S, "obj0")
            H2 = A.homs[(Z, C)].g2
            for x in xs:
                for y in ys:
                    for al in G2.morphisms:
                        xay = A.tensor_path(x, al, y)
                        if (H2.src(xay), H2.tgt(xay)) != (A.tensor_path(x, G2.src(al), y),
                                                          A.tensor_path(x, G2.tgt(al), y)):
                            rb.add("tta.4-boundary", f"delta_i({x} ⊗ {al} ⊗ {y})")
                    for b, a in pairs:
                        if A.tensor_path(x, G2.compose(b, a), y) != \
                                _box_or_none(H2, A.tensor_path(x, b, y), A.tensor_path(x, a, y)):
                            rb.add("tta.4-box", f"{x} ⊗ ({b}□{a}) ⊗ {y}")

    # (5): boundaries of a ⊗ b
    for B, C, Z in itertools.product(objs, repeat=3):
        H2 = A.homs[(Z, C)].g2
        for a in E(B, C, "obj1"):
            da = A.delta(a)
            for b in E(Z, B, "obj1"):
                ab = A.tensor(a, b)
                if H2.src(ab) != A.tensor(da, b):
                    rb.add("tta.5", f"delta0({a} ⊗ {b}) != delta({a}) ⊗ {b}")
                if H2.tgt(ab) != A.tensor(a, A.delta(b)):
                    rb.add("tta.5", f"delta1({a} ⊗ {b}) != {a} ⊗ delta({b})")
    if any(v.clause == "tta.5" for v in rb.items):
        return rb.result()

    # (6)
    for B, C, Z in itertools.product(objs, repeat=3):
        H2 = A.homs[(Z, C)].g2
        for al in E(B, C, "mor2"):
            d0, d1 = A.delta0(al), A.delta1(al)
            for c in E(Z, B, "obj1"):
                dc = A.delta(c)
                lhs = A.tensor(d1, c)
                a_dc, d0_c = A.tensor(al, dc), A.tensor(d0, c)
                if H2.src(a_dc) != H2.tgt(d0_c):
                    rb.add("tta.6", f"({al} ⊗ delta {c})□(delta0 {al} ⊗ {c}) is not composable")
                elif H2.compose(a_dc, d0_c) != lhs:
                    rb.add("tta.6", f"delta1 {al} ⊗ {c} != ({al} ⊗ delta {c})□(delta0 {al} ⊗ {c})")
        for al in E(Z, B, "mor2"):
            d0, d1 = A.delta0(al), A.delta1(al)
            for c in E(B, C, "obj1"):
                dc = A.delta(c)
                lhs = A.tensor(c, d0)
                c_d1, dc_a = A.tensor(c, d1), A.tensor(dc, al)
                if H2.src(c_d1) != H2.tgt(dc_a):
                    rb.add("tta.6", f"({c} ⊗ delta1 {al})□(delta {c} ⊗ {al}) is not composable")
                elif H2.compose(c_d1, dc_a) != lhs:
                    rb.add("tta.6", f"{c} ⊗ delta0 {al} != ({c} ⊗ delta1 {al})□(delta {c} ⊗ {al})")

    if A.additive is not None:
        for v in additive_violations(A):
            rb.add(v.clause, v.detail)
    return rb.result()


def additive_violations(A: TwoTrackAlgebra) -> list[Violation]:
    """The optional coordinates must biject degree 0 elements with a
    subspace, and components must be cosets of the component of 0."""
    rb = ReportBuilder(4)
    for (S, T) in sorted(A.homs):
        G1 = A.homs[(S, T)].g1
        coords = A.additive.get((S, T))
        if coords is None or set(coords) != set(G1.objects):
            rb.add("tta.additive", f"[{hom_key(S, T)}] coordinates missing")
            continue
        vals = set(coords.values())
        if len(vals) != len(coords) or coords[G1.basepoint] != 0:
            rb.add("tta.additive", f"[{hom_key(S, T)}] coordinates not injective or 0 not at the origin")
            continue
        if any((u ^ v) not in vals for u in vals for v in vals):
            rb.add("tta.additive", f"[{hom_key(S, T)}] coordinates not closed under addition")
            continue
        null = {coords[x] for x in G1.objects if G1.component_of(x) == G1.component_of(G1.basepoint)}
        for x in G1.objects:
            comp = {coords[y] for y in G1.objects if G1.component_of(y) == G1.component_of(x)}
            if comp != {coords[x] ^ n for n in null}:
                rb.add("tta.additive", f"[{hom_key(S, T)}] component of {x} is not a coset")
    return rb.result()


# ---------------------------------------------------------------------------
# homotopy category


@dataclass(frozen=True)
class HomotopyCategory:
    objects: tuple[str, ...]
    homs: dict          # (A, B) -> tuple of class representatives
    compose: dict       # (g, f) -> class rep, for g in hom(B,C), f in hom(A,B)
    identity: dict      # A -> class rep of 1_A
    zero: dict          # (A, B) -> class rep of 0

    def to_json(self):
        return {"objects": list(self.objects),
                "homs": {hom_key(*k): list(v) for k, v in sorted(self.homs.items())},
                "compose": [[g, f, h] for (g, f), h in sorted(self.compose.items())],
                "identity": dict(sorted(self.identity.items()))}


def cls(A: TwoTrackAlgebra, x: str) -> str:
    """pi0 class of a degree 0 element, named by its least member."""
    return A.hom_of(x).g1.component_of(x)


def homotopy_category(A: TwoTrackAlgebra) -> HomotopyCategory:
    homs = {k: tuple(c[0] for c in G.g1.components()) for k, G in A.homs.items()}
    comp = {}
    for B, C, Z in itertools.product(A.objects, repeat=3):
        G1, H1 = A.homs[(B, C)].g1, A.homs[(Z, B)].g1
        for x in G1.objects:
            for y in H1.objects:
                key = (cls(A, x), cls(A, y))
                val = cls(A, A.tensor(x, y))
                old = comp.setdefault(key, val)
                if old != val:
                    raise IllDefinedComposition(f"[{x}][{y}] is both {old} and {val}")
    ident = {X: cls(A, A.units[X]) for X in A.objects}
    zero = {k: cls(A, A.zero(*k)) for k in A.homs}
    return HomotopyCategory(A.objects, homs, comp, ident, zero)


def is_isomorphism_class(hc: HomotopyCategory, f: str, S: str, T: str) -> bool:
    for g in hc.homs[(T, S)]:
        if hc.compose[(g, f)] == hc.identity[S] and hc.compose[(f, g)] == hc.identity[T]:
            return True
    return False


# ---------------------------------------------------------------------------
# morphisms


class TtaMorphism:
    """Object map plus a 2-track groupoid morphism per hom."""

    def __init__(self, source: TwoTrackAlgebra, target: TwoTrackAlgebra,
                 on_objects: Mapping[str, str], on_homs: Mapping[tuple[str, str], TtgMorphism]):
        self.source = source
        self.target = target
        self.on_objects = dict(on_objects)
        self.on_homs = dict(on_homs)
        self._map = None

    def __call__(self, x: str) -> str:
        if self._map is None:
            m = {}
            for (S, T), F in self.on_homs.items():
                G = self.source.homs[(S, T)]
                for y in G.g1.objects:
                    m[y] = F.f1.obj(y)
                for f in G.g1.morphisms:
                    m[f] = F.f1.mor(f)
                for a in G.g2.objects:
                    m[a] = F.f2.obj(a)
                for u in G.g2.morphisms:
                    m[u] = F.f2.mor(u)
            self._map = m
        return self._map[x]

    def violations(self) -> list[Violation]:
        rb = ReportBuilder(4)
        A, B = self.source, self.target
        for X in A.objects:
            if self.on_objects.get(X) not in B.objects:
                rb.add("tta-morphism.objects", f"object {X} unmapped")
        if rb.items:
            return rb.result()
        for (S, T) in sorted(A.homs):
            F = self.on_homs.get((S, T))
            if F is None:
                rb.add("tta-morphism.homs", f"no map on {hom_key(S, T)}")
                continue
            if F.source is not A.homs[(S, T)] or F.target is not B.homs[(self.on_objects[S], self.on_objects[T])]:
                rb.add("tta-morphism.homs", f"map on {hom_key(S, T)} has the wrong ends")
                continue
            for v in F.violations():
                rb.add(v.clause, f"[{hom_key(S, T)}] {v.detail}")
        if rb.items:
            return rb.result()
        for X in A.objects:
            if self(A.units[X]) != B.units[self.on_objects[X]]:
                rb.add("tta-morphism.units", f"F(1_{X}) is not a unit")
        for (x, y), z in sorted(A.tensor_table().items()):
            if self(z) != B.tensor(self(x), self(y)):
                rb.add("tta-morphism.tensor", f"F({x} ⊗ {y}) != F{x} ⊗ F{y}")
        return rb.result()


def identity_tta_morphism(A: TwoTrackAlgebra) -> TtaMorphism:
    from .ttg import identity_morphism
    return TtaMorphism(A, A, {X: X for X in A.objects},
                       {k: identity_morphism(G) for k, G in A.homs.items()})


def is_weak_equivalence(F: TtaMorphism) -> bool:
    rep = F.violations()
    if rep:
        raise InvalidMorphism(rep)
    for k, Fk in sorted(F.on_homs.items()):
        if not ttg_weq(Fk):
            return False
    # pi0 F is fully faithful because each hom map is bijective on pi0;
    # essential surjectivity is checked in the target homotopy category
    hc = homotopy_category(F.target)
    image = {F.on_objects[X] for X in F.source.objects}
    for Y in F.target.objects:
        if Y in image:
            continue
        if not any(is_isomorphism_class(hc, f, X, Y) for X in sorted(image) for f in hc.homs[(X, Y)]):
            return False
    return True


def relabel_tta(A: TwoTrackAlgebra, rename_element, rename_object=lambda X: X):
    """Isomorphic copy of A with renamed ids, and the isomorphism A -> copy."""
    from .ttg import relabel_ttg
    homs, maps = {}, {}
    for (S, T), G in A.homs.items():
        H, F = relabel_ttg(G, rename_element)
        homs[(rename_object(S), rename_object(T))] = H
        maps[(S, T)] = F
    tensor = {(rename_element(x), rename_element(y)): rename_element(z)
              for (x, y), z in A.tensor_table().items()}
    units = {rename_object(X): rename_element(u) for X, u in A.units.items()}
    additive = None
    if A.additive is not None:
        additive = {(rename_object(S), rename_object(T)): {rename_element(e): v for e, v in t.items()}
                    for (S, T), t in A.additive.items()}
    B = TwoTrackAlgebra([rename_object(X) for X in A.objects], homs, units, tensor, additive=additive)
    return B, TtaMorphism(A, B, {X: rename_object(X) for X in A.objects}, maps)


# ---------------------------------------------------------------------------
# Toda brackets


def _members(A: TwoTrackAlgebra, y: str) -> tuple[str, ...]:
    G1 = A.hom_of(y).g1
    c = G1.component_of(y)
    return tuple(x for x in G1.objects if G1.component_of(x) == c)


def _star_from(G1, x):
    return tuple(f for f in G1.hom(x, G1.basepoint))


def _run_partitioned(tasks, fn):
    n = thread_count()
    if n <= 1 or len(tasks) <= 1:
        out = set()
        for t in tasks:
            out |= fn(t)
        return out
    chunks = [tasks[i::n] for i in range(n)]

    def work(chunk):
        acc = set()
        for t in chunk:
            acc |= fn(t)
        return acc
    out = set()
    with ThreadPoolExecutor(max_workers=n) as ex:
        for part in ex.map(work, chunks):
            out |= part
    return out


def toda3(A: TwoTrackAlgebra, y1: str, y2: str, y3: str, *, cap: int = DEFAULT_CAP,
          representatives=None) -> tuple[str, ...]:
    """All values (a ⊗ x3)□(x1 ⊗ b)^-1 in pi1 hom(Y3, Y0), over every choice
    of representatives x_i of the classes y_i and null tracks a of x1x2 and
    b of x2x3.  Sorted tuple of track ids.

    ``representatives`` may restrict the x_i (used to test monotonicity).
    """
    e1, e2, e3 = A.element(y1), A.element(y2), A.element(y3)
    if e1.source != e2.target or e2.source != e3.target:
        raise NotComposable("toda3 needs a composable triple")
    hc = homotopy_category(A)
    if hc.compose[(cls(A, y1), cls(A, y2))] != hc.zero[(e2.source, e1.target)]:
        raise CompositesNotNull("y1 y2 is not null")
    if hc.compose[(cls(A, y2), cls(A, y3))] != hc.zero[(e3.source, e2.target)]:
        raise CompositesNotNull("y2 y3 is not null")
    reps = representatives or (_members(A, y1), _members(A, y2), _members(A, y3))
    G12 = A.homs[(e2.source, e1.target)].g1
    G23 = A.homs[(e3.source, e2.target)].g1
    K = A.homs[(e3.source, e1.target)].g1
    tasks = list(itertools.product(*reps))
    total = sum(len(_star_from(G12, A.tensor(x1, x2))) * len(_star_from(G23, A.tensor(x2, x3)))
                for x1, x2, x3 in tasks)
    if total > cap:
        raise EnumerationCapExceeded(f"toda3 choice space {total} exceeds cap {cap}")

    def run(t):
        x1, x2, x3 = t
        out = set()
        for a in _star_from(G12, A.tensor(x1, x2)):
            ax = A.tensor(a, x3)
            for b in _star_from(G23, A.tensor(x2, x3)):
                out.add(K.compose(ax, K.inverse(A.tensor(x1, b))))
        return out
    return tuple(sorted(_run_partitioned(tasks, run)))


def toda4(A: TwoTrackAlgebra, y1: str, y2: str, y3: str, y4: str, *, cap: int = DEFAULT_CAP,
          representatives=None) -> tuple[str, ...]:
    """All values psi((alpha ⊗ x4)□(a ⊗ c)□(x1 ⊗ beta)) in pi2 hom(Y4, Y0)."""
    es = [A.element(y) for y in (y1, y2, y3, y4)]
    for i in range(3):
        if es[i].source != es[i + 1].target:
            raise NotComposable("toda4 needs a composable quadruple")
    hc = homotopy_category(A)
    ys = (y1, y2, y3, y4)
    for i in range(3):
        if hc.compose[(cls(A, ys[i]), cls(A, ys[i + 1]))] != hc.zero[(es[i + 1].source, es[i].target)]:
            raise CompositesNotNull(f"y{i + 1} y{i + 2} is not null")
    Y0, Y1, Y2, Y3, Y4 = es[0].target, es[0].source, es[1].source, es[2].source, es[3].source
    H02, H13, H24 = A.homs[(Y2, Y0)], A.homs[(Y3, Y1)], A.homs[(Y4, Y2)]
    H03, H14, H04 = A.homs[(Y3, Y0)].g2, A.homs[(Y4, Y1)].g2, A.homs[(Y4, Y0)].g2
    reps = representatives or tuple(_members(A, y) for y in ys)

    def paths(H, x):
        return tuple(a for a in H.g2.objects if H.delta(a) == x)

    tasks = list(itertools.product(*reps))
    total = 0
    for x1, x2, x3, x4 in tasks:
        total += (len(paths(H02, A.tensor(x1, x2))) * len(paths(H13, A.tensor(x2, x3)))
                  * len(paths(H24, A.tensor(x3, x4))))
    if total > cap:
        raise EnumerationCapExceeded(f"toda4 choice space {total} exceeds cap {cap}")

    def run(t):
        x1, x2, x3, x4 = t
        out = set()
        for a in paths(H02, A.tensor(x1, x2)):
            ax3 = A.tensor(a, x3)
            for b in paths(H13, A.tensor(x2, x3)):
                alphas = H03.hom(ax3, A.tensor(x1, b))
                if not alphas:
                    continue
                bx4 = A.tensor(b, x4)
                for c in paths(H24, A.tensor(x3, x4)):
                    betas = H14.hom(bx4, A.tensor(x2, c))
                    if not betas:
                        continue
                    ac = A.tensor(a, c)
                    for al in alphas:
                        ax = A.tensor(al, x4)
                        for be in betas:
                            loop = H04.compose(ax, H04.compose(ac, A.tensor(x1, be)))
                            out.add(A.psi(loop))
        return out
    res = _run_partitioned(tasks, run)
    if not res:
        raise NotDefined("no 2-tracks alpha, beta exist for any choice of representatives")
    return tuple(sorted(res))


# ---------------------------------------------------------------------------
# F2 coordinates on pi_k of homs


def _f2_basis(group: FiniteGroup) -> tuple[list[str], dict[str, int]]:
    """Basis and coordinates of an elementary abelian 2-group."""
    e = group.identity
    for g in group.elements:
        if group.mul(g, g) != e:
            raise NotAdditive("group is not elementary abelian of exponent 2")
    if not group.is_abelian():
        raise NotAdditive("group is not abelian")
    basis: list[str] = []
    coords = {e: 0}
    for g in group.elements:
        if g in coords:
            continue
        i = len(basis)
        basis.append(g)
        new = {group.mul(h, g): c | (1 << i) for h, c in coords.items()}
        coords.update(new)
    return basis, coords


class PiCoordinates:
    """F2 coordinates of pi0, pi1 or pi2 of one hom.

    pi0 uses the algebra's additive data modulo the null component; pi1
    and pi2 use the group structure of Aut(0).
    """

    def __init__(self, A: TwoTrackAlgebra, S: str, T: str, k: int):
        self.A, self.key, self.k = A, (S, T), k
        G = A.homs[(S, T)]
        if k == 0:
            if A.additive is None or (S, T) not in A.additive:
                raise NotAdditive(f"no additive structure on {hom_key(S, T)}")
            coords = A.additive[(S, T)]
            G1 = G.g1
            null = [coords[x] for x in G1.objects if G1.component_of(x) == G1.component_of(G1.basepoint)]
            # quotient map via reduced echelon form of the null space
            self._null = _echelon(null)
            reps = sorted({G1.component_of(x) for x in G1.objects})
            vals = {r: _reduce(coords[r], self._null) for r in reps}
            img = _echelon(list(vals.values()))
            self.dim = len(img)
            self._img = img
            self.coord = {r: _coords_in(vals[r], img) for r in reps}
            self._cls = lambda x: G1.component_of(x)
            self.rep = {c: r for r, c in self.coord.items()}
        else:
            grp = aut_group(G.g1, G.g1.basepoint) if k == 1 else aut_group(G.g2, G.g2.basepoint)
            basis, coords = _f2_basis(grp)
            self.dim = len(basis)
            self.coord = coords
            self._cls = lambda x: x
            self.rep = {c: g for g, c in coords.items()}

    def of(self, x: str) -> int:
        return self.coord[self._cls(x)]

    def element(self, v: int) -> str:
        return self.rep[v]


def _echelon(vecs):
    """Reduced basis keyed by leading bit."""
    piv: dict[int, int] = {}
    for v in vecs:
        v = _reduce(v, piv)
        if v:
            lead = v.bit_length() - 1
            for k in list(piv):
                if piv[k] >> lead & 1:
                    piv[k] ^= v
            piv[lead] = v
    return piv


def _reduce(v, piv):
    for lead in sorted(piv, reverse=True):
        if v >> lead & 1:
            v ^= piv[lead]
    return v


def _coords_in(v, piv):
    """Coordinates of v in the reduced basis piv (ordered by lead)."""
    leads = sorted(piv)
    c = 0
    for i, lead in enumerate(leads):
        if v >> lead & 1:
            c |= 1 << i
    return c
