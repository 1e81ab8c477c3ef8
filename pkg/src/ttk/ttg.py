"""2-track groupoids: a pointed groupoid g1, a strictly abelian groupoid g2
and a quotient map q from g2-objects onto the star of g1.

Degrees: g1 objects have degree 0, g2 objects degree 1, g2 morphisms
degree 2.  g1 morphisms are the tracks of degree 0 elements.

The validator requires q to be surjective onto Star(g1) *and* the induced
map Comp(g2) -> Star(g1) to be a bijection.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .gpd import (FiniteGroup, Functor, GroupoidError, NotAbelian, PointedGroupoid,
                  StrictlyAbelianGroupoid, aut_group, groupoid_from_json,
                  identity_functor, is_group_isomorphism, pair_id,
                  skeleton_representatives, validate_strictly_abelian)
from .report import ReportBuilder, Violation


class PreconditionFailed(GroupoidError):
    pass


class NotIsomorphism(GroupoidError):
    pass


class InvalidMorphism(GroupoidError):
    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(f"{v.clause}: {v.detail}" for v in report[:4]))


class MalformedTtg(GroupoidError):
    pass


class TwoTrackGroupoid:
    def __init__(self, g1: PointedGroupoid, g2: StrictlyAbelianGroupoid, q: Mapping[str, str]):
        if not isinstance(g1, PointedGroupoid):
            raise MalformedTtg("g1 must be pointed")
        if not isinstance(g2, StrictlyAbelianGroupoid):
            raise MalformedTtg("g2 must carry psi tables")
        self.g1 = g1
        self.g2 = g2
        self.q = dict(q)
        missing = [a for a in g2.objects if a not in self.q]
        if missing:
            raise MalformedTtg(f"q undefined on {missing[:3]}")
        bad = [a for a, f in self.q.items() if not g1.has_morphism(f) or not g2.has_object(a)]
        if bad:
            raise MalformedTtg(f"q has unknown ids at {bad[:3]}")
        self._fibres: dict[str, tuple[str, ...]] | None = None

    # degrees and boundaries
    def degree(self, x: str) -> int:
        if self.g1.has_object(x):
            return 0
        if self.g2.has_object(x):
            return 1
        if self.g2.has_morphism(x):
            return 2
        raise GroupoidError(f"{x!r} is not an element of this 2-track groupoid")

    def delta(self, a: str) -> str:
        """Boundary of a left path: the source of q(a)."""
        return self.g1.src(self.q[a])

    def fibre(self, f: str) -> tuple[str, ...]:
        """g2 objects a with q(a) = f, in id order."""
        if self._fibres is None:
            fib: dict[str, list[str]] = {}
            for a in self.g2.objects:
                fib.setdefault(self.q[a], []).append(a)
            self._fibres = {k: tuple(v) for k, v in fib.items()}
        return self._fibres.get(f, ())

    def zero(self, degree: int) -> str:
        if degree == 0:
            return self.g1.basepoint
        if degree == 1:
            return self.g2.basepoint
        if degree == 2:
            return self.g2.identity(self.g2.basepoint)
        raise ValueError(degree)

    def is_connected(self) -> bool:
        return self.g1.is_connected()

    def to_json(self) -> dict:
        return {"g1": self.g1.to_json(), "g2": self.g2.to_json(),
                "q": [[a, self.q[a]] for a in self.g2.objects]}

    @classmethod
    def from_json(cls, doc, *, check: bool = True) -> "TwoTrackGroupoid":
        g1 = groupoid_from_json(doc["g1"], check=check)
        g2 = groupoid_from_json(doc["g2"], check=check)
        return cls(g1, g2, {a: f for a, f in doc["q"]})

    def __repr__(self):
        return (f"TwoTrackGroupoid(g1={len(self.g1.objects)}/{len(self.g1.morphisms)}, "
                f"g2={len(self.g2.objects)}/{len(self.g2.morphisms)})")


def validate_ttg(G: TwoTrackGroupoid, per_clause: int | None = None) -> list[Violation]:
    """Violations of the q conditions, plus those of g2 as a strictly
    abelian groupoid."""
    rb = ReportBuilder(per_clause)
    rb.extend(validate_strictly_abelian(G.g2, per_clause))
    g1, g2, q = G.g1, G.g2, G.q
    star = set(g1.star())
    for a in g2.objects:
        if q[a] not in star:
            rb.add("ttg.q-star", f"q({a}) = {q[a]} is not in the star of g1")
    if q[g2.basepoint] != g1.zero_track():
        rb.add("ttg.q-pointed", f"q({g2.basepoint}) is not the identity track of 0")
    constant = True
    for u in g2.morphisms:
        a, b = g2.src(u), g2.tgt(u)
        if q[a] != q[b]:
            constant = False
            rb.add("ttg.q-constant", f"{u}: {a} => {b} but q({a}) != q({b})")
    hit = set(q.values())
    for f in sorted(star - hit):
        rb.add("ttg.q-surjective", f"star element {f} is not hit by q")
    if constant:
        owner: dict[str, str] = {}
        for comp in g2.components():
            f = q[comp[0]]
            if f in owner:
                rb.add("ttg.q-bijective", f"components of {owner[f]} and {comp[0]} both map to {f}")
            else:
                owner[f] = comp[0]
    return rb.result()


@dataclass(frozen=True)
class HomotopyGroups:
    pi0: tuple[str, ...]       # component representatives; pi0[basepoint_index] is the base
    base: str                  # representative of the basepoint component
    pi1: FiniteGroup
    pi2: FiniteGroup


def homotopy_groups(G: TwoTrackGroupoid) -> HomotopyGroups:
    pi0 = tuple(c[0] for c in G.g1.components())
    base = G.g1.component_of(G.g1.basepoint)
    pi1 = aut_group(G.g1, G.g1.basepoint)
    pi2 = aut_group(G.g2, G.g2.basepoint)
    if not pi2.is_abelian():
        raise NotAbelian("pi2 is not abelian")
    return HomotopyGroups(pi0, base, pi1, pi2)


# ---------------------------------------------------------------------------
# morphisms


class TtgMorphism:
    def __init__(self, source: TwoTrackGroupoid, target: TwoTrackGroupoid,
                 f1: Functor, f2: Functor):
        self.source = source
        self.target = target
        self.f1 = f1
        self.f2 = f2

    def violations(self) -> list[Violation]:
        rb = ReportBuilder(4)
        rb.extend(self.f1.violations("ttg-morphism.f1"))
        rb.extend(self.f2.violations("ttg-morphism.f2"))
        if rb.items:
            return rb.result()
        S, T = self.source, self.target
        for a in S.g2.objects:
            Fa = self.f2.obj(a)
            for alpha in S.g2.aut(a):
                lhs = T.g2.psi(Fa, self.f2.mor(alpha))
                rhs = self.f2.mor(S.g2.psi(a, alpha))
                if lhs != rhs:
                    rb.add("ttg-morphism.psi-square", f"psi'(F {alpha}) != F(psi({alpha}))")
            if T.q[Fa] != self.f1.mor(S.q[a]):
                rb.add("ttg-morphism.q-square", f"q'(F {a}) != F(q({a}))")
        return rb.result()

    def apply(self, x: str, degree: int) -> str:
        if degree == 0:
            return self.f1.obj(x)
        if degree == 1:
            return self.f2.obj(x)
        return self.f2.mor(x)

    def then(self, other: "TtgMorphism") -> "TtgMorphism":
        return TtgMorphism(self.source, other.target, self.f1.then(other.f1), self.f2.then(other.f2))


def identity_morphism(G: TwoTrackGroupoid) -> TtgMorphism:
    return TtgMorphism(G, G, identity_functor(G.g1), identity_functor(G.g2))


def induced_maps(F: TtgMorphism):
    """The maps on pi0 (component reps), pi1 and pi2 as dicts."""
    S, T = F.source, F.target
    pi0 = {c[0]: T.g1.component_of(F.f1.obj(c[0])) for c in S.g1.components()}
    pi1 = {f: F.f1.mor(f) for f in S.g1.aut(S.g1.basepoint)}
    pi2 = {u: F.f2.mor(u) for u in S.g2.aut(S.g2.basepoint)}
    return pi0, pi1, pi2


def is_weak_equivalence(F: TtgMorphism) -> bool:
    rep = F.violations()
    if rep:
        raise InvalidMorphism(rep)
    S, T = F.source, F.target
    pi0, pi1, pi2 = induced_maps(F)
    if sorted(pi0.values()) != [c[0] for c in T.g1.components()]:
        return False
    if sorted(pi1.values()) != sorted(T.g1.aut(T.g1.basepoint)):
        return False
    if sorted(pi2.values()) != sorted(T.g2.aut(T.g2.basepoint)):
        return False
    return True


# ---------------------------------------------------------------------------
# products


def product_groupoid(A, B):
    """Componentwise product of two groupoids (pointed / strictly abelian
    when both factors are)."""
    objs = [pair_id(x, y) for x in A.objects for y in B.objects]
    arrows, comp, inv = {}, {}, {}
    for f in A.morphisms:
        for g in B.morphisms:
            arrows[pair_id(f, g)] = (pair_id(A.src(f), B.src(g)), pair_id(A.tgt(f), B.tgt(g)))
            inv[pair_id(f, g)] = pair_id(A.inverse(f), B.inverse(g))
    for f in A.morphisms:
        for f2 in (h for z in A.objects for h in A.hom(A.tgt(f), z)):
            ff = A.compose(f2, f)
            for g in B.morphisms:
                for g2 in (h for z in B.objects for h in B.hom(B.tgt(g), z)):
                    comp[(pair_id(f2, g2), pair_id(f, g))] = pair_id(ff, B.compose(g2, g))
    ident = {pair_id(x, y): pair_id(A.identity(x), B.identity(y))
             for x in A.objects for y in B.objects}
    base_args = (objs, arrows, ident, comp, inv)
    if isinstance(A, StrictlyAbelianGroupoid) and isinstance(B, StrictlyAbelianGroupoid):
        psi = {}
        for x in A.objects:
            for y in B.objects:
                psi[pair_id(x, y)] = {pair_id(a, b): pair_id(A.psi(x, a), B.psi(y, b))
                                      for a in A.aut(x) for b in B.aut(y)}
        return StrictlyAbelianGroupoid(*base_args, pair_id(A.basepoint, B.basepoint), psi,
                                       check=False)
    if isinstance(A, PointedGroupoid) and isinstance(B, PointedGroupoid):
        return PointedGroupoid(*base_args, pair_id(A.basepoint, B.basepoint), check=False)
    from .gpd import Groupoid
    return Groupoid(*base_args, check=False)


def product(G: TwoTrackGroupoid, H: TwoTrackGroupoid) -> TwoTrackGroupoid:
    g1 = product_groupoid(G.g1, H.g1)
    g2 = product_groupoid(G.g2, H.g2)
    q = {pair_id(a, b): pair_id(G.q[a], H.q[b]) for a in G.g2.objects for b in H.g2.objects}
    return TwoTrackGroupoid(g1, g2, q)


# ---------------------------------------------------------------------------
# skeleta and skeletal models


def _inclusion(sub: TwoTrackGroupoid, G: TwoTrackGroupoid) -> TtgMorphism:
    f1 = Functor(sub.g1, G.g1, {x: x for x in sub.g1.objects}, {f: f for f in sub.g1.morphisms})
    f2 = Functor(sub.g2, G.g2, {x: x for x in sub.g2.objects}, {f: f for f in sub.g2.morphisms})
    return TtgMorphism(sub, G, f1, f2)


def sk1(G: TwoTrackGroupoid):
    """Restrict g1 to a skeleton and g2 to the objects whose q starts there."""
    reps = set(skeleton_representatives(G.g1))
    g1 = G.g1.full_subgroupoid(reps)
    keep = [a for a in G.g2.objects if G.delta(a) in reps]
    g2 = G.g2.full_subgroupoid(keep)
    sub = TwoTrackGroupoid(g1, g2, {a: G.q[a] for a in keep})
    return sub, _inclusion(sub, G)


def sk2(G: TwoTrackGroupoid):
    """Skeleton of g2 for connected G with skeletal g1."""
    if not G.g1.is_connected():
        raise PreconditionFailed("sk2 needs a connected 2-track groupoid")
    if not G.g1.is_skeletal():
        raise PreconditionFailed("sk2 needs a skeletal first groupoid")
    reps = skeleton_representatives(G.g2)
    g2 = G.g2.full_subgroupoid(reps)
    sub = TwoTrackGroupoid(G.g1, g2, {a: G.q[a] for a in reps})
    return sub, _inclusion(sub, G)


def is_skeletal(G: TwoTrackGroupoid) -> bool:
    return G.g1.is_skeletal() and G.g2.is_skeletal()


def build_skeletal(pi1: FiniteGroup, pi2: FiniteGroup, base: str = "*") -> TwoTrackGroupoid:
    """Connected skeletal 2-track groupoid with the given pi1 and pi2.

    g1 is pi1 on the single object ``base``; g2 has one object ``<g>`` per
    element g of pi1, each with automorphism group pi2 (ids
    ``pair_id(g, m)``), and psi is the identity.
    """
    if not pi2.is_abelian():
        raise NotAbelian("pi2 must be abelian")
    g1 = pi1.to_groupoid(base)
    arrows, ident, comp, inv = {}, {}, {}, {}
    for g in pi1.elements:
        ident[f"<{g}>"] = pair_id(g, pi2.identity)
        for m in pi2.elements:
            arrows[pair_id(g, m)] = (f"<{g}>", f"<{g}>")
            inv[pair_id(g, m)] = pair_id(g, pi2.inv(m))
            for n in pi2.elements:
                comp[(pair_id(g, m), pair_id(g, n))] = pair_id(g, pi2.mul(m, n))
    e = pi1.identity
    psi = {f"<{g}>": {pair_id(g, m): pair_id(e, m) for m in pi2.elements} for g in pi1.elements}
    objs = [f"<{g}>" for g in pi1.elements]
    g2 = StrictlyAbelianGroupoid(objs, arrows, ident, comp, inv, f"<{e}>", psi)
    return TwoTrackGroupoid(g1, g2, {f"<{g}>": g for g in pi1.elements})


def trivial_ttg() -> TwoTrackGroupoid:
    from .gpd import trivial_group
    return build_skeletal(trivial_group("0"), trivial_group("0"))


def connect_weak_equivalence(G: TwoTrackGroupoid, H: TwoTrackGroupoid,
                             phi1: Mapping[str, str], phi2: Mapping[str, str]) -> TtgMorphism:
    """The weak equivalence between connected skeletal 2-track groupoids
    determined by isomorphisms of pi1 and pi2."""
    for K in (G, H):
        if not K.g1.is_connected():
            raise PreconditionFailed("input is not connected")
        if not is_skeletal(K):
            raise PreconditionFailed("constituent groupoids must be skeletal")
    p1G, p1H = aut_group(G.g1, G.g1.basepoint), aut_group(H.g1, H.g1.basepoint)
    p2G, p2H = aut_group(G.g2, G.g2.basepoint), aut_group(H.g2, H.g2.basepoint)
    if not is_group_isomorphism(phi1, p1G, p1H):
        raise NotIsomorphism("phi1 is not an isomorphism pi1 G -> pi1 G'")
    if not is_group_isomorphism(phi2, p2G, p2H):
        raise NotIsomorphism("phi2 is not an isomorphism pi2 G -> pi2 G'")
    f1 = Functor(G.g1, H.g1, {G.g1.basepoint: H.g1.basepoint}, dict(phi1))
    q_inv = {f: a for a, f in H.q.items()}
    on_obj = {a: q_inv[phi1[G.q[a]]] for a in G.g2.objects}
    on_mor = {}
    for a in G.g2.objects:
        b = on_obj[a]
        for u in G.g2.aut(a):
            on_mor[u] = H.g2.psi_inverse(b, phi2[G.g2.psi(a, u)])
    f2 = Functor(G.g2, H.g2, on_obj, on_mor)
    F = TtgMorphism(G, H, f1, f2)
    rep = F.violations()
    if rep:
        raise InvalidMorphism(rep)
    return F


def weak_equivalence_zigzag(G: TwoTrackGroupoid, H: TwoTrackGroupoid,
                            phi1: Mapping[str, str], phi2: Mapping[str, str]):
    """Zigzag G <- sk1 G <- sk2 sk1 G -> sk2 sk1 H -> sk1 H -> H for
    connected G, H with pi1/pi2 isomorphisms phi1, phi2.

    Returns (left legs, bridge, right legs); every morphism is a weak
    equivalence.
    """
    S1, i1 = sk1(G)
    S2, i2 = sk2(S1)
    T1, j1 = sk1(H)
    T2, j2 = sk2(T1)
    bridge = connect_weak_equivalence(S2, T2, phi1, phi2)
    return [i2, i1], bridge, [j2, j1]


def relabel_ttg(G: TwoTrackGroupoid, rename) -> tuple[TwoTrackGroupoid, TtgMorphism]:
    """Copy of G with every id x replaced by rename(x), plus the isomorphism."""
    def relabel_gpd(K):
        objs, arrows, ident, comp, inv = K.tables()
        args = ([rename(x) for x in objs],
                {rename(f): (rename(s), rename(t)) for f, (s, t) in arrows.items()},
                {rename(x): rename(i) for x, i in ident.items()},
                {(rename(g), rename(f)): rename(h) for (g, f), h in comp.items()},
                {rename(f): rename(i) for f, i in inv.items()})
        if isinstance(K, StrictlyAbelianGroupoid):
            psi = {rename(x): {rename(a): rename(b) for a, b in K.psi_table(x).items()}
                   for x in K.objects}
            return StrictlyAbelianGroupoid(*args, rename(K.basepoint), psi, check=False)
        return PointedGroupoid(*args, rename(K.basepoint), check=False)

    g1, g2 = relabel_gpd(G.g1), relabel_gpd(G.g2)
    H = TwoTrackGroupoid(g1, g2, {rename(a): rename(f) for a, f in G.q.items()})
    f1 = Functor(G.g1, g1, {x: rename(x) for x in G.g1.objects}, {f: rename(f) for f in G.g1.morphisms})
    f2 = Functor(G.g2, g2, {x: rename(x) for x in G.g2.objects}, {f: rename(f) for f in G.g2.morphisms})
    return H, TtgMorphism(G, H, f1, f2)
