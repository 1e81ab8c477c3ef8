"""Finite groupoids, pointed groupoids and strictly abelian groupoids.

Everything is an explicit lookup table over string ids.  Composition is
written ``compose(g, f) = g□f`` and is defined iff ``src(g) == tgt(f)``.
Ids are ordered lexicographically whenever a choice has to be made.
"""
from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Mapping

from .report import ReportBuilder, Violation


class GroupoidError(Exception):
    pass


class UnknownId(GroupoidError):
    pass


class NotComposable(GroupoidError):
    def __init__(self, g, f):
        super().__init__(f"{g!r} cannot be composed after {f!r}")
        self.g, self.f = g, f


class MalformedGroupoid(GroupoidError):
    def __init__(self, report: list[Violation]):
        self.report = report
        shown = "; ".join(f"{v.clause}: {v.detail}" for v in report[:4])
        more = f" (+{len(report) - 4} more)" if len(report) > 4 else ""
        super().__init__(shown + more)


class NotAbelian(GroupoidError):
    pass


def pair_id(a: str, b: str) -> str:
    """Injective id for an ordered pair of ids."""
    return repr((a, b))


# ---------------------------------------------------------------------------
# table checks


def groupoid_violations(objects, arrows: Mapping[str, tuple[str, str]],
                        identity: Mapping[str, str],
                        compose: Mapping[tuple[str, str], str],
                        inverse: Mapping[str, str],
                        per_clause: int | None = None) -> list[Violation]:
    """Every violated groupoid law of the given tables."""
    rb = ReportBuilder(per_clause)
    objs = set(objects)
    for f, (s, t) in arrows.items():
        if s not in objs or t not in objs:
            rb.add("gpd.ids", f"morphism {f} has unknown endpoint")
    for x in objs:
        i = identity.get(x)
        if i is None or i not in arrows:
            rb.add("gpd.ids", f"object {x} has no identity morphism")
        elif arrows[i] != (x, x):
            rb.add("gpd.ids", f"identity {i} of {x} is not an endomorphism of {x}")
    for f in arrows:
        if f not in inverse or inverse[f] not in arrows:
            rb.add("gpd.ids", f"morphism {f} has no inverse entry")
    if rb.items:
        return rb.result()

    out: dict[str, list[str]] = {x: [] for x in objs}
    for f, (s, _) in sorted(arrows.items()):
        out[s].append(f)

    seen = 0
    for f, (s, t) in sorted(arrows.items()):
        for g in out[t]:
            seen += 1
            gf = compose.get((g, f))
            if gf is None or gf not in arrows:
                rb.add("gpd.compose-domain", f"no entry for {g}□{f}")
                continue
            if arrows[gf] != (s, arrows[g][1]):
                rb.add("gpd.endpoints", f"{g}□{f} = {gf} has wrong endpoints")
    for (g, f) in compose:
        if g not in arrows or f not in arrows:
            rb.add("gpd.ids", f"compose entry ({g},{f}) uses unknown ids")
        elif arrows[g][0] != arrows[f][1]:
            rb.add("gpd.compose-domain", f"entry for non-composable pair ({g},{f})")
    if rb.items:
        return rb.result()

    for f, (s, t) in sorted(arrows.items()):
        if compose[(identity[t], f)] != f or compose[(f, identity[s])] != f:
            rb.add("gpd.unit", f"identity law fails at {f}")
        fi = inverse[f]
        if arrows[fi] != (t, s) or compose[(f, fi)] != identity[t] \
                or compose[(fi, f)] != identity[s]:
            rb.add("gpd.inverse", f"{fi} is not inverse to {f}")
    for f, (s, t) in sorted(arrows.items()):
        for g in out[t]:
            gf = compose[(g, f)]
            for h in out[arrows[g][1]]:
                if compose[(h, gf)] != compose[(compose[(h, g)], f)]:
                    rb.add("gpd.associativity", f"({h}□{g})□{f} != {h}□({g}□{f})")
    return rb.result()


# ---------------------------------------------------------------------------
# groupoids


class Groupoid:
    """A finite groupoid given by tables; validated on construction."""

    def __init__(self, objects: Iterable[str], arrows: Mapping[str, tuple[str, str]],
                 identity: Mapping[str, str], compose: Mapping[tuple[str, str], str],
                 inverse: Mapping[str, str], *, check: bool = True):
        self._objects = tuple(sorted(set(objects)))
        self._arrows = {f: (s, t) for f, (s, t) in arrows.items()}
        self._identity = dict(identity)
        self._compose = dict(compose)
        self._inverse = dict(inverse)
        if check:
            rep = groupoid_violations(self._objects, self._arrows, self._identity,
                                      self._compose, self._inverse)
            if rep:
                raise MalformedGroupoid(rep)
        self._morphisms = tuple(sorted(self._arrows))
        self._objset = frozenset(self._objects)
        homs: dict[tuple[str, str], list[str]] = {}
        for f in self._morphisms:
            homs.setdefault(self._arrows[f], []).append(f)
        self._hom = {k: tuple(v) for k, v in homs.items()}
        self._comp_of: dict[str, str] | None = None

    # basic access
    @property
    def objects(self) -> tuple[str, ...]:
        return self._objects

    @property
    def morphisms(self) -> tuple[str, ...]:
        return self._morphisms

    def has_object(self, x) -> bool:
        return x in self._objset

    def has_morphism(self, f) -> bool:
        return f in self._arrows

    def _arrow(self, f):
        try:
            return self._arrows[f]
        except KeyError:
            raise UnknownId(f"unknown morphism {f!r}") from None

    def src(self, f: str) -> str:
        return self._arrow(f)[0]

    def tgt(self, f: str) -> str:
        return self._arrow(f)[1]

    def identity(self, x: str) -> str:
        try:
            return self._identity[x]
        except KeyError:
            raise UnknownId(f"unknown object {x!r}") from None

    def compose(self, g: str, f: str) -> str:
        sg, _ = self._arrow(g)
        _, tf = self._arrow(f)
        if sg != tf:
            raise NotComposable(g, f)
        return self._compose[(g, f)]

    def compose_path(self, *fs: str) -> str:
        """compose_path(h, g, f) = h□g□f."""
        acc = fs[-1]
        for g in reversed(fs[:-1]):
            acc = self.compose(g, acc)
        return acc

    def inverse(self, f: str) -> str:
        self._arrow(f)
        return self._inverse[f]

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        if x not in self._objset or y not in self._objset:
            raise UnknownId(f"unknown object in hom({x!r}, {y!r})")
        return self._hom.get((x, y), ())

    def aut(self, x: str) -> tuple[str, ...]:
        return self.hom(x, x)

    # components
    def _components(self) -> dict[str, str]:
        if self._comp_of is None:
            adj: dict[str, set[str]] = {x: set() for x in self._objects}
            for (s, t) in self._hom:
                adj[s].add(t)
                adj[t].add(s)
            comp: dict[str, str] = {}
            for x in self._objects:
                if x in comp:
                    continue
                members, queue = [x], deque([x])
                comp[x] = x
                while queue:
                    y = queue.popleft()
                    for z in adj[y]:
                        if z not in comp:
                            comp[z] = x
                            members.append(z)
                            queue.append(z)
                rep = min(members)
                for m in members:
                    comp[m] = rep
            self._comp_of = comp
        return self._comp_of

    def component_of(self, x: str) -> str:
        """Least object id in the component of x."""
        if x not in self._objset:
            raise UnknownId(f"unknown object {x!r}")
        return self._components()[x]

    def components(self) -> tuple[tuple[str, ...], ...]:
        groups: dict[str, list[str]] = {}
        for x in self._objects:
            groups.setdefault(self._components()[x], []).append(x)
        return tuple(tuple(groups[r]) for r in sorted(groups))

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_skeletal(self) -> bool:
        return all(len(c) == 1 for c in self.components())

    def connecting(self, x: str, y: str) -> str | None:
        """Least morphism x -> y, or None."""
        h = self.hom(x, y)
        return h[0] if h else None

    # derived structures
    def full_subgroupoid(self, objs: Iterable[str]):
        keep = set(objs)
        arrows = {f: st for f, st in self._arrows.items()
                  if st[0] in keep and st[1] in keep}
        comp = {(g, f): h for (g, f), h in self._compose.items()
                if f in arrows and g in arrows}
        inv = {f: self._inverse[f] for f in arrows}
        ident = {x: self._identity[x] for x in keep}
        return Groupoid(keep, arrows, ident, comp, inv, check=False)

    def to_json(self) -> dict:
        doc = {
            "objects": list(self._objects),
            "morphisms": [{"id": f, "src": self._arrows[f][0], "tgt": self._arrows[f][1]}
                          for f in self._morphisms],
            "compose": [[g, f, self._compose[(g, f)]]
                        for (g, f) in sorted(self._compose)],
            "inverse": [[f, self._inverse[f]] for f in self._morphisms],
            "identity": [[x, self._identity[x]] for x in self._objects],
        }
        return doc

    def tables(self):
        return (self._objects, dict(self._arrows), dict(self._identity),
                dict(self._compose), dict(self._inverse))

    def __eq__(self, other):
        return (type(self) is type(other) and self.to_json() == other.to_json())

    def __hash__(self):
        return hash((self._objects, self._morphisms))

    def __repr__(self):
        return f"{type(self).__name__}({len(self._objects)} objects, {len(self._morphisms)} morphisms)"


class PointedGroupoid(Groupoid):
    def __init__(self, objects, arrows, identity, compose, inverse, basepoint, *,
                 check: bool = True):
        super().__init__(objects, arrows, identity, compose, inverse, check=check)
        if basepoint not in self._objset:
            raise MalformedGroupoid([Violation("gpd.ids", f"basepoint {basepoint!r} is not an object")])
        self.basepoint = basepoint
        self._star = tuple(f for f in self._morphisms if self._arrows[f][1] == basepoint)

    def star(self) -> tuple[str, ...]:
        """Morphisms with target the basepoint."""
        return self._star

    def delta(self, f: str) -> str:
        """Source of a star element."""
        s, t = self._arrow(f)
        if t != self.basepoint:
            raise GroupoidError(f"{f!r} is not in the star of {self.basepoint!r}")
        return s

    def zero_track(self) -> str:
        return self.identity(self.basepoint)

    def full_subgroupoid(self, objs):
        objs = set(objs)
        base = Groupoid.full_subgroupoid(self, objs)
        return PointedGroupoid(*base.tables(), self.basepoint, check=False)

    def to_json(self):
        doc = super().to_json()
        doc["basepoint"] = self.basepoint
        return doc


class StrictlyAbelianGroupoid(PointedGroupoid):
    """Pointed groupoid with chosen isomorphisms psi_x: Aut(x) -> Aut(0).

    The constructor only checks that every psi_x is a total map
    Aut(x) -> Aut(0); the coherence conditions are reported by
    :func:`validate_strictly_abelian`.
    """

    def __init__(self, objects, arrows, identity, compose, inverse, basepoint,
                 psi: Mapping[str, Mapping[str, str]], *, check: bool = True):
        super().__init__(objects, arrows, identity, compose, inverse, basepoint, check=check)
        self._psi = {x: dict(t) for x, t in psi.items()}
        if check:
            rb = ReportBuilder(4)
            aut0 = set(self.aut(basepoint))
            for x in self._objects:
                t = self._psi.get(x)
                if t is None:
                    rb.add("sag.psi-shape", f"no psi table for {x}")
                    continue
                if set(t) != set(self.aut(x)):
                    rb.add("sag.psi-shape", f"psi_{x} is not defined exactly on Aut({x})")
                if not set(t.values()) <= aut0:
                    rb.add("sag.psi-shape", f"psi_{x} leaves Aut(0)")
            if rb.items:
                raise MalformedGroupoid(rb.result())

    def psi(self, x: str, alpha: str) -> str:
        try:
            return self._psi[x][alpha]
        except KeyError:
            raise UnknownId(f"psi_{x} undefined on {alpha!r}") from None

    def psi_inverse(self, x: str, beta: str) -> str:
        for a, b in self._psi[x].items():
            if b == beta:
                return a
        raise UnknownId(f"{beta!r} not in the image of psi_{x}")

    def psi_table(self, x: str) -> dict[str, str]:
        return dict(self._psi[x])

    def full_subgroupoid(self, objs):
        objs = set(objs)
        base = Groupoid.full_subgroupoid(self, objs)
        return StrictlyAbelianGroupoid(*base.tables(), self.basepoint,
                                       {x: self._psi[x] for x in objs}, check=False)

    def to_json(self):
        doc = super().to_json()
        doc["psi"] = [[x, [[a, self._psi[x][a]] for a in sorted(self._psi[x])]]
                      for x in self._objects]
        return doc


# ---------------------------------------------------------------------------
# operations


def compose(G: Groupoid, g: str, f: str) -> str:
    return G.compose(g, f)


def change_of_basepoint(G: Groupoid, f: str) -> dict[str, str]:
    """The isomorphism Aut(y) -> Aut(x), alpha -> f^-1 □ alpha □ f, for f: x -> y."""
    x, y = G.src(f), G.tgt(f)
    fi = G.inverse(f)
    return {a: G.compose(fi, G.compose(a, f)) for a in G.aut(y)}


def validate_strictly_abelian(G: StrictlyAbelianGroupoid,
                              per_clause: int | None = None) -> list[Violation]:
    """Report every violated condition of a strictly abelian groupoid."""
    rb = ReportBuilder(per_clause)
    zero = G.basepoint
    aut0 = G.aut(zero)
    for a, b in itertools.product(aut0, aut0):
        if G.compose(a, b) != G.compose(b, a):
            rb.add("sag.abelian", f"{a} and {b} do not commute in Aut({zero})")
    for x in G.objects:
        table = G.psi_table(x)
        if len(set(table.values())) != len(aut0) or len(table) != len(aut0):
            rb.add("sag.psi-bijective", f"psi_{x} is not a bijection onto Aut({zero})")
        auts = G.aut(x)
        for a, b in itertools.product(auts, auts):
            if table[G.compose(a, b)] != G.compose(table[a], table[b]):
                rb.add("sag.psi-homomorphism", f"psi_{x} fails on ({a}, {b})")
    for f in G.morphisms:
        x, y = G.src(f), G.tgt(f)
        phi = change_of_basepoint(G, f)
        for alpha in G.aut(y):
            if G.psi(x, phi[alpha]) != G.psi(y, alpha):
                rb.add("sag.square", f"psi_{x}(phi^{f}({alpha})) != psi_{y}({alpha})")
    return rb.result()


class Functor:
    """A functor between finite groupoids given by object and morphism maps."""

    def __init__(self, source: Groupoid, target: Groupoid,
                 on_objects: Mapping[str, str], on_morphisms: Mapping[str, str]):
        self.source = source
        self.target = target
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)

    def obj(self, x):
        return self.on_objects[x]

    def mor(self, f):
        return self.on_morphisms[f]

    def violations(self, prefix: str = "functor") -> list[Violation]:
        rb = ReportBuilder(4)
        S, T = self.source, self.target
        for x in S.objects:
            if self.on_objects.get(x) is None or not T.has_object(self.on_objects[x]):
                rb.add(f"{prefix}.total", f"object {x} unmapped")
        for f in S.morphisms:
            if self.on_morphisms.get(f) is None or not T.has_morphism(self.on_morphisms[f]):
                rb.add(f"{prefix}.total", f"morphism {f} unmapped")
        if rb.items:
            return rb.result()
        for f in S.morphisms:
            Ff = self.on_morphisms[f]
            if (T.src(Ff), T.tgt(Ff)) != (self.on_objects[S.src(f)], self.on_objects[S.tgt(f)]):
                rb.add(f"{prefix}.endpoints", f"F({f}) has wrong endpoints")
        for x in S.objects:
            if self.on_morphisms[S.identity(x)] != T.identity(self.on_objects[x]):
                rb.add(f"{prefix}.identity", f"F(id_{x}) is not an identity")
        if rb.items:
            return rb.result()
        for f in S.morphisms:
            y = S.tgt(f)
            for g in (g for z in S.objects for g in S.hom(y, z)):
                if self.on_morphisms[S.compose(g, f)] != T.compose(self.on_morphisms[g], self.on_morphisms[f]):
                    rb.add(f"{prefix}.composition", f"F({g}□{f}) != F({g})□F({f})")
        if isinstance(S, PointedGroupoid) and isinstance(T, PointedGroupoid):
            if self.on_objects[S.basepoint] != T.basepoint:
                rb.add(f"{prefix}.pointed", "basepoint not preserved")
        return rb.result()

    def is_fully_faithful(self) -> bool:
        S, T = self.source, self.target
        for x in S.objects:
            for y in S.objects:
                img = [self.on_morphisms[f] for f in S.hom(x, y)]
                if len(set(img)) != len(img):
                    return False
                if set(img) != set(T.hom(self.on_objects[x], self.on_objects[y])):
                    return False
        return True

    def is_essentially_surjective(self) -> bool:
        hit = {self.target.component_of(self.on_objects[x]) for x in self.source.objects}
        return all(self.target.component_of(y) in hit for y in self.target.objects)

    def is_equivalence(self) -> bool:
        return self.is_fully_faithful() and self.is_essentially_surjective()

    def then(self, other: "Functor") -> "Functor":
        return Functor(self.source, other.target,
                       {x: other.on_objects[y] for x, y in self.on_objects.items()},
                       {f: other.on_morphisms[g] for f, g in self.on_morphisms.items()})


def identity_functor(G: Groupoid) -> Functor:
    return Functor(G, G, {x: x for x in G.objects}, {f: f for f in G.morphisms})


def skeleton_representatives(G: Groupoid) -> list[str]:
    """One object per component: the least id, except that a basepoint
    always represents its own component."""
    reps = {}
    for comp in G.components():
        reps[comp[0]] = comp[0]
    if isinstance(G, PointedGroupoid):
        reps[G.component_of(G.basepoint)] = G.basepoint
    return sorted(reps.values())


def skeleton(G: Groupoid):
    """Full subgroupoid on one representative per component, with its
    inclusion functor."""
    reps = skeleton_representatives(G)
    sk = G.full_subgroupoid(reps)
    inc = Functor(sk, G, {x: x for x in sk.objects}, {f: f for f in sk.morphisms})
    return sk, inc


# ---------------------------------------------------------------------------
# finite groups


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, elements: Iterable[str], mul: Mapping[tuple[str, str], str],
                 identity: str, *, check: bool = True):
        self.elements = tuple(sorted(set(elements)))
        self._mul = dict(mul)
        self.identity = identity
        if check:
            self._check()
        self._inv = {}
        for a in self.elements:
            for b in self.elements:
                if self._mul[(a, b)] == identity:
                    self._inv[a] = b
                    break

    def _check(self):
        els = set(self.elements)
        if self.identity not in els:
            raise GroupoidError("identity is not an element")
        for a in self.elements:
            for b in self.elements:
                if self._mul.get((a, b)) not in els:
                    raise GroupoidError(f"product {a}*{b} missing")
        for a in self.elements:
            if self._mul[(a, self.identity)] != a or self._mul[(self.identity, a)] != a:
                raise GroupoidError(f"unit law fails at {a}")
            if not any(self._mul[(a, b)] == self.identity for b in self.elements):
                raise GroupoidError(f"{a} has no inverse")
        for a, b, c in itertools.product(self.elements, repeat=3):
            if self._mul[(self._mul[(a, b)], c)] != self._mul[(a, self._mul[(b, c)])]:
                raise GroupoidError(f"associativity fails at ({a},{b},{c})")

    def mul(self, a: str, b: str) -> str:
        return self._mul[(a, b)]

    def inv(self, a: str) -> str:
        return self._inv[a]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_abelian(self) -> bool:
        return all(self._mul[(a, b)] == self._mul[(b, a)]
                   for a in self.elements for b in self.elements)

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "identity": self.identity,
                "mul": [[a, b, self._mul[(a, b)]] for a in self.elements for b in self.elements]}

    @classmethod
    def from_json(cls, doc) -> "FiniteGroup":
        return cls(doc["elements"], {(a, b): c for a, b, c in doc["mul"]}, doc["identity"])

    def relabel(self, mapping: Mapping[str, str]) -> "FiniteGroup":
        return FiniteGroup([mapping[a] for a in self.elements],
                           {(mapping[a], mapping[b]): mapping[c] for (a, b), c in self._mul.items()},
                           mapping[self.identity], check=False)

    def to_groupoid(self, obj: str = "*") -> PointedGroupoid:
        arrows = {g: (obj, obj) for g in self.elements}
        return PointedGroupoid([obj], arrows, {obj: self.identity}, self._mul,
                               dict(self._inv), obj, check=False)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def cyclic_group(n: int, prefix: str = "") -> FiniteGroup:
    els = [f"{prefix}{i}" for i in range(n)]
    mul = {(els[i], els[j]): els[(i + j) % n] for i in range(n) for j in range(n)}
    return FiniteGroup(els, mul, els[0], check=False)


def trivial_group(name: str = "e") -> FiniteGroup:
    return FiniteGroup([name], {(name, name): name}, name, check=False)


def symmetric_group(n: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(n)))
    name = {p: "".join(str(i + 1) for i in p) for p in perms}
    mul = {}
    for p in perms:
        for q in perms:
            # (p*q)(i) = p(q(i))
            mul[(name[p], name[q])] = name[tuple(p[q[i]] for i in range(n))]
    return FiniteGroup(name.values(), mul, name[tuple(range(n))], check=False)


def product_group(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    els = {(a, b): pair_id(a, b) for a in G.elements for b in H.elements}
    mul = {}
    for (a, b), ab in els.items():
        for (c, d), cd in els.items():
            mul[(ab, cd)] = els[(G.mul(a, c), H.mul(b, d))]
    return FiniteGroup(els.values(), mul, els[(G.identity, H.identity)], check=False)


def aut_group(G: Groupoid, x: str) -> FiniteGroup:
    auts = G.aut(x)
    mul = {(a, b): G.compose(a, b) for a in auts for b in auts}
    return FiniteGroup(auts, mul, G.identity(x), check=False)


def is_group_isomorphism(phi: Mapping[str, str], G: FiniteGroup, H: FiniteGroup) -> bool:
    if set(phi) != set(G.elements):
        return False
    if sorted(phi.values()) != sorted(H.elements):
        return False
    return all(phi[G.mul(a, b)] == H.mul(phi[a], phi[b])
               for a in G.elements for b in G.elements)


def is_group_homomorphism(phi: Mapping[str, str], G: FiniteGroup, H: FiniteGroup) -> bool:
    if set(phi) != set(G.elements) or not set(phi.values()) <= set(H.elements):
        return False
    return all(phi[G.mul(a, b)] == H.mul(phi[a], phi[b])
               for a in G.elements for b in G.elements)


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> dict[str, str] | None:
    """Brute-force isomorphism search for small groups (used by tests)."""
    if G.order != H.order:
        return None
    els = [a for a in G.elements if a != G.identity]
    # choose a generating set greedily, then extend by backtracking
    gens: list[str] = []
    span = {G.identity}
    for a in els:
        if a not in span:
            gens.append(a)
            span = _closure(G, gens)
    for images in itertools.permutations(H.elements, len(gens)):
        phi = _extend(G, H, gens, images)
        if phi is not None and is_group_isomorphism(phi, G, H):
            return phi
    return None


def _closure(G: FiniteGroup, gens) -> set[str]:
    span = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = G.mul(a, g)
                if b not in span:
                    span.add(b)
                    nxt.append(b)
        frontier = nxt
    return span


def _extend(G, H, gens, images):
    phi = {G.identity: H.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g, h in zip(gens, images):
                b = G.mul(a, g)
                hb = H.mul(phi[a], h)
                if b in phi:
                    if phi[b] != hb:
                        return None
                else:
                    phi[b] = hb
                    nxt.append(b)
        frontier = nxt
    return phi


# ---------------------------------------------------------------------------
# JSON


def groupoid_from_json(doc: Mapping, *, check: bool = True) -> Groupoid:
    arrows = {m["id"]: (m["src"], m["tgt"]) for m in doc["morphisms"]}
    if len(arrows) != len(doc["morphisms"]):
        raise MalformedGroupoid([Violation("gpd.ids", "duplicate morphism id")])
    if len(set(doc["objects"])) != len(doc["objects"]):
        raise MalformedGroupoid([Violation("gpd.ids", "duplicate object id")])
    comp = {(g, f): gf for g, f, gf in doc["compose"]}
    inv = {f: fi for f, fi in doc["inverse"]}
    ident = {x: i for x, i in doc["identity"]}
    args = (doc["objects"], arrows, ident, comp, inv)
    if "psi" in doc and doc["psi"] is not None:
        psi = {x: {a: b for a, b in table} for x, table in doc["psi"]}
        return StrictlyAbelianGroupoid(*args, doc["basepoint"], psi, check=check)
    if doc.get("basepoint") is not None:
        return PointedGroupoid(*args, doc["basepoint"], check=check)
    return Groupoid(*args, check=check)


def groupoid_violations_json(doc: Mapping) -> list[Violation]:
    """Report for a groupoid document without raising (used by the CLI)."""
    try:
        arrows = {m["id"]: (m["src"], m["tgt"]) for m in doc["morphisms"]}
        comp = {(g, f): gf for g, f, gf in doc["compose"]}
        inv = {f: fi for f, fi in doc["inverse"]}
        ident = {x: i for x, i in doc["identity"]}
    except (KeyError, TypeError, ValueError) as exc:
        return [Violation("gpd.ids", f"malformed document: {exc}")]
    rep = groupoid_violations(doc["objects"], arrows, ident, comp, inv)
    if rep:
        return rep
    G = groupoid_from_json(doc, check=False)
    if doc.get("basepoint") is not None and doc["basepoint"] not in set(doc["objects"]):
        return [Violation("gpd.ids", "basepoint is not an object")]
    if isinstance(G, StrictlyAbelianGroupoid):
        try:
            G = groupoid_from_json(doc)
        except MalformedGroupoid as exc:
            return exc.report
        return validate_strictly_abelian(G)
    return []


# ---------------------------------------------------------------------------
# builders used by fixtures and tests


def group_as_sag(G: FiniteGroup, obj: str = "*") -> StrictlyAbelianGroupoid:
    """One-object groupoid of an abelian group with psi = identity."""
    if not G.is_abelian():
        raise NotAbelian("a strictly abelian groupoid needs an abelian vertex group at 0")
    base = G.to_groupoid(obj)
    psi = {obj: {g: g for g in G.elements}}
    return StrictlyAbelianGroupoid(*base.tables(), obj, psi)


def disjoint_groups(groups: Mapping[str, FiniteGroup], basepoint: str,
                    psi: Mapping[str, Mapping[str, str]] | None = None) -> StrictlyAbelianGroupoid:
    """Disjoint union of one-object groupoids, with explicit psi tables.

    Morphism ids are ``pair_id(object, element)``.  When psi is omitted every
    group must have the same element ids as the basepoint group and psi is the
    evident identification.
    """
    arrows, ident, comp, inv = {}, {}, {}, {}
    for x, G in groups.items():
        for g in G.elements:
            arrows[pair_id(x, g)] = (x, x)
        ident[x] = pair_id(x, G.identity)
        for a in G.elements:
            inv[pair_id(x, a)] = pair_id(x, G.inv(a))
            for b in G.elements:
                comp[(pair_id(x, a), pair_id(x, b))] = pair_id(x, G.mul(a, b))
    if psi is None:
        psi_t = {x: {pair_id(x, g): pair_id(basepoint, g) for g in G.elements}
                 for x, G in groups.items()}
    else:
        psi_t = {x: {pair_id(x, a): pair_id(basepoint, b) for a, b in t.items()}
                 for x, t in psi.items()}
    return StrictlyAbelianGroupoid(groups.keys(), arrows, ident, comp, inv, basepoint, psi_t)
