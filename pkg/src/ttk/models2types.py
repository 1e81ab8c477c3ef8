"""Pointed double groupoids (edge symmetric, with connections) and the
forgetful functor U to 2-track groupoids.

Squares are drawn with axis 1 horizontal and axis 2 vertical, so for a
square u the faces are ∂1-(u) = left, ∂1+(u) = right, ∂2-(u) = bottom,
∂2+(u) = top.  Compositions are written in diagrammatic order: u +1 v puts
v to the right of u, u +2 v puts v on top of u.  U uses

    v □ u    = (Γ+(b) +2 u) +1 v            for u: a => b, v: b => c
    id_a     = Γ-(a)
    u^-1     = ((-1)Γ+(b) +2 (-1)u) +1 Γ-(a)
    psi_a^-1 = u -> Γ-(a) +1 u
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .gpd import FiniteGroup, pair_id, PointedGroupoid, StrictlyAbelianGroupoid, cyclic_group, product_group, \
    trivial_group
from .report import ReportBuilder, Violation
from .ttg import TwoTrackGroupoid


class InvalidDouble(Exception):
    def __init__(self, report_or_msg):
        if isinstance(report_or_msg, str):
            self.report = [Violation("double.relation", report_or_msg)]
        else:
            self.report = list(report_or_msg)
        super().__init__("; ".join(f"{v.clause}: {v.detail}" for v in self.report[:5]))


class DoubleGroupoid:
    """Finite double groupoid as explicit tables.

    edges: id -> (source, target) in D0; ``edge_comp[(a, b)]`` is a + b
    (a then b), ``edge_inv``, ``eps`` (D0 -> D1);
    squares: id -> (left, bottom, right, top);
    ``comp1``, ``comp2``: partial tables (u, v) -> u +1 v, u +2 v;
    ``neg1``: the +1 inverse; ``eps1``, ``eps2``: D1 -> D2 (eps1(a) has
    left = right = a, eps2(a) has bottom = top = a); ``gamma_minus``,
    ``gamma_plus``: D1 -> D2.
    """

    def __init__(self, D0, edges: Mapping[str, tuple[str, str]], edge_comp, edge_inv, eps,
                 squares: Mapping[str, tuple[str, str, str, str]], comp1, comp2, neg1, eps1, eps2,
                 gamma_minus, gamma_plus, basepoint: str):
        self.D0 = tuple(sorted(D0))
        self.edges = dict(edges)
        self.edge_comp = dict(edge_comp)
        self.edge_inv = dict(edge_inv)
        self.eps = dict(eps)
        self.squares = dict(squares)
        self.comp1 = dict(comp1)
        self.comp2 = dict(comp2)
        self.neg1 = dict(neg1)
        self.eps1 = dict(eps1)
        self.eps2 = dict(eps2)
        self.gamma_minus = dict(gamma_minus)
        self.gamma_plus = dict(gamma_plus)
        self.basepoint = basepoint

    # faces
    def left(self, u):
        return self.squares[u][0]

    def bottom(self, u):
        return self.squares[u][1]

    def right(self, u):
        return self.squares[u][2]

    def top(self, u):
        return self.squares[u][3]

    def thin(self, x) -> str:
        """The thin square at an object, eps1(eps(x))."""
        return self.eps1[self.eps[x]]

    def to_json(self) -> dict:
        return {
            "D0": list(self.D0),
            "edges": [[a, s, t] for a, (s, t) in sorted(self.edges.items())],
            "edge_comp": [[a, b, c] for (a, b), c in sorted(self.edge_comp.items())],
            "edge_inv": sorted([a, b] for a, b in self.edge_inv.items()),
            "eps": sorted([x, a] for x, a in self.eps.items()),
            "squares": [[u, *f] for u, f in sorted(self.squares.items())],
            "comp1": [[u, v, w] for (u, v), w in sorted(self.comp1.items())],
            "comp2": [[u, v, w] for (u, v), w in sorted(self.comp2.items())],
            "neg1": sorted([u, v] for u, v in self.neg1.items()),
            "eps1": sorted([a, u] for a, u in self.eps1.items()),
            "eps2": sorted([a, u] for a, u in self.eps2.items()),
            "gamma_minus": sorted([a, u] for a, u in self.gamma_minus.items()),
            "gamma_plus": sorted([a, u] for a, u in self.gamma_plus.items()),
            "basepoint": self.basepoint,
        }

    @classmethod
    def from_json(cls, doc) -> "DoubleGroupoid":
        pairs = lambda k: {a: b for a, b in doc[k]}
        return cls(doc["D0"], {a: (s, t) for a, s, t in doc["edges"]},
                   {(a, b): c for a, b, c in doc["edge_comp"]}, pairs("edge_inv"), pairs("eps"),
                   {u: tuple(f) for u, *f in doc["squares"]},
                   {(u, v): w for u, v, w in doc["comp1"]}, {(u, v): w for u, v, w in doc["comp2"]},
                   pairs("neg1"), pairs("eps1"), pairs("eps2"), pairs("gamma_minus"),
                   pairs("gamma_plus"), doc["basepoint"])


def _ub_squares(D: DoubleGroupoid):
    """Squares whose right and top faces are the degenerate edge at x0."""
    e0 = D.eps[D.basepoint]
    return sorted(u for u, (l, b, r, t) in D.squares.items() if r == e0 and t == e0)


def _ud_objects(D):
    return sorted(a for a, (s, t) in D.edges.items() if t == D.basepoint)


def validate_double(D: DoubleGroupoid, per_clause: int | None = None) -> list[Violation]:
    """The identities U relies on: face conditions of the structure maps,
    faces and units of both compositions, the +1 inverse, the thin-square
    simplifications used in the formulas, associativity on the squares U
    touches, and the interchange instance behind the two forms of v □ u."""
    rb = ReportBuilder(per_clause)
    E = D.edges
    if D.basepoint not in D.D0:
        rb.add("double.ids", "basepoint is not an object")
        return rb.result()
    for x in D.D0:
        a = D.eps.get(x)
        if a not in E or E[a] != (x, x):
            rb.add("double.eps", f"eps({x}) is not a loop at {x}")
    for (a, b), c in D.edge_comp.items():
        if E[a][1] != E[b][0] or E[c] != (E[a][0], E[b][1]):
            rb.add("double.edges", f"{a} + {b} = {c} has the wrong ends")
    for a, (s, t) in E.items():
        if D.edge_comp.get((D.eps[s], a)) != a or D.edge_comp.get((a, D.eps[t])) != a:
            rb.add("double.edges", f"eps is not a unit for {a}")
        ai = D.edge_inv.get(a)
        if ai is None or D.edge_comp.get((a, ai)) != D.eps[s]:
            rb.add("double.edges", f"{a} has no inverse")
    if rb.items:
        return rb.result()

    def corners_ok(u):
        l, b, r, t = D.squares[u]
        return E[l][0] == E[b][0] and E[b][1] == E[r][0] and E[l][1] == E[t][0] and E[t][1] == E[r][1]

    for u in D.squares:
        if not corners_ok(u):
            rb.add("double.faces", f"square {u} has mismatched corners")
    for a, (s, t) in E.items():
        es, et = D.eps[s], D.eps[t]
        want = {
            "eps1": (a, es, a, et), "eps2": (es, a, et, a),
            "gamma_minus": (a, a, et, et), "gamma_plus": (es, es, a, a),
        }
        for name, faces in want.items():
            u = getattr(D, name).get(a)
            if u is None or D.squares.get(u) != faces:
                rb.add(f"double.{name.replace('_', '-')}", f"{name}({a}) has faces "
                       f"{D.squares.get(u)}, expected {faces}")
    # compositions: faces and units
    for (u, v), w in D.comp1.items():
        if D.right(u) != D.left(v):
            rb.add("double.comp1", f"{u} +1 {v} is tabulated but not composable")
            continue
        want = (D.left(u), D.edge_comp[(D.bottom(u), D.bottom(v))], D.right(v),
                D.edge_comp[(D.top(u), D.top(v))])
        if D.squares[w] != want:
            rb.add("double.comp1", f"{u} +1 {v} has the wrong faces")
    for (u, v), w in D.comp2.items():
        if D.top(u) != D.bottom(v):
            rb.add("double.comp2", f"{u} +2 {v} is tabulated but not composable")
            continue
        want = (D.edge_comp[(D.left(u), D.left(v))], D.bottom(u),
                D.edge_comp[(D.right(u), D.right(v))], D.top(v))
        if D.squares[w] != want:
            rb.add("double.comp2", f"{u} +2 {v} has the wrong faces")
    for u in sorted(D.squares):
        l, b, r, t = D.squares[u]
        if D.comp1.get((u, D.eps1[r])) != u or D.comp1.get((D.eps1[l], u)) != u:
            rb.add("double.unit1", f"eps1 does not absorb at {u}")
        if D.comp2.get((u, D.eps2[t])) != u or D.comp2.get((D.eps2[b], u)) != u:
            rb.add("double.unit2", f"eps2 does not absorb at {u}")
        n = D.neg1.get(u)
        if n is None or D.comp1.get((u, n)) != D.eps1[l]:
            rb.add("double.neg1", f"-1 {u} is not a +1 inverse")
    if rb.items:
        return rb.result()
    # the simplifications used by U
    x0 = D.basepoint
    thin = D.thin(x0)
    ub = _ub_squares(D)
    e0 = D.eps[x0]
    for v in ub:
        if D.comp2.get((v, thin)) != v:
            rb.add("double.thin", f"{v} +2 (thin square at x0) != {v}")
        if D.bottom(v) == e0 and D.comp2.get((thin, v)) != v:
            rb.add("double.thin", f"(thin square at x0) +2 {v} != {v}")
    for a in _ud_objects(D):
        if D.comp2.get((D.eps2[a], D.gamma_minus[a])) != D.gamma_minus[a]:
            rb.add("double.thin", f"eps2({a}) +2 Γ-({a}) != Γ-({a})")
        for u in (w for w in ub if D.left(w) == D.eps[x0] and D.bottom(w) == D.eps[x0]):
            g = D.gamma_minus[a]
            if D.comp1.get((g, u)) != D.comp2.get((g, u)):
                rb.add("double.interchange", f"Γ-({a}) +1 {u} != Γ-({a}) +2 {u}")
    # the two forms of v □ u agree
    for u in ub:
        b = D.bottom(u)
        gp = D.gamma_plus[b]
        for v in ub:
            if D.left(v) != b:
                continue
            one = D.comp1.get((D.comp2.get((gp, u)), v))
            two = D.comp2.get((D.comp1.get((gp, v)), u))
            if one is None or one != two:
                rb.add("double.interchange", f"(Γ+({b}) +2 {u}) +1 {v} != (Γ+({b}) +1 {v}) +2 {u}")
    # associativity of both compositions on the squares U touches
    touched = set(ub)
    for a in _ud_objects(D):
        touched |= {D.gamma_minus[a], D.gamma_plus[a], D.eps2[a]}
    touched |= {D.neg1[u] for u in list(touched)}
    touched = sorted(touched)
    for comp, clause, fa, fb in ((D.comp1, "double.assoc1", D.right, D.left),
                                 (D.comp2, "double.assoc2", D.top, D.bottom)):
        for u, v, w in itertools.product(touched, repeat=3):
            if fa(u) != fb(v) or fa(v) != fb(w):
                continue
            uv, vw = comp.get((u, v)), comp.get((v, w))
            if uv is None or vw is None or comp.get((uv, w)) != comp.get((u, vw)):
                rb.add(clause, f"({u}, {v}, {w})")
    return rb.result()


@dataclass(frozen=True)
class HomotopyRelation:
    classes: tuple[tuple[str, ...], ...]
    cls: dict

    def rep(self, a):
        return self.cls[a]


def homotopy_relation(D: DoubleGroupoid) -> HomotopyRelation:
    """a ~ b iff some square has bottom a, top b and degenerate left and
    right faces.  The relation is used exactly as defined and must be an
    equivalence relation; otherwise InvalidDouble is raised."""
    rel = set()
    for u, (l, b, r, t) in D.squares.items():
        s, tt = D.edges[b]
        if D.edges[t] == (s, tt) and l == D.eps[s] and r == D.eps[tt]:
            rel.add((b, t))
    edges = sorted(D.edges)
    for a in edges:
        if (a, a) not in rel:
            raise InvalidDouble(f"homotopy relation is not reflexive at {a}")
    for a, b in rel:
        if (b, a) not in rel:
            raise InvalidDouble(f"homotopy relation is not symmetric at ({a}, {b})")
    succ: dict = {}
    for a, b in rel:
        succ.setdefault(a, set()).add(b)
    for a, b in rel:
        for c in succ[b]:
            if (a, c) not in rel:
                raise InvalidDouble(f"homotopy relation is not transitive at ({a}, {b}, {c})")
    cls = {a: min(succ[a]) for a in edges}
    classes = tuple(sorted({tuple(sorted(succ[a])) for a in edges}))
    return HomotopyRelation(classes, cls)


def forget_double(D: DoubleGroupoid) -> TwoTrackGroupoid:
    rep = validate_double(D)
    if rep:
        raise InvalidDouble(rep)
    H = homotopy_relation(D)
    x0 = D.basepoint
    name = lambda a: f"[{H.rep(a)}]"
    # UD(1)
    arrows, comp, inv, ident = {}, {}, {}, {}
    for a in D.edges:
        arrows[name(a)] = D.edges[a]
    for (a, b), c in D.edge_comp.items():
        # g □ f in the groupoid is f then g, i.e. f + g
        key = (name(b), name(a))
        if comp.setdefault(key, name(c)) != name(c):
            raise InvalidDouble("edge composition does not descend to homotopy classes")
    for a, b in D.edge_inv.items():
        if inv.setdefault(name(a), name(b)) != name(b):
            raise InvalidDouble("edge inverse does not descend to homotopy classes")
    for x in D.D0:
        ident[x] = name(D.eps[x])
    g1 = PointedGroupoid(D.D0, arrows, ident, comp, inv, x0)
    # UD(2)
    objs = _ud_objects(D)
    ub = _ub_squares(D)
    arrows2 = {u: (D.left(u), D.bottom(u)) for u in ub}
    ident2 = {a: D.gamma_minus[a] for a in objs}
    comp2, inv2 = {}, {}
    for u in ub:
        b = D.bottom(u)
        gp = D.gamma_plus[b]
        for v in ub:
            if D.left(v) == b:
                comp2[(v, u)] = D.comp1[(D.comp2[(gp, u)], v)]
        a = D.left(u)
        inv2[u] = D.comp1[(D.comp2[(D.neg1[gp], D.neg1[u])], D.gamma_minus[a])]
    e0 = D.eps[x0]
    aut0 = [u for u in ub if arrows2[u] == (e0, e0)]
    psi = {}
    for a in objs:
        back = {D.comp1[(D.gamma_minus[a], u)]: u for u in aut0}
        psi[a] = back
    g2 = StrictlyAbelianGroupoid(objs, arrows2, ident2, comp2, inv2, e0, psi)
    q = {a: name(a) for a in objs}
    return TwoTrackGroupoid(g1, g2, q)


# ---------------------------------------------------------------------------
# crossed modules


def double_from_crossed_module(P: FiniteGroup, M: FiniteGroup, act, mu, obj: str = "*") -> DoubleGroupoid:
    """The one-object double groupoid of a crossed module mu: M -> P with P
    abelian.  Squares are (left, bottom, right, top | m) with
    mu(m) = left + top - right - bottom; m is based at the bottom-left
    corner and moved along the path to its base by the action ``act(p, m)``.
    """
    if not P.is_abelian() or not M.is_abelian():
        raise ValueError("only abelian P and M are supported")
    add, neg = P.mul, P.inv
    madd = M.mul
    e = P.identity
    D0 = [obj]
    edges = {p: (obj, obj) for p in P.elements}
    edge_comp = {(a, b): add(a, b) for a in P.elements for b in P.elements}
    edge_inv = {a: neg(a) for a in P.elements}
    eps = {obj: e}

    def sq(l, b, r, t, m):
        return f"{l},{b},{r},{t}|{m}"

    squares, data = {}, {}
    for l, b, r, t in itertools.product(P.elements, repeat=4):
        h = add(add(l, t), neg(add(r, b)))
        for m in M.elements:
            if mu(m) == h:
                u = sq(l, b, r, t, m)
                squares[u] = (l, b, r, t)
                data[u] = (l, b, r, t, m)
    by_left: dict = {}
    by_bottom: dict = {}
    for u, (l, b, r, t, m) in data.items():
        by_left.setdefault(l, []).append(u)
        by_bottom.setdefault(b, []).append(u)
    comp1, comp2, neg1 = {}, {}, {}
    for u, (l, b, r, t, m) in data.items():
        for v in by_left.get(r, ()):
            l2, b2, r2, t2, m2 = data[v]
            comp1[(u, v)] = sq(l, add(b, b2), r2, add(t, t2), madd(m, act(b, m2)))
        for v in by_bottom.get(t, ()):
            l2, b2, r2, t2, m2 = data[v]
            comp2[(u, v)] = sq(add(l, l2), b, add(r, r2), t2, madd(m, act(l, m2)))
        neg1[u] = sq(r, neg(b), l, neg(t), act(neg(b), M.inv(m)))
    z = M.identity
    eps1 = {a: sq(a, e, a, e, z) for a in P.elements}
    eps2 = {a: sq(e, a, e, a, z) for a in P.elements}
    gm = {a: sq(a, a, e, e, z) for a in P.elements}
    gp = {a: sq(e, e, a, a, z) for a in P.elements}
    return DoubleGroupoid(D0, edges, edge_comp, edge_inv, eps, squares, comp1, comp2, neg1,
                          eps1, eps2, gm, gp, obj)


def dg1() -> DoubleGroupoid:
    """P = Z/4, M = Z/2 x Z/2 with the generator of P swapping the factors
    and mu(e1) = mu(e2) = 2; pi1 = coker mu = Z/2, pi2 = ker mu = Z/2."""
    P = cyclic_group(4, "p")
    Z2 = cyclic_group(2, "")
    M = product_group(Z2, Z2)

    name = {(a, b): pair_id(str(a), str(b)) for a in (0, 1) for b in (0, 1)}
    inv_name = {m: ab for ab, m in name.items()}

    def coords(m):
        return inv_name[m]

    def act(p, m):
        a, b = coords(m)
        return name[(b, a)] if int(p[1:]) % 2 else m

    def mu(m):
        a, b = coords(m)
        return f"p{(2 * (a + b)) % 4}"
    return double_from_crossed_module(P, M, act, mu)


def abelian_double(M: FiniteGroup) -> DoubleGroupoid:
    """One object, trivial edges, squares = M with both compositions the
    group law and constant connections."""
    P = trivial_group("e")
    return double_from_crossed_module(P, M, lambda p, m: m, lambda m: "e")


def trivial_double() -> DoubleGroupoid:
    return abelian_double(trivial_group("0"))
