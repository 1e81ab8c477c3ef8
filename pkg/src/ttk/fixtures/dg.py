"""Finite 2-track algebras from small differential graded quivers over F2.

A quiver has objects and generators ``g: S -> T`` of degree 0..3, each with
a boundary given as an F2 sum of words.  Words compose like functions:
``x1.x2`` means x1 after x2.  Monomial relations (forbidden subwords) are
allowed as long as the boundary preserves them.  The quiver must be
acyclic so that every hom complex is finite.

From the hom complexes C_k = C_k(S, T) the algebra is built as

* degree 0 elements: C_0;
* tracks x -> x + ∂h for h in C_1 / ∂C_2;
* left paths: C_1, with boundary ∂a;
* left 2-tracks a => a + ∂α for α in C_2 / ∂C_3;

with ψ forgetting the source, q(a) the track from ∂a to 0 of class [a],
and ⊗ induced by multiplication of words.  Over F2 the Leibniz rule
needs no signs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..gpd import PointedGroupoid, StrictlyAbelianGroupoid
from ..tta import TwoTrackAlgebra
from ..ttg import TwoTrackGroupoid


class QuiverError(Exception):
    pass


@dataclass(frozen=True)
class Gen:
    name: str
    src: str
    tgt: str
    degree: int
    boundary: tuple = ()    # tuple of words, each a tuple of generator names


def _parse_sum(expr: str) -> list[tuple[str, ...]]:
    expr = expr.strip()
    if expr in ("", "0"):
        return []
    out = []
    for term in expr.split("+"):
        term = term.strip()
        out.append(() if term == "1" else tuple(t for t in term.split(".") if t))
    return out


def _echelon(vecs):
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


def _span(piv):
    vecs = list(piv.values())
    out = []
    for bits in range(1 << len(vecs)):
        v = 0
        for i, w in enumerate(vecs):
            if bits >> i & 1:
                v ^= w
        out.append(v)
    return sorted(out)


@dataclass
class HomComplex:
    S: str
    T: str
    basis: dict = field(default_factory=dict)     # degree -> list of words
    index: dict = field(default_factory=dict)     # word -> (degree, position)


class LinearQuiver:
    def __init__(self, objects, generators, forbidden=()):
        self.objects = tuple(objects)
        self.gens: dict[str, Gen] = {}
        for g in generators:
            name, S, T, deg = g[0], g[1], g[2], g[3]
            bd = tuple(_parse_sum(g[4])) if len(g) > 4 else ()
            if deg not in (0, 1, 2, 3):
                raise QuiverError(f"generator {name} has degree {deg}")
            if deg == 0 and bd:
                raise QuiverError(f"degree 0 generator {name} has a boundary")
            if S not in self.objects or T not in self.objects:
                raise QuiverError(f"generator {name} has unknown ends")
            self.gens[name] = Gen(name, S, T, deg, bd)
        self.forbidden = [tuple(_parse_sum(w)[0]) for w in forbidden]
        self._check_acyclic()
        self._homs: dict[tuple[str, str], HomComplex] = {}
        self._enumerate_words()
        self._check_boundaries()

    # -- words ------------------------------------------------------------
    def word_ends(self, w):
        """(source, target) of a nonempty composable word, else None."""
        for u, v in zip(w, w[1:]):
            if self.gens[u].src != self.gens[v].tgt:
                return None
        return self.gens[w[-1]].src, self.gens[w[0]].tgt

    def word_degree(self, w):
        return sum(self.gens[g].degree for g in w)

    def is_zero_word(self, w):
        for f in self.forbidden:
            n = len(f)
            for i in range(len(w) - n + 1):
                if w[i:i + n] == f:
                    return True
        return False

    def _check_acyclic(self):
        succ = {X: set() for X in self.objects}
        for g in self.gens.values():
            succ[g.src].add(g.tgt)
        state = {}

        def visit(X):
            state[X] = 1
            for Y in succ[X]:
                if state.get(Y) == 1:
                    raise QuiverError("the quiver has a cycle; hom complexes would be infinite")
                if Y not in state:
                    visit(Y)
            state[X] = 2
        for X in self.objects:
            if X not in state:
                visit(X)

    def _enumerate_words(self):
        for S in self.objects:
            for T in self.objects:
                self._homs[(S, T)] = HomComplex(S, T, {k: [] for k in range(5)})
        for X in self.objects:
            self._homs[(X, X)].basis[0].append(())
        # words grow on the left; start from each generator
        frontier = [(g,) for g in sorted(self.gens)]
        while frontier:
            nxt = []
            for w in frontier:
                if self.is_zero_word(w):
                    continue
                S, T = self.word_ends(w)
                d = self.word_degree(w)
                if d <= 4:
                    self._homs[(S, T)].basis[d].append(w)
                for g in sorted(self.gens):
                    if self.gens[g].src == T:
                        nxt.append((g,) + w)
            frontier = nxt
        for H in self._homs.values():
            for d in H.basis:
                H.basis[d].sort(key=lambda w: (len(w), w))
                for i, w in enumerate(H.basis[d]):
                    H.index[w] = (d, i)

    # -- vectors ----------------------------------------------------------
    def hom(self, S, T) -> HomComplex:
        return self._homs[(S, T)]

    def vec(self, S, T, words) -> int:
        """Bit vector of a sum of words in hom(S, T); forbidden words vanish."""
        H = self._homs[(S, T)]
        v = 0
        for w in words:
            w = tuple(w)
            if w != () and self.is_zero_word(w):
                continue
            if w not in H.index:
                raise QuiverError(f"word {'.'.join(w) or '1'} is not in hom({S},{T})")
            v ^= 1 << H.index[w][1]
        return v

    def parse(self, S, T, expr: str) -> int:
        return self.vec(S, T, _parse_sum(expr))

    def words_of(self, S, T, d, v):
        B = self._homs[(S, T)].basis[d]
        return [B[i] for i in range(len(B)) if v >> i & 1]

    def show(self, S, T, d, v) -> str:
        ws = self.words_of(S, T, d, v)
        if not ws:
            return "0"
        return "+".join(".".join(w) if w else "1" for w in ws)

    def mul(self, A, B, C, dx, x, dy, y):
        """Product of x in hom(B, C) of degree dx with y in hom(A, B)."""
        out = 0
        Hc = self._homs[(A, C)]
        for u in self.words_of(B, C, dx, x):
            for w in self.words_of(A, B, dy, y):
                uw = u + w
                if uw and self.is_zero_word(uw):
                    continue
                out ^= 1 << Hc.index[uw][1]
        return out

    def boundary_word(self, w):
        """∂ of a word, as a list of words (possibly with forbidden ones)."""
        out = []
        for i, g in enumerate(w):
            for b in self.gens[g].boundary:
                out.append(w[:i] + b + w[i + 1:])
        return out

    def d(self, S, T, deg, v) -> int:
        """∂: C_deg -> C_{deg-1} on a bit vector."""
        if deg == 0:
            return 0
        out = 0
        for w in self.words_of(S, T, deg, v):
            for u in self.boundary_word(w):
                if u and self.is_zero_word(u):
                    continue
                out ^= 1 << self._homs[(S, T)].index[u][1]
        return out

    def _check_boundaries(self):
        for g in self.gens.values():
            for b in g.boundary:
                if b and self.word_ends(b) != (g.src, g.tgt):
                    raise QuiverError(f"boundary term {'.'.join(b)} of {g.name} has the wrong ends")
                if self.word_degree(b) != g.degree - 1:
                    raise QuiverError(f"boundary of {g.name} has the wrong degree")
        for f in self.forbidden:
            counts: dict = {}
            for u in self.boundary_word(f):
                if not self.is_zero_word(u):
                    counts[u] = counts.get(u, 0) ^ 1
            if any(counts.values()):
                raise QuiverError(f"the boundary does not preserve the relation {'.'.join(f)}")
        for (S, T), H in self._homs.items():
            for deg in (2, 3, 4):
                for i in range(len(H.basis[deg])):
                    if self.d(S, T, deg - 1, self.d(S, T, deg, 1 << i)):
                        raise QuiverError(f"∂∂ != 0 on {'.'.join(H.basis[deg][i])}")

    # -- the algebra --------------------------------------------------------
    def to_algebra(self) -> "LinearAlgebraData":
        return LinearAlgebraData(self)


class LinearAlgebraData:
    """The 2-track algebra of a quiver together with the maps between
    vectors and element ids."""

    def __init__(self, Q: LinearQuiver):
        self.Q = Q
        self.ids: dict = {}        # (S, T, kind, payload) -> id
        self.payload: dict = {}    # id -> (S, T, kind, payload)
        homs = {}
        self._b1, self._b2 = {}, {}
        for S in Q.objects:
            for T in Q.objects:
                homs[(S, T)] = self._build_hom(S, T)
        units = {X: self.ids[(X, X, "obj0", Q.vec(X, X, [()]))] for X in Q.objects}
        tensor = self._build_tensor()
        additive = {}
        for (S, T) in homs:
            additive[(S, T)] = {self.ids[(S, T, "obj0", x)]: x
                                for x in range(1 << len(Q.hom(S, T).basis[0]))}
        self.algebra = TwoTrackAlgebra(Q.objects, homs, units, tensor, additive=additive)

    # ids
    def _tag(self, S, T):
        return f"|{S}>{T}"

    def _name(self, S, T, kind, p):
        Q = self.Q
        if kind == "obj0":
            return Q.show(S, T, 0, p) + self._tag(S, T)
        if kind == "track":
            x, h = p
            return f"{Q.show(S, T, 0, x)}~{Q.show(S, T, 1, h)}" + self._tag(S, T)
        if kind == "obj1":
            return f"<{Q.show(S, T, 1, p)}>" + self._tag(S, T)
        a, al = p
        return f"<{Q.show(S, T, 1, a)}>~{Q.show(S, T, 2, al)}" + self._tag(S, T)

    def _reg(self, S, T, kind, p):
        i = self._name(S, T, kind, p)
        self.ids[(S, T, kind, p)] = i
        self.payload[i] = (S, T, kind, p)
        return i

    def _build_hom(self, S, T):
        Q = self.Q
        H = Q.hom(S, T)
        n0, n1, n2, n3 = (len(H.basis[k]) for k in range(4))
        b1 = _echelon([Q.d(S, T, 2, 1 << i) for i in range(n2)])   # ∂C2 in C1
        b2 = _echelon([Q.d(S, T, 3, 1 << i) for i in range(n3)])   # ∂C3 in C2
        self._b1[(S, T)], self._b2[(S, T)] = b1, b2
        C0 = list(range(1 << n0))
        C1 = list(range(1 << n1))
        C1q = sorted({_reduce(h, b1) for h in C1})
        C2q = sorted({_reduce(a, b2) for a in range(1 << n2)})
        # g1
        objs = [self._reg(S, T, "obj0", x) for x in C0]
        arrows, ident, comp, inv = {}, {}, {}, {}
        tid = {}
        for x in C0:
            for h in C1q:
                f = self._reg(S, T, "track", (x, h))
                tid[(x, h)] = f
        for (x, h), f in tid.items():
            y = x ^ Q.d(S, T, 1, h)
            arrows[f] = (self.ids[(S, T, "obj0", x)], self.ids[(S, T, "obj0", y)])
            inv[f] = tid[(y, h)]
            for h2 in C1q:
                comp[(tid[(y, h2)], f)] = tid[(x, _reduce(h ^ h2, b1))]
        for x in C0:
            ident[self.ids[(S, T, "obj0", x)]] = tid[(x, 0)]
        zero0 = self.ids[(S, T, "obj0", 0)]
        g1 = PointedGroupoid(objs, arrows, ident, comp, inv, zero0, check=False)
        # g2
        objs2 = [self._reg(S, T, "obj1", a) for a in C1]
        arrows2, ident2, comp2, inv2, psi = {}, {}, {}, {}, {}
        mid = {}
        for a in C1:
            for al in C2q:
                mid[(a, al)] = self._reg(S, T, "mor2", (a, al))
        for (a, al), u in mid.items():
            b = a ^ Q.d(S, T, 2, al)
            arrows2[u] = (self.ids[(S, T, "obj1", a)], self.ids[(S, T, "obj1", b)])
            inv2[u] = mid[(b, al)]
            for al2 in C2q:
                comp2[(mid[(b, al2)], u)] = mid[(a, _reduce(al ^ al2, b2))]
        for a in C1:
            ai = self.ids[(S, T, "obj1", a)]
            ident2[ai] = mid[(a, 0)]
            psi[ai] = {mid[(a, al)]: mid[(0, al)] for al in C2q if Q.d(S, T, 2, al) == 0}
        g2 = StrictlyAbelianGroupoid(objs2, arrows2, ident2, comp2, inv2,
                                     self.ids[(S, T, "obj1", 0)], psi, check=False)
        q = {self.ids[(S, T, "obj1", a)]: tid[(Q.d(S, T, 1, a), _reduce(a, b1))] for a in C1}
        return TwoTrackGroupoid(g1, g2, q)

    def _build_tensor(self):
        Q = self.Q
        tensor = {}
        by_hom: dict = {}
        for i, (S, T, kind, p) in self.payload.items():
            by_hom.setdefault((S, T, kind), []).append((i, p))
        for A, B, C in itertools.product(Q.objects, repeat=3):
            # x in hom(B, C), y in hom(A, B)
            b1, b2 = self._b1[(A, C)], self._b2[(A, C)]

            def m(dx, x, dy, y):
                return Q.mul(A, B, C, dx, x, dy, y)
            X0, Y0 = by_hom.get((B, C, "obj0"), []), by_hom.get((A, B, "obj0"), [])
            X1, Y1 = by_hom.get((B, C, "obj1"), []), by_hom.get((A, B, "obj1"), [])
            Xt, Yt = by_hom.get((B, C, "track"), []), by_hom.get((A, B, "track"), [])
            X2, Y2 = by_hom.get((B, C, "mor2"), []), by_hom.get((A, B, "mor2"), [])
            ids = self.ids
            for xi, x in X0:
                for yi, y in Y0:
                    tensor[(xi, yi)] = ids[(A, C, "obj0", m(0, x, 0, y))]
                for yi, a in Y1:
                    tensor[(xi, yi)] = ids[(A, C, "obj1", m(0, x, 1, a))]
                for yi, (y, h) in Yt:
                    tensor[(xi, yi)] = ids[(A, C, "track", (m(0, x, 0, y), _reduce(m(0, x, 1, h), b1)))]
                for yi, (a, al) in Y2:
                    tensor[(xi, yi)] = ids[(A, C, "mor2", (m(0, x, 1, a), _reduce(m(0, x, 2, al), b2)))]
            for yi, y in Y0:
                for xi, a in X1:
                    tensor[(xi, yi)] = ids[(A, C, "obj1", m(1, a, 0, y))]
                for xi, (x, h) in Xt:
                    tensor[(xi, yi)] = ids[(A, C, "track", (m(0, x, 0, y), _reduce(m(1, h, 0, y), b1)))]
                for xi, (a, al) in X2:
                    tensor[(xi, yi)] = ids[(A, C, "mor2", (m(1, a, 0, y), _reduce(m(2, al, 0, y), b2)))]
            for xi, a in X1:
                da = Q.d(B, C, 1, a)
                for yi, b in Y1:
                    tensor[(xi, yi)] = ids[(A, C, "mor2", (m(0, da, 1, b), _reduce(m(1, a, 1, b), b2)))]
        return tensor

    # -- lookups by expression --------------------------------------------
    def zero(self, S, T):
        return self.ids[(S, T, "obj0", 0)]

    def el0(self, S, T, expr):
        return self.ids[(S, T, "obj0", self.Q.parse(S, T, expr))]

    def el1(self, S, T, expr):
        return self.ids[(S, T, "obj1", self.Q.parse(S, T, expr))]

    def track(self, S, T, x_expr, h_expr):
        h = _reduce(self.Q.parse(S, T, h_expr), self._b1[(S, T)])
        return self.ids[(S, T, "track", (self.Q.parse(S, T, x_expr), h))]

    def el2(self, S, T, a_expr, al_expr):
        al = _reduce(self.Q.parse(S, T, al_expr), self._b2[(S, T)])
        return self.ids[(S, T, "mor2", (self.Q.parse(S, T, a_expr), al))]

    def vector(self, i):
        """(S, T, kind, payload) of an element id."""
        return self.payload[i]
