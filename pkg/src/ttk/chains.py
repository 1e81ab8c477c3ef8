"""Chain complexes in the homotopy category of a 2-track algebra, secondary
and tertiary pre-chain complexes, their obstructions and corrections, and
the d2/d3 differentials on synthetic Adams data.

Index conventions: ``d[n]: A[n+1] -> A[n]``, ``gamma[n]`` is a left path in
hom(A[n+2], A[n]) over ``d[n] ⊗ d[n+1]``, and
``xi[n]: gamma[n] ⊗ d[n+2] => d[n] ⊗ gamma[n+1]`` lives in hom(A[n+3], A[n]).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from . import gf2
from .report import ReportBuilder, Violation
from .tta import NotAdditive, PiCoordinates, TwoTrackAlgebra, cls, hom_key


class ChainError(Exception):
    pass


class IndexOutOfWindow(ChainError):
    pass


class WindowExceeded(ChainError):
    pass


class InvalidComplex(ChainError):
    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(f"{v.clause}: {v.detail}" for v in report[:5]))


class SecondaryInvalid(ChainError):
    pass


class NotAResolution(ChainError):
    pass


class NoCorrectionFound(ChainError):
    pass


class NotACocycle(ChainError):
    pass


class D2Nonzero(ChainError):
    pass


class NoXiExists(ChainError):
    pass


def _intkeys(m) -> dict[int, str]:
    return {int(k): v for k, v in (m or {}).items()}


# ---------------------------------------------------------------------------
# chain complexes in pi0 A


class ChainComplexInCat:
    """Objects ``objects[n]`` for n in the window and differentials
    ``d[n]: A[n+1] -> A[n]`` given by degree 0 elements of the algebra.

    ``augmentation`` is an optional pair (object, element A[n_min] -> object).
    """

    def __init__(self, algebra: TwoTrackAlgebra, objects: Mapping[int, str], d: Mapping[int, str],
                 augmentation: tuple[str, str] | None = None):
        self.algebra = algebra
        self.objects = dict(sorted(objects.items()))
        if not self.objects:
            raise InvalidComplex([Violation("complex.window", "no objects")])
        self.n_min, self.n_max = min(self.objects), max(self.objects)
        if sorted(self.objects) != list(range(self.n_min, self.n_max + 1)):
            raise InvalidComplex([Violation("complex.window", "objects must cover a contiguous window")])
        self.d = dict(sorted(d.items()))
        self.augmentation = augmentation
        rb = ReportBuilder()
        for n in range(self.n_min, self.n_max):
            x = self.d.get(n)
            if x is None:
                rb.add("complex.d", f"d[{n}] missing")
                continue
            e = algebra.element(x)
            if e.kind != "obj0" or (e.source, e.target) != (self.objects[n + 1], self.objects[n]):
                rb.add("complex.d", f"d[{n}] = {x} is not a degree 0 map A[{n + 1}] -> A[{n}]")
        if augmentation is not None:
            X, eps = augmentation
            e = algebra.element(eps)
            if e.kind != "obj0" or (e.source, e.target) != (self.objects[self.n_min], X):
                rb.add("complex.augmentation", f"{eps} is not a map A[{self.n_min}] -> {X}")
        if rb.items:
            raise InvalidComplex(rb.result())

    @property
    def window(self) -> tuple[int, int]:
        return self.n_min, self.n_max

    def to_json(self) -> dict:
        doc = {"window": [self.n_min, self.n_max],
               "objects": {str(n): X for n, X in self.objects.items()},
               "d": {str(n): x for n, x in self.d.items()}}
        if self.augmentation is not None:
            doc["augmentation"] = list(self.augmentation)
        return doc

    @classmethod
    def from_json(cls_, algebra, doc):
        aug = doc.get("augmentation")
        return cls_(algebra, _intkeys(doc["objects"]), _intkeys(doc["d"]),
                    tuple(aug) if aug else None)

    def hom_cochain(self, B: str) -> "HomCochains":
        return HomCochains(self.algebra, self.objects, self.d, B)


def _null(A: TwoTrackAlgebra, x: str) -> bool:
    e = A.element(x)
    G1 = A.homs[(e.source, e.target)].g1
    return G1.component_of(x) == G1.component_of(G1.basepoint)


def check_chain(C: ChainComplexInCat) -> list[Violation]:
    """Every n with d[n-1] d[n] not null in pi0."""
    A = C.algebra
    rb = ReportBuilder()
    for n in range(C.n_min + 1, C.n_max):
        if not _null(A, A.tensor(C.d[n - 1], C.d[n])):
            rb.add("chain.dd", f"d[{n - 1}] d[{n}] is not null")
    if C.augmentation is not None and C.n_max > C.n_min:
        if not _null(A, A.tensor(C.augmentation[1], C.d[C.n_min])):
            rb.add("chain.dd", "augmentation composed with d is not null")
    return rb.result()


def _pi0_map(A, src: PiCoordinates, dst: PiCoordinates, f) -> list[int]:
    """Images of a basis of ``src`` under the element map f (degree 0)."""
    out = []
    for i in range(src.dim):
        x = src.element(1 << i)
        out.append(dst.of(cls(A, f(x))))
    return out


def is_a_exact(C: ChainComplexInCat, a_objects) -> bool:
    """Exactness of pi0 hom(X, A_•) for X in ``a_objects``.

    Only interior positions are checked: at the window ends one of the two
    maps is missing, and exactness there is unknown rather than assumed.
    The augmentation, when present, counts as one more position below.
    """
    A = C.algebra
    objs = dict(C.objects)
    d = dict(C.d)
    lo = C.n_min
    if C.augmentation is not None:
        lo = C.n_min - 1
        objs[lo] = C.augmentation[0]
        d[lo] = C.augmentation[1]
    for X in a_objects:
        coords = {n: PiCoordinates(A, X, Y, 0) for n, Y in objs.items()}
        for n in range(lo + 1, C.n_max):
            out = _pi0_map(A, coords[n], coords[n - 1], lambda x, n=n: A.tensor(d[n - 1], x))
            into = _pi0_map(A, coords[n + 1], coords[n], lambda x, n=n: A.tensor(d[n], x))
            if gf2.cohomology(into, out, coords[n].dim)[0] != 0:
                return False
    return True


class HomCochains:
    """The cochain complex pi_k hom(A_•, B) with coboundary f -> f ⊗ d."""

    def __init__(self, algebra, objects, d, B, k: int = 0):
        self.A, self.objects, self.d, self.B, self.k = algebra, objects, d, B, k
        self.window = (min(objects), max(objects))
        self._coords = {}

    def coords(self, n) -> PiCoordinates:
        c = self._coords.get(n)
        if c is None:
            c = self._coords[n] = PiCoordinates(self.A, self.objects[n], self.B, self.k)
        return c

    def dim(self, n) -> int:
        return self.coords(n).dim

    def coboundary(self, n) -> list[int]:
        """Images of the basis of C^n in C^{n+1}."""
        A, src, dst = self.A, self.coords(n), self.coords(n + 1)
        out = []
        for i in range(src.dim):
            x = src.element(1 << i)
            y = A.tensor(x, self.d[n])
            out.append(dst.of(cls(A, y) if self.k == 0 else y))
        return out


def ext_groups(resolution, B, s: int) -> int:
    """dim H^s of Hom(resolution, B).

    ``resolution`` is anything with ``hom_cochain(B)`` returning a view with
    ``window``, ``dim(n)`` and ``coboundary(n)``.  H^s needs the coboundary
    out of position s, so s must lie strictly below the top of the window.
    """
    view = resolution.hom_cochain(B)
    lo, hi = view.window
    if not lo <= s < hi:
        raise WindowExceeded(f"Ext^{s} needs positions {s}..{s + 1}, window is [{lo}, {hi}]")
    into = view.coboundary(s - 1) if s > lo else []
    return gf2.cohomology(into, view.coboundary(s), view.dim(s))[0]


# ---------------------------------------------------------------------------
# secondary and tertiary pre-chain complexes


class SecondaryPreChainComplex(ChainComplexInCat):
    def __init__(self, algebra, objects, d, gamma: Mapping[int, str], augmentation=None):
        super().__init__(algebra, objects, d, augmentation)
        self.gamma = dict(sorted(gamma.items()))
        rep = self.violations()
        if rep:
            raise InvalidComplex(rep)

    def violations(self) -> list[Violation]:
        A = self.algebra
        rb = ReportBuilder()
        for n in range(self.n_min, self.n_max - 1):
            g = self.gamma.get(n)
            if g is None:
                rb.add("secondary.gamma", f"gamma[{n}] missing")
                continue
            e = A.element(g)
            if e.kind != "obj1" or (e.source, e.target) != (self.objects[n + 2], self.objects[n]):
                rb.add("secondary.gamma", f"gamma[{n}] = {g} is not a left path A[{n + 2}] -> A[{n}]")
            elif A.delta(g) != A.tensor(self.d[n], self.d[n + 1]):
                rb.add("secondary.gamma", f"boundary of gamma[{n}] is not d[{n}] d[{n + 1}]")
        return rb.result()

    def with_gamma(self, gamma):
        return SecondaryPreChainComplex(self.algebra, self.objects, self.d, gamma, self.augmentation)

    def to_json(self):
        doc = super().to_json()
        doc["gamma"] = {str(n): g for n, g in self.gamma.items()}
        return doc

    @classmethod
    def from_json(cls_, algebra, doc):
        aug = doc.get("augmentation")
        return cls_(algebra, _intkeys(doc["objects"]), _intkeys(doc["d"]), _intkeys(doc["gamma"]),
                    tuple(aug) if aug else None)


class TertiaryPreChainComplex(SecondaryPreChainComplex):
    def __init__(self, algebra, objects, d, gamma, xi: Mapping[int, str], augmentation=None):
        self.xi = dict(sorted(xi.items()))
        super().__init__(algebra, objects, d, gamma, augmentation)

    def violations(self) -> list[Violation]:
        rep = super().violations()
        if rep:
            return rep
        A = self.algebra
        rb = ReportBuilder()
        for n in range(self.n_min, self.n_max - 2):
            x = self.xi.get(n)
            if x is None:
                rb.add("tertiary.xi", f"xi[{n}] missing")
                continue
            e = A.element(x)
            if e.kind != "mor2" or (e.source, e.target) != (self.objects[n + 3], self.objects[n]):
                rb.add("tertiary.xi", f"xi[{n}] = {x} is not a left 2-track A[{n + 3}] -> A[{n}]")
                continue
            if A.delta0(x) != A.tensor(self.gamma[n], self.d[n + 2]):
                rb.add("tertiary.xi", f"source of xi[{n}] is not gamma[{n}] d[{n + 2}]")
            if A.delta1(x) != A.tensor(self.d[n], self.gamma[n + 1]):
                rb.add("tertiary.xi", f"target of xi[{n}] is not d[{n}] gamma[{n + 1}]")
        return rb.result()

    def secondary(self) -> SecondaryPreChainComplex:
        return SecondaryPreChainComplex(self.algebra, self.objects, self.d, self.gamma, self.augmentation)

    def with_xi(self, xi):
        return TertiaryPreChainComplex(self.algebra, self.objects, self.d, self.gamma, xi,
                                       self.augmentation)

    def to_json(self):
        doc = super().to_json()
        doc["xi"] = {str(n): x for n, x in self.xi.items()}
        return doc

    @classmethod
    def from_json(cls_, algebra, doc):
        aug = doc.get("augmentation")
        return cls_(algebra, _intkeys(doc["objects"]), _intkeys(doc["d"]), _intkeys(doc["gamma"]),
                    _intkeys(doc["xi"]), tuple(aug) if aug else None)


def complex_from_json(algebra, doc):
    if "xi" in doc:
        return TertiaryPreChainComplex.from_json(algebra, doc)
    if "gamma" in doc:
        return SecondaryPreChainComplex.from_json(algebra, doc)
    return ChainComplexInCat.from_json(algebra, doc)


# obstructions

def _o2(A: TwoTrackAlgebra, g_prev: str, d_next: str, d_prev: str, g: str) -> str:
    """q(g_prev ⊗ d_next) □ q(d_prev ⊗ g)^-1, a loop at 0."""
    u = A.q(A.tensor(g_prev, d_next))
    v = A.q(A.tensor(d_prev, g))
    return A.box(u, A.inv(v))


def _o3(A, xi_prev, d_next, g_prev, g_next, d_prev, xi):
    """psi((xi_prev ⊗ d_next) □ (g_prev ⊗ g_next) □ (d_prev ⊗ xi))."""
    loop = A.box_path(A.tensor(xi_prev, d_next), A.tensor(g_prev, g_next), A.tensor(d_prev, xi))
    return A.psi(loop)


def secondary_obstruction(S: SecondaryPreChainComplex, n: int) -> str:
    """O(gamma[n-1], gamma[n]) in pi1 hom(A[n+2], A[n-1])."""
    if not S.n_min + 1 <= n <= S.n_max - 2:
        raise IndexOutOfWindow(f"secondary obstruction at {n} needs [{S.n_min + 1}, {S.n_max - 2}]")
    return _o2(S.algebra, S.gamma[n - 1], S.d[n + 1], S.d[n - 1], S.gamma[n])


def secondary_window(S) -> range:
    return range(S.n_min + 1, S.n_max - 1)


def is_secondary_chain_complex(S: SecondaryPreChainComplex) -> bool:
    A = S.algebra
    return all(A.is_zero(secondary_obstruction(S, n)) for n in secondary_window(S))


def tertiary_obstruction(T: TertiaryPreChainComplex, n: int) -> str:
    """O(xi[n-1], xi[n]) in pi2 hom(A[n+3], A[n-1])."""
    if not T.n_min + 1 <= n <= T.n_max - 3:
        raise IndexOutOfWindow(f"tertiary obstruction at {n} needs [{T.n_min + 1}, {T.n_max - 3}]")
    A = T.algebra
    for m in (n - 1, n):
        if not A.is_zero(secondary_obstruction(T, m + 1)):
            raise SecondaryInvalid(f"secondary obstruction at {m + 1} is nonzero")
    return _o3(A, T.xi[n - 1], T.d[n + 2], T.gamma[n - 1], T.gamma[n + 1], T.d[n - 1], T.xi[n])


def tertiary_window(T) -> range:
    return range(T.n_min + 1, T.n_max - 2)


def is_tertiary_chain_complex(T: TertiaryPreChainComplex) -> bool:
    A = T.algebra
    if not is_secondary_chain_complex(T):
        return False
    return all(A.is_zero(tertiary_obstruction(T, n)) for n in tertiary_window(T))


# ---------------------------------------------------------------------------
# corrections


def _left_paths_over(A: TwoTrackAlgebra, x: str) -> list[str]:
    e = A.element(x)
    H = A.homs[(e.source, e.target)]
    return sorted(a for a in H.g2.objects if H.delta(a) == x)


def _gamma_candidates(A, current, x):
    # the obstructions only see q(gamma), so keep one path per track
    seen, out = set(), []
    for a in [current] + _left_paths_over(A, x):
        t = A.q(a)
        if t not in seen:
            seen.add(t)
            out.append(a)
    return out


def _xi_candidates(A, current, src, tgt):
    H = A.hom_of(src).g2
    rest = sorted(H.hom(src, tgt))
    if current is not None and current in rest:
        rest.remove(current)
        return [current] + rest
    return rest


def _require_resolution(C, a_objects):
    if check_chain(C) or not is_a_exact(C, a_objects):
        raise NotAResolution("the underlying complex is not an a-resolution in pi0")


def correct_1tracks(S: SecondaryPreChainComplex, a_objects) -> SecondaryPreChainComplex:
    """A secondary chain complex with the same A and d.

    Depth-first in increasing n; at each n the current gamma is tried first,
    then the other left paths over d[n] d[n+1] in lexicographic order, one
    per track class.  The first complete assignment wins.
    """
    _require_resolution(S, a_objects)
    A = S.algebra
    ns = list(range(S.n_min, S.n_max - 1))
    cands = {n: _gamma_candidates(A, S.gamma[n], A.tensor(S.d[n], S.d[n + 1])) for n in ns}
    chosen: dict[int, str] = {}

    def ok(n, g):
        if n - 1 not in chosen:
            return True
        return A.is_zero(_o2(A, chosen[n - 1], S.d[n + 1], S.d[n - 1], g))

    def dfs(i):
        if i == len(ns):
            return True
        n = ns[i]
        for g in cands[n]:
            if ok(n, g):
                chosen[n] = g
                if dfs(i + 1):
                    return True
                del chosen[n]
        return False

    if not dfs(0):
        raise NoCorrectionFound("no choice of left paths makes every secondary obstruction vanish")
    return S.with_gamma(chosen)


def correct_2tracks(T: TertiaryPreChainComplex, a_objects) -> TertiaryPreChainComplex:
    """Same objects, d and gamma; new xi with all tertiary obstructions zero."""
    _require_resolution(T, a_objects)
    A = T.algebra
    if not is_secondary_chain_complex(T):
        raise SecondaryInvalid("correct the 1-tracks first")
    ns = list(range(T.n_min, T.n_max - 2))
    cands = {}
    for n in ns:
        src = A.tensor(T.gamma[n], T.d[n + 2])
        tgt = A.tensor(T.d[n], T.gamma[n + 1])
        cands[n] = _xi_candidates(A, T.xi.get(n), src, tgt)
    chosen: dict[int, str] = {}

    def ok(n, x):
        if n - 1 not in chosen:
            return True
        return A.is_zero(_o3(A, chosen[n - 1], T.d[n + 2], T.gamma[n - 1], T.gamma[n + 1],
                             T.d[n - 1], x))

    def dfs(i):
        if i == len(ns):
            return True
        n = ns[i]
        for x in cands[n]:
            if ok(n, x):
                chosen[n] = x
                if dfs(i + 1):
                    return True
                del chosen[n]
        return False

    if not dfs(0):
        raise NoCorrectionFound("no choice of left 2-tracks makes every tertiary obstruction vanish")
    return T.with_xi(chosen)


def build_resolution(A: TwoTrackAlgebra, a_objects, X, resolution: ChainComplexInCat
                     ) -> TertiaryPreChainComplex:
    """Lift an a-resolution of X to a tertiary chain complex.

    ``X`` is informational when the resolution carries its own augmentation;
    otherwise the augmentation is taken to be the bottom object.
    """
    _require_resolution(resolution, a_objects)
    if resolution.augmentation is not None and resolution.augmentation[0] != X:
        raise NotAResolution(f"resolution is augmented over {resolution.augmentation[0]}, not {X}")
    objs, d = resolution.objects, resolution.d
    lo, hi = resolution.window
    gamma = {}
    for n in range(lo, hi - 1):
        paths = _left_paths_over(A, A.tensor(d[n], d[n + 1]))
        if not paths:
            raise NotAResolution(f"d[{n}] d[{n + 1}] has no null left path")
        gamma[n] = paths[0]
    S = SecondaryPreChainComplex(A, objs, d, gamma, resolution.augmentation)
    S = correct_1tracks(S, a_objects)
    xi = {}
    for n in range(lo, hi - 2):
        src = A.tensor(S.gamma[n], d[n + 2])
        tgt = A.tensor(d[n], S.gamma[n + 1])
        c = _xi_candidates(A, None, src, tgt)
        if not c:
            raise NoCorrectionFound(f"no left 2-track xi[{n}] exists")
        xi[n] = c[0]
    T = TertiaryPreChainComplex(A, objs, d, S.gamma, xi, resolution.augmentation)
    return correct_2tracks(T, a_objects)


# ---------------------------------------------------------------------------
# synthetic Adams data: d2 and d3


@dataclass(frozen=True)
class ExtClass:
    """A class in E_r^{n,k}: ``vector`` is the pivot-minimal representative
    in the F2 coordinates of pi_k hom(A[n], T), ``rep`` the matching element."""
    n: int
    k: int
    vector: int
    rep: str
    page: int

    @property
    def is_zero(self) -> bool:
        return self.vector == 0

    def as_dict(self):
        return {"n": self.n, "k": self.k, "page": self.page, "vector": self.vector, "rep": self.rep}


class AdamsSetup:
    """A tertiary chain complex A_0 <- A_1 <- ... <- A_N together with a
    target object T.  Row k of the E2 page is H^n(pi_k hom(A_•, T)).

    Bidegree (n, k) is known on page 2 for n < N; see :meth:`known`.
    """

    ROWS = (0, 1, 2)

    def __init__(self, complex_: TertiaryPreChainComplex, target: str):
        self.C = complex_
        self.A = complex_.algebra
        self.T = target
        if target not in self.A.objects:
            raise ChainError(f"unknown target {target!r}")
        self.n_min, self.n_max = complex_.window
        self._coords: dict = {}
        self._cob: dict = {}
        self._sub: dict = {}
        self._paths: dict = {}

    # F2 coordinates ------------------------------------------------------
    def coords(self, n, k) -> PiCoordinates:
        key = (n, k)
        c = self._coords.get(key)
        if c is None:
            c = self._coords[key] = PiCoordinates(self.A, self.C.objects[n], self.T, k)
        return c

    def vector(self, n, k, x) -> int:
        return self.coords(n, k).of(cls(self.A, x) if k == 0 else x)

    def element(self, n, k, v) -> str:
        return self.coords(n, k).element(v)

    def coboundary(self, n, k) -> list[int]:
        key = (n, k)
        if key not in self._cob:
            A, d = self.A, self.C.d[n]
            src = self.coords(n, k)
            self._cob[key] = [self.vector(n + 1, k, A.tensor(src.element(1 << i), d))
                              for i in range(src.dim)]
        return self._cob[key]

    def _into(self, n, k) -> list[int]:
        return self.coboundary(n - 1, k) if n > self.n_min else []

    # known region ----------------------------------------------------------
    def known(self, n, k, page) -> bool:
        if k not in self.ROWS or n < self.n_min:
            return True         # zero
        if n >= self.n_max:
            return False
        if page == 2:
            return True
        r = page - 1
        if not self.known(n, k, r):
            return False
        if self._has_d(k, r) and not self.known(n + r, k + r - 1, r):
            return False
        sn, sk = n - r, k - r + 1
        if sn >= self.n_min and self._has_d(sk, r) and not self.known(sn, sk, r):
            return False
        return True

    # E2 ----------------------------------------------------------------------
    def e2(self, n, k):
        """(dim, boundary echelon, basis of cocycles complementing it)."""
        return gf2.cohomology(self._into(n, k), self.coboundary(n, k), self.coords(n, k).dim)

    def is_cocycle(self, n, k, v) -> bool:
        return gf2.apply(self.coboundary(n, k), v) == 0

    def subspace(self, n, k, page) -> gf2.Echelon:
        """Vectors of pi_k hom(A[n], T) that vanish on the given page:
        coboundaries plus lifts of images of earlier differentials."""
        key = (n, k, page)
        e = self._sub.get(key)
        if e is not None:
            return e
        e = gf2.Echelon()
        if page <= 2:
            for v in self._into(n, k):
                e.add(v)
        else:
            for v in self.subspace(n, k, page - 1).rows.values():
                e.add(v)
            r = page - 1
            sn, sk = n - r, k - r + 1
            if sn >= self.n_min and sk in self.ROWS and self._has_d(sk, r):
                for v in self._page_basis(sn, sk, r):
                    e.add(self._d_vector(sn, sk, v, r))
        self._sub[key] = e
        return e

    def _has_d(self, k, r):
        return (r == 2 and k in (0, 1)) or (r == 3 and k == 0)

    def _page_basis(self, n, k, page):
        """Cocycle vectors spanning E_page^{n,k} (lifted)."""
        if page == 2:
            return self.e2(n, k)[2]
        r = page - 1
        prev = self._page_basis(n, k, r)
        if not self._has_d(k, r):
            sub = self.subspace(n, k, page)
            return _complement(prev, sub)
        # kernel of d_r on the previous page, then complement of the new subspace
        tn, tk = n + r, k + r - 1
        tsub = self.subspace(tn, tk, r)
        images = [tsub.reduce(self._d_vector(n, k, v, r))[0] for v in prev]
        ker = [gf2.apply(prev, c) for c in gf2.kernel(images)]
        ker += list(self.subspace(n, k, r).rows.values())
        return _complement(ker, self.subspace(n, k, page))

    def _d_vector(self, n, k, v, r) -> int:
        x = self.element(n, k, v)
        c = d2_element(self, x, n) if r == 2 else d3_element(self, x, n)
        return c.vector

    def reduce(self, n, k, page, v) -> ExtClass:
        w = self.subspace(n, k, page).reduce(v)[0]
        return ExtClass(n, k, w, self.element(n, k, w), page)

    # choices -----------------------------------------------------------------
    def _paths_over(self, x):
        r = self._paths.get(x)
        if r is None:
            r = self._paths[x] = _left_paths_over(self.A, x)
        return r

    def representatives(self, x):
        G1 = self.A.hom_of(x).g1
        c = G1.component_of(x)
        return sorted(y for y in G1.objects if G1.component_of(y) == c)


def _complement(vectors, sub: gf2.Echelon) -> list[int]:
    e = gf2.Echelon()
    for v in sub.rows.values():
        e.add(v)
    out = []
    for v in vectors:
        if e.add(v):
            out.append(v)
    return out


def _check_n(setup: AdamsSetup, n: int, reach: int):
    if not setup.n_min <= n or n + reach > setup.n_max:
        raise IndexOutOfWindow(f"position {n} needs A[{n + reach}], window is "
                               f"[{setup.n_min}, {setup.n_max}]")


def _row(setup, x):
    k = setup.A.kind(x)
    if k == "obj0":
        return 0
    if k == "track":
        return 1
    raise ChainError(f"{x!r} is neither a degree 0 element nor a track")


def d2_values(setup: AdamsSetup, x: str, n: int):
    """Raw obstruction values over every admissible choice.  Yields
    (choice tuple, element).  Row 0: choices are (x'', gamma); row 1:
    (gamma, xi)."""
    A, C = setup.A, setup.C
    k = _row(setup, x)
    if k == 0:
        _check_n(setup, n, 2)
        for xr in setup.representatives(x):
            for g in setup._paths_over(A.tensor(xr, C.d[n])):
                yield (xr, g), _o2(A, g, C.d[n + 1], xr, C.gamma[n])
    else:
        _check_n(setup, n, 2)
        H = A.homs[(C.objects[n], setup.T)]
        for g in sorted(a for a in H.g2.objects if H.q[a] == x):
            gd = A.tensor(g, C.d[n])
            G2 = A.hom_of(gd).g2
            for xi in sorted(G2.hom(gd, A.zero(C.objects[n + 1], setup.T, 1))):
                loop = A.box(A.tensor(xi, C.d[n + 1]), A.tensor(g, C.gamma[n]))
                yield (g, xi), A.psi(loop)


def d2_element(setup: AdamsSetup, x: str, n: int) -> ExtClass:
    """d2 of the class of x at position n (x a degree 0 element for row 0 or
    a loop track at 0 for row 1).  Uses the least admissible choice; the
    class does not depend on it."""
    k = _row(setup, x)
    _check_n(setup, n, 2)
    if not setup.is_cocycle(n, k, setup.vector(n, k, x)):
        raise NotACocycle(f"{x} is not a cocycle at position {n}")
    for _, val in d2_values(setup, x, n):
        return setup.reduce(n + 2, k + 1, 2, setup.vector(n + 2, k + 1, val))
    raise NotACocycle(f"no null left path over {x} ⊗ d[{n}]")


def d3_values(setup: AdamsSetup, x: str, n: int):
    """(choice, value) over every x'', gamma with O(gamma, gamma_n) = 0 and
    every xi: gamma ⊗ d[n+1] => x'' ⊗ gamma[n]."""
    A, C = setup.A, setup.C
    _check_n(setup, n, 3)
    for xr in setup.representatives(x):
        for g in setup._paths_over(A.tensor(xr, C.d[n])):
            if not A.is_zero(_o2(A, g, C.d[n + 1], xr, C.gamma[n])):
                continue
            src, tgt = A.tensor(g, C.d[n + 1]), A.tensor(xr, C.gamma[n])
            for xi in sorted(A.hom_of(src).g2.hom(src, tgt)):
                yield (xr, g, xi), _o3(A, xi, C.d[n + 2], g, C.gamma[n + 1], xr, C.xi[n])


def d3_element(setup: AdamsSetup, x: str, n: int) -> ExtClass:
    """d3 of a row 0 class with vanishing d2, as a class in E3^{n+3,2}."""
    if _row(setup, x) != 0:
        raise ChainError("d3 is only defined on row 0")
    _check_n(setup, n, 3)
    c2 = d2_element(setup, x, n)
    if not c2.is_zero:
        raise D2Nonzero(f"d2 of {x} at {n} is nonzero")
    for _, val in d3_values(setup, x, n):
        return setup.reduce(n + 3, 2, 3, setup.vector(n + 3, 2, val))
    raise NoXiExists(f"no left path over {x} ⊗ d[{n}] with vanishing obstruction")


def e_page(setup: AdamsSetup, page: int) -> dict:
    """{(n, k): dim or "unknown"} for n in the window and k in 0..2."""
    if page not in (2, 3, 4):
        raise ChainError("page must be 2, 3 or 4")
    out = {}
    for n in range(setup.n_min, setup.n_max + 1):
        for k in setup.ROWS:
            if not setup.known(n, k, page):
                out[(n, k)] = "unknown"
            else:
                out[(n, k)] = len(setup._page_basis(n, k, page))
    return out


def e_page_json(lattice: dict) -> list:
    return [{"n": n, "k": k, "dim": v} for (n, k), v in sorted(lattice.items())]
