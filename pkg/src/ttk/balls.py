"""Left 2-cubical balls in normal form C_k and their obstruction operator.

A ball with k cells is recorded as a cyclic chain of left 2-tracks
``(alpha_i, eps_i)`` in one hom 2-track groupoid; ``eps = -1`` means the
groupoid inverse is used.  The chain closes: a_0 -> a_1 -> ... -> a_k = a_0.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .report import ReportBuilder, Violation
from .tta import TwoTrackAlgebra, cls, hom_key, parse_hom_key


class BallError(Exception):
    pass


class InvalidK(BallError):
    pass


class InvalidChain(BallError):
    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(f"{v.clause}: {v.detail}" for v in report[:5]))


@dataclass(frozen=True)
class BallDescriptor:
    """C_k: k square cells around a central vertex; cell i shares edge e_i
    with cell i-1 and edge e_{i+1} with cell i+1 (indices mod k)."""
    k: int
    cells: tuple[str, ...]
    edges: tuple[str, ...]
    adjacency: tuple[tuple[str, str, str], ...]    # (edge, cell before, cell after)

    def as_dict(self):
        return {"k": self.k, "cells": list(self.cells), "edges": list(self.edges),
                "adjacency": [list(a) for a in self.adjacency]}


def normalize_ball(k: int) -> BallDescriptor:
    if not isinstance(k, int) or k < 2:
        raise InvalidK(f"C_k needs k >= 2, got {k!r}")
    cells = tuple(f"c{i}" for i in range(1, k + 1))
    edges = tuple(f"e{i}" for i in range(1, k + 1))
    adj = tuple((edges[i], cells[i - 1], cells[i]) for i in range(k))
    return BallDescriptor(k, cells, edges, adj)


@dataclass(frozen=True)
class BallChain:
    algebra: TwoTrackAlgebra
    hom: tuple[str, str]
    entries: tuple[tuple[str, int], ...]

    @property
    def k(self):
        return len(self.entries)

    def rotate(self, i: int = 1) -> "BallChain":
        i %= max(self.k, 1)
        return BallChain(self.algebra, self.hom, self.entries[i:] + self.entries[:i])

    def reversed(self) -> "BallChain":
        """The same ball with the opposite orientation."""
        return BallChain(self.algebra, self.hom, tuple((a, -e) for a, e in reversed(self.entries)))

    def to_json(self):
        return {"hom": hom_key(*self.hom), "entries": [[a, e] for a, e in self.entries]}

    @classmethod
    def from_json(cls_, algebra, doc):
        return cls_(algebra, parse_hom_key(doc["hom"]), tuple((a, int(e)) for a, e in doc["entries"]))


def make_chain(algebra, entries: Sequence[tuple[str, int]], hom=None) -> BallChain:
    entries = tuple((a, int(e)) for a, e in entries)
    if hom is None:
        e = algebra.element(entries[0][0]) if entries else None
        hom = (e.source, e.target) if e else ("", "")
    return BallChain(algebra, tuple(hom), entries)


def canonical_orientation(ch: BallChain) -> BallChain:
    """Fix the global sign: the first cell carries eps = +1."""
    if ch.entries and ch.entries[0][1] == -1:
        r = ch.reversed()
        # after reversing, the former first cell is last; rotate it to the front
        return r.rotate(-1)
    return ch


def _ends(A, alpha, eps):
    s, t = A.delta0(alpha), A.delta1(alpha)
    return (s, t) if eps == 1 else (t, s)


def validate_chain(ch: BallChain) -> list[Violation]:
    A = ch.algebra
    rb = ReportBuilder()
    if ch.k < 2:
        rb.add("ball.k", f"a ball needs at least 2 cells, got {ch.k}")
        return rb.result()
    ends = []
    for i, (a, e) in enumerate(ch.entries):
        if e not in (1, -1):
            rb.add("ball.sign", f"entry {i}: eps must be +1 or -1")
            ends.append(None)
            continue
        if not A.has_element(a) or A.kind(a) != "mor2":
            rb.add("ball.entry", f"entry {i}: {a!r} is not a left 2-track")
            ends.append(None)
            continue
        el = A.element(a)
        if (el.source, el.target) != tuple(ch.hom):
            rb.add("ball.hom", f"entry {i}: {a} lies in {hom_key(el.source, el.target)}, "
                               f"not {hom_key(*ch.hom)}")
            ends.append(None)
            continue
        ends.append(_ends(A, a, e))
    for i in range(ch.k):
        j = (i + 1) % ch.k
        if ends[i] is None or ends[j] is None:
            continue
        if ends[i][1] != ends[j][0]:
            rb.add("ball.composable", f"entry {i} ends at {ends[i][1]} but entry {j} starts at {ends[j][0]}")
    return rb.result()


def obstruction(ch: BallChain) -> str:
    """psi_a(alpha_k^eps_k □ ... □ alpha_1^eps_1), an element of pi2 hom(A, B)."""
    rep = validate_chain(ch)
    if rep:
        raise InvalidChain(rep)
    A = ch.algebra
    acc = None
    for a, e in ch.entries:
        f = a if e == 1 else A.inv(a)
        acc = f if acc is None else A.box(f, acc)
    return A.psi(acc)


# ---------------------------------------------------------------------------
# random chains for property tests


def random_chain(A: TwoTrackAlgebra, hom, k: int, rng: random.Random) -> BallChain:
    """A random closed chain of k cells: a random walk of k-1 steps in the
    g2 groupoid of ``hom`` and a closing cell back to the start."""
    G2 = A.homs[tuple(hom)].g2
    start = rng.choice(sorted(G2.objects))
    entries = []
    cur = start
    for _ in range(k - 1):
        if rng.random() < 0.5:
            out = sorted(m for m in G2.morphisms if G2.src(m) == cur)
            a = rng.choice(out)
            entries.append((a, 1))
            cur = G2.tgt(a)
        else:
            inc = sorted(m for m in G2.morphisms if G2.tgt(m) == cur)
            a = rng.choice(inc)
            entries.append((a, -1))
            cur = G2.src(a)
    if rng.random() < 0.5:
        entries.append((rng.choice(sorted(G2.hom(cur, start))), 1))
    else:
        entries.append((rng.choice(sorted(G2.hom(start, cur))), -1))
    return BallChain(A, tuple(hom), tuple(entries))


# ---------------------------------------------------------------------------
# AlgCub


class AlgCubView:
    """The system (A_(1,2), ⊗), pi0 A, D(A, B) = pi2 hom(A, B) and the
    obstruction operator."""

    def __init__(self, A: TwoTrackAlgebra):
        self.algebra = A
        self.objects = A.objects

    def D(self, S: str, T: str) -> tuple[str, ...]:
        G2 = self.algebra.homs[(S, T)].g2
        return tuple(sorted(G2.hom(G2.basepoint, G2.basepoint)))

    def D_table(self, S: str, T: str) -> dict:
        G2 = self.algebra.homs[(S, T)].g2
        els = self.D(S, T)
        return {(u, v): G2.compose(u, v) for u in els for v in els}

    def act(self, x: str, u: str, side: str = "left") -> str:
        """D on a degree 0 element: u -> x ⊗ u (left) or u ⊗ x (right)."""
        A = self.algebra
        return A.tensor(x, u) if side == "left" else A.tensor(u, x)

    def obstruction(self, ch: BallChain) -> str:
        return obstruction(ch)

    def functoriality_violations(self) -> list[Violation]:
        """D is a functor on pi0 A in each variable: the action depends only on
        the class of x, is a homomorphism, and respects ⊗ and units."""
        A = self.algebra
        rb = ReportBuilder(per_clause=5)
        objs = A.objects
        for S in objs:
            for T in objs:
                Ds = self.D(S, T)
                G2 = A.homs[(S, T)].g2
                for U in objs:
                    H2 = A.homs[(S, U)].g2
                    G1 = A.homs[(T, U)].g1
                    seen: dict = {}
                    for x in G1.objects:
                        c = cls(A, x)
                        img = tuple(self.act(x, u) for u in Ds)
                        if seen.setdefault(c, img) != img:
                            rb.add("D.well-defined", f"{x} acts differently from its class {c} on D({S},{T})")
                        for u in Ds:
                            for v in Ds:
                                if self.act(x, G2.compose(u, v)) != H2.compose(self.act(x, u), self.act(x, v)):
                                    rb.add("D.homomorphism", f"{x} ⊗ - on D({S},{T}) at ({u}, {v})")
                    for u in Ds:
                        if self.act(A.units[T], u) != u:
                            rb.add("D.unit", f"1_{T} ⊗ {u} != {u}")
                    for V in objs:
                        K1 = A.homs[(U, V)].g1
                        for y in K1.objects:
                            for x in G1.objects:
                                yx = A.tensor(y, x)
                                for u in Ds:
                                    if self.act(y, self.act(x, u)) != self.act(yx, u):
                                        rb.add("D.composition", f"{y} ⊗ ({x} ⊗ {u})")
        return rb.result()


def alg_cub(A: TwoTrackAlgebra) -> AlgCubView:
    return AlgCubView(A)
