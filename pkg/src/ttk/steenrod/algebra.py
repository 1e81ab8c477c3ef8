"""The mod 2 Steenrod algebra in the admissible basis.

Monomials are tuples of exponents; () is the unit.  Elements are frozensets
of admissible monomials (GF(2) support).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

Monomial = tuple[int, ...]


class SteenrodError(Exception):
    pass


class BasisMismatch(SteenrodError):
    pass


def binom2(n: int, k: int) -> int:
    """binom(n, k) mod 2 by Lucas: odd iff the bits of k sit inside n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if (k & ~n) == 0 else 0


def is_admissible(m: Monomial) -> bool:
    if any(i < 1 for i in m):
        return False
    return all(m[j] >= 2 * m[j + 1] for j in range(len(m) - 1))


@lru_cache(maxsize=None)
def _admissible_from(n: int, bound: int) -> tuple[Monomial, ...]:
    # admissible sequences of degree n whose first entry is <= bound
    if n == 0:
        return ((),)
    out = []
    for first in range(1, min(n, bound) + 1):
        for rest in _admissible_from(n - first, first // 2):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def admissible_basis(n: int) -> tuple[Monomial, ...]:
    """Admissible monomials of degree n in sorted order."""
    if n < 0:
        return ()
    return tuple(sorted(_admissible_from(n, n)))


@lru_cache(maxsize=None)
def basis_index(n: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(admissible_basis(n))}


@lru_cache(maxsize=1 << 20)
def _reduce(word: Monomial) -> frozenset:
    for j in range(len(word) - 1):
        a, b = word[j], word[j + 1]
        if a < 2 * b:
            out: set = set()
            head, tail = word[:j], word[j + 2:]
            for c in range(a // 2 + 1):
                if binom2(b - c - 1, a - 2 * c):
                    mid = (a + b - c, c) if c else (a + b - c,)
                    out.symmetric_difference_update(_reduce(head + mid + tail))
            return frozenset(out)
    return frozenset({word})


def adem_reduce(word: Iterable[int]) -> "SteenrodElement":
    """Rewrite Sq^{i1}...Sq^{ik} as a sum of admissible monomials.

    Sq^0 is the unit and is dropped.  Each Adem step lowers the moment
    sum_j j*i_j, so the rewriting terminates.
    """
    w = tuple(int(i) for i in word)
    if any(i < 0 for i in w):
        raise ValueError(f"negative exponent in {w}")
    w = tuple(i for i in w if i)
    return SteenrodElement(_reduce(w), sum(w))


def mono_mul(x: Monomial, y: Monomial) -> frozenset:
    return _reduce(x + y)


def mul_sets(a: Iterable[Monomial], b: Iterable[Monomial]) -> frozenset:
    out: set = set()
    for x in a:
        for y in b:
            out.symmetric_difference_update(_reduce(x + y))
    return frozenset(out)


def _fmt(m: Monomial) -> str:
    return "1" if not m else "Sq(" + ",".join(map(str, m)) + ")"


@dataclass(frozen=True)
class SteenrodElement:
    support: frozenset
    degree: int = 0

    def __post_init__(self):
        for m in self.support:
            if sum(m) != self.degree:
                raise SteenrodError(f"inhomogeneous element: {_fmt(m)} in degree {self.degree}")

    @classmethod
    def unit(cls):
        return cls(frozenset({()}), 0)

    @classmethod
    def zero(cls, degree=0):
        return cls(frozenset(), degree)

    @classmethod
    def sq(cls, *exps):
        return adem_reduce(exps)

    @property
    def terms(self) -> list[Monomial]:
        return sorted(self.support)

    def is_zero(self):
        return not self.support

    def __add__(self, other):
        if self.support and other.support and self.degree != other.degree:
            raise SteenrodError("adding elements of different degrees")
        deg = self.degree if self.support else other.degree
        return SteenrodElement(self.support ^ other.support, deg)

    def __mul__(self, other):
        return multiply(self, other)

    def __str__(self):
        return " + ".join(_fmt(m) for m in self.terms) if self.support else "0"


def multiply(a: SteenrodElement, b: SteenrodElement) -> SteenrodElement:
    return SteenrodElement(mul_sets(a.support, b.support), a.degree + b.degree)


_TERM = re.compile(r"^Sq\(([\d,\s]*)\)$")


def parse_element(text: str) -> SteenrodElement:
    """Parse "Sq(2,1) + Sq(3)" (exponent lists, reduced on the way in);
    "1" is the unit and "0" the zero element."""
    text = text.strip()
    if text in ("", "0"):
        return SteenrodElement.zero()
    acc = None
    for part in text.split("+"):
        part = part.strip()
        if part == "1":
            el = SteenrodElement.unit()
        else:
            m = _TERM.match(part)
            if not m:
                raise SteenrodError(f"cannot parse Steenrod term {part!r}")
            exps = [int(x) for x in m.group(1).split(",") if x.strip()]
            el = adem_reduce(exps)
        acc = el if acc is None else acc + el
    return acc


def dim_A(n: int) -> int:
    """dim of A in degree n, counted in the admissible and in the Milnor
    basis; raises BasisMismatch if the two counts differ."""
    from .oracle import milnor_dim

    if n < 0:
        raise ValueError("degree must be >= 0")
    a, m = len(admissible_basis(n)), milnor_dim(n)
    if a != m:
        raise BasisMismatch(f"degree {n}: {a} admissible monomials but {m} Milnor monomials")
    return a
