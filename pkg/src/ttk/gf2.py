"""Bit-packed linear algebra over GF(2).

Vectors are Python ints (bit i = coordinate i).  A linear map F2^m -> F2^n
is given by the list of images of the m basis vectors.
"""
from __future__ import annotations


def popcount(v: int) -> int:
    return bin(v).count("1")


class Echelon:
    """Incrementally built reduced basis, keyed by pivot (lowest set bit).

    Pivots at the lowest bit make the reduced representative of a coset
    the one with the fewest low-order bits (pivot-minimal).
    """

    __slots__ = ("rows", "combos", "track")

    def __init__(self, track: bool = False):
        self.rows: dict[int, int] = {}
        self.combos: dict[int, int] = {}
        self.track = track

    def reduce(self, v: int, combo: int = 0) -> tuple[int, int]:
        # the basis is fully reduced, so one pass over the pivots suffices
        for p, r in self.rows.items():
            if v >> p & 1:
                v ^= r
                if self.track:
                    combo ^= self.combos[p]
        return v, combo

    def add(self, v: int, combo: int = 0) -> bool:
        """Insert v; returns False if v was dependent."""
        v, combo = self.reduce(v, combo)
        if not v:
            return False
        p = (v & -v).bit_length() - 1
        # keep the basis fully reduced
        for q in list(self.rows):
            if self.rows[q] >> p & 1:
                self.rows[q] ^= v
                if self.track:
                    self.combos[q] ^= combo
        self.rows[p] = v
        if self.track:
            self.combos[p] = combo
        return True

    def __len__(self):
        return len(self.rows)

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0


def rank(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


def span_basis(vectors) -> list[int]:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return [e.rows[p] for p in sorted(e.rows)]


def kernel(images: list[int]) -> list[int]:
    """Basis of the kernel of the map with the given basis images, as
    vectors in the source.  Deterministic: reduced and sorted by pivot."""
    e = Echelon(track=True)
    ker = []
    for i, v in enumerate(images):
        r, c = e.reduce(v, 1 << i)
        if r == 0:
            ker.append(c)
        else:
            e.add(r, c)
    # reduce the kernel basis for a canonical form
    k = Echelon()
    for v in ker:
        k.add(v)
    return [k.rows[p] for p in sorted(k.rows)]


def apply(images: list[int], v: int) -> int:
    out = 0
    i = 0
    while v:
        if v & 1:
            out ^= images[i]
        v >>= 1
        i += 1
    return out


def compose(g_images: list[int], f_images: list[int]) -> list[int]:
    """Images of g∘f."""
    return [apply(g_images, v) for v in f_images]


def cohomology(into: list[int], out: list[int], dim: int):
    """H = ker(out) / im(into) at a space of dimension ``dim``.

    ``into`` lists images of the incoming map (vectors in this space),
    ``out`` the images of this space's basis under the outgoing map.
    Returns (dimension, echelon of the image, list of kernel vectors
    completing the image to a basis of the kernel).
    """
    im = Echelon()
    for v in into:
        im.add(v)
    ker = kernel(out) if out else [1 << i for i in range(dim)]
    comp = []
    e = Echelon()
    for v in im.rows.values():
        e.add(v)
    for v in ker:
        if e.add(v):
            comp.append(v)
    return len(comp), im, comp


def reduce_mod(v: int, sub: Echelon) -> int:
    return sub.reduce(v)[0]
