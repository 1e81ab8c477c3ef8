"""Independent reference route for the Steenrod computations.

Everything here works in the Milnor basis Sq(r1, r2, ...) with the product
given by Milnor's matrix formula, and resolves with dense numpy elimination.
Nothing is shared with the admissible-basis route in ``algebra`` and
``resolution``; the two are compared by the tests and the golden chart is
produced from this module.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np


def milnor_degree(r) -> int:
    return sum(x * ((1 << (i + 1)) - 1) for i, x in enumerate(r))


@lru_cache(maxsize=None)
def milnor_basis(n: int) -> tuple[tuple[int, ...], ...]:
    """All Sq(r1, ..., rk) of degree n, trailing zeros stripped, sorted."""
    out = []

    def rec(rem, i, acc):
        # fill positions i, i-1, ..., 1 (weights 2^i - 1)
        if i == 0:
            if rem == 0:
                r = list(reversed(acc))
                while r and r[-1] == 0:
                    r.pop()
                out.append(tuple(r))
            return
        w = (1 << i) - 1
        for x in range(rem // w + 1):
            rec(rem - x * w, i - 1, acc + [x])

    top = 1
    while (1 << (top + 1)) - 1 <= n:
        top += 1
    rec(n, top, [])
    return tuple(sorted(set(out)))


def milnor_dim(n: int) -> int:
    return len(milnor_basis(n))


def _disjoint(values) -> bool:
    acc = 0
    for v in values:
        if acc & v:
            return False
        acc |= v
    return True


@lru_cache(maxsize=None)
def milnor_product(r: tuple, s: tuple) -> frozenset:
    """Sq(r)·Sq(s) as a set of Milnor monomials (GF(2) support).

    Sum over matrices X (rows 0..len r, cols 0..len s, X[0][0] unused) with
    sum_j 2^j X[i][j] = r_i and sum_i X[i][j] = s_j; the term is Sq(T) with
    T_n = sum_{i+j=n} X[i][j] and coefficient prod_n multinomial(diagonal n),
    which is odd iff the diagonal entries have disjoint binary digits.
    """
    rows, cols = len(r), len(s)
    result: set = set()
    X = [[0] * (cols + 1) for _ in range(rows + 1)]

    def finish():
        for j in range(1, cols + 1):
            col = sum(X[i][j] for i in range(1, rows + 1))
            if col > s[j - 1]:
                return
            X[0][j] = s[j - 1] - col
        T = []
        for n in range(1, rows + cols + 1):
            diag = [X[i][n - i] for i in range(max(0, n - cols), min(rows, n) + 1)]
            if not _disjoint(diag):
                return
            T.append(sum(diag))
        while T and T[-1] == 0:
            T.pop()
        result.symmetric_difference_update({tuple(T)})

    def fill(i, j, rem):
        # rem: what is left of r_i for columns j.. and X[i][0]
        if i > rows:
            finish()
            return
        if j > cols:
            X[i][0] = rem
            fill(i + 1, 1, r[i] if i < rows else 0)
            return
        w = 1 << j
        used = sum(X[k][j] for k in range(1, i))
        for x in range(min(rem // w, s[j - 1] - used) + 1):
            X[i][j] = x
            fill(i, j + 1, rem - x * w)
        X[i][j] = 0

    if rows == 0:
        return frozenset({tuple(s)})
    fill(1, 1, r[0])
    return frozenset(result)


def milnor_mul_elements(a, b) -> frozenset:
    out: set = set()
    for x in a:
        for y in b:
            out.symmetric_difference_update(milnor_product(x, y))
    return frozenset(out)


# ---------------------------------------------------------------------------
# dense GF(2) elimination


def _rref(M: np.ndarray):
    """Row reduce a uint8 matrix mod 2 in place; return pivot columns."""
    M = M.copy()
    pivots = []
    r = 0
    nrows, ncols = M.shape
    for c in range(ncols):
        if r >= nrows:
            break
        hits = np.nonzero(M[r:, c])[0]
        if len(hits) == 0:
            continue
        p = r + hits[0]
        if p != r:
            M[[r, p]] = M[[p, r]]
        others = np.nonzero(M[:, c])[0]
        others = others[others != r]
        if len(others):
            M[others] ^= M[r]
        pivots.append(c)
        r += 1
    return M, pivots


def dense_rank(M: np.ndarray) -> int:
    if M.size == 0:
        return 0
    return len(_rref(M % 2)[1])


def dense_kernel(M: np.ndarray) -> np.ndarray:
    """Row vectors c with c @ M = 0 (mod 2), as a matrix."""
    n, m = M.shape
    if n == 0:
        return np.zeros((0, n), dtype=np.uint8)
    aug = np.concatenate([M % 2, np.eye(n, dtype=np.uint8)], axis=1).astype(np.uint8)
    R, piv = _rref(aug)
    k = sum(1 for c in piv if c < m)
    return R[k:, m:]


# ---------------------------------------------------------------------------
# dense resolution of F2


class DenseResolution:
    """Minimal resolution of F2 in the Milnor basis with numpy matrices.

    ``gens[s]`` lists generator degrees; ``dvals[s][g]`` is d(g) as a dict
    {(gen index in F_{s-1}, milnor monomial): 1}.
    """

    def __init__(self, s_max: int, t_max: int):
        self.s_max, self.t_max = s_max, t_max
        self.gens: list[list[int]] = [[] for _ in range(s_max + 1)]
        self.dvals: list[list[frozenset]] = [[] for _ in range(s_max + 1)]
        self._run()

    def basis(self, s, t):
        out = []
        for g, dg in enumerate(self.gens[s]):
            if dg <= t:
                out.extend((g, m) for m in milnor_basis(t - dg))
        return out

    def matrix(self, s, t):
        """Matrix of d_s: F_{s,t} -> F_{s-1,t}, rows = source basis."""
        src = self.basis(s, t)
        tgt = self.basis(s - 1, t)
        idx = {b: i for i, b in enumerate(tgt)}
        M = np.zeros((len(src), len(tgt)), dtype=np.uint8)
        for i, (g, m) in enumerate(src):
            for (h, mm) in self.dvals[s][g]:
                for prod in milnor_product(m, mm):
                    M[i, idx[(h, prod)]] ^= 1
        return M

    def _run(self):
        self.gens[0].append(0)
        self.dvals[0].append(frozenset())
        for t in range(self.t_max + 1):
            for s in range(1, self.s_max + 1):
                tgt = self.basis(s - 1, t)
                if s == 1:
                    # kernel of the augmentation: everything but the unit
                    K = np.eye(len(tgt), dtype=np.uint8)
                    if t == 0:
                        K = K[:0]
                else:
                    K = dense_kernel(self.matrix(s - 1, t))
                im = self.matrix(s, t)
                base = dense_rank(im) if im.size else 0
                cur = im
                for v in K:
                    trial = np.vstack([cur, v[None, :]]) if cur.size else v[None, :]
                    if dense_rank(trial) > base:
                        cur, base = trial, base + 1
                        self.gens[s].append(t)
                        self.dvals[s].append(frozenset(tgt[i] for i in np.nonzero(v)[0]))

    def chart(self) -> dict[tuple[int, int], int]:
        out: dict = {}
        for s, degs in enumerate(self.gens):
            for t in degs:
                out[(s, t)] = out.get((s, t), 0) + 1
        return out


def oracle_chart(s_max: int, t_max: int) -> dict[tuple[int, int], int]:
    return DenseResolution(s_max, t_max).chart()
