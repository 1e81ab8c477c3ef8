"""Minimal resolutions over the Steenrod algebra and Ext charts.

Elements of a free module F_s in internal degree t are bit-packed ints over
the basis of pairs (generator index, admissible monomial), sorted.  Every
differential d_s: F_s -> F_{s-1} is stored by its values on generators.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .. import gf2
from ..chains import WindowExceeded
from .algebra import SteenrodError, admissible_basis, mono_mul, parse_element

S_CAP = 10
T_CAP = 26


class IndexOutOfRange(SteenrodError):
    pass


class UnknownFormat(SteenrodError):
    pass


class InvalidModule(SteenrodError):
    pass


# ---------------------------------------------------------------------------
# coefficient modules


@dataclass
class ModulePresentation:
    """Generators with degrees and relations, each relation an element of
    the free module on the generators given as {generator: SteenrodElement}."""
    generators: list[tuple[str, int]]
    relations: list[dict] = field(default_factory=list)
    name: str = "M"

    @classmethod
    def f2(cls, t_max: int = T_CAP) -> "ModulePresentation":
        # the Sq^(2^i) generate the augmentation ideal
        rels = []
        i = 1
        while i <= t_max:
            rels.append({"1": parse_element(f"Sq({i})")})
            i *= 2
        return cls([("1", 0)], rels, "F2")

    def relation_degree(self, rel) -> int:
        deg = {g: d for g, d in self.generators}
        degs = {deg[g] + el.degree for g, el in rel.items() if not el.is_zero()}
        if len(degs) > 1:
            raise InvalidModule(f"inhomogeneous relation {rel}")
        return degs.pop() if degs else -1

    @classmethod
    def from_json(cls, doc) -> "ModulePresentation":
        gens = [(g["id"], int(g["degree"])) for g in doc.get("generators", [])]
        names = {g for g, _ in gens}
        if len(names) != len(gens):
            raise InvalidModule("duplicate generator ids")
        rels = []
        for entry in doc.get("relations", []):
            if len(entry) != 3:
                raise InvalidModule(f"relation must be [gen, op, target], got {entry}")
            g, op, target = entry
            if g not in names:
                raise InvalidModule(f"unknown generator {g!r}")
            rel = {g: parse_element(op)}
            for h, el in _parse_module_expr(target, names).items():
                rel[h] = rel[h] + el if h in rel else el
            rels.append({h: el for h, el in rel.items() if not el.is_zero()})
        M = cls(gens, rels, doc.get("name", "M"))
        for r in rels:
            M.relation_degree(r)
        return M

    def to_json(self):
        def fmt(el):
            return "+".join("Sq(" + ",".join(map(str, m)) + ")" if m else "1" for m in el.terms) or "0"
        rels = []
        for r in self.relations:
            items = sorted(r.items())
            g, op = items[0]
            tgt = "+".join(f"{fmt(el)}*{h}" for h, el in items[1:]) or "0"
            rels.append([g, fmt(op), tgt])
        return {"name": self.name, "generators": [{"id": g, "degree": d} for g, d in self.generators],
                "relations": rels}


_MTERM = re.compile(r"^(?:(.+)\*)?\s*([A-Za-z_][\w]*)$")


def _parse_module_expr(text: str, names) -> dict:
    text = text.strip()
    out: dict = {}
    if text in ("", "0"):
        return out
    # split on + outside parentheses
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    for p in parts:
        m = _MTERM.match(p.strip())
        if not m or m.group(2) not in names:
            raise InvalidModule(f"cannot parse module term {p!r}")
        op = parse_element(m.group(1)) if m.group(1) else parse_element("1")
        h = m.group(2)
        out[h] = out[h] + op if h in out else op
    return out


# ---------------------------------------------------------------------------
# resolution


class MinimalResolution:
    """Minimal free resolution F_s -> ... -> F_0 -> M over the window
    s <= s_max, t <= t_max.

    ``gens[s]`` is the list of generator degrees of F_s (in creation order,
    hence nondecreasing) and ``dvals[s][i]`` the value of d_s on generator i
    as a frozenset of (generator of F_{s-1}, admissible monomial).
    """

    def __init__(self, module: ModulePresentation | None = None, s_max: int = 8, t_max: int = 21,
                 s_cap: int = S_CAP, t_cap: int = T_CAP):
        if s_max < 0 or t_max < 0:
            raise ValueError("s_max and t_max must be >= 0")
        if s_max > s_cap or t_max > t_cap:
            raise WindowExceeded(f"window (s<={s_max}, t<={t_max}) exceeds caps (s<={s_cap}, t<={t_cap})")
        self.module = module or ModulePresentation.f2(t_max)
        self.s_max, self.t_max = s_max, t_max
        gens0 = sorted(self.module.generators, key=lambda g: (g[1], g[0]))
        self.gen0_ids = [g for g, _ in gens0]
        self.gens: list[list[int]] = [[d for _, d in gens0]] + [[] for _ in range(s_max)]
        self.dvals: list[list[frozenset]] = [[] for _ in range(s_max + 1)]
        self._rows: dict[tuple[int, int], list[int]] = {}
        self._run()

    # -- bases and matrices ----------------------------------------------

    def basis(self, s: int, t: int) -> list[tuple[int, tuple]]:
        out = []
        for g, dg in enumerate(self.gens[s]):
            if dg <= t:
                out.extend((g, m) for m in admissible_basis(t - dg))
        return out

    def index(self, s: int, t: int) -> dict:
        return {b: i for i, b in enumerate(self.basis(s, t))}

    def _image(self, value, m, idx) -> int:
        v = 0
        for h, mm in value:
            for p in mono_mul(m, mm):
                v ^= 1 << idx[(h, p)]
        return v

    def matrix(self, s: int, t: int) -> list[int]:
        """Rows of d_s on the basis of F_{s,t}, as vectors in F_{s-1,t}."""
        rows = self._rows.get((s, t))
        if rows is None:
            idx = self.index(s - 1, t)
            rows = [self._image(self.dvals[s][g], m, idx) for g, m in self.basis(s, t)]
            self._rows[(s, t)] = rows
        return rows

    def _relation_span(self, t) -> list[int]:
        pos = {g: i for i, g in enumerate(self.gen0_ids)}
        idx = self.index(0, t)
        vecs = []
        for rel in self.module.relations:
            d = self.module.relation_degree(rel)
            if d < 0 or d > t:
                continue
            for a in admissible_basis(t - d):
                v = 0
                for g, el in rel.items():
                    for m in el.support:
                        for p in mono_mul(a, m):
                            v ^= 1 << idx[(pos[g], p)]
                vecs.append(v)
        return gf2.span_basis(vecs)

    def _run(self):
        for t in range(self.t_max + 1):
            for s in range(1, self.s_max + 1):
                if s == 1:
                    K = self._relation_span(t)
                else:
                    K = gf2.kernel(self.matrix(s - 1, t))
                rows = self.matrix(s, t)        # old generators only
                im = gf2.Echelon()
                for r in rows:
                    im.add(r)
                tgt = self.basis(s - 1, t) if K else []
                for v in K:
                    if im.add(v):
                        self.gens[s].append(t)
                        self.dvals[s].append(frozenset(tgt[i] for i in range(v.bit_length()) if v >> i & 1))
                        rows.append(v)

    # -- checks -----------------------------------------------------------

    def d_squared_violations(self) -> list[str]:
        out = []
        for s in range(2, self.s_max + 1):
            for t in range(self.t_max + 1):
                for i, v in enumerate(gf2.compose(self.matrix(s - 1, t), self.matrix(s, t))):
                    if v:
                        out.append(f"d{s - 1} d{s} != 0 on basis element {i} of F_{s} in degree {t}")
        return out

    def minimality_violations(self) -> list[str]:
        out = []
        for s in range(1, self.s_max + 1):
            for g, val in enumerate(self.dvals[s]):
                for h, m in val:
                    if not m:
                        out.append(f"d{s}(g{g}) has a unit coefficient on generator {h}")
        return out

    def exactness_violations(self) -> list[str]:
        """ker d_{s-1} = im d_s for 1 <= s < s_max (and ker of F_0 -> M =
        im d_1), compared by rank."""
        out = []
        for t in range(self.t_max + 1):
            for s in range(1, self.s_max + 1):
                if s == 1:
                    kdim = len(self._relation_span(t))
                else:
                    rows = self.matrix(s - 1, t)
                    kdim = len(rows) - gf2.rank(rows)
                r = gf2.rank(self.matrix(s, t))
                if r != kdim:
                    out.append(f"at (s={s}, t={t}): rank d = {r}, kernel below has dim {kdim}")
        return out

    # -- Hom into F2 -------------------------------------------------------

    def generators_in(self, s: int, t: int) -> list[int]:
        return [g for g, d in enumerate(self.gens[s]) if d == t]

    def hom_cochain(self, t: int) -> "HomToF2":
        return HomToF2(self, t)

    def to_json(self):
        return {"s_max": self.s_max, "t_max": self.t_max, "module": self.module.to_json(),
                "generators": [list(g) for g in self.gens],
                "d": [[[[h, list(m)] for h, m in sorted(v)] for v in dv] for dv in self.dvals]}


def minimal_resolution(M: ModulePresentation | None = None, s_max: int = 8, t_max: int = 21,
                       s_cap: int = S_CAP, t_cap: int = T_CAP) -> MinimalResolution:
    return MinimalResolution(M, s_max, t_max, s_cap, t_cap)


class HomToF2:
    """Hom_A(F_•, Σ^t F2): dual basis on the generators of degree t, with
    coboundary f -> f∘d computed from the unit coefficients of d."""

    def __init__(self, res: MinimalResolution, t: int):
        self.res, self.t = res, t
        self.window = (0, res.s_max)

    def dim(self, s: int) -> int:
        return len(self.res.generators_in(s, self.t))

    def coboundary(self, s: int) -> list[int]:
        res, t = self.res, self.t
        if s < 0 or s + 1 > res.s_max:
            raise WindowExceeded(f"coboundary out of position {s} is outside [0, {res.s_max}]")
        mine = res.generators_in(s, t)
        nxt = res.generators_in(s + 1, t)
        out = []
        for g in mine:
            v = 0
            for j, h in enumerate(nxt):
                if (g, ()) in res.dvals[s + 1][h]:
                    v |= 1 << j
            out.append(v)
        return out


# ---------------------------------------------------------------------------
# charts


@dataclass
class ExtChart:
    dims: dict[tuple[int, int], int]
    s_max: int
    t_max: int

    def get(self, s: int, t: int) -> int:
        return self.dims.get((s, t), 0)

    def rows(self):
        """(s, stem, dim) for nonzero cells, sorted by s then stem."""
        return sorted((s, t - s, d) for (s, t), d in self.dims.items() if d > 0)

    def restrict(self, s_max: int, stem_max: int) -> "ExtChart":
        return ExtChart({(s, t): d for (s, t), d in self.dims.items() if s <= s_max and t - s <= stem_max},
                        s_max, stem_max + s_max)

    def to_json(self):
        return {"s_max": self.s_max, "t_max": self.t_max,
                "cells": [{"s": s, "stem": n, "dim": d} for s, n, d in self.rows()]}


def ext_chart(res: MinimalResolution, check: bool = True) -> ExtChart:
    """Generator counts of F_s per internal degree.  With ``check`` the
    vanishing of the Hom differentials is verified, not assumed."""
    dims: dict = {}
    for s, degs in enumerate(res.gens):
        for t in degs:
            dims[(s, t)] = dims.get((s, t), 0) + 1
    if check:
        for t in range(res.t_max + 1):
            view = res.hom_cochain(t)
            for s in range(res.s_max):
                if any(view.coboundary(s)):
                    raise SteenrodError(f"Hom differential nonzero at (s={s}, t={t}); resolution not minimal")
    return ExtChart(dims, res.s_max, res.t_max)


def chart_from_tsv(text: str) -> ExtChart:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].split("\t") != ["s", "stem", "dim"]:
        raise UnknownFormat("TSV chart must start with the header s, stem, dim")
    dims = {}
    for ln in lines[1:]:
        s, n, d = (int(x) for x in ln.split("\t"))
        dims[(s, s + n)] = d
    s_max = max((s for s, _ in dims), default=0)
    t_max = max((t for _, t in dims), default=0)
    return ExtChart(dims, s_max, t_max)


def _tsv(chart: ExtChart) -> str:
    lines = ["s\tstem\tdim"]
    lines += [f"{s}\t{n}\t{d}" for s, n, d in chart.rows()]
    return "\n".join(lines) + "\n"


def _svg(chart: ExtChart) -> str:
    cell = 30
    stems = chart.t_max
    w, h = (stems + 2) * cell, (chart.s_max + 2) * cell
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
           f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>']
    for n in range(stems + 1):
        x = (n + 1) * cell
        out.append(f'<text x="{x}" y="{h - 4}" font-size="9" text-anchor="middle">{n}</text>')
    for s in range(chart.s_max + 1):
        y = h - (s + 1) * cell
        out.append(f'<text x="4" y="{y + 3}" font-size="9">{s}</text>')
    for s, n, d in chart.rows():
        cx, cy = (n + 1) * cell, h - (s + 1) * cell
        for k in range(d):
            off = (k - (d - 1) / 2) * 6
            out.append(f'<circle class="dot" cx="{cx + off:g}" cy="{cy}" r="2.5" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_chart(chart: ExtChart, fmt: str = "tsv") -> str:
    if fmt == "tsv":
        return _tsv(chart)
    if fmt == "svg":
        return _svg(chart)
    if fmt == "json":
        return json.dumps(chart.to_json(), indent=2) + "\n"
    raise UnknownFormat(f"unknown chart format {fmt!r} (expected tsv or svg)")


# ---------------------------------------------------------------------------
# cocycles


@dataclass
class Cocycle:
    """A map F_s -> Σ^t F2 sending one generator to 1 and the rest to 0."""
    s: int
    t: int
    generator: int
    values: dict[int, int]

    def as_dict(self):
        return {"s": self.s, "t": self.t, "generator": self.generator,
                "values": {f"g{g}": v for g, v in sorted(self.values.items())}}


def cocycle_rep(res: MinimalResolution, s: int, t: int, index: int) -> Cocycle:
    gens = res.generators_in(s, t)
    if not 0 <= index < len(gens):
        raise IndexOutOfRange(f"index {index} but Ext^({s},{t}) has dimension {len(gens)}")
    g = gens[index]
    values = {h: int(h == g) for h in gens}
    if s < res.s_max:
        # x' d_{s+1} = 0: no generator of F_{s+1} has a unit coefficient on g
        for h in res.generators_in(s + 1, t):
            if (g, ()) in res.dvals[s + 1][h]:
                raise SteenrodError(f"cocycle condition fails at generator {h} of F_{s + 1}")
    return Cocycle(s, t, g, values)
