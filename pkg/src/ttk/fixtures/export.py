"""Write the named fixtures as JSON documents (the files under fixtures/)."""
from __future__ import annotations

import json
from pathlib import Path

from ..steenrod.resolution import ModulePresentation
from ..ttg import build_skeletal
from ..gpd import cyclic_group
from .. import balls
from ..models2types import dg1
from . import catalog


def bundle(algebra, complex_=None, target=None) -> dict:
    doc = {"algebra": algebra.to_json()}
    if complex_ is not None:
        doc["complex"] = complex_.to_json()
    if target is not None:
        doc["target"] = target
    return doc


def b1_chain():
    """The ball (al ⊗ x4)(x1 ⊗ be)(a ⊗ c) in hom(Y4, Y0) of T1."""
    D = catalog.t1()
    A = D.algebra
    n = catalog.t1_named(D)
    al = D.el2("Y3", "Y0", "a.x3", "al")
    be = D.el2("Y4", "Y1", "b.x4", "be")
    entries = [(A.tensor(al, n["x4"]), 1), (A.tensor(n["x1"], be), 1), (A.tensor(n["a"], n["c"]), 1)]
    return balls.make_chain(A, entries)


def documents() -> dict[str, dict]:
    docs = {
        "gf1.json": catalog.gf1().to_json(),
        "t1.json": catalog.t1().algebra.to_json(),
        "b1.json": b1_chain().to_json(),
        "skeletal_z2.json": build_skeletal(cyclic_group(2), cyclic_group(2)).to_json(),
        "dg1.json": dg1().to_json(),
        "f2.json": ModulePresentation.f2().to_json(),
    }
    for name, fx in (("s1", catalog.s1()), ("t1c", catalog.t1c())):
        docs[f"{name}.json"] = bundle(fx.algebra, fx.complex)
    docs["s1_starved.json"] = bundle(catalog.s1(True).algebra, catalog.s1(True).complex)
    docs["t1c_starved.json"] = bundle(catalog.t1c(True).algebra, catalog.t1c(True).complex)
    ad = catalog.ad1()
    docs["ad1.json"] = bundle(ad.algebra, ad.setup.C, "T")
    return docs


def write_all(directory) -> list[Path]:
    out = []
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for name, doc in sorted(documents().items()):
        p = d / name
        p.write_text(json.dumps(doc, separators=(",", ":")) + "\n")
        out.append(p)
    return out


if __name__ == "__main__":
    import sys
    for p in write_all(sys.argv[1] if len(sys.argv) > 1 else "fixtures"):
        print(p)
