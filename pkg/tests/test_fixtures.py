"""The shipped fixtures/ files match what the catalog generates and load
back into valid structures."""
import json
from pathlib import Path

import pytest

from ttk import chains, gpd, models2types, tta, ttg
from ttk.fixtures.export import documents
from ttk.steenrod.resolution import ModulePresentation

FIX = Path(__file__).resolve().parent.parent / "fixtures"
DOCS = documents()


def test_file_set():
    assert sorted(p.name for p in FIX.glob("*.json")) == sorted(DOCS)


@pytest.mark.parametrize("name", sorted(DOCS))
def test_shipped_file_is_current(name):
    text = (FIX / name).read_text()
    assert text == json.dumps(DOCS[name], separators=(",", ":")) + "\n"


def test_documents_load():
    assert not gpd.groupoid_violations_json(json.loads((FIX / "gf1.json").read_text()))
    ttg.TwoTrackGroupoid.from_json(json.loads((FIX / "skeletal_z2.json").read_text()))
    A = tta.TwoTrackAlgebra.from_json(json.loads((FIX / "t1.json").read_text()))
    assert not tta.check_axioms(A)
    models2types.DoubleGroupoid.from_json(json.loads((FIX / "dg1.json").read_text()))
    ModulePresentation.from_json(json.loads((FIX / "f2.json").read_text()))
    for name in ("s1", "t1c", "s1_starved", "t1c_starved", "ad1"):
        doc = json.loads((FIX / f"{name}.json").read_text())
        B = tta.TwoTrackAlgebra.from_json(doc["algebra"])
        chains.complex_from_json(B, doc["complex"])
