"""Regenerate the golden Ext charts from the dense Milnor-basis oracle.

    python3 tests/golden/make_golden.py
"""
from pathlib import Path

from ttk.steenrod.oracle import oracle_chart

HERE = Path(__file__).parent
WINDOWS = [(3, 3), (8, 21)]


def tsv(dims):
    rows = sorted((s, t - s, d) for (s, t), d in dims.items() if d > 0)
    return "s\tstem\tdim\n" + "".join(f"{s}\t{n}\t{d}\n" for s, n, d in rows)


if __name__ == "__main__":
    for s_max, t_max in WINDOWS:
        p = HERE / f"ext_chart_s{s_max}_t{t_max}.tsv"
        p.write_text(tsv(oracle_chart(s_max, t_max)))
        print(p)
