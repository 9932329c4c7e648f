"""Regenerate corpus/*.pd and corpus/manifest.json.

Knots through seven crossings and the two-bridge links through six are
rational, so they are built as alternating 4-plats from Conway notation.
Determinants in the manifest are the standard table values; the test suite
recomputes them from each diagram with a Goeritz matrix.
"""

import json
from pathlib import Path

from dehnlink.build import add_kink, alternating_sum, change_crossing, closure, disjoint_union, rational
from dehnlink.diagram import Diagram, parse_pd

OUT = Path(__file__).resolve().parent.parent / "corpus"

TREFOIL = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"
EIGHT = "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]"

# name: (Conway notation, determinant)
RATIONAL = {
    "5_1": ([5], 5),
    "5_2": ([3, 2], 7),
    "6_1": ([4, 2], 9),
    "6_2": ([3, 1, 2], 11),
    "6_3": ([2, 1, 1, 2], 13),
    "7_1": ([7], 7),
    "7_2": ([5, 2], 11),
    "7_3": ([4, 3], 13),
    "7_4": ([3, 1, 3], 15),
    "7_5": ([3, 2, 2], 17),
    "7_6": ([2, 2, 1, 2], 19),
    "7_7": ([2, 1, 1, 1, 2], 21),
    "hopf": ([2], 2),
    "L4a1": ([4], 4),
    "whitehead": ([2, 1, 2], 8),
    "L6a3": ([6], 6),
    "L6a2": ([3, 3], 10),
    "L6a1": ([2, 2, 2], 12),
}


def pd_text(d: Diagram) -> str:
    items = [str(c) for c in d.crossings] + ["O"] * d.circles
    return "PD[" + ",".join(items) + "]"


def main():
    OUT.mkdir(exist_ok=True)
    trefoil = parse_pd(TREFOIL)
    fixtures = {
        "unknot0": (Diagram((), 1), 1, "unknot, no crossings"),
        "unknot1": (parse_pd("PD[X(1,2,2,1)]"), 1, "unknot with one nugatory crossing"),
        "trefoil": (trefoil, 3, "3_1"),
        "eight": (parse_pd(EIGHT), 5, "4_1"),
    }
    for name, (terms, det) in RATIONAL.items():
        fixtures[name] = (rational(terms), det, "Conway " + " ".join(map(str, terms)))
    fixtures["borromean"] = (closure(3, [(0, 1), (1, -1)] * 3), 16, "closure of (s1 s2^-1)^3")
    fixtures["granny"] = (alternating_sum(trefoil, trefoil), 9, "3_1 # 3_1")
    fixtures["trefoil_kinked"] = (add_kink(trefoil, 2), 3, "3_1 with a curl on edge 2")
    fixtures["trefoil_circle"] = (disjoint_union(trefoil, Diagram((), 1)), 0, "3_1 and a split circle")
    fixtures["trefoil_flipped"] = (change_crossing(trefoil, 0), 1, "3_1 with one crossing changed")
    manifest = []
    for name, (d, det, note) in fixtures.items():
        (OUT / f"{name}.pd").write_text(f"# {note}\n{pd_text(d)}\n")
        manifest.append({
            "name": name,
            "file": f"{name}.pd",
            "crossings": len(d.crossings),
            "components": d.n_components,
            "determinant": det,
            "note": note,
        })
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


if __name__ == "__main__":
    main()
