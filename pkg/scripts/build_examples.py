"""Regenerate the shipped example SSD files and their manifest of expected outputs.

Expected values come from the production code; run the test suite afterwards,
which cross-checks them against the oracles.
"""

import json
import sys
from pathlib import Path

from stratkit import desc as sd, ih as ihm, ssd
from stratkit.complex import FilteredComplex, SimplicialComplex, orient
from stratkit.errors import DescNotSupported, NonOrientable, NotPseudomanifold
from stratkit.witt import signature, witt_check

OUT = Path(__file__).resolve().parent.parent / "src" / "stratkit" / "examples"
# realizations above this many top simplices are not recomputed in the tests
HEAVY = 20000
A = sd.atom


def two_point_sphere():
    # octahedron with its two poles as point strata
    K = SimplicialComplex([(0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 2, 5),
                           (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 2, 5)])
    labels = {s: ("n" if s == (0,) else "s" if s == (1,) else "reg") for s in K}
    fc = FilteredComplex(K, sd.Poset(["n", "s", "reg"], [("n", "reg"), ("s", "reg")]), labels)
    return sd.Atom("S2 with poles", fc)


SPACES = {
    "pt": A("pt"),
    "s1": A("S1"),
    "s2": A("S2"),
    "s4": A("S4"),
    "t2": A("T2"),
    "rp2": A("RP2"),
    "cp2": A("CP2"),
    "s2xs2": sd.Product(A("S2"), A("S2")),
    "cp2xcp2": sd.Product(A("CP2"), A("CP2")),
    "susp_s2": sd.Suspension(A("S2")),
    "susp_t2": sd.Suspension(A("T2")),
    "susp_s2_x_s1": sd.Product(sd.Suspension(A("S2")), A("S1")),
    "susp_susp_s1": sd.Suspension(sd.Suspension(A("S1"))),
    "cone_s1": sd.Cone(A("S1")),
    "cone_t2": sd.Cone(A("T2")),
    "join_s1_s1": sd.Join(A("S1"), A("S1")),
    "join_s0_t2": sd.Join(A("S0"), A("T2")),
    "s2_poles": two_point_sphere(),
    "toy_depth2": sd.Product(A("S1"), sd.Cone(sd.Product(A("S1"), sd.Cone(A("S1"))))),
    "cone_s1_x_cone_s2": sd.Product(sd.Cone(A("S1")), sd.Cone(A("S2"))),
}


def kunneth(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def expected(d):
    ok, rep = sd.is_pseudomanifold(d)
    fc = sd.realize(d)
    facets = len(fc.complex.facets)
    heavy = facets > HEAVY
    row = {"dim": sd.dim(d), "facets": facets, "simplices": len(fc.complex), "heavy": heavy,
           "trivially_stratified": not fc.singular_labels,
           "singular_strata": len(sd.singular_labels(d)), "pseudomanifold": ok}
    if heavy and isinstance(d, sd.Product):
        hl = expected(d.left)["homology"]
        hr = expected(d.right)["homology"]
        row["homology"] = kunneth(hl, hr)
    else:
        row["homology"] = fc.complex.homology_ranks()
    try:
        orient(fc)
        row["closed_orientable"] = True
    except (NonOrientable, NotPseudomanifold):
        row["closed_orientable"] = False
    if not ok:
        return row
    row["ih_lower_middle"] = row["homology"] if heavy else ihm.ih_ranks(fc, ihm.lower_middle(fc.dim))
    row["witt"] = witt_check(d).witt
    try:
        row["signature"] = signature(d) if row["witt"] else None
    except DescNotSupported:
        row["signature"] = None
    return row


def main():
    OUT.mkdir(exist_ok=True)
    manifest = {}
    for name, d in SPACES.items():
        doc = {"space": ssd.to_json(d)}
        text = ssd.dumps(doc)
        (OUT / f"{name}.ssd").write_text(text)
        assert ssd.parse_ssd(text) == d
        manifest[f"{name}.ssd"] = expected(d)
        print(name, manifest[f"{name}.ssd"], file=sys.stderr)
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
