import math
from itertools import combinations
from random import Random

import pytest
from hypothesis import given, strategies as st

from conftest import select
from stratkit import desc as sd, oracle
from stratkit.complex import (FilteredComplex, SimplicialComplex, barycentric, barycentric_complex, link_complex,
                              orient)
from stratkit.errors import FiltrationError, NonOrientable
from stratkit.poset import Poset
from stratkit.resolution import random_desc

A = sd.atom
S = SimplicialComplex.boundary_of_simplex


def reduced(ranks):
    return [ranks[0] - 1] + ranks[1:]


def test_simplex_boundaries():
    assert S(3).homology_ranks() == [1, 0, 1]
    assert SimplicialComplex([(0,)]).homology_ranks() == [1]
    assert S(3).f_vector == [4, 6, 4]
    assert S(3).euler_characteristic == 2


def test_shipped_surfaces():
    assert sd.realize(A("T2")).complex.f_vector == [7, 21, 14]
    assert sd.realize(A("T2")).complex.homology_ranks() == [1, 2, 1]
    assert sd.realize(A("RP2")).complex.f_vector == [6, 15, 10]


def test_realize_cone_of_triangle_boundary():
    fc = sd.realize(sd.Cone(A("S1")))
    assert fc.complex.f_vector == [4, 6, 3]
    apex = [s for s, a in fc.labels.items() if a == "*"]
    assert apex == [(3,)]


def test_realize_join_of_circles():
    fc = sd.realize(sd.Join(A("S1"), A("S1")))
    assert fc.complex.f_vector[0] == 6 and fc.complex.f_vector[3] == 9
    assert fc.complex.homology_ranks() == [1, 0, 0, 1]


def test_realize_product_of_spheres():
    K = sd.realize(sd.Product(A("S2"), A("S2"))).complex
    assert K.homology_ranks() == [1, 0, 2, 0, 1]
    assert oracle.homology_ranks(K) == [1, 0, 2, 0, 1]


def test_barycentric_small():
    K = barycentric_complex(SimplicialComplex([(0, 1)]))
    assert K.f_vector == [3, 2]
    K = barycentric_complex(S(2))
    assert K.f_vector == [6, 6] and all(len(c) == 6 for c in K.components())


def test_links():
    fc = sd.realize(sd.Cone(A("T2")))
    assert link_complex(fc, "*").complex.homology_ranks() == [1, 2, 1]
    assert link_complex(FilteredComplex.trivial(S(3)), 0).complex.homology_ranks() == [1, 1]
    susp = sd.realize(sd.Suspension(A("S2")))
    for a in sd.singular_labels(sd.Suspension(A("S2"))):
        assert link_complex(susp, a).complex.homology_ranks() == [1, 0, 1]
        assert link_complex(susp, a, normal=True).complex.homology_ranks() == [1, 0, 1]


def test_normal_link_dimension_along_a_stratum():
    d = sd.Product(sd.Suspension(A("S2")), A("S1"))
    fc = sd.realize(d)
    for a in sd.singular_labels(d):
        assert link_complex(fc, a, normal=True).dim == fc.dim - fc.dims[a] - 1


def test_orientation():
    cyc = orient(FilteredComplex.trivial(S(3)))
    assert len(cyc.coeffs) == 4 and not cyc.boundary()
    with pytest.raises(NonOrientable):
        orient(sd.realize(A("RP2")))
    cyc = orient(sd.realize(sd.Suspension(A("T2"))))
    assert not cyc.boundary() and set(abs(v) for v in cyc.coeffs.values()) == {1}
    assert cyc.negated().coeffs == {s: -v for s, v in cyc.coeffs.items()}


def test_filtration_violations_rejected():
    K = S(2)
    poset = Poset(["p", "reg"], [("p", "reg")])
    labels = {s: "reg" for s in K}
    labels[(0,)] = "p"
    FilteredComplex(K, poset, labels)
    bad = dict(labels)
    bad[(0, 1)] = "p"  # a face (1,) of this edge sits in the higher stratum
    with pytest.raises(FiltrationError):
        FilteredComplex(K, poset, bad)
    with pytest.raises(FiltrationError):
        FilteredComplex(K, Poset(["p", "q", "reg"], [("p", "reg")]), labels)


def test_homology_matches_dense_oracle_on_corpus(manifest, examples):
    for name in select(manifest, max_simplices=300):
        K = sd.realize(examples[name]).complex
        assert K.homology_ranks() == oracle.homology_ranks(K) == manifest[name]["homology"], name
    for name in select(manifest):
        assert sd.realize(examples[name]).complex.homology_ranks() == manifest[name]["homology"], name


def test_homology_subdivision_invariant_on_corpus(manifest, examples):
    for name in select(manifest, subdividable=True):
        fc = sd.realize(examples[name])
        assert barycentric(fc).complex.homology_ranks() == fc.complex.homology_ranks(), name


def _pairs(manifest, join=False):
    """Corpus pairs whose product or join triangulation is of desk size."""
    names = select(manifest)
    for x in names:
        for y in names:
            rx, ry = manifest[x], manifest[y]
            if join:
                small = (rx["simplices"] + 1) * (ry["simplices"] + 1) <= 5000
            else:
                small = rx["facets"] * ry["facets"] * math.comb(rx["dim"] + ry["dim"], rx["dim"]) <= 1000
            if small:
                yield x, y


def test_euler_characteristic_multiplies(manifest, examples):
    for x, y in _pairs(manifest):
        X, Y = examples[x], examples[y]
        P = sd.realize(sd.Product(X, Y)).complex
        assert P.euler_characteristic == (sd.realize(X).complex.euler_characteristic *
                                          sd.realize(Y).complex.euler_characteristic), (x, y)


def test_join_formula_for_reduced_homology(manifest, examples):
    for x, y in _pairs(manifest, join=True):
        hx = reduced(sd.realize(examples[x]).complex.homology_ranks())
        hy = reduced(sd.realize(examples[y]).complex.homology_ranks())
        got = reduced(sd.realize(sd.Join(examples[x], examples[y])).complex.homology_ranks())
        want = [0] * len(got)
        for p, a in enumerate(hx):
            for q, b in enumerate(hy):
                if p + q + 1 < len(want):
                    want[p + q + 1] += a * b
        assert got == want, (x, y)


@given(st.integers(0, 10**6))
def test_random_realizations_against_oracle(seed):
    d = random_desc(Random(seed), 2, 3)
    K = sd.realize(d).complex
    if len(K) <= 400:
        assert K.homology_ranks() == oracle.homology_ranks(K)


@given(st.integers(3, 6), st.data())
def test_random_subcomplexes_against_oracle(n, data):
    facets = data.draw(st.lists(st.sets(st.integers(0, n - 1), min_size=1, max_size=n).map(sorted),
                                min_size=1, max_size=8))
    K = SimplicialComplex(facets)
    assert K.homology_ranks() == oracle.homology_ranks(K)
    assert sum((-1) ** i * r for i, r in enumerate(K.homology_ranks())) == K.euler_characteristic


def test_faces_closed():
    K = sd.realize(sd.Suspension(A("T2"))).complex
    for s in K:
        for k in range(1, len(s)):
            for f in combinations(s, k):
                assert f in K
