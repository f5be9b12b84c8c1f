from itertools import combinations

import pytest
from hypothesis import given

from conftest import posets, small_posets
from stratkit.poset import (Poset, PosetError, UpwardSet, antichain, bracket_one, chain, cone, depth,
                            is_downward_closed, is_linear_extension, is_upward_closed, pair_label, point, product)


def test_construction_closes_transitively():
    p = Poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert p.leq("a", "c") and not p.leq("c", "a")
    assert p.hasse == (("a", "b"), ("b", "c"))


def test_cycle_rejected():
    with pytest.raises(PosetError):
        Poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_unknown_element_rejected():
    with pytest.raises(PosetError):
        Poset(["a"], [("a", "b")])


def test_product_of_brackets_is_diamond():
    d = product(bracket_one(), bracket_one())
    assert len(d) == 4
    assert d.lt("(0,0)", "(0,1)") and d.lt("(0,0)", "(1,0)")
    assert d.lt("(0,1)", "(1,1)") and d.lt("(1,0)", "(1,1)")
    assert not d.comparable("(0,1)", "(1,0)")


def test_product_with_point_is_identity():
    a = chain(3)
    p = product(a, Poset(["x"]))
    assert p.relabel({pair_label(e, "x"): e for e in a.elements}) == a


def test_product_bracket_chain3_relation_count():
    p = product(bracket_one(), chain(3))
    assert len(p) == 6
    # brute force: (x,y) < (x',y') iff x <= x', y <= y', not both equal
    brute = sum(1 for x in range(2) for y in range(3) for x2 in range(2) for y2 in range(3)
                if x <= x2 and y <= y2 and (x, y) != (x2, y2))
    assert brute == 12
    assert len(p.strict_relations()) == 12
    assert len(p.hasse) == 7


def test_cone_examples():
    assert len(cone(Poset([]))) == 1
    c = cone(bracket_one())
    assert c.hasse == (("*", "0"), ("0", "1"))
    c2 = cone(antichain(["x", "y"]))
    assert len(c2) == 3 and c2.lt("*", "x") and c2.lt("*", "y") and not c2.comparable("x", "y")


def test_cone_apex_avoids_existing_label():
    c = cone(Poset(["*"]))
    assert "*1" in c and c.lt("*1", "*")


def test_depth_examples():
    assert depth(point()) == 0
    assert depth(bracket_one()) == 1
    assert depth(chain(5)) == 4


def test_depth_of_cone_exhaustive():
    for p in small_posets(4):
        assert depth(cone(p)) == depth(p) + 1


def test_upward_closed_examples():
    b = bracket_one()
    assert is_upward_closed(UpwardSet(b, frozenset({"1"})))
    assert not is_upward_closed(UpwardSet(b, frozenset({"0"})))


def test_complement_of_upward_closed_is_downward_closed_on_diamond():
    d = product(bracket_one(), bracket_one())
    subsets = [frozenset(c) for k in range(5) for c in combinations(d.elements, k)]
    assert len(subsets) == 16
    for s in subsets:
        u = UpwardSet(d, s)
        if u.is_upward_closed():
            assert is_downward_closed(d, u.complement())
        else:
            assert not is_downward_closed(d, u.complement())


def _pair_swap(p, a, b):
    return p.relabel({pair_label(x, y): pair_label(y, x) for x in a.elements for y in b.elements})


def test_product_commutative_and_associative_small():
    small = list(small_posets(3))
    for a in small:
        for b in small:
            assert _pair_swap(product(a, b), a, b) == product(b, a)
    for a in small[:6]:
        for b in small[:6]:
            for c in small[:6]:
                left = product(product(a, b), c)
                right = product(a, product(b, c))
                m = {pair_label(pair_label(x, y), z): pair_label(x, pair_label(y, z))
                     for x in a.elements for y in b.elements for z in c.elements}
                assert left.relabel(m) == right


def test_depth_additive_on_products():
    small = list(small_posets(3))
    for a in small:
        for b in small:
            assert depth(product(a, b)) == depth(a) + depth(b)


@given(posets())
def test_upward_closed_sets_closed_under_union_and_intersection(p):
    ups = [frozenset(p.up_set(x)) for x in p.elements]
    fam = set(ups) | {frozenset()}
    for s in list(fam):
        for t in list(fam):
            assert is_upward_closed(UpwardSet(p, s | t))
            assert is_upward_closed(UpwardSet(p, s & t))


@given(posets())
def test_linear_extension_and_heights(p):
    order = p.linear_extension()
    assert is_linear_extension(order, p)
    for x, y in p.strict_relations():
        assert p.height(x) < p.height(y)
    assert depth(p) == max(p.height(x) for x in p.elements)


@given(posets())
def test_hasse_generates_the_order(p):
    assert Poset(p.elements, p.hasse) == p
    assert Poset.from_json(p.to_json()) == p
