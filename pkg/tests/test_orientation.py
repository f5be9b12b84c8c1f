from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stratkit.errors import NormalizationViolation
from stratkit.orientation import (UNIT, Dyadic, LaurentKO, LaurentKU, TransferSymbol, boundary_factor,
                                  complexify, compose_factor, compose_transfer, inverse, nns_transfer,
                                  orientation_compat_check, psi2, run_suites, sign_norm, transfer)

dyadics = st.builds(Dyadic, st.integers(-10**6, 10**6), st.integers(-40, 40))
ko = st.dictionaries(st.integers(-5, 5), dyadics, max_size=4).map(LaurentKO)


def test_sign_norm_examples():
    assert sign_norm(0) == 1
    assert sign_norm(4) == Fraction(1, 4)
    assert sign_norm(7) == Fraction(1, 8)
    for n in range(0, 65):
        assert sign_norm(n).to_fraction() == Fraction(1, 2 ** (n // 2))


def test_compose_factor_examples():
    assert compose_factor(3, 5) == 2
    assert compose_factor(2, 3) == 1
    assert compose_factor(0, 0) == 1


def test_compose_transfer_examples():
    c = compose_transfer(transfer(3), transfer(5))
    assert c.fiber_dim == 8 and c.degree == 0 and c.coeff == Dyadic.pow2(-4)
    for n in range(10):
        t = transfer(n)
        assert compose_transfer(UNIT, t) == t and compose_transfer(t, UNIT) == t


def test_compose_transfer_catches_bad_normalization():
    bad = TransferSymbol("x", 2, Dyadic(1))
    with pytest.raises(NormalizationViolation):
        compose_transfer(bad, transfer(2))


def test_boundary_factor():
    assert boundary_factor(4) == 2
    assert boundary_factor(5) == 1
    for n in range(1, 65):
        assert Fraction(1, 2 ** (n // 2)) * boundary_factor(n) == Fraction(1, 2 ** ((n - 1) // 2))
    with pytest.raises(ValueError):
        boundary_factor(0)


def test_psi2_and_complexify_examples():
    a = LaurentKO.monomial(1)
    assert psi2(a) == LaurentKO.monomial(1, 4)
    assert psi2(LaurentKO.monomial(0)) == LaurentKO.monomial(0)
    assert complexify(a) == LaurentKU.monomial(2)
    assert complexify(LaurentKO.monomial(-1, 3)) == LaurentKU.monomial(-2, 3)
    assert complexify(LaurentKO.monomial(0)) == LaurentKU.monomial(0)
    assert LaurentKO.monomial(1) != LaurentKU.monomial(1)


def test_compat_examples():
    assert orientation_compat_check(1, 0)
    assert orientation_compat_check(1, 1)
    # c(psi2^-1(a)) is a quarter of beta^2
    assert complexify(psi2(LaurentKO.monomial(1), inverse=True)) == LaurentKU.monomial(2, Fraction(1, 4))
    assert all(orientation_compat_check(k, s) for k in range(11) for s in range(-5, 6))


def test_nns_transfer():
    assert nns_transfer(0).symbol == UNIT
    t = nns_transfer(3)
    assert t.symbol.degree == 1
    u = compose_transfer(inverse(t.witness), t.witness)
    assert (u.fiber_dim, u.coeff) == (0, 1)
    both = compose_transfer(nns_transfer(2).symbol, nns_transfer(3).symbol)
    assert both.degree == 1
    with pytest.raises(ValueError):
        nns_transfer(-1)


def test_dyadic_canonical_form():
    assert (Dyadic(12, 0).m, Dyadic(12, 0).e) == (3, 2)
    assert (Dyadic(0, 7).m, Dyadic(0, 7).e) == (0, 0)
    assert Dyadic.of(Fraction(3, 8)) == Dyadic(3, -3)
    assert str(Dyadic(3, -3)) == "3/8"
    with pytest.raises(ValueError):
        Dyadic.of(Fraction(1, 3))
    with pytest.raises(ValueError):
        Dyadic(1) / 3


@given(dyadics, dyadics)
def test_dyadic_arithmetic_matches_fractions(x, y):
    for z in (x + y, x - y, x * y, -x):
        assert z.m % 2 == 1 or (z.m == 0 and z.e == 0)
    assert (x + y).to_fraction() == x.to_fraction() + y.to_fraction()
    assert (x * y).to_fraction() == x.to_fraction() * y.to_fraction()
    assert (x - y).to_fraction() == x.to_fraction() - y.to_fraction()


@given(ko, ko)
def test_ring_homomorphisms(x, y):
    for f in (psi2, lambda v: psi2(v, inverse=True), complexify):
        assert f(x + y) == f(x) + f(y)
        assert f(x * y) == f(x) * f(y)
    assert psi2(LaurentKO.monomial(0)) == LaurentKO.monomial(0)
    assert psi2(psi2(x, inverse=True)) == x


def test_associativity_exhaustive():
    for i in range(9):
        for j in range(9):
            for k in range(9):
                a, b, c = transfer(i), transfer(j), transfer(k)
                left = compose_transfer(compose_transfer(a, b), c)
                right = compose_transfer(a, compose_transfer(b, c))
                assert (left.fiber_dim, left.coeff) == (right.fiber_dim, right.coeff)


@given(st.integers(-30, 30), st.integers(-30, 30))
def test_inverse_symbols(i, j):
    # composites of symbols and inverse symbols stay normalized
    s = transfer(i) if i >= 0 else inverse(transfer(-i))
    t = transfer(j) if j >= 0 else inverse(transfer(-j))
    c = compose_transfer(s, t)
    assert c.fiber_dim == i + j and c.is_normalized()


def test_suites_pass():
    results = run_suites()
    assert results and all(r.passed for r in results), [r.to_json() for r in results if not r.passed]
    assert {r.name.split()[0] for r in results} >= {"normalization", "compose_transfer", "orientation_compat_check"}
