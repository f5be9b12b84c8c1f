"""Coefficient-level bookkeeping for signature orientations and transfers.

Everything lives in Z[1/2]: dyadic rationals, Laurent polynomials over them
in a (real, degree 4) and beta (complex Bott class, degree 2), and transfer
symbols carrying a fiber dimension and a dyadic normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .errors import NormalizationViolation


class Dyadic:
    """m * 2**e with m odd, or zero (stored as 0 * 2**0)."""

    __slots__ = ("m", "e")

    def __init__(self, m: int = 0, e: int = 0):
        m, e = int(m), int(e)
        if m == 0:
            e = 0
        else:
            while m % 2 == 0:
                m //= 2
                e += 1
        self.m, self.e = m, e

    @classmethod
    def of(cls, x) -> "Dyadic":
        if isinstance(x, Dyadic):
            return x
        q = Fraction(x)
        den = q.denominator
        e = 0
        while den % 2 == 0:
            den //= 2
            e -= 1
        if den != 1:
            raise ValueError(f"{x} is not a dyadic rational")
        return cls(q.numerator, e)

    @classmethod
    def pow2(cls, e: int) -> "Dyadic":
        return cls(1, e)

    def to_fraction(self) -> Fraction:
        return Fraction(self.m) * Fraction(2) ** self.e

    def __add__(self, other):
        other = Dyadic.of(other)
        if self.m == 0:
            return other
        if other.m == 0:
            return self
        e = min(self.e, other.e)
        return Dyadic(self.m * 2 ** (self.e - e) + other.m * 2 ** (other.e - e), e)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.m, self.e)

    def __sub__(self, other):
        return self + (-Dyadic.of(other))

    def __rsub__(self, other):
        return Dyadic.of(other) - self

    def __mul__(self, other):
        other = Dyadic.of(other)
        return Dyadic(self.m * other.m, self.e + other.e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Dyadic.of(other)
        if other.m not in (1, -1):
            raise ValueError(f"division by {other} leaves Z[1/2]")
        return Dyadic(self.m * other.m, self.e - other.e)

    def __pow__(self, k: int):
        if k < 0:
            return Dyadic(1) / Dyadic(self.m ** -k, self.e * -k)
        return Dyadic(self.m ** k, self.e * k)

    def __eq__(self, other):
        try:
            other = Dyadic.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.m == other.m and self.e == other.e

    def __hash__(self):
        return hash((self.m, self.e))

    def __bool__(self):
        return self.m != 0

    def __repr__(self):
        return f"Dyadic({self.m}, {self.e})"

    def __str__(self):
        q = self.to_fraction()
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Laurent:
    """Finitely supported sum of dyadic multiples of powers of one generator."""

    var = "x"
    step = 1  # topological degree of the generator

    def __init__(self, terms=None):
        out = {}
        for k, c in dict(terms or {}).items():
            c = Dyadic.of(c)
            if c:
                out[int(k)] = c
        self.terms = out

    @classmethod
    def monomial(cls, k: int, c=1):
        return cls({k: c})

    def _same(self, other):
        if isinstance(other, Laurent):
            if type(other) is not type(self):
                raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
            return other
        return type(self)({0: other})

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Dyadic()) + c
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __mul__(self, other):
        other = self._same(other)
        out: dict[int, Dyadic] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[k1 + k2] = out.get(k1 + k2, Dyadic()) + c1 * c2
        return type(self)(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Laurent) and type(other) is not type(self):
            return False
        return self.terms == self._same(other).terms

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{self.var}^{k}" for k, c in sorted(self.terms.items()))

    def to_json(self):
        return {str(k): str(c) for k, c in sorted(self.terms.items())}


class LaurentKO(Laurent):
    """Z[1/2][a, a^-1]; a has degree 4."""

    var = "a"
    step = 4


class LaurentKU(Laurent):
    """Z[1/2][beta, beta^-1]; beta has degree 2."""

    var = "b"
    step = 2


def psi2(x: LaurentKO, inverse: bool = False) -> LaurentKO:
    """Adams operation on KO[1/2] coefficients: a^k -> 4^k a^k."""
    sign = -1 if inverse else 1
    return LaurentKO({k: c * Dyadic.pow2(2 * k * sign) for k, c in x.terms.items()})


def complexify(x: LaurentKO) -> LaurentKU:
    """a^k -> beta^(2k)."""
    return LaurentKU({2 * k: c for k, c in x.terms.items()})


def sign_norm(n: int) -> Dyadic:
    """2^-floor(n/2); n may be negative for inverse symbols."""
    return Dyadic.pow2(-(n // 2))


def boundary_factor(n: int) -> int:
    """k in  d[D_W] = k [D_dW]  for dim W = n.

    The collar [0,1) x dW splits with a factor 2 exactly when both factors
    are odd-dimensional, i.e. when n is even. This is the value for which
    2^-floor(n/2) absorbs the connecting map.
    """
    if n < 1:
        raise ValueError("boundary factor needs dim W >= 1")
    return 2 if n % 2 == 0 else 1


def compose_factor(i: int, j: int) -> int:
    return 2 if i % 2 and j % 2 else 1


@dataclass(frozen=True)
class TransferSymbol:
    label: str
    fiber_dim: int
    coeff: Dyadic

    @property
    def degree(self) -> int:
        return self.fiber_dim % 2

    def is_normalized(self) -> bool:
        return self.coeff == sign_norm(self.fiber_dim)

    def to_json(self):
        return {"label": self.label, "fiber_dim": self.fiber_dim, "degree": self.degree,
                "coeff": str(self.coeff)}


def transfer(fiber_dim: int, label: str = "") -> TransferSymbol:
    """Transfer of a bundle with the given fiber dimension, normalized."""
    return TransferSymbol(label or f"S({fiber_dim})", fiber_dim, sign_norm(fiber_dim))


UNIT = TransferSymbol("1", 0, Dyadic(1))


def compose_transfer(s: TransferSymbol, t: TransferSymbol) -> TransferSymbol:
    """Composite transfer; the raw product picks up the factor l(i, j)."""
    i, j = s.fiber_dim, t.fiber_dim
    coeff = s.coeff * t.coeff / compose_factor(i, j)
    if coeff != sign_norm(i + j):
        raise NormalizationViolation(
            f"fiber dims {i}, {j}: composite coefficient {coeff} != {sign_norm(i + j)}")
    if s == UNIT:
        return t
    if t == UNIT:
        return s
    return TransferSymbol(f"{s.label}.{t.label}", i + j, coeff)


def inverse(s: TransferSymbol) -> TransferSymbol:
    inv = TransferSymbol(f"{s.label}^-1", -s.fiber_dim, sign_norm(-s.fiber_dim))
    if compose_transfer(inv, s).coeff != 1:
        raise NormalizationViolation(f"{inv.label} is not inverse to {s.label}")
    return inv


@dataclass(frozen=True)
class NNSTransfer:
    symbol: TransferSymbol
    witness: TransferSymbol  # the sphere-bundle transfer it inverts

    def to_json(self):
        return {"symbol": self.symbol.to_json(), "witness": self.witness.to_json()}


def nns_transfer(codim: int) -> NNSTransfer:
    """Gysin symbol of a codimension-``codim`` inclusion: inverse of the projection transfer, times units."""
    if codim < 0:
        raise ValueError("codimension must be nonnegative")
    if codim == 0:
        return NNSTransfer(UNIT, UNIT)
    pi = transfer(codim, f"pi{codim}")
    inv = inverse(pi)
    unit = compose_transfer(inv, pi)
    if unit.fiber_dim != 0 or unit.coeff != 1:
        raise NormalizationViolation(f"codim {codim}: inverse composed with projection is {unit}")
    sym = TransferSymbol(f"j{codim}", inv.fiber_dim, inv.coeff)
    if sym.degree != codim % 2:
        raise NormalizationViolation(f"codim {codim}: degree {sym.degree}")
    return NNSTransfer(sym, pi)


def delta_coefficient(k: int, sigma: int) -> LaurentKO:
    return LaurentKO({k: sigma})


def orientation_compat_check(k: int, sigma: int) -> bool:
    """c(psi2^-1(sigma a^k)) against 2^-floor(4k/2) sigma beta^2k."""
    lhs = complexify(psi2(delta_coefficient(k, sigma), inverse=True))
    rhs = LaurentKU({2 * k: sign_norm(4 * k) * sigma})
    return lhs == rhs


# -- exhaustive suites -------------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    passed: bool
    cases: int
    failure: str = ""

    def to_json(self):
        return {"suite": self.name, "passed": self.passed, "cases": self.cases, "failure": self.failure}


def _suite(name, cases):
    n = 0
    for desc, ok in cases:
        n += 1
        if not ok:
            return SuiteResult(name, False, n, desc)
    return SuiteResult(name, True, n)


def suite_normalization(limit: int = 64):
    return _suite("normalization l(i,j) 2^-[(i+j)/2] = 2^-[i/2] 2^-[j/2]", (
        (f"i={i}, j={j}",
         sign_norm(i + j) * compose_factor(i, j) == sign_norm(i) * sign_norm(j))
        for i in range(limit + 1) for j in range(limit + 1)))


def suite_compose(limit: int = 20):
    def ok(i, j):
        try:
            c = compose_transfer(transfer(i), transfer(j))
        except NormalizationViolation:
            return False
        return c.fiber_dim == i + j and c.is_normalized()
    return _suite("compose_transfer normalized", ((f"i={i}, j={j}", ok(i, j))
                                                 for i in range(limit + 1) for j in range(limit + 1)))


def suite_associativity(limit: int = 8):
    def ok(i, j, k):
        a, b, c = transfer(i), transfer(j), transfer(k)
        left = compose_transfer(compose_transfer(a, b), c)
        right = compose_transfer(a, compose_transfer(b, c))
        unit = compose_transfer(UNIT, a) == a and compose_transfer(a, UNIT) == a
        return (left.fiber_dim, left.coeff) == (right.fiber_dim, right.coeff) and unit
    return _suite("compose_transfer associative with unit",
                  ((f"{i},{j},{k}", ok(i, j, k)) for i in range(limit + 1)
                   for j in range(limit + 1) for k in range(limit + 1)))


def suite_boundary(limit: int = 64):
    return _suite("sign_norm(n) k(n) = sign_norm(n-1)", (
        (f"n={n}", sign_norm(n) * boundary_factor(n) == sign_norm(n - 1)) for n in range(1, limit + 1)))


def random_ko(rng: Random, span: int = 4, terms: int = 3) -> LaurentKO:
    return LaurentKO({rng.randint(-span, span): Dyadic(rng.randint(-9, 9), rng.randint(-3, 3))
                      for _ in range(terms)})


def suite_psi2(samples: int = 200, seed: int = 0):
    rng = Random(seed)
    xs = [random_ko(rng) for _ in range(samples)]
    base = [("psi2(a) = 4a", psi2(LaurentKO.monomial(1)) == LaurentKO.monomial(1, 4)),
            ("psi2(1) = 1", psi2(LaurentKO.monomial(0)) == LaurentKO.monomial(0))]
    return _suite("psi2 inverse", base + [(repr(x), psi2(psi2(x, inverse=True)) == x
                                           and psi2(psi2(x), inverse=True) == x) for x in xs])


def suite_compat(kmax: int = 10, smax: int = 5):
    return _suite("orientation_compat_check", (
        (f"k={k}, sigma={s}", orientation_compat_check(k, s))
        for k in range(kmax + 1) for s in range(-smax, smax + 1)))


def suite_nns(limit: int = 8):
    def ok(c):
        try:
            t = nns_transfer(c)
        except NormalizationViolation:
            return False
        if t.symbol.degree != c % 2:
            return False
        if c == 0:
            return t.symbol == UNIT
        u = compose_transfer(inverse(t.witness), t.witness)
        return u.fiber_dim == 0 and u.coeff == 1
    return _suite("nns_transfer unit law", ((f"codim={c}", ok(c)) for c in range(limit + 1)))


def run_suites() -> list[SuiteResult]:
    return [suite_normalization(), suite_compose(), suite_associativity(), suite_boundary(),
            suite_psi2(), suite_compat(), suite_nns()]
