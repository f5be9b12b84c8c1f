"""Structural descriptions of compact stratified spaces.

A description is a small immutable tree: atoms (finite filtered complexes)
combined by cone, suspension, join and product. Dimension, stratification
poset, links and stratum closures are computed by structural rules;
``realize`` turns a description into a filtered simplicial complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import complex as cx
from .complex import FilteredComplex, SimplicialComplex
from .errors import NotPseudomanifold, ValidationError
from .poset import JoinStrata, Poset, cone as cone_poset, depth, pair_label, product as product_poset


class SpaceDesc:
    __slots__ = ()


@dataclass(frozen=True, eq=False)
class Atom(SpaceDesc):
    """A finite filtered complex. Equality ignores the name."""

    name: str
    fc: FilteredComplex

    def __eq__(self, other):
        return isinstance(other, Atom) and self.fc == other.fc

    def __hash__(self):
        return hash(self.fc)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Cone(SpaceDesc):
    inner: SpaceDesc

    def __str__(self):
        return f"C({self.inner})"


@dataclass(frozen=True)
class Suspension(SpaceDesc):
    inner: SpaceDesc

    def __str__(self):
        return f"S({self.inner})"


@dataclass(frozen=True)
class Join(SpaceDesc):
    """Join; a 0-dimensional side is folded into its neighbours unless ``merge`` says otherwise."""

    left: SpaceDesc
    right: SpaceDesc
    merge: tuple[bool, bool] | None = None

    def __post_init__(self):
        if self.merge is None:
            object.__setattr__(self, "merge", (_top_dim(self.left) == 0, _top_dim(self.right) == 0))

    def __str__(self):
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class Product(SpaceDesc):
    left: SpaceDesc
    right: SpaceDesc

    def __str__(self):
        return f"({self.left} x {self.right})"


@dataclass(frozen=True)
class Empty(SpaceDesc):
    """The empty space; the link of a regular stratum."""

    def __str__(self):
        return "{}"


EMPTY = Empty()


@dataclass(frozen=True)
class StratumRef:
    desc: SpaceDesc
    label: str

    def __post_init__(self):
        if self.label not in strat_poset_of(self.desc):
            raise ValidationError(f"{self.label!r} is not a stratum of {self.desc}")


def s0_atom() -> Atom:
    K = SimplicialComplex([(0,), (1,)])
    return Atom("S0", FilteredComplex(K, Poset(["n", "s"]), {(0,): "n", (1,): "s"}))


def point_atom() -> Atom:
    return Atom("pt", FilteredComplex.trivial(SimplicialComplex([(0,)])))


def atom(name: str) -> Atom:
    """Shipped manifold atom by name (pt, S<n>, T2, RP2, CP2)."""
    from .data import atom_complex
    return Atom(name, atom_complex(name))


def as_join(d: Suspension) -> Join:
    return Join(s0_atom(), d.inner)


def join(a: SpaceDesc, b: SpaceDesc, merge=None) -> SpaceDesc:
    """Join with the empty space absorbed."""
    if isinstance(a, Empty):
        return b
    if isinstance(b, Empty):
        return a
    return Join(a, b, merge)


# -- dimension and strata --------------------------------------------------


def _top_dim(d: SpaceDesc) -> int:
    if isinstance(d, Empty):
        return -1
    if isinstance(d, Atom):
        return d.fc.dim
    if isinstance(d, (Cone, Suspension)):
        return _top_dim(d.inner) + 1
    if isinstance(d, Join):
        return _top_dim(d.left) + _top_dim(d.right) + 1
    if isinstance(d, Product):
        return _top_dim(d.left) + _top_dim(d.right)
    raise TypeError(f"not a description: {d!r}")


def dim(d: SpaceDesc) -> int:
    """Dimension of the regular part; atoms must be pure."""
    for a in atoms(d):
        if not a.fc.complex.is_pure():
            raise ValidationError(f"atom {a.name} has facets of mixed dimension")
    return _top_dim(d)


def atoms(d: SpaceDesc):
    if isinstance(d, Atom):
        yield d
    elif isinstance(d, (Cone, Suspension)):
        yield from atoms(d.inner)
    elif isinstance(d, (Join, Product)):
        yield from atoms(d.left)
        yield from atoms(d.right)


@lru_cache(maxsize=4096)
def _strata(d: SpaceDesc) -> tuple[Poset, dict[str, int], JoinStrata | None]:
    if isinstance(d, Empty):
        return Poset([]), {}, None
    if isinstance(d, Atom):
        return d.fc.poset, dict(d.fc.dims), None
    if isinstance(d, Cone):
        p, dims, _ = _strata(d.inner)
        star = p.fresh_label("*")
        return cone_poset(p, star), {star: 0, **{a: k + 1 for a, k in dims.items()}}, None
    if isinstance(d, Suspension):
        return _strata(as_join(d))
    if isinstance(d, Join):
        if isinstance(d.left, Empty):
            return _strata(d.right)
        if isinstance(d.right, Empty):
            return _strata(d.left)
        p1, dims1, _ = _strata(d.left)
        p2, dims2, _ = _strata(d.right)
        js = JoinStrata(p1, dims1, _top_dim(d.left), p2, dims2, _top_dim(d.right), d.merge)
        return js.poset, dict(js.dims), js
    if isinstance(d, Product):
        p1, dims1, _ = _strata(d.left)
        p2, dims2, _ = _strata(d.right)
        dims = {pair_label(a, b): dims1[a] + dims2[b] for a in p1 for b in p2}
        return product_poset(p1, p2), dims, None
    raise TypeError(f"not a description: {d!r}")


def strat_poset_of(d: SpaceDesc) -> Poset:
    return _strata(d)[0]


def stratum_dims(d: SpaceDesc) -> dict[str, int]:
    return dict(_strata(d)[1])


def regular_labels(d: SpaceDesc) -> list[str]:
    return strat_poset_of(d).maximal()


def singular_labels(d: SpaceDesc) -> list[str]:
    p = strat_poset_of(d)
    reg = set(p.maximal())
    return [a for a in p.linear_extension() if a not in reg]


def _split_pair(d: SpaceDesc, label: str) -> tuple[str, str]:
    """Factor labels of a product stratum."""
    p1 = strat_poset_of(d.left)
    p2 = strat_poset_of(d.right)
    for a in p1:
        for b in p2:
            if pair_label(a, b) == label:
                return a, b
    raise ValidationError(f"{label!r} is not a stratum of {d}")


# -- links -------------------------------------------------------------------


def link_of(d: SpaceDesc, label: str) -> SpaceDesc:
    """Link of a stratum as a description; EMPTY for a regular stratum."""
    if label not in strat_poset_of(d):
        raise ValidationError(f"{label!r} is not a stratum of {d}")
    return _link_or_empty(d, label)


def _link_or_empty(d: SpaceDesc, label: str) -> SpaceDesc:
    if label in regular_labels(d):
        return EMPTY
    return _link(d, label)


def _link(d: SpaceDesc, label: str) -> SpaceDesc:
    if isinstance(d, Atom):
        lk = cx.link_complex(d.fc, label, normal=True)
        return Atom(f"lk({d.name},{label})", lk)
    if isinstance(d, Cone):
        p = strat_poset_of(d.inner)
        if label not in p:
            return d.inner
        return _link(d.inner, label)
    if isinstance(d, Suspension):
        return _link(as_join(d), label)
    if isinstance(d, Join):
        if isinstance(d.left, Empty):
            return _link(d.right, label)
        if isinstance(d.right, Empty):
            return _link(d.left, label)
        js = _strata(d)[2]
        a, b = js.representative(label)
        l1 = d.left if a == js.star1 else _link_or_empty(d.left, a)
        l2 = d.right if b == js.star2 else _link_or_empty(d.right, b)
        return join(l1, l2)
    if isinstance(d, Product):
        a, b = _split_pair(d, label)
        return join(_link_or_empty(d.left, a), _link_or_empty(d.right, b))
    raise TypeError(f"not a description: {d!r}")


# -- closures ----------------------------------------------------------------


def closure_of(d: SpaceDesc, label: str) -> tuple[SpaceDesc, dict[str, str]]:
    """Closure of a stratum, with the map from strata below it to the closure's own labels."""
    if label not in strat_poset_of(d):
        raise ValidationError(f"{label!r} is not a stratum of {d}")
    return _closure(d, label)


def _closure(d: SpaceDesc, label: str):
    if isinstance(d, Atom):
        fc = d.fc
        simplices = fc.closure_simplices(label)
        if len(simplices) == len(fc.labels):
            return d, {a: a for a in fc.poset}
        if len(simplices) == 1:
            return point_atom(), {label: "reg"}
        sub = fc.subcomplex(simplices)
        return Atom(f"cl({d.name},{label})", sub), {a: a for a in sub.poset}
    if isinstance(d, Cone):
        p = strat_poset_of(d.inner)
        star = p.fresh_label("*")
        if label == star:
            return point_atom(), {star: "reg"}
        inner, m = _closure(d.inner, label)
        new_star = strat_poset_of(inner).fresh_label("*")
        return Cone(inner), {**m, star: new_star}
    if isinstance(d, Suspension):
        return _closure(as_join(d), label)
    if isinstance(d, Product):
        a, b = _split_pair(d, label)
        c1, m1 = _closure(d.left, a)
        c2, m2 = _closure(d.right, b)
        # a cone point factor contributes nothing
        if _is_point(c2):
            return c1, {pair_label(x, y): m1[x] for x in m1 for y in m2}
        if _is_point(c1):
            return c2, {pair_label(x, y): m2[y] for x in m1 for y in m2}
        m = {pair_label(x, y): pair_label(m1[x], m2[y]) for x in m1 for y in m2}
        return Product(c1, c2), m
    if isinstance(d, Join):
        if isinstance(d.left, Empty):
            return _closure(d.right, label)
        if isinstance(d.right, Empty):
            return _closure(d.left, label)
        return _join_closure(d, label)
    raise TypeError(f"not a description: {d!r}")


def _is_point(d: SpaceDesc) -> bool:
    return isinstance(d, Atom) and len(d.fc.labels) == 1


def _join_closure(d: Join, label: str):
    js = _strata(d)[2]
    a, b = js.representative(label)
    merged = len(js.members[label]) > 1

    def side(factor, x, star, folded):
        if folded and merged:
            labs = list(strat_poset_of(factor))
            return factor, {y: y for y in labs}
        if x == star:
            return EMPTY, {}
        return _closure(factor, x)

    c1, m1 = side(d.left, a, js.star1, d.merge[0])
    c2, m2 = side(d.right, b, js.star2, d.merge[1])
    closure = join(c1, c2, d.merge)
    below = strat_poset_of(d).down_set(label)
    if isinstance(c1, Empty) or isinstance(c2, Empty):
        keep, m = (m2, 1) if isinstance(c1, Empty) else (m1, 0)
        out = {}
        for lab in below:
            for pair in js.members[lab]:
                if pair[m] in keep and pair[1 - m] == (js.star1, js.star2)[1 - m]:
                    out[lab] = keep[pair[m]]
                    break
        return closure, out
    cjs = _strata(closure)[2]
    out = {}
    for lab in below:
        targets = set()
        for x, y in js.members[lab]:
            x2 = cjs.star1 if x == js.star1 else m1.get(x)
            y2 = cjs.star2 if y == js.star2 else m2.get(y)
            if x2 is None or y2 is None or (x2, y2) == (cjs.star1, cjs.star2):
                continue
            targets.add(cjs.label(x2, y2))
        if len(targets) != 1:
            raise AssertionError(f"closure label map of {label} is not single-valued at {lab}: {targets}")
        out[lab] = targets.pop()
    return closure, out


# -- pseudomanifold test -------------------------------------------------------


@dataclass
class PseudomanifoldReport:
    ok: bool
    dim: int
    offending: str | None = None
    reason: str = ""

    def to_json(self):
        return {"pseudomanifold": self.ok, "dim": self.dim, "offending": self.offending,
                "reason": self.reason}


def is_pseudomanifold(d: SpaceDesc) -> tuple[bool, PseudomanifoldReport]:
    """Dense pure regular part and singular strata of codimension at least two."""
    n = _top_dim(d)
    for a in atoms(d):
        if not a.fc.complex.is_pure():
            bad = next(f for f in a.fc.complex.facets if len(f) - 1 < a.fc.dim)
            rep = PseudomanifoldReport(False, n, a.fc.labels[bad],
                                       f"atom {a.name} has a facet {bad} of dimension {len(bad) - 1} < {a.fc.dim}")
            return False, rep
    p = strat_poset_of(d)
    dims = stratum_dims(d)
    for a in p.linear_extension():
        if a in p.maximal():
            if dims[a] != n:
                return False, PseudomanifoldReport(
                    False, n, a, f"regular stratum {a} has dimension {dims[a]}, not {n}")
        elif dims[a] > n - 2:
            return False, PseudomanifoldReport(
                False, n, a, f"singular stratum {a} has codimension {n - dims[a]} < 2")
    return True, PseudomanifoldReport(True, n)


def require_pseudomanifold(d: SpaceDesc) -> None:
    ok, rep = is_pseudomanifold(d)
    if not ok:
        raise NotPseudomanifold(rep.reason)


def is_manifold_desc(d: SpaceDesc) -> bool:
    return not singular_labels(d)


# -- realization -----------------------------------------------------------------


@lru_cache(maxsize=256)
def realize(d: SpaceDesc) -> FilteredComplex:
    """Filtered simplicial complex with the same stratification poset as ``d``."""
    if isinstance(d, Atom):
        return d.fc
    if isinstance(d, Empty):
        raise ValidationError("the empty description has no realization")
    if isinstance(d, Cone):
        return cx.cone(realize(d.inner))
    if isinstance(d, Suspension):
        return realize(as_join(d))
    if isinstance(d, Join):
        if isinstance(d.left, Empty):
            return realize(d.right)
        if isinstance(d.right, Empty):
            return realize(d.left)
        return cx.join(realize(d.left), realize(d.right), d.merge)
    if isinstance(d, Product):
        return cx.product(realize(d.left), realize(d.right))
    raise TypeError(f"not a description: {d!r}")


def nesting_depth(d: SpaceDesc) -> int:
    """Cone/suspension/join nesting over manifold atoms; products add."""
    if isinstance(d, Empty):
        return 0
    if isinstance(d, Atom):
        return depth(d.fc.poset) if len(d.fc.poset) else 0
    if isinstance(d, (Cone, Suspension)):
        return nesting_depth(d.inner) + 1
    if isinstance(d, Join):
        return nesting_depth(d.left) + nesting_depth(d.right) + 1
    if isinstance(d, Product):
        return nesting_depth(d.left) + nesting_depth(d.right)
    raise TypeError(f"not a description: {d!r}")
