"""Finite simplicial complexes, stratified filtrations and exact homology."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable

from . import kernel
from .errors import (FiltrationError, NonOrientable, NonUniformLink,
                     NotPseudomanifold, ValidationError)
from .poset import JoinStrata, Poset, cone as cone_poset, pair_label, product as product_poset

Simplex = tuple[int, ...]


class SimplicialComplex:
    """Abstract simplicial complex on vertices ``0..n-1``.

    Simplices are sorted vertex tuples, so the integer order on vertices is
    the total order used for orientations, cup products and staircase
    products. Construction closes the given simplices under faces.
    """

    def __init__(self, simplices: Iterable[Iterable[int]], n_vertices: int | None = None):
        top = {tuple(sorted(set(s))) for s in simplices}
        top.discard(())
        seen: set[Simplex] = set()
        for s in top:
            if s in seen:
                continue
            for k in range(1, len(s) + 1):
                seen.update(combinations(s, k))
        verts = {s[0] for s in seen if len(s) == 1}
        n = max(verts) + 1 if verts else 0
        if n_vertices is not None:
            if n_vertices < n:
                raise ValidationError(f"vertex index {n - 1} out of range for {n_vertices} vertices")
            n = n_vertices
        by_dim: list[list[Simplex]] = []
        for s in seen:
            d = len(s) - 1
            while len(by_dim) <= d:
                by_dim.append([])
            by_dim[d].append(s)
        for lst in by_dim:
            lst.sort()
        self.n_vertices = n
        self.simplices: list[list[Simplex]] = by_dim
        self.index: dict[Simplex, int] = {}
        for lst in by_dim:
            for i, s in enumerate(lst):
                self.index[s] = i

    @classmethod
    def boundary_of_simplex(cls, n: int) -> "SimplicialComplex":
        """The boundary of the n-simplex, a triangulated (n-1)-sphere."""
        return cls(combinations(range(n + 1), n))

    # -- basic data ------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def __contains__(self, s) -> bool:
        return tuple(s) in self.index

    def __iter__(self):
        for lst in self.simplices:
            yield from lst

    def __len__(self) -> int:
        return len(self.index)

    @property
    def f_vector(self) -> list[int]:
        return [len(lst) for lst in self.simplices]

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector))

    @cached_property
    def facets(self) -> list[Simplex]:
        cofaced = set()
        for lst in self.simplices[1:]:
            for s in lst:
                for t in range(len(s)):
                    cofaced.add(s[:t] + s[t + 1:])
        return sorted((s for s in self if s not in cofaced), key=lambda s: (len(s), s))

    def is_pure(self) -> bool:
        return all(len(f) == self.dim + 1 for f in self.facets)

    def components(self) -> list[list[int]]:
        """Vertex sets of connected components, ordered by smallest vertex."""
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        if self.dim >= 1:
            for a, b in self.simplices[1]:
                parent[find(a)] = find(b)
        used = {s[0] for s in self.simplices[0]} if self.simplices else set()
        comps: dict[int, list[int]] = {}
        for v in sorted(used):
            comps.setdefault(find(v), []).append(v)
        return sorted(comps.values())

    def key(self):
        return (self.n_vertices, tuple(self.facets))

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"SimplicialComplex(f={self.f_vector})"

    # -- chains ----------------------------------------------------------

    def boundary_columns(self, k: int, rows: dict[Simplex, int] | None = None,
                         cols: Iterable[Simplex] | None = None):
        """Columns of the boundary map C_k -> C_{k-1} in kernel format.

        ``rows`` optionally re-indexes (and restricts to) a subset of
        (k-1)-simplices; ``cols`` restricts the k-simplices used.
        """
        if k <= 0 or k > self.dim:
            return []
        rows = rows if rows is not None else {s: i for i, s in enumerate(self.simplices[k - 1])}
        out = []
        for s in (cols if cols is not None else self.simplices[k]):
            entries = []
            for t in range(len(s)):
                r = rows.get(s[:t] + s[t + 1:])
                if r is not None:
                    entries.append((r, -1 if t % 2 else 1))
            entries.sort()
            out.append(([r for r, _ in entries], [v for _, v in entries]))
        return out

    def boundary_rank(self, k: int, impl: str | None = None) -> int:
        if k <= 0 or k > self.dim:
            return 0
        return kernel.rank(self.boundary_columns(k), len(self.simplices[k - 1]), impl=impl)

    def boundary_of_chain(self, chain: dict[Simplex, object]) -> dict[Simplex, object]:
        out: dict[Simplex, object] = {}
        for s, c in chain.items():
            if len(s) == 1:
                continue
            for t in range(len(s)):
                f = s[:t] + s[t + 1:]
                out[f] = out.get(f, 0) + (-c if t % 2 else c)
        return {f: c for f, c in out.items() if c}

    def homology_ranks(self, impl: str | None = None) -> list[int]:
        """Ranks of H_i(K; Q) for 0 <= i <= dim."""
        ranks = [self.boundary_rank(k, impl) for k in range(self.dim + 2)]
        return [len(self.simplices[i]) - ranks[i] - ranks[i + 1] for i in range(self.dim + 1)]

    # -- local structure -------------------------------------------------

    def link_of_simplex(self, s: Simplex) -> tuple["SimplicialComplex", dict[Simplex, Simplex]]:
        """Link of ``s`` renumbered onto 0..m-1 (order preserving).

        Also returns, for each link simplex, the star simplex ``tau | s`` it
        comes from (in original numbering).
        """
        s = tuple(sorted(s))
        sset = set(s)
        star = []
        for lst in self.simplices[len(s):]:
            for t in lst:
                if sset.issubset(t):
                    star.append(tuple(v for v in t if v not in sset))
        verts = sorted({v for t in star for v in t})
        renum = {v: i for i, v in enumerate(verts)}
        lk = SimplicialComplex([tuple(renum[v] for v in t) for t in star], len(verts))
        back = {}
        for t in star:
            back[tuple(renum[v] for v in t)] = tuple(sorted(t + s))
        return lk, back

    def is_homology_manifold(self) -> bool:
        """Every vertex link has the rational homology of a (dim-1)-sphere."""
        n = self.dim
        sphere = [1] + [0] * (n - 2) + [1] if n >= 2 else ([2] if n == 1 else None)
        for v in range(self.n_vertices):
            if (v,) not in self.index:
                continue
            if n == 0:
                continue
            lk, _ = self.link_of_simplex((v,))
            ranks = lk.homology_ranks()
            if n == 1:
                if ranks != [2]:
                    return False
            elif lk.dim != n - 1 or ranks != sphere:
                return False
        return True


# -- filtered complexes ----------------------------------------------------


class FilteredComplex:
    """A simplicial complex with a stratification by a poset.

    ``labels`` assigns to every simplex the stratum containing its interior.
    The closed sets X_{<=a} are subcomplexes exactly when labels do not go
    up when passing to faces, which is also the frontier condition at the
    level of simplices; both are checked on construction.
    """

    def __init__(self, complex: SimplicialComplex, poset: Poset, labels: dict[Simplex, str],
                 validate: bool = True):
        self.complex = complex
        self.poset = poset
        self.labels = labels
        if validate:
            self.validate()
        dims: dict[str, int] = {a: -1 for a in poset.elements}
        for s, a in labels.items():
            if len(s) - 1 > dims[a]:
                dims[a] = len(s) - 1
        self.dims = dims

    @classmethod
    def trivial(cls, complex: SimplicialComplex) -> "FilteredComplex":
        """One stratum per connected component ("reg" when connected)."""
        comps = complex.components()
        if len(comps) <= 1:
            names = ["reg"]
        else:
            names = [f"reg{i}" for i in range(len(comps))]
        owner = {}
        for name, comp in zip(names, comps):
            for v in comp:
                owner[v] = name
        labels = {s: owner[s[0]] for s in complex}
        return cls(complex, Poset(names[:max(1, len(comps))]), labels, validate=False)

    def validate(self) -> None:
        missing = [s for s in self.complex if s not in self.labels]
        if missing:
            raise FiltrationError(f"simplex {missing[0]} has no stratum label")
        for s, a in self.labels.items():
            if a not in self.poset:
                raise FiltrationError(f"label {a!r} of {s} is not in the poset")
            if len(s) > 1:
                for t in range(len(s)):
                    f = s[:t] + s[t + 1:]
                    if not self.poset.leq(self.labels[f], a):
                        raise FiltrationError(
                            f"face {f} (stratum {self.labels[f]}) of {s} (stratum {a}): "
                            f"closure of stratum {a} is not a subcomplex / frontier condition fails")
        used = set(self.labels.values())
        empty = [a for a in self.poset.elements if a not in used]
        if empty:
            raise FiltrationError(f"stratum {empty[0]!r} is empty")

    def key(self):
        return self._key

    @cached_property
    def _key(self):
        return (self.complex.key(), self.poset, tuple(sorted(self.labels.items())))

    def __eq__(self, other):
        return isinstance(other, FilteredComplex) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FilteredComplex(f={self.complex.f_vector}, strata={list(self.poset.elements)})"

    @property
    def dim(self) -> int:
        return self.complex.dim

    @property
    def regular_labels(self) -> list[str]:
        return self.poset.maximal()

    @property
    def singular_labels(self) -> list[str]:
        reg = set(self.regular_labels)
        return [a for a in self.poset.linear_extension() if a not in reg]

    def is_trivially_stratified(self) -> bool:
        return not self.singular_labels

    def stratum_vertices(self, a: str) -> list[int]:
        return sorted(s[0] for s in self.complex.simplices[0] if self.labels[s] == a)

    def closure_simplices(self, a: str) -> list[Simplex]:
        return [s for s, b in self.labels.items() if self.poset.leq(b, a)]

    def subcomplex(self, simplices: Iterable[Simplex]) -> "FilteredComplex":
        """Filtered subcomplex on a face-closed set, vertices renumbered in order."""
        simplices = list(simplices)
        verts = sorted({v for s in simplices for v in s})
        renum = {v: i for i, v in enumerate(verts)}
        K = SimplicialComplex([tuple(renum[v] for v in s) for s in simplices], len(verts))
        labels = {tuple(renum[v] for v in s): self.labels[s] for s in simplices}
        used = set(labels.values())
        return FilteredComplex(K, self.poset.restrict(used), labels)

    def relabeled(self, mapping: dict[str, str]) -> "FilteredComplex":
        return FilteredComplex(self.complex, self.poset.relabel(mapping),
                               {s: mapping[a] for s, a in self.labels.items()}, validate=False)

    def codimension_one_strata(self) -> list[str]:
        n = self.dim
        return [a for a in self.singular_labels if self.dims[a] > n - 2]

    def is_full(self) -> bool:
        return full_violation(self) is None


def full_violation(fc: FilteredComplex):
    """First (simplex, stratum dimension bound) where a closed skeleton is not full, or None."""
    bounds = sorted({fc.dims[a] for a in fc.singular_labels})
    for bound in bounds:
        for s in fc.complex:
            inside = tuple(v for v in s if fc.dims[fc.labels[(v,)]] <= bound)
            if inside and fc.dims[fc.labels[inside]] > bound:
                return s, bound
    return None


# -- constructions ----------------------------------------------------------


def cone(fc: FilteredComplex) -> FilteredComplex:
    """Compact cone: one new apex joined to everything, apex stratum new minimum."""
    K = fc.complex
    apex = K.n_vertices
    star = fc.poset.fresh_label("*")
    poset = cone_poset(fc.poset, star)
    labels = dict(fc.labels)
    for s, a in fc.labels.items():
        labels[s + (apex,)] = a
    labels[(apex,)] = star
    simplices = list(fc.labels) + [s + (apex,) for s in fc.labels] + [(apex,)]
    return FilteredComplex(SimplicialComplex(simplices, apex + 1), poset, labels)


def join(f1: FilteredComplex, f2: FilteredComplex, merge: tuple[bool, bool] | None = None) -> FilteredComplex:
    """Simplicial join, stratified through C(Z1) x C(Z2) = C(Z1 * Z2)."""
    js = JoinStrata(f1.poset, f1.dims, f1.dim, f2.poset, f2.dims, f2.dim, merge)
    off = f1.complex.n_vertices
    labels: dict[Simplex, str] = {}
    for s, a in f1.labels.items():
        labels[s] = js.label(a, js.star2)
    shifted = {tuple(v + off for v in t): b for t, b in f2.labels.items()}
    for t, b in shifted.items():
        labels[t] = js.label(js.star1, b)
    for s, a in f1.labels.items():
        for t, b in shifted.items():
            labels[s + t] = js.label(a, b)
    K = SimplicialComplex(labels.keys(), off + f2.complex.n_vertices)
    return FilteredComplex(K, js.poset, labels)


def _staircase(p: int, q: int):
    """Monotone lattice paths from (0,0) to (p,q), as vertex-index pair lists."""
    for isteps in combinations(range(p + q), p):
        i = j = 0
        path = [(0, 0)]
        iset = set(isteps)
        for step in range(p + q):
            if step in iset:
                i += 1
            else:
                j += 1
            path.append((i, j))
        yield path


def product(f1: FilteredComplex, f2: FilteredComplex) -> FilteredComplex:
    """Staircase (shuffle) triangulation of the product, lexicographic vertex order."""
    n2 = f2.complex.n_vertices
    maximal = []
    for s in f1.complex.facets:
        for t in f2.complex.facets:
            for path in _staircase(len(s) - 1, len(t) - 1):
                maximal.append(tuple(s[i] * n2 + t[j] for i, j in path))
    K = SimplicialComplex(maximal, f1.complex.n_vertices * n2)
    labels = {}
    for simplex in K:
        a = tuple(sorted({v // n2 for v in simplex}))
        b = tuple(sorted({v % n2 for v in simplex}))
        labels[simplex] = pair_label(f1.labels[a], f2.labels[b])
    return FilteredComplex(K, product_poset(f1.poset, f2.poset), labels)


def barycentric(fc: FilteredComplex) -> FilteredComplex:
    """First barycentric subdivision; a chain of faces is labeled by its largest face."""
    K = fc.complex
    order = sorted(K, key=lambda s: (len(s), s))
    vid = {s: i for i, s in enumerate(order)}
    maximal = []
    for f in K.facets:
        for perm in permutations(f):
            chain = [tuple(sorted(perm[:k])) for k in range(1, len(perm) + 1)]
            maximal.append(tuple(vid[c] for c in chain))
    B = SimplicialComplex(maximal, len(order))
    labels = {s: fc.labels[order[s[-1]]] for s in B}
    return FilteredComplex(B, fc.poset, labels, validate=False)


def barycentric_complex(K: SimplicialComplex) -> SimplicialComplex:
    return barycentric(FilteredComplex.trivial(K)).complex


# -- links -------------------------------------------------------------------


def _induced(fc: FilteredComplex, s: Simplex) -> FilteredComplex:
    lk, back = fc.complex.link_of_simplex(s)
    labels = {t: fc.labels[back[t]] for t in lk}
    return FilteredComplex(lk, fc.poset.restrict(set(labels.values())), labels, validate=False)


def vertex_link(fc: FilteredComplex, v: int) -> FilteredComplex:
    """Link of vertex ``v`` with labels induced from the star."""
    return _induced(fc, (v,))


def link_complex(fc: FilteredComplex, s, normal: bool = False) -> FilteredComplex:
    """Link of a vertex (int), simplex (tuple) or stratum (label).

    For a stratum the default is the vertex link at its smallest vertex,
    after one barycentric subdivision if the stratum owns no vertex. With
    ``normal`` the link of a top-dimensional simplex of the stratum is used
    instead; it is a triangulation of the normal link alone, of dimension
    dim K - dim(stratum) - 1. Either way every candidate along the stratum
    must give the same homology ranks.
    """
    if isinstance(s, int):
        return vertex_link(fc, s)
    if isinstance(s, tuple):
        return _induced(fc, tuple(sorted(s)))
    if s not in fc.poset:
        raise ValidationError(f"unknown stratum {s!r}")
    if normal:
        h = fc.dims[s]
        where = [t for t in fc.complex.simplices[h] if fc.labels[t] == s]
    else:
        where = [(v,) for v in fc.stratum_vertices(s)]
        if not where:
            fc = barycentric(fc)
            where = [(v,) for v in fc.stratum_vertices(s)]
    links = [_induced(fc, t) for t in where]
    ranks = {tuple(lk.complex.homology_ranks()) for lk in links}
    if len(ranks) > 1:
        raise NonUniformLink(f"stratum {s!r}: links along the stratum have homology ranks {sorted(ranks)}")
    return links[0]


# -- orientation -------------------------------------------------------------


@dataclass
class RationalChain:
    degree: int
    coeffs: dict[Simplex, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {s: Fraction(c) for s, c in self.coeffs.items() if c}


@dataclass
class FundamentalCycle:
    """Top-degree chain with coefficients +-1 on the regular top simplices."""

    complex: SimplicialComplex
    degree: int
    coeffs: dict[Simplex, int]
    closed: bool = True

    def boundary(self) -> dict[Simplex, int]:
        return self.complex.boundary_of_chain(self.coeffs)

    def negated(self) -> "FundamentalCycle":
        return FundamentalCycle(self.complex, self.degree, {s: -c for s, c in self.coeffs.items()}, self.closed)

    def as_chain(self) -> RationalChain:
        return RationalChain(self.degree, dict(self.coeffs))


def orient(fc: FilteredComplex, closed: bool = True) -> FundamentalCycle:
    """Coherent orientation of the regular top simplices.

    Each connected piece starts with +1 on its smallest simplex and signs
    are propagated across shared codimension-one faces. With ``closed``,
    every such face must have exactly two regular cofaces.
    """
    K = fc.complex
    n = K.dim
    regular = set(fc.regular_labels)
    bad = [a for a in regular if fc.dims[a] != n]
    if bad:
        raise NotPseudomanifold(f"regular stratum {bad[0]!r} has dimension {fc.dims[bad[0]]} < {n}")
    tops = [s for s in K.simplices[n] if fc.labels[s] in regular] if n >= 0 else []
    cofaces: dict[Simplex, list[tuple[Simplex, int]]] = {}
    for s in tops:
        for t in range(len(s)):
            cofaces.setdefault(s[:t] + s[t + 1:], []).append((s, -1 if t % 2 else 1))
    for f, cs in cofaces.items():
        if len(cs) > 2 or (closed and len(cs) != 2 and n > 0):
            raise NotPseudomanifold(f"codimension-one face {f} has {len(cs)} regular cofaces")
    adj: dict[Simplex, list[tuple[Simplex, int]]] = {s: [] for s in tops}
    for f, cs in cofaces.items():
        if len(cs) == 2:
            (s1, e1), (s2, e2) = cs
            adj[s1].append((s2, -e1 * e2))
            adj[s2].append((s1, -e1 * e2))
    sign: dict[Simplex, int] = {}
    for start in tops:
        if start in sign:
            continue
        sign[start] = 1
        queue = deque([start])
        while queue:
            s = queue.popleft()
            for t, rel in adj[s]:
                want = sign[s] * rel
                if t not in sign:
                    sign[t] = want
                    queue.append(t)
                elif sign[t] != want:
                    raise NonOrientable(f"sign contradiction between {s} and {t}")
    cycle = FundamentalCycle(K, n, sign, closed)
    if closed and cycle.boundary():
        raise NonOrientable("propagated orientation has nonzero boundary")
    return cycle
