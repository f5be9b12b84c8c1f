"""Finite posets used as stratification index sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as _pairs
from typing import Iterable


class PosetError(ValueError):
    pass


def pair_label(x: str, y: str) -> str:
    return f"({x},{y})"


class Poset:
    """Finite partial order on string labels.

    ``relations`` is any set of pairs ``(x, y)`` meaning ``x <= y``; the
    reflexive-transitive closure is taken on construction and cycles are
    rejected.
    """

    def __init__(self, elements: Iterable[str], relations: Iterable[tuple[str, str]] = ()):
        elems = tuple(dict.fromkeys(str(e) for e in elements))
        index = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        up = [1 << i for i in range(n)]
        for x, y in relations:
            if x not in index or y not in index:
                raise PosetError(f"relation ({x}, {y}) mentions an unknown element")
            up[index[x]] |= 1 << index[y]
        # Warshall closure on bitsets: up[i] = elements >= i
        for k in range(n):
            bit = 1 << k
            upk = up[k]
            for i in range(n):
                if up[i] & bit:
                    up[i] |= upk
        for i in range(n):
            for j in range(i + 1, n):
                if (up[i] >> j) & 1 and (up[j] >> i) & 1:
                    raise PosetError(f"cycle between {elems[i]!r} and {elems[j]!r}")
        self._elements = elems
        self._index = index
        self._up = tuple(up)

    # -- basic queries -------------------------------------------------

    @property
    def elements(self) -> tuple[str, ...]:
        return self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def leq(self, x: str, y: str) -> bool:
        return bool((self._up[self._index[x]] >> self._index[y]) & 1)

    def lt(self, x: str, y: str) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: str, y: str) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def up_set(self, x: str) -> list[str]:
        return [y for y in self._elements if self.leq(x, y)]

    def down_set(self, x: str) -> list[str]:
        return [y for y in self._elements if self.leq(y, x)]

    def strict_relations(self) -> list[tuple[str, str]]:
        return [(x, y) for x in self._elements for y in self._elements if self.lt(x, y)]

    @cached_property
    def hasse(self) -> tuple[tuple[str, str], ...]:
        """Covering relations x < y with nothing strictly between."""
        out = []
        for x, y in self.strict_relations():
            if not any(self.lt(x, z) and self.lt(z, y) for z in self._elements):
                out.append((x, y))
        return tuple(out)

    def maximal(self) -> list[str]:
        return [x for x in self._elements if not any(self.lt(x, y) for y in self._elements)]

    def minimal(self) -> list[str]:
        return [x for x in self._elements if not any(self.lt(y, x) for y in self._elements)]

    def height(self, x: str) -> int:
        """Length of the longest chain ending at ``x``."""
        return self._heights[x]

    @cached_property
    def _heights(self) -> dict[str, int]:
        h: dict[str, int] = {}
        for x in self.linear_extension():
            below = [h[y] for y in self._elements if y in h and self.lt(y, x)]
            h[x] = 1 + max(below) if below else 0
        return h

    def linear_extension(self) -> list[str]:
        """Deterministic linear extension: repeatedly take the smallest label among minimal elements."""
        remaining = set(self._elements)
        out = []
        while remaining:
            ready = [x for x in remaining if not any(self.lt(y, x) for y in remaining)]
            x = min(ready)
            out.append(x)
            remaining.remove(x)
        return out

    def restrict(self, members: Iterable[str]) -> "Poset":
        keep = [e for e in self._elements if e in set(members)]
        return Poset(keep, [(x, y) for x in keep for y in keep if self.leq(x, y)])

    def relabel(self, mapping: dict[str, str]) -> "Poset":
        return Poset([mapping[e] for e in self._elements],
                     [(mapping[x], mapping[y]) for x, y in self.strict_relations()])

    def quotient(self, classes: dict[str, str]) -> "Poset":
        """Identify elements with equal class labels; raises PosetError if the result is not a poset."""
        elems = [classes[e] for e in self._elements]
        rels = [(classes[x], classes[y]) for x, y in self.strict_relations()]
        return Poset(elems, rels)

    def fresh_label(self, base: str = "*") -> str:
        if base not in self._index:
            return base
        k = 1
        while f"{base}{k}" in self._index:
            k += 1
        return f"{base}{k}"

    # -- structural identity -------------------------------------------

    def _key(self):
        return (frozenset(self._elements), frozenset(self.strict_relations()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        rels = ", ".join(f"{x}<{y}" for x, y in self.hasse)
        return f"Poset([{', '.join(self._elements)}]; {rels})"

    def to_json(self) -> dict:
        return {"elements": list(self._elements), "order": [list(r) for r in self.hasse]}

    @classmethod
    def from_json(cls, data: dict) -> "Poset":
        return cls(data["elements"], [tuple(r) for r in data.get("order", [])])


# -- constructors ------------------------------------------------------


def chain(n: int) -> Poset:
    """Chain 0 < 1 < ... < n-1."""
    labels = [str(i) for i in range(n)]
    return Poset(labels, list(zip(labels, labels[1:])))


def bracket_one() -> Poset:
    """The two-element poset [1] = {0 < 1}."""
    return chain(2)


def point() -> Poset:
    return Poset(["reg"])


def antichain(labels: Iterable[str]) -> Poset:
    return Poset(labels)


def product(a: Poset, b: Poset) -> Poset:
    elems = [pair_label(x, y) for x, y in _pairs(a.elements, b.elements)]
    rels = []
    for x, y in _pairs(a.elements, b.elements):
        for x2 in a.up_set(x):
            for y2 in b.up_set(y):
                rels.append((pair_label(x, y), pair_label(x2, y2)))
    return Poset(elems, rels)


def cone(a: Poset, apex: str | None = None) -> Poset:
    """Adjoin a new smallest element (named ``*`` unless taken)."""
    apex = apex or a.fresh_label("*")
    if apex in a:
        raise PosetError(f"apex label {apex!r} already used")
    rels = [(x, y) for x, y in a.strict_relations()]
    rels += [(apex, x) for x in a.elements]
    return Poset((apex,) + a.elements, rels)


class JoinStrata:
    """Stratification of a join Z1 * Z2 from those of the factors.

    Elements are pairs over C(A1) x C(A2) without (*,*), read through
    C(Z1) x C(Z2) = C(Z1 * Z2). A 0-dimensional factor has cone strata of
    codimension 1; those are merged into the adjacent strata so the result
    carries no codimension-one stratum coming from the join itself.
    ``merge`` overrides which factors are folded this way; closures of
    strata keep the folding of the space they came from.
    """

    def __init__(self, p1: Poset, dims1: dict, d1: int, p2: Poset, dims2: dict, d2: int,
                 merge: tuple[bool, bool] | None = None):
        self.p1, self.p2 = p1, p2
        self.star1 = p1.fresh_label("*")
        self.star2 = p2.fresh_label("*")
        c1, c2 = cone(p1, self.star1), cone(p2, self.star2)
        s1, s2 = self.star1, self.star2
        raw = [(a, b) for a in c1.elements for b in c2.elements if not (a == s1 and b == s2)]

        def rawdim(a, b):
            if a == s1:
                return dims2[b]
            if b == s2:
                return dims1[a]
            return dims1[a] + dims2[b] + 1

        parent = {r: r for r in raw}

        def find(r):
            while parent[r] != r:
                parent[r] = parent[parent[r]]
                r = parent[r]
            return r

        def union(x, y):
            parent[find(x)] = find(y)

        merge1, merge2 = merge if merge is not None else (d1 == 0, d2 == 0)
        if merge1:
            for b in p2.elements:
                for a in p1.elements:
                    union((s1, b), (a, b))
        if merge2:
            for a in p1.elements:
                for b in p2.elements:
                    union((a, s2), (a, b))
        groups: dict = {}
        for r in raw:
            groups.setdefault(find(r), []).append(r)
        self._label = {}
        self.members: dict[str, list] = {}
        self.dims: dict[str, int] = {}
        for mem in groups.values():
            interior = [m for m in mem if m[0] != s1 and m[1] != s2]
            rep = min(interior or mem, key=lambda m: pair_label(*m))
            lab = pair_label(*rep)
            self.members[lab] = sorted(mem, key=lambda m: pair_label(*m))
            self.dims[lab] = max(rawdim(*m) for m in mem)
            for m in mem:
                self._label[m] = lab
        rels = []
        for a, b in raw:
            for a2 in c1.up_set(a):
                for b2 in c2.up_set(b):
                    if (a2, b2) in self._label:
                        rels.append((self._label[(a, b)], self._label[(a2, b2)]))
        self.poset = Poset(sorted(self.members), rels)

    def label(self, a: str, b: str) -> str:
        return self._label[(a, b)]

    def representative(self, lab: str) -> tuple[str, str]:
        """Member pair used for link and closure rules (interior member when merged)."""
        mem = self.members[lab]
        interior = [m for m in mem if m[0] != self.star1 and m[1] != self.star2]
        return (interior or mem)[0]


def depth(a: Poset) -> int:
    """Largest n with a chain a_0 < ... < a_n."""
    if len(a) == 0:
        raise PosetError("depth of the empty poset is undefined")
    return max(a.height(x) for x in a.elements)


def is_linear_extension(order: list[str], poset: Poset) -> bool:
    if sorted(order) != sorted(poset.elements):
        return False
    pos = {x: i for i, x in enumerate(order)}
    return all(pos[x] < pos[y] for x, y in poset.strict_relations())


@dataclass(frozen=True)
class UpwardSet:
    poset: Poset
    members: frozenset

    def __post_init__(self):
        extra = set(self.members) - set(self.poset.elements)
        if extra:
            raise PosetError(f"members not in poset: {sorted(extra)}")

    def is_upward_closed(self) -> bool:
        return is_upward_closed(self)

    def complement(self) -> frozenset:
        return frozenset(self.poset.elements) - self.members


def is_upward_closed(s: UpwardSet) -> bool:
    return all(y in s.members for x in s.members for y in s.poset.up_set(x))


def is_downward_closed(poset: Poset, members) -> bool:
    members = set(members)
    return all(y in members for x in members for y in poset.down_set(x))
