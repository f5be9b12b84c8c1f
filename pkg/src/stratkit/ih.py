"""Goresky-MacPherson intersection homology of filtered complexes over Q."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernel
from .complex import FilteredComplex, barycentric, full_violation
from .errors import NotFull, NotPseudomanifold, ValidationError


@dataclass(frozen=True)
class Perversity:
    """p(2), ..., p(n) for an n-dimensional space."""

    n: int
    values: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.values) != max(self.n - 1, 0):
            raise ValidationError(f"perversity for n={self.n} needs {self.n - 1} values, got {len(self.values)}")
        if self.values and self.values[0] != 0:
            raise ValidationError("perversity must have p(2) = 0")
        for k in range(1, len(self.values)):
            step = self.values[k] - self.values[k - 1]
            if step not in (0, 1):
                raise ValidationError(f"perversity step p({k + 2}) - p({k + 1}) = {step} is not 0 or 1")

    def __call__(self, k: int) -> int:
        if k < 2 or k > self.n:
            raise ValueError(f"codimension {k} outside 2..{self.n}")
        return self.values[k - 2]


def lower_middle(n: int) -> Perversity:
    return Perversity(n, tuple((k - 2) // 2 for k in range(2, n + 1)), "lower-middle")


def upper_middle(n: int) -> Perversity:
    return Perversity(n, tuple((k - 1) // 2 for k in range(2, n + 1)), "upper-middle")


def zero(n: int) -> Perversity:
    return Perversity(n, (0,) * max(n - 1, 0), "zero")


def top(n: int) -> Perversity:
    return Perversity(n, tuple(k - 2 for k in range(2, n + 1)), "top")


PERVERSITIES = {"lower-middle": lower_middle, "upper-middle": upper_middle, "zero": zero, "top": top}


def perversity(name: str, n: int) -> Perversity:
    try:
        return PERVERSITIES[name](n)
    except KeyError:
        raise ValidationError(f"unknown perversity {name!r}; choose from {sorted(PERVERSITIES)}") from None


def reject_codim_one(fc: FilteredComplex) -> None:
    bad = fc.codimension_one_strata()
    if bad:
        raise NotPseudomanifold(f"stratum {bad[0]!r} has codimension {fc.dim - fc.dims[bad[0]]} < 2")


def make_full(fc: FilteredComplex) -> FilteredComplex:
    """The complex itself if full, else its barycentric subdivision (which must be)."""
    if full_violation(fc) is None:
        return fc
    sd = barycentric(fc)
    bad = full_violation(sd)
    if bad is not None:
        raise NotFull(f"simplex {bad[0]} meets the skeleton of dimension {bad[1]} in a non-face "
                      f"even after one subdivision")
    return sd


def _vertex_dims(fc: FilteredComplex) -> list[int]:
    out = [0] * fc.complex.n_vertices
    for s in fc.complex.simplices[0] if fc.complex.simplices else ():
        out[s[0]] = fc.dims[fc.labels[s]]
    return out


def allowable_simplices(fc: FilteredComplex, p: Perversity, i: int, vdims=None) -> list:
    """p-allowable i-simplices of a full complex (fullness is the caller's duty)."""
    n = fc.dim
    if p.n != n:
        raise ValidationError(f"perversity is for dimension {p.n}, complex has dimension {n}")
    if i < 0 or i > n:
        return []
    vdims = vdims if vdims is not None else _vertex_dims(fc)
    skeleta = sorted({fc.dims[a] for a in fc.singular_labels})
    checks = [(n - c, i - c + p(c)) for c in range(2, n + 1) if any(s <= n - c for s in skeleta)]
    out = []
    for s in fc.complex.simplices[i]:
        ok = True
        for bound, allowed in checks:
            meet = sum(1 for v in s if vdims[v] <= bound) - 1
            if meet >= 0 and meet > allowed:
                ok = False
                break
        if ok:
            out.append(s)
    return out


@dataclass
class IHResult:
    ranks: list[int]
    allowable_counts: list[int]
    subdivided: bool
    perversity: Perversity
    complex: FilteredComplex = field(repr=False)

    def to_json(self):
        return {"ranks": self.ranks, "allowable_counts": self.allowable_counts,
                "subdivided": self.subdivided, "perversity": list(self.perversity.values),
                "perversity_name": self.perversity.name}


def prepare(fc: FilteredComplex, p: Perversity | None = None):
    reject_codim_one(fc)
    full = make_full(fc)
    p = p or lower_middle(fc.dim)
    vdims = _vertex_dims(full)
    A = [allowable_simplices(full, p, i, vdims) for i in range(full.dim + 1)]
    return full, p, A


def ih(fc: FilteredComplex, p: Perversity | None = None, impl: str | None = None) -> IHResult:
    """Intersection homology ranks via ranks of restricted boundary maps.

    With A_i the allowable i-simplices, r_i the rank of the boundary on
    span A_i and N_i the part of that boundary landing outside span A_{i-1},
    the allowable chains I_i have dimension |A_i| - rank N_i and

        IH_i = |A_i| - r_i - r_{i+1} + rank N_{i+1}.
    """
    full, p, A = prepare(fc, p)
    K = full.complex
    n = full.dim
    r = [0] * (n + 2)
    rn = [0] * (n + 2)
    for i in range(1, n + 1):
        if not A[i]:
            continue
        rows = {s: j for j, s in enumerate(K.simplices[i - 1])}
        r[i] = kernel.rank(K.boundary_columns(i, rows, A[i]), len(rows), impl=impl)
        allowed = set(A[i - 1])
        outside = {s: j for j, s in enumerate(t for t in K.simplices[i - 1] if t not in allowed)}
        rn[i] = kernel.rank(K.boundary_columns(i, outside, A[i]), len(outside), impl=impl)
    ranks = [len(A[i]) - r[i] - r[i + 1] + rn[i + 1] for i in range(n + 1)]
    return IHResult(ranks, [len(a) for a in A], full is not fc, p, full)


def ih_ranks(fc: FilteredComplex, p: Perversity | None = None, impl: str | None = None) -> list[int]:
    return ih(fc, p, impl).ranks


def allowable_complex(fc: FilteredComplex, p: Perversity | None = None):
    """Explicit integer bases of the allowable chain groups I_i.

    Each basis vector is a dict simplex -> int. Used to check that the
    boundary preserves allowability and squares to zero.
    """
    full, p, A = prepare(fc, p)
    K = full.complex
    bases = []
    for i in range(full.dim + 1):
        if i == 0 or not A[i]:
            bases.append([{s: 1} for s in A[i]])
            continue
        allowed = set(A[i - 1])
        outside = {s: j for j, s in enumerate(t for t in K.simplices[i - 1] if t not in allowed)}
        cols = K.boundary_columns(i, outside, A[i])
        if not outside:
            bases.append([{s: 1} for s in A[i]])
            continue
        vecs = kernel.kernel_basis(cols, len(outside))
        bases.append([{A[i][j]: c for j, c in v.items()} for v in vecs])
    return full, bases
