"""Witt condition and signatures."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import desc as sd
from . import ih as ihm
from . import kernel
from .complex import FilteredComplex, FundamentalCycle, SimplicialComplex, link_complex, orient
from .errors import DescNotSupported, NonOrientable, NotPseudomanifold, NotWitt, WrongDimension


@dataclass
class WittEntry:
    stratum: str
    link_dim: int
    middle_rank: int | None
    ok: bool

    @property
    def parity(self) -> str:
        return "even" if self.link_dim % 2 == 0 else "odd"

    def to_json(self):
        return {"stratum": self.stratum, "link_dim": self.link_dim, "parity": self.parity,
                "middle_rank": self.middle_rank, "ok": self.ok}


@dataclass
class WittReport:
    entries: list[WittEntry]
    mode: str = "structural"

    @property
    def witt(self) -> bool:
        return all(e.ok for e in self.entries)

    def __bool__(self):
        return self.witt

    def to_json(self):
        return {"witt": self.witt, "mode": self.mode, "strata": [e.to_json() for e in self.entries]}


def _entry(label: str, link: FilteredComplex) -> WittEntry:
    ell = link.dim
    if ell % 2:
        return WittEntry(label, ell, None, True)
    ranks = ihm.ih_ranks(link, ihm.lower_middle(ell))
    mid = ranks[ell // 2]
    return WittEntry(label, ell, mid, mid == 0)


def witt_check(x, simplicial: bool = False) -> WittReport:
    """Middle lower-middle IH of every even-dimensional link must vanish.

    ``x`` is a description (links by the structural rules, unless
    ``simplicial``) or a filtered complex (links of top simplices of each
    stratum).
    """
    if isinstance(x, sd.SpaceDesc):
        ok, rep = sd.is_pseudomanifold(x)
        if not ok:
            raise NotPseudomanifold(rep.reason)
        if simplicial:
            return witt_check(sd.realize(x))
        entries = [_entry(a, sd.realize(sd.link_of(x, a))) for a in sd.singular_labels(x)]
        return WittReport(entries, "structural")
    fc: FilteredComplex = x
    ihm.reject_codim_one(fc)
    entries = []
    for a in fc.singular_labels:
        link = link_complex(fc, a, normal=True)
        expect = fc.dim - fc.dims[a] - 1
        if link.dim != expect:
            raise NotPseudomanifold(f"link of stratum {a!r} has dimension {link.dim}, expected {expect}")
        entries.append(_entry(a, link))
    return WittReport(entries, "simplicial")


# -- intersection forms ----------------------------------------------------------


@dataclass
class IntersectionForm:
    matrix: list[list[Fraction]]
    degree: int
    source: str = ""
    basis: list[dict] = field(default_factory=list, repr=False)

    def __post_init__(self):
        m = self.matrix
        for i in range(len(m)):
            if len(m[i]) != len(m):
                raise ValueError("intersection form must be square")
            for j in range(i):
                if m[i][j] != m[j][i]:
                    raise ValueError(f"intersection form is not symmetric at ({i},{j})")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def to_json(self):
        return {"degree": self.degree, "source": self.source,
                "matrix": [[_q(x) for x in row] for row in self.matrix]}


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cohomology_basis(K: SimplicialComplex, m: int) -> list[dict]:
    """Integer cocycles representing a basis of H^m(K; Q).

    Coboundary matrices are reduced with simplices in reverse order; the
    cocycles of degree m that are not cleared by a pivot of the degree m-1
    reduction are the essential classes.
    """
    if m < 0 or m > K.dim:
        return []
    cur = K.simplices[m]
    N = len(cur)

    def rev(k, s):
        return len(K.simplices[k]) - 1 - K.index[s]

    def cob_columns(k):
        # columns: k-simplices in reverse order; rows: reversed (k+1)-indices
        if k + 1 > K.dim:
            return [([], []) for _ in K.simplices[k]]
        cols = {s: [] for s in K.simplices[k]}
        for sigma in K.simplices[k + 1]:
            r = rev(k + 1, sigma)
            for t in range(len(sigma)):
                cols[sigma[:t] + sigma[t + 1:]].append((r, -1 if t % 2 else 1))
        out = []
        for s in reversed(K.simplices[k]):
            e = sorted(cols[s])
            out.append(([r for r, _ in e], [v for _, v in e]))
        return out

    paired = set()
    if m >= 1:
        piv, _, _ = kernel.reduce_columns(cob_columns(m - 1), N)
        paired = set(piv)
    nrows = len(K.simplices[m + 1]) if m + 1 <= K.dim else 0
    _, zeros, cycles = kernel.reduce_columns(cob_columns(m), nrows, track=True, clear=paired)
    basis = []
    for j in zeros:
        rows, vals = cycles[j]
        basis.append({cur[N - 1 - r]: v for r, v in zip(rows, vals)})
    return basis


def cup_pairing(alpha: dict, beta: dict, cycle: FundamentalCycle, k: int) -> Fraction:
    """<alpha cup beta, [M]> with the Alexander-Whitney front/back faces."""
    total = Fraction(0)
    for s, e in cycle.coeffs.items():
        a = alpha.get(s[:k + 1])
        if a:
            b = beta.get(s[k:])
            if b:
                total += e * a * b
    return total


def manifold_audit(K: SimplicialComplex) -> None:
    if not K.is_homology_manifold():
        raise NonOrientable("vertex links do not all have sphere homology; not a manifold complex")


def signature_form(fc: FilteredComplex, orientation: FundamentalCycle | None = None,
                   audit: bool = True) -> IntersectionForm:
    n = fc.dim
    if n % 4:
        raise WrongDimension(f"signature form needs dimension divisible by 4, got {n}")
    if fc.singular_labels:
        raise WrongDimension("signature form is defined here only for complexes without singular strata")
    K = fc.complex
    if audit:
        manifold_audit(K)
    cycle = orientation if orientation is not None else orient(fc)
    k = n // 2
    basis = cohomology_basis(K, k)
    M = [[cup_pairing(a, b, cycle, k) for b in basis] for a in basis]
    return IntersectionForm(M, k, repr(K), basis)


def signature_of_form(f) -> int:
    """n+ - n- by symmetric elimination over Q.

    A zero diagonal with a nonzero entry b at (i, j) is split off as the
    hyperbolic block [[0, b], [b, 0]], which counts once each way.
    """
    m = [[Fraction(x) for x in row] for row in (f.matrix if isinstance(f, IntersectionForm) else f)]
    live = list(range(len(m)))
    sig = 0
    while live:
        i = next((i for i in live if m[i][i] != 0), None)
        if i is not None:
            d = m[i][i]
            sig += 1 if d > 0 else -1
            live.remove(i)
            for r in live:
                if m[r][i]:
                    f_ = m[r][i] / d
                    for c in live:
                        m[r][c] -= f_ * m[i][c]
            continue
        pair = next(((i, j) for i in live for j in live if i < j and m[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        b = m[i][j]
        sig += 0
        live.remove(i)
        live.remove(j)
        # Schur complement of the block [[0, b], [b, 0]]
        for r in live:
            for c in live:
                m[r][c] -= (m[r][i] * m[j][c] + m[r][j] * m[i][c]) / b
    return sig


def signature(d, check_witt: bool = True) -> int:
    """Signature by structural rules: 0 off dimensions 4k, cup product on manifold atoms, products multiply."""
    if check_witt:
        rep = witt_check(d)
        if not rep.witt:
            bad = next(e for e in rep.entries if not e.ok)
            raise NotWitt(f"stratum {bad.stratum}: link of dimension {bad.link_dim} has middle IH rank {bad.middle_rank}")
    n = sd.dim(d)
    if n % 4:
        return 0
    if isinstance(d, sd.Atom) and not d.fc.singular_labels:
        return signature_of_form(signature_form(d.fc))
    if isinstance(d, sd.Product):
        return signature(d.left, False) * signature(d.right, False)
    raise DescNotSupported(f"no signature rule for {type(d).__name__} in dimension {n}")
