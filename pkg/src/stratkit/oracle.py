"""Slow dense reference computations used to cross-check the production paths.

Nothing here shares code with the sparse kernel or with the allowability
shortcut in ``ih``: ranks are dense Gaussian elimination over Fraction and
allowability enumerates every face of a simplex.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def dense_rank(rows: list[list]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / pr[c]
                m[r] = [a - f * b for a, b in zip(m[r], pr)]
        rank += 1
        if rank == len(m):
            break
    return rank


def nullspace(rows: list[list], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : M x = 0} by reduced row echelon form."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [a * inv for a in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -m[r][f]
        basis.append(v)
    return basis


def _all_simplices(K):
    return [list(lst) for lst in K.simplices]


def boundary_dense(K, k: int) -> list[list[int]]:
    """Dense matrix of the boundary C_k -> C_{k-1}, rows indexed by (k-1)-simplices."""
    rows = K.simplices[k - 1]
    rix = {s: i for i, s in enumerate(rows)}
    cols = K.simplices[k]
    M = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for t in range(len(s)):
            M[rix[s[:t] + s[t + 1:]]][j] = (-1) ** t
    return M


def homology_ranks(K) -> list[int]:
    n = K.dim
    r = [0] * (n + 2)
    for k in range(1, n + 1):
        r[k] = dense_rank(boundary_dense(K, k))
    return [len(K.simplices[i]) - r[i] - r[i + 1] for i in range(n + 1)]


def allowable(fc, p, i: int) -> list:
    """Allowable i-simplices, intersecting with each closed skeleton face by face."""
    K = fc.complex
    n = fc.dim
    out = []
    for s in K.simplices[i]:
        ok = True
        for c in range(2, n + 1):
            bound = n - c
            if not any(fc.dims[a] <= bound for a in fc.poset):
                continue
            meet = -1
            for k in range(1, len(s) + 1):
                for face in combinations(s, k):
                    if fc.dims[fc.labels[face]] <= bound:
                        meet = max(meet, k - 1)
            if meet >= 0 and meet > i - c + p(c):
                ok = False
                break
        if ok:
            out.append(s)
    return out


def ih_ranks(fc, p) -> list[int]:
    """IH ranks from an explicit basis of the allowable chain groups.

    I_i = {c in span A_i : boundary(c) in span A_{i-1}} is found as a null
    space; IH_i = dim ker(d on I_i) - rank(d on I_{i+1}), both measured on
    explicit vectors.
    """
    K = fc.complex
    n = fc.dim
    A = [allowable(fc, p, i) for i in range(n + 1)]
    bases: list[list[list[Fraction]]] = []
    for i in range(n + 1):
        if i == 0:
            bases.append([[Fraction(int(j == k)) for j in range(len(A[0]))] for k in range(len(A[0]))])
            continue
        allowed = set(A[i - 1])
        bad_rows = [t for t in K.simplices[i - 1] if t not in allowed]
        rix = {t: r for r, t in enumerate(bad_rows)}
        M = [[0] * len(A[i]) for _ in bad_rows]
        for j, s in enumerate(A[i]):
            for t in range(len(s)):
                f = s[:t] + s[t + 1:]
                if f in rix:
                    M[rix[f]][j] = (-1) ** t
        if bad_rows:
            bases.append(nullspace(M, len(A[i])))
        else:
            bases.append([[Fraction(int(j == k)) for j in range(len(A[i]))] for k in range(len(A[i]))])

    def image(i):
        # boundaries of the I_i basis, as vectors over all (i-1)-simplices
        rows = {t: r for r, t in enumerate(K.simplices[i - 1])}
        out = []
        for v in bases[i]:
            w = [Fraction(0)] * len(rows)
            for j, c in enumerate(v):
                if c:
                    s = A[i][j]
                    for t in range(len(s)):
                        w[rows[s[:t] + s[t + 1:]]] += c * (-1) ** t
            out.append(w)
        return out

    ranks = []
    for i in range(n + 1):
        dim_i = len(bases[i])
        rk_out = dense_rank(image(i)) if i > 0 and bases[i] else 0
        rk_in = dense_rank(image(i + 1)) if i < n and bases[i + 1] else 0
        ranks.append(dim_i - rk_out - rk_in)
    return ranks
