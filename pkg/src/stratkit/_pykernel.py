"""Pure-Python exact column reduction (fallback for the compiled kernel).

A column is a pair ``(rows, vals)`` of equal-length sequences with ``rows``
strictly increasing and ``vals`` nonzero integers. Reduction is the
standard left-to-right "low" elimination, done fraction-free: a column is
replaced by ``a*col - b*pivot`` and divided by the content gcd, so every
intermediate stays integral and the rank over Q is preserved.
"""

from math import gcd

BACKEND = "python"


def _content(*dicts):
    g = 0
    for d in dicts:
        for x in d.values():
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def reduce_columns(columns, nrows, track=False, clear=()):
    """Reduce ``columns`` in place order.

    Returns ``(pivots, zeros, cycles)``: ``pivots`` maps a low row to the
    column that owns it, ``zeros`` lists columns that reduced to zero and
    ``cycles`` maps each zero column to its integer kernel vector (only when
    ``track``). Columns listed in ``clear`` are skipped entirely.
    """
    clear = set(clear)
    pivots = {}
    stored = {}
    stored_v = {}
    zeros = []
    cycles = {}
    for j, (rows, vals) in enumerate(columns):
        if j in clear:
            continue
        col = {r: v for r, v in zip(rows, vals) if v}
        vec = {j: 1} if track else None
        low = max(col) if col else -1
        while col:
            p = pivots.get(low)
            if p is None:
                break
            pc = stored[p]
            a, b = pc[low], col[low]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {r: a * x for r, x in col.items()}
            for r, x in pc.items():
                y = new.get(r, 0) - b * x
                if y:
                    new[r] = y
                else:
                    new.pop(r, None)
            if track:
                nv = {r: a * x for r, x in vec.items()}
                for r, x in stored_v[p].items():
                    y = nv.get(r, 0) - b * x
                    if y:
                        nv[r] = y
                    else:
                        nv.pop(r, None)
                vec = nv
            c = _content(new, vec) if track else _content(new)
            if c > 1:
                new = {r: x // c for r, x in new.items()}
                if track:
                    vec = {r: x // c for r, x in vec.items()}
            col = new
            low = max(col) if col else -1
        if col:
            pivots[low] = j
            stored[j] = col
            if track:
                stored_v[j] = vec
        else:
            zeros.append(j)
            if track:
                items = sorted(vec.items())
                cycles[j] = ([r for r, _ in items], [x for _, x in items])
    return pivots, zeros, cycles


def rank(columns, nrows):
    pivots, _, _ = reduce_columns(columns, nrows)
    return len(pivots)
