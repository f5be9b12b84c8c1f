# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact column reduction; same contract as ``_pykernel``.

Entries are held in 64-bit integers and kept below 2**31 in magnitude so
that ``a*x - b*y`` cannot overflow. If an entry would exceed that bound an
``OverflowError`` is raised and the caller reruns the Python kernel.
"""

from libcpp.vector cimport vector

BACKEND = "cython"

cdef long long LIMIT = 2147483647


cdef inline long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline long long _abs(long long a) nogil:
    return -a if a < 0 else a


cdef int _combine(long long a, vector[int]& xr, vector[long long]& xv,
                  long long b, vector[int]& yr, vector[long long]& yv,
                  vector[int]& outr, vector[long long]& outv) nogil:
    """out = a*x - b*y, merged by row; both inputs sorted by row."""
    cdef size_t i = 0, k = 0
    cdef size_t nx = xr.size(), ny = yr.size()
    cdef long long v
    outr.clear()
    outv.clear()
    while i < nx or k < ny:
        if k >= ny or (i < nx and xr[i] < yr[k]):
            outr.push_back(xr[i])
            outv.push_back(a * xv[i])
            i += 1
        elif i >= nx or yr[k] < xr[i]:
            outr.push_back(yr[k])
            outv.push_back(-b * yv[k])
            k += 1
        else:
            v = a * xv[i] - b * yv[k]
            if v != 0:
                outr.push_back(xr[i])
                outv.push_back(v)
            i += 1
            k += 1
    return 0


cdef long long _content(vector[long long]& v, long long g) nogil:
    cdef size_t i
    for i in range(v.size()):
        g = _gcd(g, v[i])
        if g == 1:
            return 1
    return g


cdef int _scale_down(vector[long long]& v, long long c) nogil:
    cdef size_t i
    for i in range(v.size()):
        v[i] = v[i] // c
    return 0


cdef bint _bounded(vector[long long]& v) nogil:
    cdef size_t i
    for i in range(v.size()):
        if _abs(v[i]) > LIMIT:
            return False
    return True


def reduce_columns(columns, int nrows, bint track=False, clear=()):
    cdef Py_ssize_t ncols = len(columns)
    cdef vector[int] pivot_of
    pivot_of.assign(nrows, -1)
    cdef vector[vector[int]] srows
    cdef vector[vector[long long]] svals
    cdef vector[vector[int]] vrows
    cdef vector[vector[long long]] vvals
    srows.resize(ncols)
    svals.resize(ncols)
    if track:
        vrows.resize(ncols)
        vvals.resize(ncols)
    cdef vector[int] cr, tr, cvr, tvr
    cdef vector[long long] cv, tv, cvv, tvv
    cdef long long a, b, g, c, x
    cdef int low, p
    cdef Py_ssize_t j
    cleared = set(clear)
    pivots = {}
    zeros = []
    cycles = {}
    for j in range(ncols):
        if j in cleared:
            continue
        rows, vals = columns[j]
        cr.clear()
        cv.clear()
        for r, v in zip(rows, vals):
            x = v
            if _abs(x) > LIMIT:
                raise OverflowError("input entry exceeds kernel bound")
            if x != 0:
                cr.push_back(r)
                cv.push_back(x)
        if track:
            cvr.clear()
            cvv.clear()
            cvr.push_back(<int>j)
            cvv.push_back(1)
        while cr.size() > 0:
            low = cr.back()
            p = pivot_of[low]
            if p < 0:
                break
            a = svals[p].back()
            b = cv.back()
            g = _gcd(a, b)
            a //= g
            b //= g
            _combine(a, cr, cv, b, srows[p], svals[p], tr, tv)
            cr.swap(tr)
            cv.swap(tv)
            if track:
                _combine(a, cvr, cvv, b, vrows[p], vvals[p], tvr, tvv)
                cvr.swap(tvr)
                cvv.swap(tvv)
                c = _content(cvv, _content(cv, 0))
            else:
                c = _content(cv, 0)
            if c > 1:
                _scale_down(cv, c)
                if track:
                    _scale_down(cvv, c)
            if not _bounded(cv) or (track and not _bounded(cvv)):
                raise OverflowError("entry growth exceeds kernel bound")
        if cr.size() > 0:
            low = cr.back()
            pivot_of[low] = <int>j
            pivots[low] = j
            srows[j] = cr
            svals[j] = cv
            if track:
                vrows[j] = cvr
                vvals[j] = cvv
        else:
            zeros.append(j)
            if track:
                cycles[j] = ([cvr[i] for i in range(cvr.size())],
                             [cvv[i] for i in range(cvv.size())])
    return pivots, zeros, cycles


def rank(columns, int nrows):
    pivots, _, _ = reduce_columns(columns, nrows)
    return len(pivots)
