# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_fallback``.

Edge sums are accumulated in the same order as the numpy versions, so both
backends produce identical iterates for integer weights and a given seed.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()

ctypedef cnp.int64_t idx_t


def order_sums(const idx_t[::1] ei, const idx_t[::1] ej, const double[::1] w,
               const idx_t[::1] key, Py_ssize_t n):
    cdef Py_ssize_t k, m = ei.shape[0]
    cdef double sw
    a = np.zeros(n)
    b = np.zeros(n)
    cdef double[::1] av = a
    cdef double[::1] bv = b
    with nogil:
        for k in range(m):
            if key[ei[k]] > key[ej[k]]:
                sw = w[k]
            else:
                sw = -w[k]
            av[ei[k]] += sw
            bv[ej[k]] += sw
    return a - b


def tie_split(const idx_t[::1] ei, const idx_t[::1] ej, const double[::1] w,
              const double[::1] x, Py_ssize_t n):
    cdef Py_ssize_t k, m = ei.shape[0]
    cdef double xi, xj, sw, wt
    pa = np.zeros(n)
    pb = np.zeros(n)
    qa = np.zeros(n)
    qb = np.zeros(n)
    cdef double[::1] pav = pa
    cdef double[::1] pbv = pb
    cdef double[::1] qav = qa
    cdef double[::1] qbv = qb
    with nogil:
        for k in range(m):
            xi = x[ei[k]]
            xj = x[ej[k]]
            if xi == xj:
                wt = w[k]
                sw = 0.0
            else:
                wt = 0.0
                sw = w[k] if xi > xj else -w[k]
            pav[ei[k]] += sw
            pbv[ej[k]] += sw
            qav[ei[k]] += wt
            qbv[ej[k]] += wt
    return pa - pb, qa + qb


def flip_gain(const idx_t[::1] ei, const idx_t[::1] ej, const double[::1] w,
              const double[::1] x, Py_ssize_t n):
    cdef Py_ssize_t k, m = ei.shape[0]
    cdef double xi, xj, base
    a = np.zeros(n)
    b = np.zeros(n)
    cdef double[::1] av = a
    cdef double[::1] bv = b
    with nogil:
        for k in range(m):
            xi = x[ei[k]]
            xj = x[ej[k]]
            base = fabs(xi - xj)
            av[ei[k]] += w[k] * (fabs(-xi - xj) - base)
            bv[ej[k]] += w[k] * (fabs(xi + xj) - base)
    return a + b


def adjacency_matvec(const idx_t[::1] ei, const idx_t[::1] ej, const double[::1] w,
                     const double[::1] x, Py_ssize_t n):
    cdef Py_ssize_t k, m = ei.shape[0]
    a = np.zeros(n)
    b = np.zeros(n)
    cdef double[::1] av = a
    cdef double[::1] bv = b
    with nogil:
        for k in range(m):
            av[ei[k]] += w[k] * x[ej[k]]
            bv[ej[k]] += w[k] * x[ei[k]]
    return a + b


def enumerate_cuts(const idx_t[::1] ei, const idx_t[::1] ej, const double[::1] w,
                   const double[::1] d, Py_ssize_t n, int objective):
    """Gray-code sweep over all cuts containing vertex 0."""
    cdef Py_ssize_t k, m = ei.shape[0]
    cdef long long g, gray, total = 1LL << (n - 1)
    cdef long long best_mask = 0
    cdef double vol = 0.0, vol_s, cut = 0.0, den
    cdef double best_cut = 0.0, best_den = 1.0, lhs, rhs
    cdef int bit
    cdef Py_ssize_t v, t

    # CSR adjacency for O(deg) flips
    deg = np.zeros(n + 1, dtype=np.int64)
    for k in range(m):
        deg[ei[k] + 1] += 1
        deg[ej[k] + 1] += 1
    indptr_arr = np.cumsum(deg)
    nbr_arr = np.empty(2 * m, dtype=np.int64)
    wt_arr = np.empty(2 * m, dtype=np.float64)
    fill = indptr_arr[:-1].copy()
    for k in range(m):
        nbr_arr[fill[ei[k]]] = ej[k]
        wt_arr[fill[ei[k]]] = w[k]
        fill[ei[k]] += 1
        nbr_arr[fill[ej[k]]] = ei[k]
        wt_arr[fill[ej[k]]] = w[k]
        fill[ej[k]] += 1
    cdef idx_t[::1] indptr = indptr_arr
    cdef idx_t[::1] nbr = nbr_arr
    cdef double[::1] wt = wt_arr
    inside_arr = np.zeros(n, dtype=np.int8)
    cdef cnp.int8_t[::1] inside = inside_arr

    for v in range(n):
        vol += d[v]
    inside[0] = 1
    vol_s = d[0]
    # S = {0} initially; its cut is the degree of vertex 0
    cut = d[0]
    with nogil:
        for g in range(total):
            if g > 0:
                bit = 0
                while not ((g >> bit) & 1):
                    bit += 1
                v = bit + 1
                for t in range(indptr[v], indptr[v + 1]):
                    if inside[nbr[t]] == inside[v]:
                        cut += wt[t]
                    else:
                        cut -= wt[t]
                if inside[v]:
                    inside[v] = 0
                    vol_s -= d[v]
                else:
                    inside[v] = 1
                    vol_s += d[v]
            gray = g ^ (g >> 1)
            if objective == 0:
                den = vol_s if vol_s > vol - vol_s else vol - vol_s
            else:
                den = 0.5 * vol
            lhs = cut * best_den
            rhs = best_cut * den
            if lhs > rhs or (lhs == rhs and gray < best_mask):
                best_mask = gray
                best_cut = cut
                best_den = den
    return int(best_mask), float(best_cut), float(best_den)


def median_stats(const double[::1] x, const double[::1] d):
    """(lo, hi, A, B, N) for the degree-weighted median interval [lo, hi]."""
    cdef Py_ssize_t n = x.shape[0], k, j
    cdef idx_t[::1] order = np.argsort(x, kind="stable")
    cdef double vol = 0.0, cum = 0.0, below, mass, val, lo = 0.0, hi = 0.0
    cdef double A = 0.0, B = 0.0, N = 0.0
    cdef bint have_lo = False
    with nogil:
        # total mass accumulated group by group, exactly as in the scan below
        k = 0
        while k < n:
            val = x[order[k]]
            mass = 0.0
            j = k
            while j < n and x[order[j]] == val:
                mass += d[order[j]]
                j += 1
            vol += mass
            k = j
        k = 0
        while k < n:
            val = x[order[k]]
            mass = 0.0
            j = k
            while j < n and x[order[j]] == val:
                mass += d[order[j]]
                j += 1
            below = cum
            cum += mass
            if not have_lo and 2.0 * cum >= vol:
                lo = val
                have_lo = True
            if 2.0 * below <= vol:
                hi = val
            k = j
        for k in range(n):
            if x[k] < lo:
                A += d[k]
                N += d[k] * (lo - x[k])
            elif x[k] > lo:
                A -= d[k]
                N += d[k] * (x[k] - lo)
            else:
                B += d[k]
    return lo, hi, A, B, N


def boundary_indicator(const double[::1] x, const double[::1] p, const double[::1] q,
                       const double[::1] d, double m, double alpha, double A, double B,
                       double r, int joint):
    """(a, b): the median part a of v and the indicator b on the boundary."""
    cdef Py_ssize_t i, n = x.shape[0], count = 0
    cdef double ai, aL, aR, t, ratio = 0.0
    a_arr = np.empty(n)
    b_arr = np.empty(n)
    cdef double[::1] a = a_arr
    cdef double[::1] b = b_arr
    if B != 0.0:
        ratio = A / B
    with nogil:
        if joint:
            for i in range(n):
                if x[i] == alpha:
                    count += 1
            if count <= 1:
                joint = 0
        for i in range(n):
            if x[i] > alpha:
                ai = d[i]
            elif x[i] < alpha:
                ai = -d[i]
            elif not joint:
                ai = ratio * d[i]
            else:
                aL = A - B + d[i]
                if aL < -d[i]:
                    aL = -d[i]
                aR = A + B - d[i]
                if aR > d[i]:
                    aR = d[i]
                if x[i] == m:
                    ai = aL
                elif x[i] == -m:
                    ai = aR
                elif fabs(p[i] + r * aL) > fabs(p[i] + r * aR):
                    ai = aL
                else:
                    ai = aR
            a[i] = ai
            t = p[i] + r * ai
            if x[i] == m:
                b[i] = t - q[i]
            elif x[i] == -m:
                b[i] = t + q[i]
            elif t >= 0:
                b[i] = t + q[i]
            else:
                b[i] = t - q[i]
    return a_arr, b_arr
