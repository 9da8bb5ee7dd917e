"""Compiled inner loops. ``_pykernels`` mirrors this API in numpy."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, log2, sqrt

cnp.import_array()


cdef inline double _jsd_term(double p, double q) noexcept nogil:
    # summed in a fixed order so that swapping p and q is bit-exact
    cdef double m = 0.5 * (p + q)
    cdef double t = 0.0
    if p > 0.0:
        t += p * log2(p / m)
    if q > 0.0:
        t += q * log2(q / m)
    return 0.5 * t


cdef inline double _distance_from_jsd(double jsd) noexcept nogil:
    if jsd < 0.0:
        jsd = 0.0
    elif jsd > 1.0:
        jsd = 1.0
    return sqrt(jsd)


def js_distance(const double[::1] p, const double[::1] q):
    """Base-2 Jensen-Shannon distance between two probability vectors."""
    cdef Py_ssize_t k, n = p.shape[0]
    cdef double acc = 0.0
    with nogil:
        for k in range(n):
            if p[k] > 0.0 or q[k] > 0.0:
                acc += _jsd_term(p[k], q[k])
    return _distance_from_jsd(acc)


cdef double _count_similarity(const double[:, ::1] a, Py_ssize_t i, double ta,
                              const double[:, ::1] b, Py_ssize_t j, double tb) noexcept nogil:
    # Each side is weighted by raw counts and divided by its total once, so a
    # pair with disjoint vocabularies gives a divergence of exactly 1.
    cdef Py_ssize_t k, n = a.shape[1]
    cdef double p, q, m, sa = 0.0, sb = 0.0
    if ta <= 0.0 or tb <= 0.0:
        return 0.0
    for k in range(n):
        if a[i, k] != 0.0 or b[j, k] != 0.0:
            p = a[i, k] / ta
            q = b[j, k] / tb
            m = 0.5 * (p + q)
            if p > 0.0:
                sa += a[i, k] * log2(p / m)
            if q > 0.0:
                sb += b[j, k] * log2(q / m)
    return 1.0 - _distance_from_jsd(0.5 * (sa / ta + sb / tb))


cdef double[::1] _row_totals(const double[:, ::1] c):
    cdef Py_ssize_t i, k
    out_arr = np.zeros(c.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    for i in range(c.shape[0]):
        for k in range(c.shape[1]):
            out[i] += c[i, k]
    return out


def bow_jsd_matrix(const double[:, ::1] counts):
    """Symmetric sentence-by-sentence similarity from count rows, zero diagonal."""
    cdef Py_ssize_t i, j, s = counts.shape[0]
    cdef double[::1] totals = _row_totals(counts)
    out_arr = np.zeros((s, s), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double v
    with nogil:
        for i in range(s):
            for j in range(i + 1, s):
                v = _count_similarity(counts, i, totals[i], counts, j, totals[j])
                out[i, j] = v
                out[j, i] = v
    return out_arr


def bow_jsd_cross(const double[:, ::1] a, const double[:, ::1] b):
    """Similarity of every row of ``a`` against every row of ``b``."""
    if a.shape[1] != b.shape[1]:
        raise ValueError("count matrices must share a vocabulary")
    cdef Py_ssize_t i, j, n = a.shape[0], m = b.shape[0]
    cdef double[::1] ta = _row_totals(a)
    cdef double[::1] tb = _row_totals(b)
    out_arr = np.zeros((n, m), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    with nogil:
        for i in range(n):
            for j in range(m):
                out[i, j] = _count_similarity(a, i, ta[i], b, j, tb[j])
    return out_arr


def power_iterate(const double[:, ::1] weights, double damping, int max_iterations,
                  double threshold):
    """Damped power iteration over a row-stochastic matrix.

    Returns ``(scores, iterations_used, converged)``.
    """
    cdef Py_ssize_t i, j, s = weights.shape[0]
    cdef int it = 0
    cdef bint converged = False
    cdef double acc, delta, total
    cdef double base = (1.0 - damping) / s
    p_arr = np.full(s, 1.0 / s)
    new_arr = np.empty(s)
    cdef double[::1] p = p_arr
    cdef double[::1] new = new_arr
    with nogil:
        while it < max_iterations:
            it += 1
            for i in range(s):
                acc = 0.0
                for j in range(s):
                    acc += weights[j, i] * p[j]
                new[i] = base + damping * acc
            delta = 0.0
            for i in range(s):
                delta += fabs(new[i] - p[i])
                p[i] = new[i]
            if delta < threshold:
                converged = True
                break
        total = 0.0
        for i in range(s):
            total += p[i]
        for i in range(s):
            p[i] = p[i] / total
    return p_arr, it, bool(converged)


def ks_statistic(const double[::1] a, const double[::1] b):
    """Two-sample KS distance between two *sorted* samples."""
    cdef Py_ssize_t i = 0, j = 0, n1 = a.shape[0], n2 = b.shape[0]
    cdef double x, diff, d = 0.0
    with nogil:
        while i < n1 and j < n2:
            x = a[i] if a[i] <= b[j] else b[j]
            while i < n1 and a[i] <= x:
                i += 1
            while j < n2 and b[j] <= x:
                j += 1
            diff = fabs(<double>i / n1 - <double>j / n2)
            if diff > d:
                d = diff
    return d
