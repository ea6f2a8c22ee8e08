# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: pair featurization and logistic loss/gradient.

Mirrors valuenli.kernels.pure; see valuenli/kernels/__init__.py for the
packed array contract.
"""

import numpy as np

from libc.math cimport exp, fabs, log1p
from libc.stdint cimport int64_t

BACKEND_NAME = "native"


cdef inline double _softplus(double z) noexcept:
    cdef double m = z if z > 0.0 else 0.0
    return m + log1p(exp(-fabs(z)))


cdef inline double _sigmoid(double z) noexcept:
    cdef double e
    if z >= 0.0:
        return 1.0 / (1.0 + exp(-z))
    e = exp(z)
    return e / (1.0 + e)


def pair_feature_matrix(
    p_ids, p_w, p_off, p_norm, p_len,
    h_ids, h_w, h_off, h_norm, h_len,
    hc_ids, hc_off,
    pair_p, pair_h,
):
    cdef const int64_t[::1] p_ids_v = p_ids
    cdef const double[::1] p_w_v = p_w
    cdef const int64_t[::1] p_off_v = p_off
    cdef const double[::1] p_norm_v = p_norm
    cdef const int64_t[::1] p_len_v = p_len
    cdef const int64_t[::1] h_ids_v = h_ids
    cdef const double[::1] h_w_v = h_w
    cdef const int64_t[::1] h_off_v = h_off
    cdef const double[::1] h_norm_v = h_norm
    cdef const int64_t[::1] h_len_v = h_len
    cdef const int64_t[::1] hc_ids_v = hc_ids
    cdef const int64_t[::1] hc_off_v = hc_off
    cdef const int64_t[::1] pair_p_v = pair_p
    cdef const int64_t[::1] pair_h_v = pair_h

    cdef Py_ssize_t n_pairs = pair_p_v.shape[0]
    out_np = np.empty((n_pairs, 4), dtype=np.float64)
    cdef double[:, ::1] out = out_np

    cdef Py_ssize_t row, a, b, c, p_lo, p_hi, h_lo, h_hi, c_lo, c_hi
    cdef Py_ssize_t pi, hi
    cdef int64_t pid, hid
    cdef long inter, covered, n_p_types, n_h_types, n_content, union_size
    cdef long lp, lh, longer
    cdef double dot, denom

    for row in range(n_pairs):
        pi = <Py_ssize_t>pair_p_v[row]
        hi = <Py_ssize_t>pair_h_v[row]
        p_lo = <Py_ssize_t>p_off_v[pi]
        p_hi = <Py_ssize_t>p_off_v[pi + 1]
        h_lo = <Py_ssize_t>h_off_v[hi]
        h_hi = <Py_ssize_t>h_off_v[hi + 1]

        # One merge join over the sorted type ids covers both the Jaccard
        # count and the tf-idf dot product.
        a = p_lo
        b = h_lo
        inter = 0
        dot = 0.0
        while a < p_hi and b < h_hi:
            pid = p_ids_v[a]
            hid = h_ids_v[b]
            if pid == hid:
                inter += 1
                dot += p_w_v[a] * h_w_v[b]
                a += 1
                b += 1
            elif pid < hid:
                a += 1
            else:
                b += 1
        n_p_types = p_hi - p_lo
        n_h_types = h_hi - h_lo
        union_size = n_p_types + n_h_types - inter
        out[row, 0] = (<double>inter) / (<double>union_size) if union_size > 0 else 0.0

        denom = p_norm_v[pi] * h_norm_v[hi]
        out[row, 1] = dot / denom if denom > 0.0 else 0.0

        c_lo = <Py_ssize_t>hc_off_v[hi]
        c_hi = <Py_ssize_t>hc_off_v[hi + 1]
        n_content = c_hi - c_lo
        covered = 0
        a = p_lo
        c = c_lo
        while a < p_hi and c < c_hi:
            pid = p_ids_v[a]
            hid = hc_ids_v[c]
            if pid == hid:
                covered += 1
                a += 1
                c += 1
            elif pid < hid:
                a += 1
            else:
                c += 1
        out[row, 2] = (<double>covered) / (<double>n_content) if n_content > 0 else 0.0

        lp = <long>p_len_v[pi]
        lh = <long>h_len_v[hi]
        longer = lp if lp > lh else lh
        if longer > 0:
            out[row, 3] = (<double>(lp if lp < lh else lh)) / (<double>longer)
        else:
            out[row, 3] = 1.0
    return out_np


def logistic_loss_grad(X, y, sample_weight, params):
    cdef const double[:, ::1] X_v = X
    cdef const double[::1] y_v = y
    cdef const double[::1] sw_v = sample_weight
    cdef const double[::1] params_v = params

    cdef Py_ssize_t n = X_v.shape[0]
    grad_np = np.zeros(5, dtype=np.float64)
    cdef double[::1] grad = grad_np

    cdef Py_ssize_t i, j
    cdef double z, d
    cdef double loss = 0.0
    cdef double inv_n = 1.0 / <double>n

    for i in range(n):
        z = 0.0
        for j in range(4):
            z += X_v[i, j] * params_v[j]
        z += params_v[4]
        loss += sw_v[i] * (_softplus(z) - y_v[i] * z)
        d = sw_v[i] * (_sigmoid(z) - y_v[i]) * inv_n
        for j in range(4):
            grad[j] += d * X_v[i, j]
        grad[4] += d
    return loss * inv_n, grad_np


def logistic_scores(X, params):
    cdef const double[:, ::1] X_v = X
    cdef const double[::1] params_v = params
    cdef Py_ssize_t n = X_v.shape[0]
    out_np = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_np
    cdef Py_ssize_t i, j
    cdef double z
    for i in range(n):
        z = 0.0
        for j in range(4):
            z += X_v[i, j] * params_v[j]
        z += params_v[4]
        out[i] = _sigmoid(z)
    return out_np
