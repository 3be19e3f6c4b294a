# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops for evaluating a polynomial system at many points.

A system is given in flattened form: term ``t`` has integer coefficient
``coef[t]`` and factor indices ``idx[t, :]`` (``-1`` pads unused slots);
equation ``e`` owns terms ``eq_start[e]:eq_start[e + 1]``.  With
``modulus == 0`` arithmetic is exact int64 and the caller guarantees no
overflow; otherwise everything is reduced modulo ``modulus < 2**31``.
"""
import numpy as np

from libc.stdint cimport int32_t, int64_t, uint8_t


cdef inline int64_t _term(const int64_t[:, :, ::1] vals, Py_ssize_t c, Py_ssize_t pt,
                          const int32_t[:, ::1] idx, Py_ssize_t t, int64_t coef,
                          int64_t modulus) noexcept nogil:
    cdef int64_t prod = coef
    cdef Py_ssize_t k
    cdef int32_t j
    for k in range(idx.shape[1]):
        j = idx[t, k]
        if j >= 0:
            prod = prod * vals[c, pt, j]
            if modulus:
                prod = prod % modulus
    return prod


def survivors(const int64_t[:, :, ::1] vals, const int64_t[::1] coef,
              const int32_t[:, ::1] idx, const int32_t[::1] eq_start, int64_t modulus):
    """uint8 mask over candidates: 1 where every equation vanishes at every point."""
    cdef Py_ssize_t nc = vals.shape[0]
    cdef Py_ssize_t npts = vals.shape[1]
    cdef Py_ssize_t neq = eq_start.shape[0] - 1
    out = np.ones(nc, dtype=np.uint8)
    cdef uint8_t[::1] mask = out
    cdef Py_ssize_t c, pt, e, t
    cdef int64_t acc
    cdef bint alive
    with nogil:
        for c in range(nc):
            alive = True
            for pt in range(npts):
                for e in range(neq):
                    acc = 0
                    for t in range(eq_start[e], eq_start[e + 1]):
                        acc = acc + _term(vals, c, pt, idx, t, coef[t], modulus)
                        if modulus:
                            acc = acc % modulus
                    if acc != 0:
                        alive = False
                        break
                if not alive:
                    break
            mask[c] = alive
    return out


def evaluate(const int64_t[:, :, ::1] vals, const int64_t[::1] coef,
             const int32_t[:, ::1] idx, const int32_t[::1] eq_start, int64_t modulus):
    """int64 array ``[candidate, point, equation]`` of equation values."""
    cdef Py_ssize_t nc = vals.shape[0]
    cdef Py_ssize_t npts = vals.shape[1]
    cdef Py_ssize_t neq = eq_start.shape[0] - 1
    out = np.zeros((nc, npts, neq), dtype=np.int64)
    cdef int64_t[:, :, ::1] res = out
    cdef Py_ssize_t c, pt, e, t
    cdef int64_t acc
    with nogil:
        for c in range(nc):
            for pt in range(npts):
                for e in range(neq):
                    acc = 0
                    for t in range(eq_start[e], eq_start[e + 1]):
                        acc = acc + _term(vals, c, pt, idx, t, coef[t], modulus)
                        if modulus:
                            acc = acc % modulus
                    res[c, pt, e] = acc
    return out
