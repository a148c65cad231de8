# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel loops; see ``obddkit._speedups_py`` for the contract."""

import numpy as np


def perm_accept(long long[::1] shifts,
                int[:, ::1] next0, int[:, ::1] next1,
                int init_state,
                unsigned char[::1] accept_vec):
    cdef Py_ssize_t n = shifts.shape[0]
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    out = np.empty(size, dtype=np.uint8)
    cdef unsigned char[::1] out_v = out
    cdef Py_ssize_t x, j
    cdef int s
    for x in range(size):
        s = init_state
        for j in range(n):
            if (x >> shifts[j]) & 1:
                s = next1[j, s]
            else:
                s = next0[j, s]
        out_v[x] = accept_vec[s]
    return out


def nd_accept(long long[::1] shifts,
              unsigned long long[:, ::1] mask0,
              unsigned long long[:, ::1] mask1,
              unsigned long long init_mask,
              unsigned long long accept_mask):
    cdef Py_ssize_t n = shifts.shape[0]
    cdef Py_ssize_t d = mask0.shape[1]
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    out = np.empty(size, dtype=np.uint8)
    cdef unsigned char[::1] out_v = out
    cdef Py_ssize_t x, j, c
    cdef unsigned long long m, new, rest
    cdef bint bit
    for x in range(size):
        m = init_mask
        for j in range(n):
            bit = (x >> shifts[j]) & 1
            new = 0
            rest = m
            c = 0
            while rest:
                if rest & 1:
                    if bit:
                        new |= mask1[j, c]
                    else:
                        new |= mask0[j, c]
                rest >>= 1
                c += 1
            m = new
        out_v[x] = 1 if (m & accept_mask) else 0
    return out


def rot_units(long long[::1] shifts,
              long long[::1] inc0, long long[::1] inc1,
              long long init_units):
    cdef Py_ssize_t n = shifts.shape[0]
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    out = np.empty(size, dtype=np.int64)
    cdef long long[::1] out_v = out
    cdef Py_ssize_t x, j
    cdef long long u
    for x in range(size):
        u = init_units
        for j in range(n):
            if (x >> shifts[j]) & 1:
                u += inc1[j]
            else:
                u += inc0[j]
        out_v[x] = u
    return out
