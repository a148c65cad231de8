"""Pure-Python (numpy) kernel loops; fallback for ``_speedups``.

Same contracts as the compiled extension: each function simulates every
input in {0,1}^n level by level, vectorised over the inputs.  Exactness
is unaffected: all state updates are integer table lookups.
"""

from __future__ import annotations

import numpy as np


def perm_accept(shifts, next0, next1, init_state, accept_vec):
    n = len(shifts)
    idx = np.arange(1 << n, dtype=np.int64)
    state = np.full(1 << n, init_state, dtype=np.int32)
    for j in range(n):
        bit = (idx >> shifts[j]) & 1
        state = np.where(bit == 1, next1[j][state], next0[j][state])
    return accept_vec[state]


def nd_accept(shifts, mask0, mask1, init_mask, accept_mask):
    n = len(shifts)
    d = mask0.shape[1]
    idx = np.arange(1 << n, dtype=np.uint64)
    state = np.full(1 << n, init_mask, dtype=np.uint64)
    one = np.uint64(1)
    for j in range(n):
        bit = ((idx >> np.uint64(shifts[j])) & one).astype(bool)
        new = np.zeros_like(state)
        for c in range(d):
            has = ((state >> np.uint64(c)) & one).astype(bool)
            step = np.where(bit, mask1[j, c], mask0[j, c])
            new |= np.where(has, step, np.uint64(0))
        state = new
    return ((state & accept_mask) != 0).astype(np.uint8)


def rot_units(shifts, inc0, inc1, init_units):
    n = len(shifts)
    idx = np.arange(1 << n, dtype=np.int64)
    units = np.full(1 << n, init_units, dtype=np.int64)
    for j in range(n):
        bit = (idx >> shifts[j]) & 1
        units += np.where(bit == 1, inc1[j], inc0[j])
    return units
