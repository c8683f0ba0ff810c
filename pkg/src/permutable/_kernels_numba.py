"""Numba-jitted implementations of the hot table kernels.

Default backend.  Loops are written against raw int tables and boolean
membership arrays; the worklist in `closure` visits each unordered pair in
both orders so late-discovered elements still meet earlier ones.
"""

from __future__ import annotations

import numpy as np
from numba import njit

BACKEND = "numba"


@njit(cache=True)
def closure(mul, seed):
    n = mul.shape[0]
    mask = np.zeros(n, dtype=np.bool_)
    items = np.empty(n, dtype=np.int64)
    mask[0] = True
    items[0] = 0
    m = 1
    for x in range(n):
        if seed[x] and not mask[x]:
            mask[x] = True
            items[m] = x
            m += 1
    i = 0
    while i < m:
        a = items[i]
        j = 0
        while j < m:
            b = items[j]
            c = mul[a, b]
            if not mask[c]:
                mask[c] = True
                items[m] = c
                m += 1
            c = mul[b, a]
            if not mask[c]:
                mask[c] = True
                items[m] = c
                m += 1
            j += 1
        i += 1
    return mask


@njit(cache=True)
def assoc_violation(mul):
    n = mul.shape[0]
    for i in range(n):
        for j in range(n):
            ij = mul[i, j]
            for k in range(n):
                if mul[ij, k] != mul[i, mul[j, k]]:
                    return (i, j, k)
    return (-1, -1, -1)


@njit(cache=True)
def assoc_violation_sampled(mul, ii, jj, kk):
    for t in range(ii.shape[0]):
        i = ii[t]
        j = jj[t]
        k = kk[t]
        if mul[mul[i, j], k] != mul[i, mul[j, k]]:
            return (i, j, k)
    return (-1, -1, -1)


@njit(cache=True)
def element_orders(mul):
    n = mul.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    for x in range(n):
        y = x
        o = 1
        while y != 0:
            y = mul[y, x]
            o += 1
        orders[x] = o
    return orders


@njit(cache=True)
def set_product(mul, a_idx, b_idx):
    n = mul.shape[0]
    mask = np.zeros(n, dtype=np.bool_)
    for i in range(a_idx.shape[0]):
        row = mul[a_idx[i]]
        for j in range(b_idx.shape[0]):
            mask[row[b_idx[j]]] = True
    return mask


@njit(cache=True)
def commutator_set(mul, inv):
    n = mul.shape[0]
    mask = np.zeros(n, dtype=np.bool_)
    for x in range(n):
        ix = inv[x]
        for y in range(n):
            mask[mul[mul[ix, inv[y]], mul[x, y]]] = True
    return mask


@njit(cache=True)
def is_closed(mul, mask):
    if not mask[0]:
        return False
    n = mul.shape[0]
    for a in range(n):
        if not mask[a]:
            continue
        for b in range(n):
            if mask[b] and not mask[mul[a, b]]:
                return False
    return True
