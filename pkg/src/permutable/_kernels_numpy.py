"""Pure-numpy implementations of the hot table kernels.

Fallback backend; selected when PERMUTABLE_BACKEND=numpy or when numba is
unavailable.  Must stay observationally identical to _kernels_numba.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def closure(mul: np.ndarray, seed: np.ndarray) -> np.ndarray:
    """Membership mask of the subgroup generated by the seed set.

    The identity (index 0) is always included; for a finite group a
    nonempty subset closed under multiplication is already a subgroup.
    """
    mask = seed.astype(bool).copy()
    mask[0] = True
    while True:
        idx = np.flatnonzero(mask)
        before = idx.size
        mask[mul[np.ix_(idx, idx)].ravel()] = True
        if int(mask.sum()) == before:
            return mask


def assoc_violation(mul: np.ndarray) -> tuple[int, int, int]:
    """First triple (i, j, k) with (i*j)*k != i*(j*k), or (-1,-1,-1)."""
    n = mul.shape[0]
    for i in range(n):
        lhs = mul[mul[i]]      # [j, k] -> (i*j)*k
        rhs = mul[i][mul]      # [j, k] -> i*(j*k)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            j, k = bad[0]
            return (i, int(j), int(k))
    return (-1, -1, -1)


def assoc_violation_sampled(mul, ii, jj, kk) -> tuple[int, int, int]:
    lhs = mul[mul[ii, jj], kk]
    rhs = mul[ii, mul[jj, kk]]
    bad = np.flatnonzero(lhs != rhs)
    if bad.size:
        b = int(bad[0])
        return (int(ii[b]), int(jj[b]), int(kk[b]))
    return (-1, -1, -1)


def element_orders(mul: np.ndarray) -> np.ndarray:
    n = mul.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    base = np.arange(n)
    cur = base.copy()
    t = 1
    while True:
        hit = (cur == 0) & (orders == 0)
        orders[hit] = t
        if (orders != 0).all():
            return orders
        cur = mul[cur, base]
        t += 1


def set_product(mul: np.ndarray, a_idx: np.ndarray, b_idx: np.ndarray) -> np.ndarray:
    mask = np.zeros(mul.shape[0], dtype=bool)
    if a_idx.size and b_idx.size:
        mask[mul[np.ix_(a_idx, b_idx)].ravel()] = True
    return mask


def commutator_set(mul: np.ndarray, inv: np.ndarray) -> np.ndarray:
    """Mask of all commutators x^-1 y^-1 x y (not closed under products)."""
    n = mul.shape[0]
    left = mul[np.ix_(inv, inv)]                      # [x, y] -> x^-1 y^-1
    comm = mul[left.ravel(), mul.ravel()]             # * (x y)
    mask = np.zeros(n, dtype=bool)
    mask[comm] = True
    return mask


def is_closed(mul: np.ndarray, mask: np.ndarray) -> bool:
    if not mask[0]:
        return False
    idx = np.flatnonzero(mask)
    return bool(mask[mul[np.ix_(idx, idx)].ravel()].all())
