"""Concrete finite groups as full multiplication tables.

Conventions fixed across the library:

* the identity is always element index 0;
* a direct or semidirect product indexes the pair (x, y) as x*|right|+y;
* quotient elements are cosets named by their minimal member index.

These make every derived object reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .config import Caps, default_caps
from .errors import (
    InvalidAction,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotBijectiveRows,
    NotNormal,
    OrderCapExceeded,
)

FULL_ASSOC_LIMIT = 64      # full n^3 associativity scan up to this order
ASSOC_SAMPLES = 10_000     # sampled triples above it
_SAMPLE_SEED = 0x5EED


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group: n x n multiplication table over indices 0..n-1."""

    mul: np.ndarray
    inv: np.ndarray
    labels: Optional[tuple[str, ...]] = None
    name: str = ""

    def __post_init__(self):
        mul = np.ascontiguousarray(np.asarray(self.mul, dtype=np.int32))
        n = mul.shape[0]
        if mul.ndim != 2 or mul.shape[1] != n or n == 0:
            raise ValueError("multiplication table must be square and nonempty")
        if mul.min() < 0 or mul.max() >= n:
            raise ValueError("table entries out of range")
        object.__setattr__(self, "mul", _readonly(mul))
        object.__setattr__(self, "inv", _readonly(np.asarray(self.inv, dtype=np.int32)))
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels length does not match order")
        self._validate()

    def _validate(self):
        mul, n = self.mul, self.order
        idx = np.arange(n)
        if not (np.array_equal(mul[0], idx) and np.array_equal(mul[:, 0], idx)):
            raise NoIdentity()
        # associativity first: a single corrupted entry should surface as
        # the violating triple, not as a bijectivity complaint
        if n <= FULL_ASSOC_LIMIT:
            triple = _kernels.assoc_violation(mul)
        else:
            rng = np.random.default_rng(_SAMPLE_SEED)
            samples = rng.integers(0, n, size=(3, ASSOC_SAMPLES), dtype=np.int32)
            triple = _kernels.assoc_violation_sampled(mul, *samples)
        if triple[0] >= 0:
            raise NotAssociative(triple)
        sorted_rows = np.sort(mul, axis=1)
        bad = np.nonzero((sorted_rows != idx).any(axis=1))[0]
        if bad.size:
            raise NotBijectiveRows(bad[0], "row")
        sorted_cols = np.sort(mul, axis=0)
        bad = np.nonzero((sorted_cols != idx[:, None]).any(axis=0))[0]
        if bad.size:
            raise NotBijectiveRows(bad[0], "column")
        if self.inv.shape != (n,):
            raise ValueError("inverse table has wrong shape")
        ok = (mul[idx, self.inv] == 0) & (mul[self.inv, idx] == 0)
        if not ok.all():
            raise NoInverse(np.flatnonzero(~ok)[0])

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    identity = 0

    @cached_property
    def element_orders(self) -> np.ndarray:
        return _readonly(_kernels.element_orders(self.mul))

    def label_of(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def __repr__(self):
        tag = self.name or "FiniteGroup"
        return f"<{tag} of order {self.order}>"


@dataclass(frozen=True, eq=False)
class Homomorphism:
    """Total map between groups, validated to respect multiplication."""

    source: FiniteGroup
    target: FiniteGroup
    map: np.ndarray

    def __post_init__(self):
        fmap = np.asarray(self.map, dtype=np.int32)
        ns, nt = self.source.order, self.target.order
        if fmap.shape != (ns,):
            raise ValueError("map length must equal source order")
        if fmap.min() < 0 or fmap.max() >= nt:
            raise ValueError("map values out of target range")
        if fmap[0] != 0:
            raise ValueError("map must send identity to identity")
        lhs = fmap[self.source.mul]
        rhs = self.target.mul[np.ix_(fmap, fmap)]
        if not np.array_equal(lhs, rhs):
            x, y = np.argwhere(lhs != rhs)[0]
            raise ValueError(f"map is not multiplicative at pair ({x}, {y})")
        object.__setattr__(self, "map", _readonly(fmap))

    @property
    def is_surjective(self) -> bool:
        return np.unique(self.map).size == self.target.order

    def image_mask(self, mask: np.ndarray) -> np.ndarray:
        out = np.zeros(self.target.order, dtype=bool)
        out[self.map[mask]] = True
        return out

    def preimage_mask(self, mask: np.ndarray) -> np.ndarray:
        return mask[self.map]


@dataclass(frozen=True, eq=False)
class GAction:
    """Action of group B on group A by automorphisms, as a |B| x |A| table.

    Row b is the automorphism a -> act[b][a]; rows compose so that
    act[b1*b2] = act[b1] o act[b2].
    """

    actor: FiniteGroup
    space: FiniteGroup
    act: np.ndarray

    def __post_init__(self):
        act = np.asarray(self.act, dtype=np.int32)
        nb, na = self.actor.order, self.space.order
        if act.shape != (nb, na):
            raise InvalidAction(0, f"action table must be {nb}x{na}, got {act.shape}")
        ids = np.arange(na)
        if not np.array_equal(act[0], ids):
            raise InvalidAction(0, "identity row must be the identity map")
        amul = self.space.mul
        for b in range(nb):
            row = act[b]
            if not np.array_equal(np.sort(row), ids):
                raise InvalidAction(b, "row is not a bijection")
            if not np.array_equal(row[amul], amul[np.ix_(row, row)]):
                raise InvalidAction(b, "row does not preserve multiplication")
        composed = act[self.actor.mul]   # [b1, b2, a] -> act[b1*b2][a]
        pointwise = act[:, act]          # [b1, b2, a] -> act[b1][act[b2][a]]
        if not np.array_equal(composed, pointwise):
            b1, b2 = np.argwhere((composed != pointwise).any(axis=2))[0]
            raise InvalidAction(b1, f"rows fail act[b1*b2] = act[b1] o act[b2] at b2={b2}")
        object.__setattr__(self, "act", _readonly(act))


def _inverses_from_table(mul: np.ndarray) -> np.ndarray:
    n = mul.shape[0]
    inv = np.full(n, -1, dtype=np.int32)
    rows, cols = np.nonzero(mul == 0)
    inv[rows] = cols
    if (inv < 0).any():
        raise NoInverse(int(np.flatnonzero(inv < 0)[0]))
    return inv


def _check_order_cap(n: int, caps: Optional[Caps]):
    caps = caps or default_caps()
    if n > caps.max_order:
        raise OrderCapExceeded(n, caps.max_order)


def group_from_table(table: Sequence[Sequence[int]], labels=None, name: str = "",
                     caps: Optional[Caps] = None) -> FiniteGroup:
    """Validate a raw multiplication table; relabels the identity to index 0."""
    mul = np.asarray(table, dtype=np.int64)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise ValueError("table must be square and nonempty")
    n = mul.shape[0]
    _check_order_cap(n, caps)
    if mul.min() < 0 or mul.max() >= n:
        raise ValueError("table entries out of range 0..n-1")
    idx = np.arange(n)
    is_id = (mul == idx[None, :]).all(axis=1) & (mul.T == idx[None, :]).all(axis=1)
    ids = np.flatnonzero(is_id)
    if ids.size == 0:
        raise NoIdentity()
    e = int(ids[0])
    if e != 0:
        # swap labels 0 <-> e, conjugating the table by the transposition
        perm = idx.copy()
        perm[0], perm[e] = e, 0
        mul = perm[mul[np.ix_(perm, perm)]]
        if labels is not None:
            labels = list(labels)
            labels[0], labels[e] = labels[e], labels[0]
    mul = mul.astype(np.int32)
    return FiniteGroup(mul, _inverses_from_table(mul),
                       labels=tuple(labels) if labels is not None else None, name=name)


def _perm_cycles(p: tuple[int, ...]) -> str:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [i], p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def group_from_permutations(degree: int, generators: Sequence[Sequence[int]],
                            name: str = "", caps: Optional[Caps] = None) -> FiniteGroup:
    """Closure of permutation generators on {0..degree-1}.

    Elements are enumerated breadth-first: identity first, then products
    x*g for discovered x and generators g in input order, where (p*q)(i)
    = p(q(i)).
    """
    caps = caps or default_caps()
    if degree <= 0:
        raise ValueError("degree must be positive")
    gens = []
    for g in generators:
        p = tuple(int(v) for v in g)
        if sorted(p) != list(range(degree)):
            raise ValueError(f"generator {g!r} is not a permutation of 0..{degree - 1}")
        gens.append(p)
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for g in gens:
            y = tuple(x[g[i]] for i in range(degree))   # x*g
            if y not in index:
                if len(elements) >= caps.max_order:
                    raise OrderCapExceeded(len(elements) + 1, caps.max_order)
                index[y] = len(elements)
                elements.append(y)
    n = len(elements)
    mul = np.empty((n, n), dtype=np.int32)
    for i, p in enumerate(elements):
        for j, q in enumerate(elements):
            mul[i, j] = index[tuple(p[q[k]] for k in range(degree))]
    labels = tuple(_perm_cycles(p) for p in elements)
    return FiniteGroup(mul, _inverses_from_table(mul), labels=labels,
                       name=name or f"perm<{degree}>")


def cyclic(n: int, caps: Optional[Caps] = None) -> FiniteGroup:
    if n <= 0:
        raise ValueError("order must be positive")
    _check_order_cap(n, caps)
    idx = np.arange(n, dtype=np.int32)
    mul = (idx[:, None] + idx[None, :]) % n
    inv = (-idx) % n
    return FiniteGroup(mul.astype(np.int32), inv.astype(np.int32),
                       labels=tuple(str(k) for k in range(n)), name=f"C{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str = "",
                   caps: Optional[Caps] = None) -> FiniteGroup:
    """Direct product with pair (x, y) at index x*|H| + y."""
    n, m = g.order, h.order
    _check_order_cap(n * m, caps)
    gi, hi = np.divmod(np.arange(n * m, dtype=np.int64), m)
    mul = (g.mul[np.ix_(gi, gi)].astype(np.int64) * m + h.mul[np.ix_(hi, hi)])
    inv = g.inv[gi].astype(np.int64) * m + h.inv[hi]
    labels = None
    if g.labels is not None and h.labels is not None:
        labels = tuple(f"({g.labels[a]},{h.labels[b]})" for a, b in zip(gi, hi))
    if not name and g.name and h.name:
        name = f"{g.name}x{h.name}"
    return FiniteGroup(mul.astype(np.int32), inv.astype(np.int32), labels=labels, name=name)


def semidirect_product(action: GAction, name: str = "",
                       caps: Optional[Caps] = None) -> FiniteGroup:
    """Semidirect product B |x A for the given action of B on A.

    The pair (b, a) sits at index b*|A| + a and multiplies as
    (b1, a1)(b2, a2) = (b1*b2, act[b2^-1](a1) * a2), so A embeds as the
    indices 0..|A|-1 and is normal.
    """
    b_grp, a_grp = action.actor, action.space
    nb, na = b_grp.order, a_grp.order
    _check_order_cap(nb * na, caps)
    n = nb * na
    bi, ai = np.divmod(np.arange(n, dtype=np.int64), na)
    bprod = b_grp.mul[np.ix_(bi, bi)].astype(np.int64)
    twisted = action.act[b_grp.inv[bi][None, :], ai[:, None]]   # act[b2^-1](a1)
    aprod = a_grp.mul[twisted, ai[None, :]]
    mul = (bprod * na + aprod).astype(np.int32)
    return FiniteGroup(mul, _inverses_from_table(mul), name=name)


def quotient(g: FiniteGroup, n_mask: np.ndarray) -> tuple[FiniteGroup, Homomorphism]:
    """Quotient by a normal subgroup given as a membership mask.

    Cosets are named by their minimal member; the projection homomorphism
    is returned alongside the quotient group.
    """
    n_idx = np.flatnonzero(n_mask)
    if not is_normal_mask(g, n_mask):
        bad = _normality_violator(g, n_mask)
        raise NotNormal(bad)
    cosets = g.mul[:, n_idx]                 # row x: coset x*N
    reps = cosets.min(axis=1)
    uniq = np.unique(reps)
    proj = np.searchsorted(uniq, reps).astype(np.int32)
    qmul = proj[g.mul[np.ix_(uniq, uniq)]]
    labels = tuple(g.label_of(int(r)) + "*N" for r in uniq) if g.labels is not None else None
    q = FiniteGroup(qmul.astype(np.int32), _inverses_from_table(qmul.astype(np.int32)),
                    labels=labels, name=f"{g.name}/N" if g.name else "")
    return q, Homomorphism(g, q, proj)


def conjugation_permutation(g: FiniteGroup, x: int) -> np.ndarray:
    """The permutation y -> x y x^-1."""
    return g.mul[g.mul[x], g.inv[x]]


def is_normal_mask(g: FiniteGroup, mask: np.ndarray) -> bool:
    return _normality_violator(g, mask) is None


def _normality_violator(g: FiniteGroup, mask: np.ndarray):
    idx = np.flatnonzero(mask)
    for x in range(g.order):
        if not mask[g.mul[g.mul[x, idx], g.inv[x]]].all():
            return x
    return None


def center_mask(g: FiniteGroup) -> np.ndarray:
    return (g.mul == g.mul.T).all(axis=1)


def derived_mask(g: FiniteGroup) -> np.ndarray:
    return _kernels.closure(g.mul, _kernels.commutator_set(g.mul, g.inv))


def exponent(g: FiniteGroup) -> int:
    return math.lcm(*(int(o) for o in g.element_orders))


def element_order(g: FiniteGroup, x: int) -> int:
    return int(g.element_orders[x])


def is_abelian(g: FiniteGroup) -> bool:
    return bool((g.mul == g.mul.T).all())


def power(g: FiniteGroup, x: int, e: int) -> int:
    """x**e by repeated squaring; negative exponents go through the inverse."""
    if e < 0:
        return power(g, int(g.inv[x]), -e)
    acc, base = 0, x
    while e:
        if e & 1:
            acc = int(g.mul[acc, base])
        base = int(g.mul[base, base])
        e >>= 1
    return acc
