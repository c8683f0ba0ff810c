"""Subgroups as membership bitsets, plus lattice enumeration.

The lattice algorithm seeds with all cyclic subgroups and closes under
joins with them; exact and adequate for orders up to the configured cap.
Deterministic order everywhere: subgroups sort by size, then by their
sorted index tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from . import _kernels
from .config import Caps, default_caps
from .errors import SubgroupLimitExceeded
from .groups import FiniteGroup, Homomorphism, _inverses_from_table, _readonly


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Subgroup of a fixed parent group, stored as a boolean membership mask."""

    parent: FiniteGroup
    mask: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        if mask.shape != (self.parent.order,):
            raise ValueError("mask length must equal parent order")
        if not mask[0]:
            raise ValueError("subgroup must contain the identity")
        if not _kernels.is_closed(self.parent.mul, mask):
            raise ValueError("subset is not closed under multiplication")
        if self.parent.order % int(mask.sum()):
            raise AssertionError("Lagrange violated; parent table is corrupt")
        object.__setattr__(self, "mask", _readonly(mask))

    @property
    def order(self) -> int:
        return int(self.mask.sum())

    @cached_property
    def indices(self) -> np.ndarray:
        return _readonly(np.flatnonzero(self.mask))

    def sort_key(self):
        return (self.order, tuple(int(i) for i in self.indices))

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and np.array_equal(self.mask, other.mask))

    def __hash__(self):
        return hash((id(self.parent), self.mask.tobytes()))

    def __repr__(self):
        return f"<Subgroup of order {self.order} in {self.parent!r}>"


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    mask = np.zeros(g.order, dtype=bool)
    mask[0] = True
    return Subgroup(g, mask)


def full_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, np.ones(g.order, dtype=bool))


def subgroup_from_indices(g: FiniteGroup, indices: Iterable[int]) -> Subgroup:
    mask = np.zeros(g.order, dtype=bool)
    mask[np.fromiter(indices, dtype=np.int64)] = True
    return Subgroup(g, mask)


def subgroup_closure(g: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the seed elements."""
    seed = np.zeros(g.order, dtype=bool)
    for s in seeds:
        seed[int(s)] = True
    return Subgroup(g, _kernels.closure(g.mul, seed))


def closure_mask(g: FiniteGroup, seed: np.ndarray) -> np.ndarray:
    return _kernels.closure(g.mul, seed)


def join_mask(g: FiniteGroup, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return _kernels.closure(g.mul, a | b)


def set_product_mask(g: FiniteGroup, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """The element set A*B (a mask; not a subgroup in general)."""
    return _kernels.set_product(g.mul, np.flatnonzero(a), np.flatnonzero(b))


def conjugate_mask(g: FiniteGroup, mask: np.ndarray, x: int) -> np.ndarray:
    out = np.zeros(g.order, dtype=bool)
    out[g.mul[g.mul[x, np.flatnonzero(mask)], g.inv[x]]] = True
    return out


def generating_set(g: FiniteGroup) -> list[int]:
    """A small generating set, grown greedily in index order."""
    gens: list[int] = []
    span = np.zeros(g.order, dtype=bool)
    span[0] = True
    for x in range(g.order):
        if not span[x]:
            gens.append(x)
            span = _kernels.closure(g.mul, span | (np.arange(g.order) == x))
            if span.all():
                break
    return gens


def cyclic_subgroup_masks(g: FiniteGroup) -> list[np.ndarray]:
    """Masks of all cyclic subgroups (including trivial), deduplicated."""
    seen = {}
    base = np.zeros(g.order, dtype=bool)
    for x in range(g.order):
        seed = base.copy()
        seed[x] = True
        mask = _kernels.closure(g.mul, seed)
        seen.setdefault(mask.tobytes(), mask)
    return list(seen.values())


def all_subgroups(g: FiniteGroup, caps: Optional[Caps] = None) -> list[Subgroup]:
    """The complete subgroup lattice, sorted by (order, index tuple)."""
    caps = caps or default_caps()
    if g.order > caps.max_lattice_order:
        raise SubgroupLimitExceeded(
            f"group order {g.order} exceeds lattice cap {caps.max_lattice_order}")
    cyclics = cyclic_subgroup_masks(g)
    found: dict[bytes, np.ndarray] = {}
    for m in cyclics:
        found.setdefault(m.tobytes(), m)
    frontier = list(found.values())
    while frontier:
        fresh = []
        for s in frontier:
            for c in cyclics:
                if c[~s].any():
                    j = _kernels.closure(g.mul, s | c)
                    key = j.tobytes()
                    if key not in found:
                        found[key] = j
                        fresh.append(j)
                        if len(found) > caps.max_subgroups:
                            raise SubgroupLimitExceeded(
                                f"subgroup count passed {caps.max_subgroups}")
        frontier = fresh
    subs = [Subgroup(g, m) for m in found.values()]
    subs.sort(key=Subgroup.sort_key)
    return subs


def subgroup_as_group(h: Subgroup, name: str = "") -> tuple[FiniteGroup, np.ndarray]:
    """Reindex a subgroup as a standalone group.

    Returns the group together with the array mapping new indices to the
    parent's element indices (new index 0 is the identity since parent
    index 0 is always a member).
    """
    elems = h.indices
    sub = np.searchsorted(elems, h.parent.mul[np.ix_(elems, elems)]).astype(np.int32)
    labels = None
    if h.parent.labels is not None:
        labels = tuple(h.parent.labels[int(i)] for i in elems)
    grp = FiniteGroup(sub, _inverses_from_table(sub), labels=labels,
                      name=name or (f"{h.parent.name}|sub{h.order}" if h.parent.name else ""))
    return grp, elems


def embedding(h: Subgroup) -> tuple[FiniteGroup, Homomorphism]:
    """subgroup_as_group plus the inclusion homomorphism."""
    grp, elems = subgroup_as_group(h)
    return grp, Homomorphism(grp, h.parent, elems.astype(np.int32))


def pull_mask(elems: np.ndarray, parent_mask: np.ndarray) -> np.ndarray:
    """Translate a parent-space mask into the reindexed subgroup space."""
    return parent_mask[elems]


def push_mask(elems: np.ndarray, sub_mask: np.ndarray, parent_order: int) -> np.ndarray:
    """Translate a reindexed-subgroup mask back to parent indices."""
    out = np.zeros(parent_order, dtype=bool)
    out[elems[sub_mask]] = True
    return out
