"""Finite-depth truncations of inverse systems of finite groups.

A system is a tower G_0 <- G_1 <- ... <- G_d of surjective bonding
homomorphisms.  Closed subgroups appear as exact-image compatible
families; complements are lifted level by level, each one searched inside
the preimage of the previous complement so the chain descends.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .config import Caps, default_caps
from .errors import BadParams, HypothesisViolated, NoChainFound
from .complements import find_permutable_complement, is_c_group
from .groups import (
    FiniteGroup,
    GAction,
    Homomorphism,
    center_mask,
    cyclic,
    derived_mask,
    direct_product,
    exponent,
    is_normal_mask,
    semidirect_product,
)
from .structure import CernikovaDecomposition, cernikova_decompose
from .subgroups import (
    Subgroup,
    pull_mask,
    push_mask,
    set_product_mask,
    subgroup_as_group,
    subgroup_closure,
)


@dataclass(frozen=True)
class InverseSystem:
    levels: tuple[FiniteGroup, ...]
    bonds: tuple[Homomorphism, ...]      # bonds[k]: levels[k+1] -> levels[k]

    def __post_init__(self):
        if len(self.bonds) != len(self.levels) - 1:
            raise HypothesisViolated("need exactly one bond per consecutive level pair")
        for k, bond in enumerate(self.bonds):
            if bond.source is not self.levels[k + 1] or bond.target is not self.levels[k]:
                raise HypothesisViolated(f"bond {k} does not connect level {k + 1} to {k}")
            if not bond.is_surjective:
                raise HypothesisViolated(f"bond {k} is not surjective")

    @property
    def depth(self) -> int:
        return len(self.levels) - 1


@dataclass(frozen=True)
class CompatibleSubgroup:
    """Levelwise subgroups whose bond images match exactly: the shadow of
    a closed subgroup in the finite quotients."""

    levels: tuple[Subgroup, ...]


@dataclass(frozen=True)
class ComplementChain:
    levels: tuple[Subgroup, ...]


def validate_system(levels: Union[InverseSystem, Sequence[FiniteGroup]],
                    bond_maps: Optional[Sequence[np.ndarray]] = None) -> dict:
    """Per-bond homomorphism and surjectivity verdicts.

    Accepts either a constructed InverseSystem or raw levels plus bond
    tables, so malformed inputs can still be reported instead of raised.
    """
    if isinstance(levels, InverseSystem):
        groups = levels.levels
        bond_maps = [b.map for b in levels.bonds]
    else:
        groups = list(levels)
        bond_maps = [np.asarray(m, dtype=np.int64) for m in (bond_maps or [])]
    report = {"bonds": [], "valid": True}
    if len(bond_maps) != len(groups) - 1:
        report["valid"] = False
        report["shape_error"] = (
            f"{len(groups)} levels need {len(groups) - 1} bonds, got {len(bond_maps)}")
        return report
    for k, fmap in enumerate(bond_maps):
        src, tgt = groups[k + 1], groups[k]
        entry = {"bond": k, "homomorphism": True, "surjective": True, "detail": ""}
        if fmap.shape != (src.order,) or fmap.min() < 0 or fmap.max() >= tgt.order:
            entry.update(homomorphism=False, surjective=False,
                         detail="map shape or range mismatch")
        else:
            lhs = fmap[src.mul]
            rhs = tgt.mul[np.ix_(fmap, fmap)]
            if fmap[0] != 0 or not np.array_equal(lhs, rhs):
                entry["homomorphism"] = False
                entry["detail"] = "map does not respect multiplication"
            if np.unique(fmap).size != tgt.order:
                entry["surjective"] = False
                entry["detail"] = (entry["detail"] + "; " if entry["detail"] else "") + \
                    "image misses part of the target"
        if not (entry["homomorphism"] and entry["surjective"]):
            report["valid"] = False
        report["bonds"].append(entry)
    return report


def build_system(levels: Sequence[FiniteGroup],
                 bond_maps: Sequence[np.ndarray]) -> InverseSystem:
    bonds = tuple(Homomorphism(levels[k + 1], levels[k], np.asarray(m, dtype=np.int32))
                  for k, m in enumerate(bond_maps))
    return InverseSystem(tuple(levels), bonds)


def check_compatible(sys: InverseSystem, h: CompatibleSubgroup):
    if len(h.levels) != len(sys.levels):
        raise HypothesisViolated("compatible family must have one subgroup per level")
    for k, sub in enumerate(h.levels):
        if sub.parent is not sys.levels[k]:
            raise HypothesisViolated(f"level {k} subgroup does not live in level {k} group")
    for k, bond in enumerate(sys.bonds):
        img = bond.image_mask(h.levels[k + 1].mask)
        if not np.array_equal(img, h.levels[k].mask):
            raise HypothesisViolated(
                f"bond {k} image of the level-{k + 1} subgroup is not the level-{k} subgroup")


def compatible_from_top(sys: InverseSystem, seeds: Sequence[int]) -> CompatibleSubgroup:
    """Compatible family generated by seed elements of the deepest level;
    lower levels are the exact bond images, so compatibility is built in."""
    top = subgroup_closure(sys.levels[-1], seeds)
    subs = [top]
    for k in range(sys.depth - 1, -1, -1):
        subs.append(Subgroup(sys.levels[k], sys.bonds[k].image_mask(subs[-1].mask)))
    return CompatibleSubgroup(tuple(reversed(subs)))


@dataclass(frozen=True)
class SystemCVerdict:
    all_c: bool
    witness_level: Optional[int]
    witness: Optional[Subgroup]
    details: tuple[str, ...]

    def __bool__(self):
        return self.all_c


def is_profinite_c_truncated(sys: InverseSystem,
                             caps: Optional[Caps] = None) -> SystemCVerdict:
    """True iff every level is a C-group.

    Levels inside the lattice cap get the brute-force decider (witness
    subgroup on failure); larger levels fall back to the structural
    decomposition, whose success is equivalent but names a stage instead
    of a witness subgroup.
    """
    caps = caps or default_caps()
    details = []
    for k, g in enumerate(sys.levels):
        if g.order <= caps.max_lattice_order:
            verdict = is_c_group(g, caps)
            if not verdict.c_group:
                details.append("brute-force: not C")
                return SystemCVerdict(False, k, verdict.witness, tuple(details))
            details.append("brute-force: C")
        else:
            dec = cernikova_decompose(g, caps)
            if isinstance(dec, CernikovaDecomposition):
                details.append("structural: C")
            else:
                details.append(f"structural: not C at stage {dec.stage}")
                return SystemCVerdict(False, k, None, tuple(details))
    return SystemCVerdict(True, None, None, tuple(details))


def lift_complement_chain(sys: InverseSystem, h: CompatibleSubgroup,
                          caps: Optional[Caps] = None) -> ComplementChain:
    """Descending chain of permutable complements, one per level.

    K_0 complements H_0; at level k+1 the search is confined to the bond
    preimage of K_k, which is a supplement of H_{k+1}, so the result
    satisfies the descent condition by construction.  NoChainFound here
    means a precondition was violated (some level is not a C-group).
    """
    check_compatible(sys, h)
    chain_masks: list[np.ndarray] = []
    for k, g in enumerate(sys.levels):
        h_mask = h.levels[k].mask
        if k == 0:
            k_mask = find_permutable_complement(g, h_mask)
            if k_mask is None:
                raise NoChainFound(0, "level group is not a C-group")
        else:
            s_mask = sys.bonds[k - 1].preimage_mask(chain_masks[k - 1])
            s_grp, s_elems = subgroup_as_group(Subgroup(g, s_mask))
            j_mask = pull_mask(s_elems, h_mask & s_mask)
            k_sub = find_permutable_complement(s_grp, j_mask)
            if k_sub is None:
                raise NoChainFound(k, "no complement inside the preimage supplement")
            k_mask = push_mask(s_elems, k_sub, g.order)
        if int(h_mask.sum()) * int(k_mask.sum()) != g.order:
            raise NoChainFound(k, "complement has the wrong order")
        chain_masks.append(k_mask)
    chain = ComplementChain(tuple(Subgroup(g, m)
                                  for g, m in zip(sys.levels, chain_masks)))
    ok, detail = verify_chain(sys, h, chain)
    if not ok:
        raise NoChainFound(sys.depth, f"post-verification failed: {detail}")
    return chain


def verify_chain(sys: InverseSystem, h: CompatibleSubgroup,
                 chain: ComplementChain) -> tuple[bool, str]:
    """Re-check every ComplementChain invariant literally."""
    for k, g in enumerate(sys.levels):
        hm, km = h.levels[k].mask, chain.levels[k].mask
        if int((hm & km).sum()) != 1:
            return False, f"level {k}: H and K intersect nontrivially"
        if not set_product_mask(g, hm, km).all():
            return False, f"level {k}: H*K does not cover the group"
    for k, bond in enumerate(sys.bonds):
        img = bond.image_mask(chain.levels[k + 1].mask)
        if (img & ~chain.levels[k].mask).any():
            return False, f"bond {k}: complement image escapes the lower complement"
    return True, ""


def theorem_c_report(sys: InverseSystem) -> dict:
    """Per-level exponent and |G : Z(G)G'| diagnostics.

    The trend flags are truncation heuristics at the given depth: the
    center of the limit can be strictly smaller than the limit of the
    centers, so no finite level certifies the limit behavior.
    """
    levels = []
    indices, exps = [], []
    for k, g in enumerate(sys.levels):
        z = center_mask(g)
        dz = derived_mask(g)
        zg = set_product_mask(g, z, dz)
        index = g.order // int(zg.sum())
        e = exponent(g)
        levels.append({
            "level": k,
            "order": g.order,
            "exponent": e,
            "center_order": int(z.sum()),
            "derived_order": int(dz.sum()),
            "index_z_gprime": index,
        })
        indices.append(index)
        exps.append(e)
    growing = len(indices) >= 2 and all(b > a for a, b in zip(indices, indices[1:]))
    exp_growing = len(exps) >= 2 and all(b > a for a, b in zip(exps, exps[1:]))
    return {
        "levels": levels,
        "indices": indices,
        "exponents": exps,
        "index_trend": "index strictly growing" if growing else "index bounded so far",
        "exponent_trend": "exponent strictly growing" if exp_growing else "exponent bounded so far",
        "heuristic_depth": sys.depth,
    }


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _nonabelian_pq(p: int, q: int, caps: Caps) -> FiniteGroup:
    """C_p x| C_q with the generator acting as the least multiplier of
    multiplicative order q mod p."""
    r = None
    for cand in range(2, p):
        k, cur = 1, cand
        while cur != 1:
            cur = cur * cand % p
            k += 1
        if k == q:
            r = cand
            break
    if r is None:
        raise BadParams(f"no element of order {q} in (Z/{p})^*")
    act = np.empty((q, p), dtype=np.int64)
    mult = 1
    for j in range(q):
        act[j] = (np.arange(p) * mult) % p
        mult = mult * r % p
    return semidirect_product(GAction(cyclic(q, caps), cyclic(p, caps), act),
                              name=f"C{p}:C{q}", caps=caps)


PRIME_COLUMN = (2, 3, 5, 7, 11, 13, 17, 19, 23)


def example_system(kind: str, params: Optional[dict] = None, depth: int = 3,
                   caps: Optional[Caps] = None) -> InverseSystem:
    """Built-in families of truncated systems.

    pq-power: levels (C_p x| C_q)^k; prime-column: C_{p_1} x ... x C_{p_k}
    over the first primes; elementary: C_p^k.  All bonds drop the last
    coordinate.  The system size cap governs construction here, replacing
    the single-group cap.
    """
    caps = caps or default_caps()
    params = params or {}
    if depth < 0:
        raise BadParams("depth must be nonnegative")
    caps = caps.with_overrides(max_order=max(caps.max_order, caps.max_system_order))
    if kind == "pq-power":
        p, q = int(params.get("p", 3)), int(params.get("q", 2))
        if not (_is_prime(p) and _is_prime(q)):
            raise BadParams(f"p and q must be prime, got p={p}, q={q}")
        if p % q != 1:
            raise BadParams(f"need p = 1 (mod q), got p={p}, q={q}")
        factor = _nonabelian_pq(p, q, caps)
        factors = [factor] * depth
    elif kind == "prime-column":
        if depth > len(PRIME_COLUMN):
            raise BadParams(f"prime-column supports depth <= {len(PRIME_COLUMN)}")
        factors = [cyclic(pr, caps) for pr in PRIME_COLUMN[:depth]]
    elif kind == "elementary":
        p = int(params.get("p", 2))
        if not _is_prime(p):
            raise BadParams(f"p must be prime, got {p}")
        factors = [cyclic(p, caps)] * depth
    else:
        raise BadParams(f"unknown system family {kind!r}")
    total = 1
    levels = [cyclic(1, caps)]
    for f in factors:
        total += levels[-1].order * f.order
        if total > caps.max_system_order:
            raise BadParams(
                f"total level order {total} exceeds system cap {caps.max_system_order}")
        levels.append(direct_product(levels[-1], f, caps=caps))
    bond_maps = [np.arange(levels[k + 1].order, dtype=np.int32) // factors[k].order
                 for k in range(depth)]
    return build_system(levels, bond_maps)


def pq_power_abelian_part(level: FiniteGroup, p: int, q: int) -> Subgroup:
    """The C_p^k coordinate subgroup of a pq-power level: elements whose
    base-(pq) digits all carry a trivial C_q part."""
    m = p * q
    mask = np.ones(level.order, dtype=bool)
    x = np.arange(level.order)
    while (x > 0).any():
        mask &= (x % m) < p
        x = x // m
    return Subgroup(level, mask)


def normal_cyclics_in_a(level: FiniteGroup, a: Subgroup) -> list[Subgroup]:
    """Cyclic subgroups of A that are normal in the ambient level group."""
    seen, out = set(), []
    for x in a.indices:
        if x == 0:
            continue
        mask = np.zeros(level.order, dtype=bool)
        mask[0] = True
        y = int(x)
        while y != 0:
            mask[y] = True
            y = int(level.mul[y, x])
        key = mask.tobytes()
        if key in seen:
            continue
        seen.add(key)
        if is_normal_mask(level, mask):
            out.append(Subgroup(level, mask))
    out.sort(key=Subgroup.sort_key)
    return out
