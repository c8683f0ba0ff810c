"""Permutable-complement search and the C-group / SC-group deciders.

Two independent routes coexist on purpose:

* lattice brute force (`is_c_group`, `permutable_complements`) enumerates
  the subgroup lattice and checks |H||K| = |G|, H cap K = 1 directly; for
  finite groups that cardinality condition already forces HK = G;
* a constructive search (`find_permutable_complement`) that never builds
  the lattice: it descends through quotients by prime-order normal lines
  and lands in a cocycle-averaging base case, so it works on groups far
  beyond the lattice cap.  It is complete on groups in which every
  subgroup is complemented; elsewhere it may return None, which callers
  surface as NoComplementFound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import Caps, default_caps
from .errors import (
    NoComplementFound,
    NotASupplement,
    HypothesisViolated,
    SubgroupLimitExceeded,
)
from .groups import FiniteGroup, power, quotient
from .subgroups import (
    Subgroup,
    all_subgroups,
    closure_mask,
    conjugate_mask,
    generating_set,
    pull_mask,
    push_mask,
    set_product_mask,
    subgroup_as_group,
)


@dataclass(frozen=True)
class CGroupVerdict:
    c_group: bool
    witness: Optional[Subgroup]

    def __bool__(self):
        return self.c_group


def _small_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _cyclic_mask(g: FiniteGroup, x: int) -> np.ndarray:
    mask = np.zeros(g.order, dtype=bool)
    mask[0] = True
    y = int(x)
    while y != 0:
        mask[y] = True
        y = int(g.mul[y, x])
    return mask


def _stable_under(g: FiniteGroup, mask: np.ndarray, gens: list[int]) -> bool:
    return all(np.array_equal(conjugate_mask(g, mask, x), mask) for x in gens)


def prime_normal_lines(g: FiniteGroup) -> list[tuple[np.ndarray, int]]:
    """Normal cyclic subgroups of prime order, ordered by least generator."""
    gens = generating_set(g)
    orders = g.element_orders
    out, seen = [], set()
    for x in range(1, g.order):
        o = int(orders[x])
        if not _small_prime(o):
            continue
        line = _cyclic_mask(g, x)
        key = line.tobytes()
        if key in seen:
            continue
        seen.add(key)
        if _stable_under(g, line, gens):
            out.append((line, o))
    return out


def sylow_mask(g: FiniteGroup, p: int) -> np.ndarray:
    """A Sylow p-subgroup, grown by the normalizer-extension algorithm."""
    n = g.order
    pk = 1
    while n % (pk * p) == 0:
        pk *= p
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    if pk == 1:
        return mask
    orders = g.element_orders
    start = np.flatnonzero(orders == p)
    mask = _cyclic_mask(g, int(start[0]))
    while int(mask.sum()) < pk:
        normal = np.zeros(n, dtype=bool)
        for x in range(n):
            if np.array_equal(conjugate_mask(g, mask, x), mask):
                normal[x] = True
        ext = -1
        for x in np.flatnonzero(normal & ~mask):
            o = int(orders[x])
            m = o
            while m % p == 0:
                m //= p
            y = power(g, int(x), m)      # the p-part of x
            if y != 0 and not mask[y]:
                ext = y
                break
        if ext < 0:
            raise AssertionError("Sylow growth stalled; table is not a group")
        seed = mask.copy()
        seed[ext] = True
        mask = closure_mask(g, seed)
    return mask


def _complement_inside_pgroup(g: FiniteGroup, p_mask: np.ndarray,
                              n_mask: np.ndarray) -> Optional[np.ndarray]:
    """Complement of N inside the p-group P, or None if there is none.

    The greedy pass is complete when P is elementary abelian (the only
    case arising inside complemented groups); non-elementary P falls back
    to an exhaustive scan of P's own lattice when it fits the default cap.
    """
    target = int(p_mask.sum()) // int(n_mask.sum())
    w = np.zeros(g.order, dtype=bool)
    w[0] = True
    if target == 1:
        return w
    for x in np.flatnonzero(p_mask):
        if x == 0 or w[x]:
            continue
        seed = w.copy()
        seed[x] = True
        cand = closure_mask(g, seed)
        if int((cand & n_mask).sum()) == 1 and int(cand.sum()) <= target:
            w = cand
            if int(w.sum()) == target:
                return w
    p_grp, p_elems = subgroup_as_group(Subgroup(g, p_mask))
    if p_grp.order <= default_caps().max_lattice_order:
        n_sub = pull_mask(p_elems, n_mask)
        for cand in all_subgroups(p_grp):
            if (cand.order == target
                    and int((cand.mask & n_sub).sum()) == 1):
                return push_mask(p_elems, cand.mask, g.order)
    return None


def _vector_power(mul: np.ndarray, vec: np.ndarray, e: int) -> np.ndarray:
    acc = np.zeros_like(vec)
    base = vec.copy()
    while e:
        if e & 1:
            acc = mul[acc, base]
        base = mul[base, base]
        e >>= 1
    return acc


def gaschutz_complement(g: FiniteGroup, n_mask: np.ndarray) -> Optional[np.ndarray]:
    """Complement of an abelian normal p-subgroup N, if one exists.

    Finds a complement W of N inside a Sylow p-subgroup, then repairs the
    associated section of G/N by averaging its cocycle over the coset
    space of the Sylow image; the averaged section is a homomorphism and
    its image is the complement.
    """
    n_idx = np.flatnonzero(n_mask)
    nn = int(n_idx.size)
    if nn == 1:
        return np.ones(g.order, dtype=bool)
    orders = g.element_orders
    p = int(min(orders[x] for x in n_idx if x != 0))
    e = 1
    for x in n_idx:
        e = e * int(orders[x]) // np.gcd(e, int(orders[x]))
    p_mask = sylow_mask(g, p)
    if not (p_mask | ~n_mask).all():
        return None                      # N not inside the Sylow: not a p-group
    w = _complement_inside_pgroup(g, p_mask, n_mask)
    if w is None:
        return None
    if int(p_mask.sum()) == g.order:
        return w
    q, proj = quotient(g, n_mask)
    pr = proj.map
    nq = q.order
    rbar = np.zeros(nq, dtype=bool)
    rbar[pr[np.flatnonzero(p_mask)]] = True
    # homomorphic section over R-bar, inverted from W
    sigma = np.full(nq, -1, dtype=np.int64)
    for x in np.flatnonzero(w):
        sigma[pr[x]] = x
    rbar_idx = np.flatnonzero(rbar)
    if (sigma[rbar_idx] < 0).any():
        return None
    # left cosets of R-bar, reps by least index, identity's coset first
    coset_id = np.full(nq, -1, dtype=np.int64)
    reps = []
    for x in range(nq):
        if coset_id[x] < 0:
            coset_id[q.mul[x, rbar_idx]] = len(reps)
            reps.append(x)
    reps = np.array(reps, dtype=np.int64)
    ncos = reps.size
    # least preimages lift the reps; identity lifts to identity
    tau = np.full(ncos, -1, dtype=np.int64)
    for x in range(g.order):
        c = coset_id[pr[x]]
        if pr[x] == reps[c] and tau[c] < 0:
            tau[c] = x
    xs = np.arange(nq)
    r_of = q.mul[q.inv[reps[coset_id]], xs]
    s = g.mul[tau[coset_id], sigma[r_of]]
    # cocycle c(x, t) = s(x) s(t) s(x t)^-1, folded over the coset reps
    f = np.zeros(nq, dtype=np.int64)
    for t in reps:
        st = int(s[t])
        cxy = g.mul[g.mul[s, st], g.inv[s[q.mul[xs, t]]]]
        if not n_mask[cxy].all():
            return None
        f = g.mul[f, cxy]
    m = pow(int(ncos), -1, int(e))
    u = _vector_power(g.mul, f, m)
    k_elems = g.mul[g.inv[u], s]
    k_mask = np.zeros(g.order, dtype=bool)
    k_mask[k_elems] = True
    if int(k_mask.sum()) != nq or not k_mask[0]:
        return None
    if not _verify_complement(g, n_mask, k_mask):
        return None
    return k_mask


def _verify_complement(g: FiniteGroup, h_mask: np.ndarray, k_mask: np.ndarray) -> bool:
    from . import _kernels
    if not _kernels.is_closed(g.mul, k_mask):
        return False
    if int((h_mask & k_mask).sum()) != 1:
        return False
    return int(h_mask.sum()) * int(k_mask.sum()) == g.order


def complement_of_abelian_normal(g: FiniteGroup, a_mask: np.ndarray) -> Optional[np.ndarray]:
    """Complement of an abelian normal subgroup, peeled off one Sylow part
    at a time through gaschutz_complement."""
    t_grp, t_elems = g, np.arange(g.order)
    rest = a_mask.copy()
    while int(rest.sum()) > 1:
        orders = t_grp.element_orders
        primes = sorted({int(p) for x in np.flatnonzero(rest) if x != 0
                         for p in _prime_factors(int(orders[x]))})
        p = primes[0]
        part = rest.copy()
        for x in np.flatnonzero(rest):
            o = int(orders[x])
            while o % p == 0:
                o //= p
            if o != 1:
                part[x] = False
        k = gaschutz_complement(t_grp, part)
        if k is None:
            return None
        sub = Subgroup(t_grp, k)
        new_grp, new_elems = subgroup_as_group(sub)
        rest = pull_mask(np.flatnonzero(k), rest & k)
        t_elems = t_elems[np.flatnonzero(k)]
        t_grp = new_grp
    return push_mask(t_elems, np.ones(t_grp.order, dtype=bool), g.order)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def find_permutable_complement(g: FiniteGroup, h_mask: np.ndarray) -> Optional[np.ndarray]:
    """Constructive permutable complement of H in G (complete on C-groups).

    Recursion: quotient by a prime-order normal line l.  If l avoids H the
    pulled-back complement works directly; if l sits inside H the pullback
    is a proper supplement T with T cap H = l, and the problem recurses
    into T; once H itself is a single line, gaschutz_complement finishes.
    """
    nh = int(h_mask.sum())
    if nh == 1:
        return np.ones(g.order, dtype=bool)
    if nh == g.order:
        mask = np.zeros(g.order, dtype=bool)
        mask[0] = True
        return mask
    lines = prime_normal_lines(g)
    if not lines:
        return None
    for lmask, _p in lines:
        if int((lmask & h_mask).sum()) == 1:
            q, proj = quotient(g, lmask)
            kq = find_permutable_complement(q, proj.image_mask(h_mask))
            if kq is None:
                return None
            return kq[proj.map]
    lmask, _p = lines[0]
    if np.array_equal(lmask, h_mask):
        return gaschutz_complement(g, lmask)
    q, proj = quotient(g, lmask)
    tq = find_permutable_complement(q, proj.image_mask(h_mask))
    if tq is None:
        return None
    t_mask = tq[proj.map]
    t_grp, t_elems = subgroup_as_group(Subgroup(g, t_mask))
    k_sub = find_permutable_complement(t_grp, pull_mask(t_elems, lmask))
    if k_sub is None:
        return None
    return push_mask(t_elems, k_sub, g.order)


def _lattice_masks(g: FiniteGroup, caps: Optional[Caps],
                   lattice: Optional[list[Subgroup]] = None):
    subs = lattice if lattice is not None else all_subgroups(g, caps)
    masks = np.stack([s.mask for s in subs])
    return subs, masks, masks.sum(axis=1)


def permutable_complements(g: FiniteGroup, h: Subgroup, caps: Optional[Caps] = None,
                           lattice: Optional[list[Subgroup]] = None) -> list[Subgroup]:
    """All permutable complements of H, in the deterministic lattice order.

    |K| = |G|/|H| together with trivial intersection already forces
    HK = G by counting, so no set products are formed.
    """
    subs, masks, sizes = _lattice_masks(g, caps, lattice)
    want = g.order // h.order
    out = []
    for s, m, sz in zip(subs, masks, sizes):
        if int(sz) == want and int((m & h.mask).sum()) == 1:
            out.append(s)
    return out


def is_c_group(g: FiniteGroup, caps: Optional[Caps] = None,
               lattice: Optional[list[Subgroup]] = None) -> CGroupVerdict:
    """Brute-force verdict: every subgroup has a permutable complement.

    On failure the witness is the first complement-less subgroup in the
    deterministic lattice order.
    """
    subs, masks, sizes = _lattice_masks(g, caps, lattice)
    ints = masks.astype(np.int16)
    by_order: dict[int, np.ndarray] = {}
    for sz in np.unique(sizes):
        by_order[int(sz)] = ints[sizes == sz]
    for s, m in zip(subs, masks):
        want = g.order // s.order
        cand = by_order.get(want)
        if cand is None or not (cand @ m.astype(np.int16) == 1).any():
            return CGroupVerdict(False, s)
    return CGroupVerdict(True, None)


def refine_supplement(g: FiniteGroup, h: Subgroup, s: Subgroup,
                      caps: Optional[Caps] = None) -> Subgroup:
    """Permutable complement of H contained in the supplement S.

    Inside S this is exactly a permutable complement of H cap S, searched
    lattice-first when S is small enough and constructively otherwise.
    """
    caps = caps or default_caps()
    if not set_product_mask(g, h.mask, s.mask).all():
        raise NotASupplement()
    s_grp, s_elems = subgroup_as_group(s)
    j_mask = pull_mask(s_elems, h.mask & s.mask)
    k_sub = None
    if s.order <= caps.max_lattice_order:
        j_sub = Subgroup(s_grp, j_mask)
        for cand in permutable_complements(s_grp, j_sub, caps):
            k_sub = cand.mask
            break
    else:
        k_sub = find_permutable_complement(s_grp, j_mask)
    if k_sub is None:
        raise NoComplementFound("no permutable complement of H inside S")
    return Subgroup(g, push_mask(s_elems, k_sub, g.order))


def _lift_in(g: FiniteGroup, j_mask: np.ndarray, n_mask: np.ndarray,
             caps: Caps) -> Optional[np.ndarray]:
    """Complement K of J in G with K*N = G, for J <= N normal in G."""
    if int(j_mask.sum()) == 1:
        return np.ones(g.order, dtype=bool)
    if n_mask.all():
        return find_permutable_complement(g, j_mask)
    lines = [(m, p) for m, p in prime_normal_lines(g) if not (m & ~n_mask).any()]
    if not lines:
        return None
    for lmask, _p in lines:
        if int((lmask & j_mask).sum()) == 1:
            q, proj = quotient(g, lmask)
            r = _lift_in(q, proj.image_mask(j_mask), proj.image_mask(n_mask), caps)
            if r is None:
                return None
            return r[proj.map]
    lmask, p = lines[0]
    if np.array_equal(lmask, j_mask):
        n_idx = np.flatnonzero(n_mask)
        n_abelian = bool((g.mul[np.ix_(n_idx, n_idx)] ==
                          g.mul[np.ix_(n_idx, n_idx)].T).all())
        if n_abelian:
            c = _invariant_complement_in_abelian(g, n_mask, lmask)
            if c is not None:
                q, proj = quotient(g, c)
                dbar = gaschutz_complement(q, proj.image_mask(lmask))
                if dbar is None:
                    return None
                return dbar[proj.map]
        # bounded fallback for the rare non-abelian base case
        if g.order <= caps.max_lattice_order:
            for cand in all_subgroups(g, caps):
                if (cand.order * p == g.order
                        and int((cand.mask & lmask).sum()) == 1
                        and set_product_mask(g, cand.mask, n_mask).all()):
                    return cand.mask
        return None
    q, proj = quotient(g, lmask)
    tbar = _lift_in(q, proj.image_mask(j_mask), proj.image_mask(n_mask), caps)
    if tbar is None:
        return None
    t_mask = tbar[proj.map]
    t_grp, t_elems = subgroup_as_group(Subgroup(g, t_mask))
    k_sub = _lift_in(t_grp, pull_mask(t_elems, lmask),
                     pull_mask(t_elems, n_mask & t_mask), caps)
    if k_sub is None:
        return None
    return push_mask(t_elems, k_sub, g.order)


def _invariant_complement_in_abelian(g: FiniteGroup, a_mask: np.ndarray,
                                     b_mask: np.ndarray) -> Optional[np.ndarray]:
    """G-invariant complement of B inside the abelian normal subgroup A,
    grown greedily from G-invariant prime-order lines of A."""
    gens = generating_set(g)
    orders = g.element_orders
    span = b_mask.copy()
    c_mask = np.zeros(g.order, dtype=bool)
    c_mask[0] = True
    seen = set()
    for x in np.flatnonzero(a_mask):
        if x == 0 or span[x]:
            continue
        if not _small_prime(int(orders[x])):
            continue
        line = _cyclic_mask(g, int(x))
        key = line.tobytes()
        if key in seen:
            continue
        seen.add(key)
        if not _stable_under(g, line, gens):
            continue
        c_mask = set_product_mask(g, c_mask, line)
        span = set_product_mask(g, span, line)
        if np.array_equal(span, a_mask):
            return c_mask
    return None if not np.array_equal(span, a_mask) else c_mask


def lift_complement(g: FiniteGroup, h: Subgroup, n: Subgroup, s: Subgroup,
                    caps: Optional[Caps] = None) -> Subgroup:
    """Permutable complement K of H in G with K*N = S exactly.

    Requires N normal, N <= S, and S/N a permutable complement of HN/N in
    G/N; those premises are validated and named on failure.
    """
    from .groups import is_normal_mask
    caps = caps or default_caps()
    if not is_normal_mask(g, n.mask):
        raise HypothesisViolated("N is not normal in G")
    if (n.mask & ~s.mask).any():
        raise HypothesisViolated("N is not contained in S")
    hn = closure_mask(g, h.mask | n.mask)
    if not np.array_equal(set_product_mask(g, h.mask, n.mask), hn):
        raise AssertionError("H*N failed to be a subgroup despite N normal")
    if not np.array_equal(hn & s.mask, n.mask):
        raise HypothesisViolated("S/N does not intersect HN/N trivially")
    if not set_product_mask(g, hn, s.mask).all():
        raise HypothesisViolated("S/N is not a permutable complement of HN/N in G/N")
    if n.order == 1:
        return Subgroup(g, s.mask.copy())
    s_grp, s_elems = subgroup_as_group(s)
    j_mask = pull_mask(s_elems, h.mask & s.mask)
    n_sub = pull_mask(s_elems, n.mask)
    k_sub = find_permutable_complement(s_grp, j_mask)
    if k_sub is not None:
        k_parent = push_mask(s_elems, k_sub, g.order)
        if np.array_equal(set_product_mask(g, k_parent, n.mask), s.mask):
            return Subgroup(g, k_parent)
    k_sub = _lift_in(s_grp, j_mask, n_sub, caps)
    if k_sub is None:
        raise NoComplementFound("no complement K with K*N = S; is G a C-group?")
    return Subgroup(g, push_mask(s_elems, k_sub, g.order))


def is_sc_group(g: FiniteGroup, caps: Optional[Caps] = None) -> bool:
    """For every H, some K whose slices J cap K complement H in every
    intermediate J.  Triple loop over the lattice; capped accordingly."""
    caps = caps or default_caps()
    if g.order > caps.sc_max_order:
        raise SubgroupLimitExceeded(
            f"group order {g.order} exceeds SC cap {caps.sc_max_order}")
    subs = all_subgroups(g, caps)
    masks = [s.mask for s in subs]
    index = {m.tobytes(): i for i, m in enumerate(masks)}
    nsub = len(subs)
    join_memo: dict[tuple[int, int], int] = {}

    def join(i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        key = (i, j)
        got = join_memo.get(key)
        if got is None:
            got = index[closure_mask(g, masks[i] | masks[j]).tobytes()]
            join_memo[key] = got
        return got

    for hi, h in enumerate(masks):
        sup = [j for j in range(nsub) if not (h & ~masks[j]).any()]
        ok = False
        for ki, k in enumerate(masks):
            good = True
            for j in sup:
                slice_mask = masks[j] & k
                xi = index[slice_mask.tobytes()]
                if int((h & slice_mask).sum()) != 1 or join(hi, xi) != j:
                    good = False
                    break
            if good:
                ok = True
                break
        if not ok:
            return False
    return True
