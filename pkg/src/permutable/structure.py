"""Structural decompositions: module radical, prime-line splittings of
abelian normal subgroups, the B |x A decomposition with prime-order
generators, and the character-class partition of invariant lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .config import Caps, default_caps
from .errors import (
    HypothesisViolated,
    LineNotInvariant,
    NotAbelianNormal,
    NotSemidirect,
)
from .complements import (
    CGroupVerdict,
    _cyclic_mask,
    _small_prime,
    _stable_under,
    complement_of_abelian_normal,
    is_c_group,
)
from .groups import FiniteGroup, GAction, is_normal_mask, semidirect_product
from .subgroups import (
    Subgroup,
    all_subgroups,
    full_subgroup,
    generating_set,
    push_mask,
    set_product_mask,
    subgroup_as_group,
)


def _require_abelian_normal(g: FiniteGroup, a: Subgroup):
    idx = a.indices
    block = g.mul[np.ix_(idx, idx)]
    if not (block == block.T).all():
        raise NotAbelianNormal("subgroup is not abelian")
    if not is_normal_mask(g, a.mask):
        raise NotAbelianNormal("subgroup is not normal")


def g_invariant_subgroups(g: FiniteGroup, a: Subgroup,
                          caps: Optional[Caps] = None) -> list[Subgroup]:
    """All subgroups of A stable under conjugation by G (the G-submodules)."""
    gens = generating_set(g)
    a_grp, elems = subgroup_as_group(a)
    out = []
    for s in all_subgroups(a_grp, caps):
        mask = push_mask(elems, s.mask, g.order)
        if _stable_under(g, mask, gens):
            out.append(Subgroup(g, mask))
    return out


def radical(g: FiniteGroup, a: Subgroup, caps: Optional[Caps] = None) -> Subgroup:
    """Intersection of all maximal proper G-invariant subgroups of A.

    Convention: the radical of the trivial subgroup is itself (the source
    notion is only defined for nontrivial modules).
    """
    _require_abelian_normal(g, a)
    if a.order == 1:
        return a
    invariant = [s for s in g_invariant_subgroups(g, a, caps) if s.order < a.order]
    maximal = []
    for s in invariant:
        if not any(t is not s and t.order > s.order and not (s.mask & ~t.mask).any()
                   for t in invariant):
            maximal.append(s)
    out = a.mask.copy()
    for s in maximal:
        out &= s.mask
    return Subgroup(g, out)


@dataclass(frozen=True)
class SplitFailure:
    reason: str                      # "radical_nontrivial" or "nonprime_factor"
    radical: Optional[Subgroup]

    def __bool__(self):
        return False


def invariant_line_masks(g: FiniteGroup, a_mask: np.ndarray) -> list[tuple[np.ndarray, int]]:
    """G-invariant prime-order cyclic subgroups inside A, ordered by
    (prime, least generator)."""
    gens = generating_set(g)
    orders = g.element_orders
    seen, out = set(), []
    for x in np.flatnonzero(a_mask):
        if x == 0:
            continue
        p = int(orders[x])
        if not _small_prime(p):
            continue
        line = _cyclic_mask(g, int(x))
        key = line.tobytes()
        if key in seen:
            continue
        seen.add(key)
        if _stable_under(g, line, gens):
            out.append((line, p))
    out.sort(key=lambda t: (t[1], int(np.flatnonzero(t[0])[1])))
    return out


def split_abelian_normal(g: FiniteGroup, a: Subgroup,
                         caps: Optional[Caps] = None) -> Union[list[Subgroup], SplitFailure]:
    """Write A as an internal direct product of G-invariant prime-order
    subgroups, greedily over invariant lines; diagnoses the obstruction
    when that is impossible."""
    _require_abelian_normal(g, a)
    if a.order == 1:
        return []
    span = np.zeros(g.order, dtype=bool)
    span[0] = True
    chosen: list[Subgroup] = []
    for line, _p in invariant_line_masks(g, a.mask):
        gen = int(np.flatnonzero(line)[1])
        if not span[gen]:
            chosen.append(Subgroup(g, line))
            span = set_product_mask(g, span, line)
    if np.array_equal(span, a.mask):
        return chosen
    if a.order <= (caps or default_caps()).max_lattice_order:
        rad = radical(g, a, caps)
        if rad.order > 1:
            return SplitFailure("radical_nontrivial", rad)
        return SplitFailure("nonprime_factor", rad)
    return SplitFailure("radical_nontrivial", None)


@dataclass(frozen=True)
class CernikovaDecomposition:
    """Witness for G = B |x A with A, B direct products of prime-order
    cyclic subgroups and every A-line normal in G."""

    a_generators: tuple[tuple[int, int], ...]   # (element index, prime order)
    b_generators: tuple[tuple[int, int], ...]
    a_subgroup: Subgroup
    b_subgroup: Subgroup


@dataclass(frozen=True)
class DecomposeFailure:
    stage: str       # derived_nonabelian | split_a | complement_b | split_b
    detail: str

    def __bool__(self):
        return False


def cernikova_decompose(g: FiniteGroup, caps: Optional[Caps] = None
                        ) -> Union[CernikovaDecomposition, DecomposeFailure]:
    """Decompose G = B |x A with A the derived subgroup.

    Succeeds exactly when every subgroup of G has a permutable complement;
    the failing stage is reported otherwise.
    """
    from .groups import derived_mask
    caps = caps or default_caps()
    a_mask = derived_mask(g)
    a = Subgroup(g, a_mask)
    idx = a.indices
    block = g.mul[np.ix_(idx, idx)]
    if not (block == block.T).all():
        return DecomposeFailure("derived_nonabelian", "derived subgroup is not abelian")
    lines_a = split_abelian_normal(g, a, caps)
    if isinstance(lines_a, SplitFailure):
        return DecomposeFailure("split_a", f"derived subgroup does not split: {lines_a.reason}")
    b_mask = complement_of_abelian_normal(g, a_mask)
    if b_mask is None:
        return DecomposeFailure("complement_b", "derived subgroup has no permutable complement")
    b = Subgroup(g, b_mask)
    b_grp, b_elems = subgroup_as_group(b)
    lines_b = split_abelian_normal(b_grp, full_subgroup(b_grp), caps)
    if isinstance(lines_b, SplitFailure):
        return DecomposeFailure(
            "split_b", f"complement does not split into prime lines: {lines_b.reason}")
    a_gens = tuple((int(s.indices[1]), int(s.order)) for s in lines_a)
    b_gens = tuple((int(b_elems[int(s.indices[1])]), int(s.order)) for s in lines_b)
    dec = CernikovaDecomposition(a_gens, b_gens, a, b)
    _check_decomposition(g, dec)
    return dec


def _check_decomposition(g: FiniteGroup, dec: CernikovaDecomposition):
    gens_a = [x for x, _ in dec.a_generators]
    for x in gens_a:
        line = _cyclic_mask(g, x)
        if not _stable_under(g, line, generating_set(g)):
            raise AssertionError("a-generator line is not normal")
    if int((dec.a_subgroup.mask & dec.b_subgroup.mask).sum()) != 1:
        raise AssertionError("A and B intersect nontrivially")
    if dec.a_subgroup.order * dec.b_subgroup.order != g.order:
        raise AssertionError("A and B do not factor G")


def rebuild_decomposition(g: FiniteGroup, dec: CernikovaDecomposition,
                          caps: Optional[Caps] = None) -> tuple[FiniteGroup, np.ndarray]:
    """Reassemble the external B |x A group from a decomposition.

    Returns the rebuilt group and the element map onto G: index b*|A|+a
    goes to (product of b-generator powers)*(product of a-generator
    powers).  The map is a multiplication-preserving bijection precisely
    when the decomposition is valid.
    """
    from .groups import cyclic, direct_product

    def assemble(gens: tuple[tuple[int, int], ...]) -> tuple[FiniteGroup, np.ndarray]:
        grp = cyclic(1)
        elems = np.zeros(1, dtype=np.int64)
        for elem, p in gens:
            nxt = cyclic(p, caps)
            powers = np.zeros(p, dtype=np.int64)
            for e in range(1, p):
                powers[e] = g.mul[powers[e - 1], elem]
            combined = g.mul[np.repeat(elems, p),
                             np.tile(powers, elems.size)]
            grp = direct_product(grp, nxt, caps=caps)
            elems = combined
        return grp, elems

    a_grp, a_elems = assemble(dec.a_generators)
    b_grp, b_elems = assemble(dec.b_generators)
    a_where = {int(v): i for i, v in enumerate(a_elems)}
    if len(a_where) != a_elems.size:
        raise AssertionError("a-generators are not independent")
    act = np.empty((b_grp.order, a_grp.order), dtype=np.int64)
    for bi, bg in enumerate(b_elems):
        conj = g.mul[g.mul[int(bg), a_elems], g.inv[int(bg)]]
        act[bi] = [a_where[int(c)] for c in conj]
    product = semidirect_product(GAction(b_grp, a_grp, act), caps=caps)
    mapping = g.mul[np.repeat(b_elems, a_grp.order),
                    np.tile(a_elems, b_grp.order)]
    return product, mapping


@dataclass(frozen=True)
class SemidirectCertificate:
    holds: bool
    h_is_c: bool
    complements: tuple[tuple[Subgroup, Optional[Subgroup]], ...]
    verified_c: Optional[CGroupVerdict]   # cross-check when G fits in caps


def semidirect_c_criterion(g: FiniteGroup, h: Subgroup, n: Subgroup,
                           caps: Optional[Caps] = None) -> SemidirectCertificate:
    """Sufficient condition for G = H |x N to be a C-group: H is one, and
    every subgroup of N has a G-invariant permutable complement in N."""
    caps = caps or default_caps()
    if not is_normal_mask(g, n.mask):
        raise NotSemidirect("N is not normal in G")
    if int((h.mask & n.mask).sum()) != 1:
        raise NotSemidirect("H and N intersect nontrivially")
    if h.order * n.order != g.order:
        raise NotSemidirect("H*N does not cover G")
    h_grp, _ = subgroup_as_group(h)
    h_is_c = bool(is_c_group(h_grp, caps))
    gens = generating_set(g)
    n_grp, n_elems = subgroup_as_group(n)
    n_lattice = all_subgroups(n_grp, caps)
    pushed = [Subgroup(g, push_mask(n_elems, s.mask, g.order)) for s in n_lattice]
    invariant = [s for s in pushed if _stable_under(g, s.mask, gens)]
    rows = []
    all_found = True
    for u in pushed:
        found = None
        for k in invariant:
            if (k.order * u.order == n.order
                    and int((k.mask & u.mask).sum()) == 1):
                found = k
                break
        rows.append((u, found))
        if found is None:
            all_found = False
    holds = h_is_c and all_found
    verified = None
    if g.order <= caps.max_lattice_order:
        verified = is_c_group(g, caps)
        if holds and not verified.c_group:
            raise AssertionError("criterion held but brute force disagrees")
    return SemidirectCertificate(holds, h_is_c, tuple(rows), verified)


def normal_subgroups(g: FiniteGroup, caps: Optional[Caps] = None) -> list[Subgroup]:
    gens = generating_set(g)
    return [s for s in all_subgroups(g, caps) if _stable_under(g, s.mask, gens)]


def minimal_normal_subgroups(g: FiniteGroup, caps: Optional[Caps] = None) -> list[Subgroup]:
    """Nontrivial normal subgroups containing no smaller nontrivial one."""
    normals = [s for s in normal_subgroups(g, caps) if s.order > 1]
    out = []
    for s in normals:
        if not any(t.order < s.order and not (t.mask & ~s.mask).any() for t in normals):
            out.append(s)
    return out


@dataclass(frozen=True)
class ThetaPartition:
    """Lines of an elementary abelian p-subgroup grouped by the character
    through which K acts on them; each class regroups into a direct factor
    carried by a single scalar action."""

    prime: int
    lines: tuple[Subgroup, ...]
    characters: tuple[tuple[int, ...], ...]      # per line, aligned with K indices
    classes: tuple[tuple[int, ...], ...]         # line positions per class
    class_subgroups: tuple[Subgroup, ...]
    class_characters: tuple[tuple[int, ...], ...]


def theta_partition(g: FiniteGroup, k: Subgroup, p_sub: Subgroup,
                    lines: list[Subgroup]) -> ThetaPartition:
    """Characters k -> exponent with x^k = x^theta(k) on each line, and the
    partition of lines by equal character."""
    _require_abelian_normal(g, p_sub)
    orders = g.element_orders
    nontriv = [int(orders[x]) for x in p_sub.indices if x != 0]
    if not nontriv:
        raise HypothesisViolated("P is trivial; no lines to partition")
    p = nontriv[0]
    if not _small_prime(p) or any(o != p for o in nontriv):
        raise HypothesisViolated("P is not elementary abelian of prime exponent")
    k_idx = [int(x) for x in k.indices]
    characters = []
    for pos, line in enumerate(lines):
        if (line.mask & ~p_sub.mask).any() or line.order != p:
            raise HypothesisViolated(f"line {pos} is not an order-{p} subgroup of P")
        x = int(line.indices[1])
        dlog = {}
        y, e = 0, 0
        while True:
            dlog[y] = e
            y = int(g.mul[y, x])
            e += 1
            if y == 0:
                break
        char = []
        for kk in k_idx:
            conj = int(g.mul[g.mul[g.inv[kk], x], kk])    # x^k = k^-1 x k
            if conj not in dlog:
                raise LineNotInvariant(pos, kk)
            char.append(dlog[conj])
        characters.append(tuple(char))
    class_order: dict[tuple[int, ...], list[int]] = {}
    for pos, char in enumerate(characters):
        class_order.setdefault(char, []).append(pos)
    classes, class_subs, class_chars = [], [], []
    for char, members in sorted(class_order.items(), key=lambda kv: kv[1][0]):
        classes.append(tuple(members))
        mask = np.zeros(g.order, dtype=bool)
        mask[0] = True
        for pos in members:
            mask = set_product_mask(g, mask, lines[pos].mask)
        class_subs.append(Subgroup(g, mask))
        class_chars.append(char)
    return ThetaPartition(p, tuple(lines), tuple(characters), tuple(classes),
                          tuple(class_subs), tuple(class_chars))
