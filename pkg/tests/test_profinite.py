"""Truncated inverse systems: validation, built-in families, chain lifting."""

import numpy as np
import pytest

from permutable import (
    CompatibleSubgroup,
    build_system,
    catalog,
    compatible_from_top,
    cyclic,
    example_system,
    is_profinite_c_truncated,
    lift_complement_chain,
    normal_cyclics_in_a,
    pq_power_abelian_part,
    subgroup_closure,
    subgroup_from_indices,
    theorem_c_report,
    validate_system,
    verify_chain,
)
from permutable.config import Caps
from permutable.errors import BadParams, HypothesisViolated, NoChainFound
from permutable.subgroups import Subgroup


@pytest.fixture(scope="module")
def pq3():
    return example_system("pq-power", {"p": 3, "q": 2}, depth=3)


def _constant_s3_system(depth=2):
    s3 = catalog.build("S3")
    levels = [s3] * (depth + 1)
    bonds = [np.arange(6)] * depth
    return build_system(levels, bonds)


def test_constant_system_valid():
    sys = _constant_s3_system()
    rep = validate_system(sys)
    assert rep["valid"]
    assert all(b["homomorphism"] and b["surjective"] for b in rep["bonds"])


def test_natural_projection_valid():
    c4, c2 = cyclic(4), cyclic(2)
    rep = validate_system([c2, c4], [np.array([0, 1, 0, 1])])
    assert rep["valid"]


def test_collapsing_bond_reported_not_surjective():
    c2 = cyclic(2)
    rep = validate_system([c2, c2], [np.array([0, 0])])
    assert not rep["valid"]
    assert rep["bonds"][0]["homomorphism"]
    assert not rep["bonds"][0]["surjective"]


def test_example_system_pq_orders(pq3):
    assert [g.order for g in pq3.levels] == [1, 6, 36, 216]


def test_example_system_bad_params():
    with pytest.raises(BadParams):
        example_system("pq-power", {"p": 5, "q": 3}, depth=2)
    with pytest.raises(BadParams):
        example_system("pq-power", {"p": 4, "q": 2}, depth=2)
    with pytest.raises(BadParams):
        example_system("pq-power", {"p": 3, "q": 2}, depth=9)   # cap overflow
    with pytest.raises(BadParams):
        example_system("no-such-family", {}, depth=1)


def test_prime_column_levels():
    sys = example_system("prime-column", depth=3)
    assert [g.order for g in sys.levels] == [1, 2, 6, 30]
    rep = theorem_c_report(sys)
    assert rep["exponents"] == [1, 2, 6, 30]
    assert rep["exponent_trend"] == "exponent strictly growing"


def test_prime_column_depth4_exponents():
    sys = example_system("prime-column", depth=4)
    assert theorem_c_report(sys)["exponents"][1:] == [2, 6, 30, 210]


def test_elementary_family():
    sys = example_system("elementary", {"p": 2}, depth=4)
    assert [g.order for g in sys.levels] == [1, 2, 4, 8, 16]
    assert is_profinite_c_truncated(sys).all_c


def test_is_profinite_c_pq_depth3(pq3):
    verdict = is_profinite_c_truncated(pq3)
    assert verdict.all_c


def test_is_profinite_c_detects_bad_level():
    c2, c4 = cyclic(2), cyclic(4)
    sys = build_system([c2, c4], [np.array([0, 1, 0, 1])])
    verdict = is_profinite_c_truncated(sys)
    assert not verdict.all_c
    assert verdict.witness_level == 1
    assert tuple(map(int, verdict.witness.indices)) == (0, 2)


def test_is_profinite_c_trivial_system():
    sys = build_system([cyclic(1)], [])
    assert is_profinite_c_truncated(sys).all_c


def test_brute_force_and_structural_verdicts_agree(pq3):
    # force the structural path on levels small enough to brute force
    tight = Caps(max_lattice_order=1)
    loose = Caps(max_lattice_order=200, max_order=512)
    assert is_profinite_c_truncated(pq3, loose).all_c == \
        is_profinite_c_truncated(pq3, tight).all_c


def test_compatible_family_rejects_inexact_images(pq3):
    top = subgroup_closure(pq3.levels[3], [7])
    subs = [subgroup_from_indices(g, [0]) for g in pq3.levels[:3]] + [top]
    with pytest.raises(HypothesisViolated):
        lift_complement_chain(pq3, CompatibleSubgroup(tuple(subs)))


def test_chain_whole_group_gives_trivial_chain(pq3):
    h = compatible_from_top(pq3, list(range(216)))
    chain = lift_complement_chain(pq3, h)
    assert [s.order for s in chain.levels] == [1, 1, 1, 1]


def test_chain_elementary_diagonal():
    sys = example_system("elementary", {"p": 2}, depth=3)
    diag = int("111", 2)        # the (1,1,1) coordinate tuple
    h = compatible_from_top(sys, [diag])
    chain = lift_complement_chain(sys, h)
    ok, detail = verify_chain(sys, h, chain)
    assert ok, detail


def test_chain_c3_products_in_s3_powers(pq3):
    # compatible family of C3-products: complement chain of 2-subgroup products
    a3 = pq_power_abelian_part(pq3.levels[3], 3, 2)
    h = compatible_from_top(pq3, [int(x) for x in a3.indices])
    chain = lift_complement_chain(pq3, h)
    ok, detail = verify_chain(sys=pq3, h=h, chain=chain)
    assert ok, detail
    assert [s.order for s in chain.levels] == [1, 2, 4, 8]


def test_chain_fails_on_non_c_level():
    c4 = cyclic(4)
    sys = build_system([c4], [])
    h = CompatibleSubgroup((subgroup_closure(c4, [2]),))
    with pytest.raises(NoChainFound):
        lift_complement_chain(sys, h)


def test_theorem_c_constant_s3_bounded():
    sys = _constant_s3_system(depth=3)
    rep = theorem_c_report(sys)
    assert rep["indices"] == [2, 2, 2, 2]
    assert rep["index_trend"] == "index bounded so far"
    assert rep["exponent_trend"] == "exponent bounded so far"


def test_theorem_c_pq_strictly_growing(pq3):
    rep = theorem_c_report(pq3)
    assert rep["indices"] == [1, 2, 4, 8]
    assert rep["index_trend"] == "index strictly growing"
    assert rep["exponents"] == [1, 6, 6, 6]


def test_theorem_c_abelian_constant_c6():
    c6 = cyclic(6)
    sys = build_system([c6, c6], [np.arange(6)])
    rep = theorem_c_report(sys)
    assert rep["exponents"] == [6, 6]
    assert rep["indices"] == [1, 1]
    assert rep["index_trend"] == "index bounded so far"


def test_normal_cyclics_counts(pq3):
    for k in range(4):
        a = pq_power_abelian_part(pq3.levels[k], 3, 2)
        assert a.order == 3 ** k
        lines = normal_cyclics_in_a(pq3.levels[k], a)
        assert len(lines) == k


def test_normal_cyclics_level2_detail(pq3):
    g = pq3.levels[2]
    a = pq_power_abelian_part(g, 3, 2)
    # four order-3 lines live in C3 x C3; exactly the two coordinate ones
    # survive conjugation by the C2 parts
    all_lines = set()
    for x in a.indices:
        if x == 0:
            continue
        all_lines.add(subgroup_closure(g, [int(x)]).mask.tobytes())
    assert len(all_lines) == 4
    assert len(normal_cyclics_in_a(g, a)) == 2


def test_chain_descent_images_contained(pq3):
    rng = np.random.default_rng(23)
    for _ in range(5):
        seeds = [int(s) for s in rng.integers(0, 216, size=2)]
        h = compatible_from_top(pq3, seeds)
        chain = lift_complement_chain(pq3, h)
        for k, bond in enumerate(pq3.bonds):
            img = bond.image_mask(chain.levels[k + 1].mask)
            assert not (img & ~chain.levels[k].mask).any()


def test_chain_elementary_family_deep():
    # order-512 top level, random subgroups: the vector-space path at scale
    sys = example_system("elementary", {"p": 2}, depth=9)
    rng = np.random.default_rng(31)
    for _ in range(5):
        seeds = [int(s) for s in rng.integers(0, 512, size=3)]
        h = compatible_from_top(sys, seeds)
        chain = lift_complement_chain(sys, h)
        ok, detail = verify_chain(sys, h, chain)
        assert ok, detail


def test_chain_prime_column_random():
    sys = example_system("prime-column", depth=4)
    rng = np.random.default_rng(37)
    for _ in range(5):
        seeds = [int(s) for s in rng.integers(0, 210, size=2)]
        h = compatible_from_top(sys, seeds)
        chain = lift_complement_chain(sys, h)
        ok, detail = verify_chain(sys, h, chain)
        assert ok, detail


def test_chain_mixed_custom_tower():
    # non-uniform levels: S3 x C2 -> S3 -> C2 with genuine projections
    s3c2 = catalog.build("S3xC2")
    s3 = catalog.build("S3")
    c2 = cyclic(2)
    # S3 -> C2 is the sign map; labels fix indices: odd perms 2, 4, 5
    sign = np.array([0, 0, 1, 0, 1, 1])
    drop = np.arange(12) // 2          # S3xC2 -> S3, forget the C2 part
    sys = build_system([c2, s3, s3c2], [sign, drop])
    assert validate_system(sys)["valid"]
    rng = np.random.default_rng(41)
    for _ in range(8):
        seeds = [int(s) for s in rng.integers(0, 12, size=2)]
        h = compatible_from_top(sys, seeds)
        chain = lift_complement_chain(sys, h)
        ok, detail = verify_chain(sys, h, chain)
        assert ok, detail
