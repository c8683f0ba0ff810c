"""Construction, validation errors, products, quotients."""

import numpy as np
import pytest

from permutable import (
    GAction,
    cyclic,
    direct_product,
    exponent,
    element_order,
    group_from_permutations,
    group_from_table,
    is_abelian,
    quotient,
    semidirect_product,
    subgroup_closure,
    center,
    derived_subgroup,
)
from permutable.config import Caps
from permutable.errors import (
    InvalidAction,
    NoIdentity,
    NotAssociative,
    NotNormal,
    OrderCapExceeded,
)
from permutable.groups import center_mask

from oracles import brute_element_order, table_of


def test_trivial_group_from_table():
    g = group_from_table([[0]])
    assert g.order == 1 and exponent(g) == 1


def test_klein_four_from_table():
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    g = group_from_table(table)
    assert g.order == 4 and exponent(g) == 2 and is_abelian(g)


def test_identity_relabeled_to_zero():
    # C3 written with identity at position 2
    table = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    g = group_from_table(table)
    assert np.array_equal(g.mul[0], [0, 1, 2])
    assert element_order(g, 1) == 3


def test_corrupted_c4_rejected_as_not_associative():
    table = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    table[1][2] = 0     # one corrupted entry
    with pytest.raises(NotAssociative) as err:
        group_from_table(table)
    i, j, k = err.value.triple
    assert table[table[i][j]][k] != table[i][table[j][k]]


def test_no_identity_rejected():
    with pytest.raises(NoIdentity):
        group_from_table([[0, 0], [0, 0]])


def test_identity_anywhere_is_accepted():
    # C2 written with the identity at position 1 is relabeled, not rejected
    g = group_from_table([[1, 0], [0, 1]])
    assert g.order == 2 and element_order(g, 1) == 2


def test_permutation_closure_gives_s3():
    g = group_from_permutations(3, [(1, 2, 0), (1, 0, 2)])
    assert g.order == 6
    t = table_of(g)
    assert sorted(brute_element_order(t, x) for x in range(6)) == [1, 2, 2, 2, 3, 3]
    assert not is_abelian(g)


def test_permutation_single_involution():
    g = group_from_permutations(4, [(1, 0, 3, 2)])
    assert g.order == 2


def test_permutation_no_generators_trivial():
    g = group_from_permutations(2, [])
    assert g.order == 1


def test_permutation_order_cap():
    with pytest.raises(OrderCapExceeded):
        group_from_permutations(5, [(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)],
                                caps=Caps(max_order=24))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_semidirect_inversion_has_trivial_center(p):
    cp, c2 = cyclic(p), cyclic(2)
    act = GAction(c2, cp, [list(range(p)), [(-a) % p for a in range(p)]])
    g = semidirect_product(act)
    assert g.order == 2 * p
    assert int(center_mask(g).sum()) == 1


def test_semidirect_trivial_action_equals_direct_product():
    c3, c2 = cyclic(3), cyclic(2)
    act = GAction(c2, c3, [[0, 1, 2], [0, 1, 2]])
    sd = semidirect_product(act)
    dp = direct_product(c2, c3)
    assert np.array_equal(sd.mul, dp.mul)


def test_invalid_action_rejected():
    c3, c2 = cyclic(3), cyclic(2)
    with pytest.raises(InvalidAction):
        GAction(c2, c3, [[0, 1, 2], [0, 0, 1]])     # not a bijection
    with pytest.raises(InvalidAction):
        GAction(c2, c3, [[0, 1, 2], [1, 0, 2]])     # bijection, not an automorphism


def test_direct_product_coprime_is_cyclic():
    g = direct_product(cyclic(2), cyclic(3))
    assert element_order(g, 1 * 3 + 1) == 6


def test_quotient_c6_by_c3():
    c6 = cyclic(6)
    n = subgroup_closure(c6, [2])
    q, proj = quotient(c6, n.mask)
    assert q.order == 2
    assert np.array_equal(proj.map[c6.mul], q.mul[np.ix_(proj.map, proj.map)])


def test_quotient_requires_normal():
    from permutable import catalog
    s3 = catalog.build("S3")
    h = subgroup_closure(s3, [2])       # an order-2 subgroup, not normal
    with pytest.raises(NotNormal):
        quotient(s3, h.mask)


def test_center_and_derived_match_oracle(s3):
    from oracles import brute_center, brute_derived
    t = table_of(s3)
    assert set(map(int, center(s3).indices)) == set(brute_center(t))
    assert set(map(int, derived_subgroup(s3).indices)) == set(brute_derived(t))


def test_exponent_klein_four():
    g = group_from_table([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
    assert exponent(g) == 2


def test_sampled_validation_on_larger_group():
    # n > 64 goes through the sampled associativity path
    g = cyclic(100)
    assert g.order == 100
