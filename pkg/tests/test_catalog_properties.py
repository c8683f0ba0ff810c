"""Hereditary and closure properties of the complemented-group class,
checked by brute force over the bundled catalog."""

from permutable import (
    catalog,
    cernikova_decompose,
    derived_subgroup,
    exponent,
    is_abelian,
    is_c_group,
    quotient,
    subgroup_as_group,
)
from permutable.structure import CernikovaDecomposition
from permutable.groups import is_normal_mask


def _squarefree(n):
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def _c_names(catalog_groups):
    return [n for n, g in catalog_groups.items() if is_c_group(g).c_group]


def test_subgroup_heredity(catalog_groups, catalog_lattices):
    for name in _c_names(catalog_groups):
        for sub in catalog_lattices[name]:
            grp, _ = subgroup_as_group(sub)
            assert is_c_group(grp).c_group, (name, sub.order)


def test_quotient_heredity(catalog_groups, catalog_lattices):
    for name in _c_names(catalog_groups):
        g = catalog_groups[name]
        for sub in catalog_lattices[name]:
            if is_normal_mask(g, sub.mask):
                q, _ = quotient(g, sub.mask)
                assert is_c_group(q).c_group, (name, sub.order)


def test_product_closure():
    pairs = [("S3", "C2"), ("S3", "S3"), ("C4", "C3"), ("S3", "C4"),
             ("C6", "C6"), ("D4", "C3"), ("C2", "C2"), ("D5", "C3")]
    from permutable.groups import direct_product
    for a, b in pairs:
        ga, gb = catalog.build(a), catalog.build(b)
        prod = direct_product(ga, gb)
        want = is_c_group(ga).c_group and is_c_group(gb).c_group
        assert is_c_group(prod).c_group == want, (a, b)


def test_c_groups_are_metabelian(catalog_groups):
    for name in _c_names(catalog_groups):
        d = derived_subgroup(catalog_groups[name])
        grp, _ = subgroup_as_group(d)
        assert is_abelian(grp), name


def test_c_groups_have_squarefree_exponent(catalog_groups):
    for name in _c_names(catalog_groups):
        assert _squarefree(exponent(catalog_groups[name])), name


def test_abelian_c_iff_squarefree_exponent(catalog_groups):
    for name, g in catalog_groups.items():
        if is_abelian(g):
            assert is_c_group(g).c_group == _squarefree(exponent(g)), name


def test_decompose_iff_c(catalog_groups):
    for name, g in catalog_groups.items():
        dec = cernikova_decompose(g)
        assert isinstance(dec, CernikovaDecomposition) == is_c_group(g).c_group, name


def test_derived_normal_with_abelian_quotient(catalog_groups):
    # holds for every group, C or not
    for name, g in catalog_groups.items():
        d = derived_subgroup(g)
        assert is_normal_mask(g, d.mask), name
        q, _ = quotient(g, d.mask)
        assert is_abelian(q), name


def test_trivial_radical_implies_split_reconstructs(catalog_groups):
    # within C-groups only: trivial radical plus prime-order simple factors
    from permutable import radical, split_abelian_normal
    from permutable.structure import SplitFailure
    for name in _c_names(catalog_groups):
        g = catalog_groups[name]
        d = derived_subgroup(g)
        assert radical(g, d).order == 1, name
        lines = split_abelian_normal(g, d)
        assert not isinstance(lines, SplitFailure), name
        total = 1
        for l in lines:
            total *= l.order
        assert total == d.order, name


def test_simple_module_of_nonprime_order_diagnosed():
    # A4 is not a C-group: its Klein-four derived subgroup is a simple
    # module with trivial radical, so splitting fails on the factor size
    from permutable import radical, split_abelian_normal
    from permutable.structure import SplitFailure
    a4 = catalog.build("A4")
    d = derived_subgroup(a4)
    assert d.order == 4
    assert radical(a4, d).order == 1
    res = split_abelian_normal(a4, d)
    assert isinstance(res, SplitFailure)
    assert res.reason == "nonprime_factor"
