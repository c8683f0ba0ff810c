"""Finite C-group analysis: permutable complements, prime-line
decompositions, and truncated inverse systems of finite groups."""

from ._kernels import BACKEND
from .config import Caps, default_caps
from .groups import (
    FiniteGroup,
    GAction,
    Homomorphism,
    cyclic,
    direct_product,
    element_order,
    exponent,
    group_from_permutations,
    group_from_table,
    is_abelian,
    quotient,
    semidirect_product,
)
from .subgroups import (
    Subgroup,
    all_subgroups,
    full_subgroup,
    subgroup_as_group,
    subgroup_closure,
    subgroup_from_indices,
    trivial_subgroup,
)
from .complements import (
    CGroupVerdict,
    find_permutable_complement,
    is_c_group,
    is_sc_group,
    lift_complement,
    permutable_complements,
    refine_supplement,
)
from .structure import (
    CernikovaDecomposition,
    DecomposeFailure,
    SplitFailure,
    ThetaPartition,
    cernikova_decompose,
    minimal_normal_subgroups,
    radical,
    rebuild_decomposition,
    semidirect_c_criterion,
    split_abelian_normal,
    theta_partition,
)
from .profinite import (
    CompatibleSubgroup,
    ComplementChain,
    InverseSystem,
    build_system,
    compatible_from_top,
    example_system,
    is_profinite_c_truncated,
    lift_complement_chain,
    normal_cyclics_in_a,
    pq_power_abelian_part,
    theorem_c_report,
    validate_system,
    verify_chain,
)

__version__ = "0.1.0"


def center(g: FiniteGroup) -> Subgroup:
    """The center as a Subgroup."""
    from .groups import center_mask
    return Subgroup(g, center_mask(g))


def derived_subgroup(g: FiniteGroup) -> Subgroup:
    """The derived (commutator) subgroup as a Subgroup."""
    from .groups import derived_mask
    return Subgroup(g, derived_mask(g))


def is_normal(g: FiniteGroup, h: Subgroup) -> bool:
    from .groups import is_normal_mask
    return is_normal_mask(g, h.mask)
