"""Exact-arithmetic connective K-homology calculator.

Computes the classifying-space K-homology of cyclic groups and of smash
squares via presentations, degree-wise tensor and torsion terms, mod-2
Steenrod functional dimensions, and long-exact-sequence feasibility audits of
the published tables.  All arithmetic is exact (arbitrary-precision integers
and F2); answers are reported in invariant-factor canonical form.
"""

from .abelian import (
    AbelianGroupMap,
    FgAbelianGroup,
    GroupPresentation,
    IntegerMatrix,
    cokernel_group,
    groups_isomorphic,
    kernel_of_map,
    parse_group,
    render_group,
    smith_normal_form,
)
from .exactseq import (
    BO_COEFFICIENTS,
    LongExactSequence,
    alternating_order_check,
    bo1_les_consistency,
    bo1_rp_table,
    bo_rp_table,
    bo_smash_group,
    bott_audit,
    h_rp_table,
    image_order_solve,
    load_fixture_table,
)
from .kmods import (
    GradedGroup,
    GradedModulePresentation,
    TruncatedKuRing,
    bu_bzp_group,
    cofiber_homology,
    ku_smash_check,
    lu_bzp_presentation,
    lu_closed_form,
    realize_degree,
    shift,
)
from .kunneth import (
    KunnethReport,
    SummandResolution,
    kunneth_smash_group,
    tensor_degree,
    tor1_degree,
    tor_closed_form,
    verify_bu_decomposition,
)
from .steenrod import SteenrodModule, hom_dim, sq_action, verify_hom_sequence, x_count
from .verify import run_acceptance

__version__ = "0.1.0"

__all__ = [
    "AbelianGroupMap",
    "BO_COEFFICIENTS",
    "FgAbelianGroup",
    "GradedGroup",
    "GradedModulePresentation",
    "GroupPresentation",
    "IntegerMatrix",
    "KunnethReport",
    "LongExactSequence",
    "SteenrodModule",
    "SummandResolution",
    "TruncatedKuRing",
    "alternating_order_check",
    "bo1_les_consistency",
    "bo1_rp_table",
    "bo_rp_table",
    "bo_smash_group",
    "bott_audit",
    "bu_bzp_group",
    "cofiber_homology",
    "cokernel_group",
    "groups_isomorphic",
    "h_rp_table",
    "hom_dim",
    "image_order_solve",
    "kernel_of_map",
    "ku_smash_check",
    "kunneth_smash_group",
    "load_fixture_table",
    "lu_bzp_presentation",
    "lu_closed_form",
    "parse_group",
    "realize_degree",
    "render_group",
    "run_acceptance",
    "shift",
    "smith_normal_form",
    "sq_action",
    "tensor_degree",
    "tor1_degree",
    "tor_closed_form",
    "verify_bu_decomposition",
    "verify_hom_sequence",
    "x_count",
]
