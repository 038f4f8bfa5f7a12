"""Exact perfect-state-transfer and periodicity analysis for abelian Cayley graphs."""
from .groups import (
    ClassPartition,
    GroupElement,
    GroupSpec,
    char_exponent,
    class_of,
    element_order,
    enumerate_classes,
    gcd_set,
    involutions,
    is_qset,
    make_group,
    subgroup_closure,
)
from .spectrum import (
    CayleyGraph,
    EigenvalueTable,
    build_graph,
    eigenvalue_exact,
    eigenvalue_float,
    eigenvalue_table,
)
from .arith import ramanujan_sum, v2
from .pst import (
    FailureReason,
    InvolutionPartition,
    PSTReport,
    TimeSet,
    bipartite_valuation_check,
    circulant_chain_check,
    involution_partition,
    mod4_obstruction,
    period_set,
    pst_all_pairs,
    pst_check,
    spectral_gcd,
    split_valuation_check,
)

__all__ = [
    "CayleyGraph",
    "ClassPartition",
    "EigenvalueTable",
    "FailureReason",
    "GroupElement",
    "GroupSpec",
    "InvolutionPartition",
    "PSTReport",
    "TimeSet",
    "bipartite_valuation_check",
    "build_graph",
    "char_exponent",
    "circulant_chain_check",
    "class_of",
    "eigenvalue_exact",
    "eigenvalue_float",
    "eigenvalue_table",
    "element_order",
    "enumerate_classes",
    "gcd_set",
    "involution_partition",
    "involutions",
    "is_qset",
    "make_group",
    "mod4_obstruction",
    "period_set",
    "pst_all_pairs",
    "pst_check",
    "ramanujan_sum",
    "spectral_gcd",
    "split_valuation_check",
    "subgroup_closure",
    "v2",
]

__version__ = "0.1.0"
