"""Exact q-analogue combinatorics.

q-multinomial coefficients, inversion statistics of multiset permutations,
Sylvester denumerants, and cell decompositions of flag spaces over prime
fields, with brute-force oracles for every identity at desk scale.
"""

from .errors import DEFAULT_CAP, ResourceLimitError, ValidationError
from .polycore import IntPoly, TruncatedSeries, series_reciprocal_product
from .qanalogue import (
    FlagShape,
    all_shapes,
    multiset_sum_poly,
    partition_count,
    q_binomial,
    q_factorial,
    q_int,
    q_multinomial,
)
from .denumerant import (
    PsiTable,
    WeightVector,
    alpha,
    denumerant,
    denumerant_bounds,
    epsilon_weights,
    full_mahonian_via_binomials,
    generalized_binomial,
    mahonian_via_denumerant,
    psi,
    quasipolynomial_check,
    restricted_divisor_sum,
    signed_subset_identity_check,
)
from .inversions import (
    MahonianTable,
    MultisetWord,
    enumerate_words,
    full_mahonian,
    inv_bounds,
    inversion_count,
    inversion_count_quadratic,
    inversion_distribution_oracle,
    is_refinement,
    log_concavity_scan,
    mahonian_table,
    refinement_recurrence,
)
from .flagcells import (
    CellForm,
    Flag,
    FpMatrix,
    OrderedSetPartition,
    SigmaStats,
    cell_form,
    cell_free_rows,
    cell_sum_poly,
    enumerate_flags,
    enumerate_general_linear,
    enumerate_partitions,
    flag_count_group_formula,
    is_parabolic_member,
    phi_flag,
    reduced_echelon_bases,
    s_reduce,
    sigma_stats,
    tau_for_lambda,
    theta_word,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CAP",
    "ResourceLimitError",
    "ValidationError",
    "IntPoly",
    "TruncatedSeries",
    "series_reciprocal_product",
    "FlagShape",
    "all_shapes",
    "multiset_sum_poly",
    "partition_count",
    "q_binomial",
    "q_factorial",
    "q_int",
    "q_multinomial",
    "PsiTable",
    "WeightVector",
    "alpha",
    "denumerant",
    "denumerant_bounds",
    "epsilon_weights",
    "full_mahonian_via_binomials",
    "generalized_binomial",
    "mahonian_via_denumerant",
    "psi",
    "quasipolynomial_check",
    "restricted_divisor_sum",
    "signed_subset_identity_check",
    "MahonianTable",
    "MultisetWord",
    "enumerate_words",
    "full_mahonian",
    "inv_bounds",
    "inversion_count",
    "inversion_count_quadratic",
    "inversion_distribution_oracle",
    "is_refinement",
    "log_concavity_scan",
    "mahonian_table",
    "refinement_recurrence",
    "CellForm",
    "Flag",
    "FpMatrix",
    "OrderedSetPartition",
    "SigmaStats",
    "cell_form",
    "cell_free_rows",
    "cell_sum_poly",
    "enumerate_flags",
    "enumerate_general_linear",
    "enumerate_partitions",
    "flag_count_group_formula",
    "is_parabolic_member",
    "phi_flag",
    "reduced_echelon_bases",
    "s_reduce",
    "sigma_stats",
    "tau_for_lambda",
    "theta_word",
]
