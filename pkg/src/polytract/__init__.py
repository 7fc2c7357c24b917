"""Discrete polymatroids (M-convex sets) and their representations over tracts."""

from .errors import (
    DomainError,
    GuardExceededError,
    MalformedInputError,
    NotIdempotentError,
    NotMConvexError,
    PolytractError,
    PreconditionError,
    SupportMismatchError,
    TractMismatchError,
)
from .hives import (
    HiveLabeling,
    border_labels,
    hive_to_representation,
    integral_hives,
    is_hive,
    lr_coefficient,
    lr_tableau_oracle,
    representation_to_hive,
    rhombus_inequalities,
)
from .mconvex import (
    MConvexSet,
    PointSet,
    canonical_form,
    combinatorially_equivalent,
    commute_minors,
    component_count,
    contract,
    decompose,
    delete,
    direct_sum,
    dual,
    embedded_minor,
    enumerate_mconvex,
    extend,
    invariants_of,
    is_m_convex,
    is_matroid_translate,
    is_proper,
    lattice_points,
    minor_duality_shift,
    permute,
    rank_function,
    restrict,
    simplex,
    translate,
    whittle_contract,
    whittle_delete,
)
from .normalforms import hermite_normal_form, smith_normal_form
from .plucker import degenerate_relations, enumerate_relations, idempotency_witnesses
from .presentations import (
    foundation_unit_group,
    pasture_presentation,
    rank_formula_check,
    tract_presentation,
    tutte_group,
    tutte_rank,
    verify_bijection_theorem,
    verify_cross_ratio_relations,
    verify_cross_ratios_generate,
)
from .representations import (
    Representation,
    TorusElement,
    characteristic_representation,
    cross_ratio,
    dual_representation,
    direct_sum_representation,
    is_in_degeneracy_locus,
    is_in_lineality,
    mconvex_function_check,
    minor_representation,
    pushforward,
    rescale,
    verify,
)
from .strata import dressian, polygrassmannian_strata
from .tracts import TractId, get_tract, is_null, morphism, parse_element

__version__ = "0.1.0"
