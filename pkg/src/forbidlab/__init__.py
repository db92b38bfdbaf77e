"""Exact workbench for forbidden cross-intersections of set families.

Dense-bitmask families over small ground sets, exact p-biased measures,
the window-widening deformation engine with verifiable traces, every
closed-form bound as a callable, and brute-force extremal oracles.
"""

from .bounds import (
    binomial_sandwich,
    chernoff_upper,
    delta_choice,
    entropy_bounds,
    interval_bound_rhs,
    layer_bound_rhs,
    lower_tail_bound,
    main_bound_rhs,
    supersat_epsilon,
    supersat_hypothesis,
    wide_range_bound,
)
from .deformation import (
    DeformationOutcome,
    InvariantViolation,
    IterationRecord,
    TraceReport,
    WideningTuple,
    WideningVerdict,
    check_concentration,
    check_product_ceiling,
    run_deformation,
    sample_widening_tuples,
    verify_trace,
    widening_family_check,
    widening_numeric_check,
)
from .extremal import (
    ExtremalRecord,
    best_partner,
    conflict_neighbors,
    construction_high_ell,
    construction_symmetric,
    epsilon_oracle,
    maximal_partner,
)
from .families import (
    MAX_N,
    Family,
    Window,
    cardinality_filter,
    complement_family,
    elements_from_mask,
    empty_family,
    expand,
    forbids,
    format_family,
    full_family,
    intersection,
    intersection_spectrum,
    is_downward_closed,
    is_upper_closed,
    make_family,
    mask_from_elements,
    parse_family,
    sections,
    union,
)
from .measure import (
    as_bias,
    format_rational,
    layer_profile,
    mu,
    parse_rational,
    tail_measure,
)
from .supersat import (
    count_i_ell,
    count_i_ell_set,
    full_layer_pair_count,
    supersat_check,
    supersat_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_N",
    "Family",
    "Window",
    "make_family",
    "empty_family",
    "full_family",
    "mask_from_elements",
    "elements_from_mask",
    "sections",
    "union",
    "intersection",
    "complement_family",
    "is_upper_closed",
    "is_downward_closed",
    "expand",
    "cardinality_filter",
    "intersection_spectrum",
    "forbids",
    "format_family",
    "parse_family",
    "as_bias",
    "parse_rational",
    "format_rational",
    "layer_profile",
    "mu",
    "tail_measure",
    "main_bound_rhs",
    "delta_choice",
    "chernoff_upper",
    "binomial_sandwich",
    "entropy_bounds",
    "interval_bound_rhs",
    "layer_bound_rhs",
    "wide_range_bound",
    "lower_tail_bound",
    "supersat_epsilon",
    "supersat_hypothesis",
    "run_deformation",
    "verify_trace",
    "DeformationOutcome",
    "IterationRecord",
    "TraceReport",
    "InvariantViolation",
    "WideningTuple",
    "WideningVerdict",
    "widening_numeric_check",
    "widening_family_check",
    "sample_widening_tuples",
    "check_concentration",
    "check_product_ceiling",
    "conflict_neighbors",
    "maximal_partner",
    "best_partner",
    "epsilon_oracle",
    "ExtremalRecord",
    "construction_high_ell",
    "construction_symmetric",
    "count_i_ell",
    "count_i_ell_set",
    "full_layer_pair_count",
    "supersat_ratio",
    "supersat_check",
]
