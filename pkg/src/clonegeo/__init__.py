"""Finite clones, their layers, and the algebraic closure of point sets."""

from .engine import (
    Budget,
    CloneSpec,
    Layer,
    find_malcev,
    generate_layer,
    is_constantive_layer,
    is_malcev,
    layer_contains,
    random_term,
    term_oracle,
)
from .errors import ArityCapError, BudgetExceeded, CompositionError, DomainError, OracleInfeasible
from .geometry import (
    ClosureResult,
    EquivalenceVerdict,
    alg_equal_at_arity,
    closure,
    closure_via_equalizers,
    is_algebraic,
    separating_pair,
)
from .tables import (
    OpTable,
    PointSet,
    agree_on,
    compose,
    constant_op,
    equalizer,
    essential_coordinates,
    minor,
    projection,
    rank_tuple,
    unrank_tuple,
)

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "CloneSpec",
    "Layer",
    "find_malcev",
    "generate_layer",
    "is_constantive_layer",
    "is_malcev",
    "layer_contains",
    "random_term",
    "term_oracle",
    "ClosureResult",
    "EquivalenceVerdict",
    "alg_equal_at_arity",
    "closure",
    "closure_via_equalizers",
    "is_algebraic",
    "separating_pair",
    "OpTable",
    "PointSet",
    "agree_on",
    "compose",
    "constant_op",
    "equalizer",
    "essential_coordinates",
    "minor",
    "projection",
    "rank_tuple",
    "unrank_tuple",
    "ArityCapError",
    "BudgetExceeded",
    "CompositionError",
    "DomainError",
    "OracleInfeasible",
]
