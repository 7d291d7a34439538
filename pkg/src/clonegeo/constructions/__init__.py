from .janov import (
    D_m,
    build_janov,
    enumerate_F,
    enumerate_F_prime,
    essential_restriction,
    g_table,
    graph_of,
    in_F,
    in_F_prime,
    is_projection,
)
from .oplus import (
    OplusSpec,
    build_B0,
    build_oplus,
    check_extend_restriction,
    check_fprop,
    dot_table,
    embed_points,
    lift,
)
from .phi import build_phi_spec, phi_closure, phi_layer, phi_membership
from .zmod import (
    ModExpansionSpec,
    Monomial,
    build_Q,
    build_zmod_expansion,
    enumerate_Cd_tables,
    expansion_upper_bound,
    recognize_expansion,
    is_absorbing,
    is_prime,
    monomial_shape_ok,
    monomial_table,
    scaled_product,
)

__all__ = [
    "D_m",
    "build_janov",
    "enumerate_F",
    "enumerate_F_prime",
    "essential_restriction",
    "g_table",
    "graph_of",
    "in_F",
    "in_F_prime",
    "is_projection",
    "OplusSpec",
    "build_B0",
    "build_oplus",
    "check_extend_restriction",
    "check_fprop",
    "dot_table",
    "embed_points",
    "lift",
    "ModExpansionSpec",
    "Monomial",
    "build_Q",
    "build_zmod_expansion",
    "enumerate_Cd_tables",
    "expansion_upper_bound",
    "recognize_expansion",
    "is_absorbing",
    "is_prime",
    "monomial_shape_ok",
    "monomial_table",
    "scaled_product",
    "build_phi_spec",
    "phi_closure",
    "phi_layer",
    "phi_membership",
]
