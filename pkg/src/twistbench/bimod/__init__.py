"""Bimodules over basic algebras: constructions, tensor products and Hom."""

from twistbench.bimod.hom import (
    automorphisms_equivalent,
    find_isomorphism,
    hom_dim,
    hom_space,
    identify_invertible,
    is_isomorphic,
    top_space,
)
from twistbench.bimod.module import (
    Bimodule,
    BimoduleMap,
    Subquotient,
    corner_indices,
    direct_sum,
    double_dual_map,
    dual,
    inflate,
    koszul_shift,
    projective_atom,
    projective_bimodule,
    quotient_bimodule,
    regrade,
    regular,
    restrict_bimodule,
    sub_bimodule,
    sub_bimodule_closure,
    subquotient,
    twist_left,
    twist_right,
)
from twistbench.bimod.tensor import (
    TensorProduct,
    evaluation_map,
    left_projective,
    multiplication_map,
    projective_basis,
    right_projective,
    tensor_over,
)

__all__ = [
    "Bimodule",
    "BimoduleMap",
    "Subquotient",
    "TensorProduct",
    "automorphisms_equivalent",
    "corner_indices",
    "direct_sum",
    "double_dual_map",
    "dual",
    "evaluation_map",
    "find_isomorphism",
    "hom_dim",
    "hom_space",
    "identify_invertible",
    "inflate",
    "is_isomorphic",
    "koszul_shift",
    "left_projective",
    "multiplication_map",
    "projective_atom",
    "projective_basis",
    "projective_bimodule",
    "quotient_bimodule",
    "regrade",
    "regular",
    "restrict_bimodule",
    "right_projective",
    "sub_bimodule",
    "sub_bimodule_closure",
    "subquotient",
    "tensor_over",
    "top_space",
    "twist_left",
    "twist_right",
]
