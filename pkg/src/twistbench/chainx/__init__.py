"""Bounded complexes of bimodules: cones, tensor products, homology, minimization, triangles."""

from twistbench.chainx.atoms import (
    MODULE,
    PROJECTIVE,
    REGULAR,
    Atom,
    generator_map,
    module_atom,
    projective,
    pure_tensor,
    regular_atom,
)
from twistbench.chainx.complex import (
    ChainMap,
    Complex,
    block_matrix,
    complexes_equal,
    cone,
    cone_inclusion,
    cone_map,
    cone_projection,
    cone_source_inclusion,
    direct_sum_complex,
    map_from_sum,
    map_into_sum,
    shift,
    shift_map,
    stalk,
    stalk_algebra,
    sum_inclusion,
    sum_projection,
    zero_complex,
)
from twistbench.chainx.duality import (
    double_dual_iso,
    dual_atom,
    dualize,
    dualize_map,
    restrict,
    symmetric_gram,
)
from twistbench.chainx.export import complex_to_dict, differential_support
from twistbench.chainx.homology import (
    concentrated_degree,
    cycles,
    homology,
    homology_dims,
    induced_map,
    is_acyclic,
    is_quasi_isomorphism,
)
from twistbench.chainx.homotopy import (
    ChainMapSpace,
    atom_hom_basis,
    chain_map_space,
    compare_complexes,
    find_chain_isomorphism,
    find_homotopy,
    homotopic,
    is_null_homotopic,
)
from twistbench.chainx.minimize import Minimization, is_minimal, minimize
from twistbench.chainx.report import Check, TriangleReport, Verdict
from twistbench.chainx.tensor import (
    atom_tensor,
    left_unit,
    right_unit,
    shift_out_left,
    shift_out_right,
    summand_offsets,
    tensor_complex,
    tensor_maps,
)
from twistbench.chainx.tilting import TiltingComparison, compare_tilting
from twistbench.chainx.triangles import braid_grid_check, kappa

__all__ = [
    "MODULE",
    "PROJECTIVE",
    "REGULAR",
    "Atom",
    "ChainMap",
    "ChainMapSpace",
    "Check",
    "Complex",
    "Minimization",
    "TiltingComparison",
    "TriangleReport",
    "Verdict",
    "atom_hom_basis",
    "atom_tensor",
    "block_matrix",
    "braid_grid_check",
    "chain_map_space",
    "compare_complexes",
    "compare_tilting",
    "complex_to_dict",
    "complexes_equal",
    "concentrated_degree",
    "cone",
    "cone_inclusion",
    "cone_map",
    "cone_projection",
    "cone_source_inclusion",
    "cycles",
    "differential_support",
    "direct_sum_complex",
    "double_dual_iso",
    "dual_atom",
    "dualize",
    "dualize_map",
    "find_chain_isomorphism",
    "find_homotopy",
    "generator_map",
    "homology",
    "homology_dims",
    "homotopic",
    "induced_map",
    "is_acyclic",
    "is_minimal",
    "is_null_homotopic",
    "is_quasi_isomorphism",
    "kappa",
    "left_unit",
    "map_from_sum",
    "map_into_sum",
    "minimize",
    "module_atom",
    "projective",
    "pure_tensor",
    "regular_atom",
    "restrict",
    "right_unit",
    "shift",
    "shift_map",
    "shift_out_left",
    "shift_out_right",
    "stalk",
    "stalk_algebra",
    "sum_inclusion",
    "sum_projection",
    "summand_offsets",
    "symmetric_gram",
    "tensor_complex",
    "tensor_maps",
    "zero_complex",
]
