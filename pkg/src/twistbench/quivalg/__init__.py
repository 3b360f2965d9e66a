"""Quivers, graded path algebras, automorphisms and the named constructors."""

from twistbench.quivalg.algebra import (
    Algebra,
    AlgebraMap,
    Automorphism,
    CornerEmbedding,
    LinearForm,
    build_path_algebra,
    center,
    check_graded_automorphism,
    corner_algebra,
    quotient_by_idempotent,
)
from twistbench.quivalg.frobenius import FrobeniusData, find_frobenius_form, frobenius_data
from twistbench.quivalg.named import (
    gamma,
    gamma_corner_isomorphism,
    linear_orientation_algebra,
    preprojective,
    preprojective_quotient_maps,
    tau,
    tau_dual,
)
from twistbench.quivalg.paths import Arrow, BasisElement, Quiver, graded_dimensions

__all__ = [
    "Algebra",
    "AlgebraMap",
    "Arrow",
    "Automorphism",
    "BasisElement",
    "CornerEmbedding",
    "FrobeniusData",
    "LinearForm",
    "Quiver",
    "build_path_algebra",
    "center",
    "check_graded_automorphism",
    "corner_algebra",
    "find_frobenius_form",
    "frobenius_data",
    "gamma",
    "gamma_corner_isomorphism",
    "graded_dimensions",
    "linear_orientation_algebra",
    "preprojective",
    "preprojective_quotient_maps",
    "quotient_by_idempotent",
    "tau",
    "tau_dual",
]
