"""Quadratic duality, the functor Q and the preprojective checks."""

from twistbench.koszulq.corpus import graded_corpus, short_exact_sequences
from twistbench.koszulq.preproj import (
    prep_sequence,
    prep_ses,
    truncated_resolution,
    truncated_twist_data,
    verify_frobenius,
    verify_prep_exactness,
    verify_truncated,
)
from twistbench.koszulq.qfunctor import (
    q_functor,
    q_map,
    regrade_complex,
    twist_comparison,
    twist_complex_left,
    verify_q_exact,
    verify_q_inflation,
    verify_q_properties,
)
from twistbench.koszulq.quadratic import (
    QuadraticPair,
    QuadraticPresentation,
    corner_pair,
    corner_presentation,
    dual_automorphism,
    dual_quotient,
    gamma_pair,
    gamma_presentation,
    identify_dual_with_preprojective,
    is_quadratic,
    presentation_from_algebra,
    quadratic_dual,
    quadratic_pair,
    realize,
    same_relations,
)

__all__ = [
    "QuadraticPair",
    "QuadraticPresentation",
    "corner_pair",
    "corner_presentation",
    "dual_automorphism",
    "dual_quotient",
    "gamma_pair",
    "gamma_presentation",
    "graded_corpus",
    "identify_dual_with_preprojective",
    "is_quadratic",
    "prep_sequence",
    "prep_ses",
    "presentation_from_algebra",
    "q_functor",
    "q_map",
    "quadratic_dual",
    "quadratic_pair",
    "realize",
    "regrade_complex",
    "same_relations",
    "short_exact_sequences",
    "truncated_resolution",
    "truncated_twist_data",
    "twist_comparison",
    "twist_complex_left",
    "verify_frobenius",
    "verify_prep_exactness",
    "verify_q_exact",
    "verify_q_inflation",
    "verify_q_properties",
    "verify_truncated",
]
