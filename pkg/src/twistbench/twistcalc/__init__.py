"""Spherical and periodic twists, braid words and the lifting checks."""

from twistbench.twistcalc.braid import BraidWord, is_longest, longest_word, word_permutation
from twistbench.twistcalc.induction import induce, induce_augmentation, induce_map, induced_atom
from twistbench.twistcalc.periodic import (
    PeriodicityCertificate,
    TwistData,
    corner_twist,
    detect_periodicity,
    periodic_twist,
    periodic_twist_data,
    projective_complex,
    projective_dual_complex,
    spherical_twist_data,
    unit_augmentation,
)
from twistbench.twistcalc.spherical import (
    apply_word,
    g_complex,
    h_complex,
    is_an_configuration,
    is_spherical,
    require_an_configuration,
    require_spherical,
    spherical_evaluation,
    spherical_twist_complex,
)
from twistbench.twistcalc.verify import (
    verify_braid_relation,
    verify_composition,
    verify_giprime,
    verify_h_complex,
    verify_invertible,
    verify_longest,
    verify_onetritooth,
    verify_pdnp,
)

__all__ = [
    "BraidWord",
    "PeriodicityCertificate",
    "TwistData",
    "apply_word",
    "corner_twist",
    "detect_periodicity",
    "g_complex",
    "h_complex",
    "induce",
    "induce_augmentation",
    "induce_map",
    "induced_atom",
    "is_an_configuration",
    "is_longest",
    "is_spherical",
    "longest_word",
    "periodic_twist",
    "periodic_twist_data",
    "projective_complex",
    "projective_dual_complex",
    "require_an_configuration",
    "require_spherical",
    "spherical_evaluation",
    "spherical_twist_complex",
    "spherical_twist_data",
    "unit_augmentation",
    "verify_braid_relation",
    "verify_composition",
    "verify_giprime",
    "verify_h_complex",
    "verify_invertible",
    "verify_longest",
    "verify_onetritooth",
    "verify_pdnp",
    "word_permutation",
]
