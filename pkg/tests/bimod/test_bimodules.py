"""Bimodule constructions, tensor products over the middle algebra and Hom."""

import numpy as np
import pytest

from twistbench.bimod import (
    BimoduleMap,
    automorphisms_equivalent,
    direct_sum,
    double_dual_map,
    dual,
    evaluation_map,
    find_isomorphism,
    hom_dim,
    hom_space,
    identify_invertible,
    inflate,
    is_isomorphic,
    koszul_shift,
    multiplication_map,
    projective_atom,
    projective_bimodule,
    quotient_bimodule,
    regrade,
    regular,
    sub_bimodule,
    tensor_over,
    twist_left,
    twist_right,
)
from twistbench.errors import AlgebraMismatch, GradingError
from twistbench.quivalg import Automorphism, corner_algebra, quotient_by_idempotent, tau


# =============================================================================
# Constructions
# =============================================================================


def test_regular_bimodule(gamma3):
    reg = regular(gamma3)
    assert reg.dim == 10 and reg.check()
    assert reg.degrees_present == [0, 1, 2]


def test_projective_bimodule_dimension(gamma3):
    """A e_1 ⊗ e_1 A has 3 x 3 basis pairs."""
    p11 = projective_bimodule(gamma3, gamma3, 1, 1)
    assert p11.dim == 9 and p11.check()
    assert set(p11.grading.tolist()) == {0, 1, 2, 3, 4}


def test_projective_bimodule_grade_offset(gamma3):
    shifted = projective_bimodule(gamma3, gamma3, 2, 3, grade=2)
    plain = projective_bimodule(gamma3, gamma3, 2, 3)
    assert np.array_equal(shifted.grading, plain.grading + 2)


def test_dual_swaps_sides_and_negates_grading(gamma3):
    m = projective_bimodule(gamma3, gamma3, 1, 2)
    d = dual(m)
    assert d.check()
    assert np.array_equal(d.left_vertex, m.right_vertex)
    assert np.array_equal(d.grading, -m.grading)
    assert double_dual_map(m).is_bimodule_map()


def test_twists_stay_bimodules(gamma3):
    t = tau(3, gamma3.field)
    reg = regular(gamma3)
    assert twist_right(reg, t).check()
    assert twist_left(reg, t).check()


def test_twist_by_foreign_automorphism_raises(gamma3, gamma4):
    with pytest.raises(AlgebraMismatch):
        twist_right(regular(gamma3), tau(4, gamma4.field))


def test_direct_sum(gamma3):
    reg = regular(gamma3)
    s = direct_sum([reg, reg])
    assert s.dim == 20 and s.check()


def test_regrade_and_koszul_shift(gamma3):
    reg = regular(gamma3)
    assert regrade(reg, 1).degrees_present == [-1, 0, 1]
    shifted = koszul_shift(reg, 1)
    assert shifted.check()
    assert shifted.degrees_present == [-1, 0, 1]
    assert np.array_equal(koszul_shift(reg, 2).left_action, reg.left_action)


def test_regrade_needs_grading(gamma3):
    plain = regular(gamma3).with_grading(None)
    with pytest.raises(GradingError):
        regrade(plain, 1)


def test_inflation_along_quotient(gamma3):
    q, pi = quotient_by_idempotent(gamma3, [1, 2])
    m = inflate(regular(q), pi, pi)
    assert m.left is gamma3 and m.check()
    assert m.dim == q.dim


# =============================================================================
# Sub-bimodules and quotients
# =============================================================================


def test_socle_sub_bimodule(gamma3):
    """The top degree spans a sub-bimodule; the quotient keeps the rest."""
    reg = regular(gamma3)
    top = np.eye(reg.dim, dtype=np.int64)[:, gamma3.degrees == 2]
    sub, incl = sub_bimodule(reg, top)
    quot, proj = quotient_bimodule(reg, top)
    assert sub.dim == 3 and quot.dim == 7
    assert incl.is_bimodule_map() and proj.is_bimodule_map()
    assert not gamma3.field.matmul(proj.matrix, incl.matrix).any()


def test_sub_bimodule_generated_by_unit(gamma3):
    reg = regular(gamma3)
    sub, _ = sub_bimodule(reg, gamma3.unit()[:, None])
    assert sub.dim == reg.dim


# =============================================================================
# Tensor products
# =============================================================================


def test_multiplication_map_is_an_isomorphism(gamma3):
    mult = multiplication_map(gamma3)
    assert mult.source.dim == gamma3.dim
    assert mult.is_bimodule_map() and mult.is_invertible()


def test_tensor_with_mismatched_middle_raises(gamma3, gamma4):
    with pytest.raises(AlgebraMismatch):
        tensor_over(regular(gamma3), regular(gamma4))


def test_evaluation_map_on_corner(gamma3):
    _, emb = corner_algebra(gamma3, [2])
    t, ev = evaluation_map(emb)
    assert ev.is_bimodule_map()
    assert t.module.dim == 10


# =============================================================================
# Hom and invertible bimodules
# =============================================================================


def test_endomorphisms_of_regular_are_the_center(gamma3):
    assert hom_dim(regular(gamma3), regular(gamma3)) == 4


def test_hom_between_different_algebras_raises(gamma3, gamma4):
    with pytest.raises(AlgebraMismatch):
        hom_space(regular(gamma3), regular(gamma4))


def test_every_hom_basis_element_is_a_map(gamma3):
    m = projective_bimodule(gamma3, gamma3, 1, 1)
    reg = regular(gamma3)
    for f in hom_space(m, reg):
        assert BimoduleMap(m, reg, f).is_bimodule_map()


def test_twist_by_tau_is_not_regular(gamma3):
    reg = regular(gamma3)
    assert not is_isomorphic(reg, twist_right(reg, tau(3, gamma3.field)))


def test_identity_twist_is_regular(gamma3, rng):
    reg = regular(gamma3)
    witness = find_isomorphism(reg, twist_right(reg, Automorphism.identity(gamma3)), rng=rng)
    assert witness is not None and witness.is_invertible()


def test_identify_invertible_recovers_tau(gamma3, rng):
    t = tau(3, gamma3.field)
    sigma = identify_invertible(twist_right(regular(gamma3), t), rng=rng)
    assert sigma.permutation == (3, 2, 1)
    assert automorphisms_equivalent(sigma, t, rng=rng)


def test_identify_invertible_of_regular_is_inner(gamma3, rng):
    sigma = identify_invertible(regular(gamma3), rng=rng)
    assert automorphisms_equivalent(sigma, Automorphism.identity(gamma3), rng=rng)


def test_identify_invertible_of_projective_is_none(gamma2, rng):
    """Ae_1 ⊗ e_1A has dimension 9, dim Γ₂ = 6: not invertible, no error."""
    assert identify_invertible(projective_atom(gamma2, 1, 1), rng=rng) is None


def test_identify_invertible_needs_one_algebra(gamma2, gamma3, rng):
    assert identify_invertible(projective_bimodule(gamma2, gamma3, 1, 1), rng=rng) is None
