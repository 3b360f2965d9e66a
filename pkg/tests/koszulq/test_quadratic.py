"""Quadratic presentations, the quadratic dual and the identification Γₙ^! = Πₙ."""

import numpy as np
import pytest

from twistbench.errors import AlgebraMismatch, CornerNotQuadratic, GradingError
from twistbench.koszulq import (
    QuadraticPresentation,
    corner_presentation,
    dual_automorphism,
    gamma_pair,
    gamma_presentation,
    identify_dual_with_preprojective,
    is_quadratic,
    presentation_from_algebra,
    quadratic_dual,
    quadratic_pair,
    same_relations,
)
from twistbench.quivalg import AlgebraMap, Arrow, Automorphism, gamma, tau, tau_dual


def _conjugation(a, word):
    """x -> u x u^-1 for u = 1 + word, a square-zero path."""
    p = a.field.p
    u = (a.unit() + a.element(word)) % p
    v = (a.unit() - a.element(word)) % p
    cols = [a.multiply(a.multiply(u, a.basis_vector(k)), v) for k in range(a.dim)]
    return Automorphism.from_matrix(a, np.stack(cols, axis=1))


def test_dual_of_free_is_radical_square_zero(field):
    loop = [Arrow("x", 1, 1)]
    free = QuadraticPresentation.free(field, 1, loop)
    rsz = QuadraticPresentation.radical_square_zero(field, 1, [Arrow("x*", 1, 1)])
    assert same_relations(quadratic_dual(free), rsz)
    assert same_relations(quadratic_dual(rsz), free)


def test_arrows_must_have_degree_one(field):
    with pytest.raises(GradingError):
        QuadraticPresentation.free(field, 1, [Arrow("x", 1, 1, degree=2)])


def test_double_dual(field):
    p = gamma_presentation(3, field)
    assert same_relations(quadratic_dual(quadratic_dual(p)), p)
    assert not same_relations(quadratic_dual(p), p)


def test_gamma_presentation(field):
    p = gamma_presentation(4, field)
    assert len(p.arrows) == 6
    assert p.num_relations == len(p.relation_dicts())
    assert p.algebra is gamma(4, field)
    assert p.to_dict()["vertices"] == 4


def test_which_gammas_are_quadratic(gamma2, gamma3, gamma4):
    assert not is_quadratic(gamma2)
    assert is_quadratic(gamma3)
    assert is_quadratic(gamma4)
    with pytest.raises(CornerNotQuadratic):
        presentation_from_algebra(gamma2)


@pytest.mark.parametrize("n", [3, 4])
def test_dual_is_preprojective(field, n):
    phi = identify_dual_with_preprojective(n, field)
    assert phi.is_isomorphism()
    assert phi.source.dim == n * (n + 1) * (n + 2) // 6


def test_gamma_pair(field):
    pair = gamma_pair(3, field)
    assert pair.dual.dim == 10
    assert pair.num_arrows == 4
    assert pair.to_dict()["dual"] == pair.dual.name


def test_dual_of_tau(field):
    pair = gamma_pair(3, field)
    assert dual_automorphism(pair, tau(3, field)).equals(tau_dual(3, field))


def test_dual_of_identity_is_identity(field):
    pair = gamma_pair(3, field)
    assert dual_automorphism(pair, Automorphism.identity(pair.algebra)).is_identity()


def test_dual_automorphism_is_an_involution(field):
    """(τ!)! = τ once Γ₃^!! is identified with Γ₃ by a -> a**."""
    g = gamma(3, field)
    first = quadratic_pair(gamma_presentation(3, field))
    second = quadratic_pair(presentation_from_algebra(first.dual))
    twice = dual_automorphism(second, dual_automorphism(first, tau(3, field)))
    images = {a.name: second.dual.element(f"{a.name}**") for a in g.quiver.arrows}
    phi = AlgebraMap.from_arrow_images(g, second.dual, images, tuple(g.vertices))
    assert phi.is_isomorphism()
    assert np.array_equal(phi.compose(tau(3, field)).matrix, twice.compose(phi).matrix)


def test_dual_automorphism_needs_the_right_algebra(field):
    with pytest.raises(AlgebraMismatch):
        dual_automorphism(gamma_pair(3, field), tau(4, field))


def test_dual_automorphism_needs_a_graded_automorphism(field):
    pair = gamma_pair(3, field)
    inner = _conjugation(pair.algebra, "a1")
    assert inner.is_multiplicative()
    with pytest.raises(GradingError):
        dual_automorphism(pair, inner)


@pytest.mark.parametrize("vertices", [[1], [1, 2], [2, 3]])
def test_small_corners_are_not_quadratic(gamma3, vertices):
    with pytest.raises(CornerNotQuadratic):
        corner_presentation(gamma3, vertices)


def test_inner_corner_is_quadratic(gamma4):
    p = corner_presentation(gamma4, [1, 2, 3])
    assert p.num_vertices == 3
    assert len(p.arrows) == 4
