"""Path algebras, the named constructors and their automorphisms."""

import numpy as np
import pytest

from twistbench.errors import NotFiniteDimensional, PreconditionError
from twistbench.quivalg import (
    Arrow,
    Automorphism,
    Quiver,
    build_path_algebra,
    center,
    corner_algebra,
    find_frobenius_form,
    gamma,
    gamma_corner_isomorphism,
    linear_orientation_algebra,
    preprojective,
    preprojective_quotient_maps,
    quotient_by_idempotent,
    tau,
    tau_dual,
)


# =============================================================================
# Path algebras
# =============================================================================


def test_free_loop_is_not_finite_dimensional(field):
    """A loop without relations never terminates."""
    q = Quiver(1, (Arrow("x", 1, 1),))
    with pytest.raises(NotFiniteDimensional):
        build_path_algebra(q, [], field=field, max_degree=4)


def test_truncated_polynomial_ring(field):
    q = Quiver(1, (Arrow("x", 1, 1),))
    a = build_path_algebra(q, [{("x", "x", "x"): 1}], field=field, name="k[x]/x^3")
    assert a.dim == 3
    assert a.graded_dimensions == [1, 1, 1]
    assert a.is_associative() and a.check_unit()


def test_quiver_rejects_duplicate_arrow_names():
    with pytest.raises(PreconditionError):
        Quiver(2, (Arrow("a", 1, 2), Arrow("a", 2, 1)))


def test_paths_compose_left_to_right(gamma3):
    """a1.b2 is the loop at vertex 1."""
    loop = gamma3.element("a1.b2")
    k = int(np.flatnonzero(loop)[0])
    assert gamma3.basis[k].source == 1 and gamma3.basis[k].target == 1
    assert not gamma3.element("a1.a2").any()


# =============================================================================
# Zig-zag and preprojective algebras
# =============================================================================


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_gamma_dimension(field, n):
    a = gamma(n, field)
    assert a.dim == 4 * n - 2
    assert a.graded_dimensions == [n, 2 * (n - 1), n]
    assert a.is_associative()


def test_gamma1_is_dual_numbers_in_degree_two(field):
    a = gamma(1, field)
    assert a.dim == 2 and a.top_degree == 2
    assert not a.is_generated_in_degree_one()


def test_gamma3_relations(gamma3):
    """a2.b3 = b2.a1 and the paths a1.a2, b3.b2 vanish."""
    assert np.array_equal(gamma3.element("a2.b3"), gamma3.element("b2.a1"))
    assert not gamma3.element("b3.b2").any()


def test_gamma_center_is_unit_plus_socle(gamma3):
    assert center(gamma3).shape[1] == 4


def test_gamma_loewy_length(gamma3):
    assert gamma3.loewy_length == 3


@pytest.mark.parametrize("n", [2, 3, 4])
def test_preprojective_dimension(field, n):
    a = preprojective(n, field)
    assert a.dim == n * (n + 1) * (n + 2) // 6
    assert a.top_degree == n - 1
    assert a.is_generated_in_degree_one()


def test_preprojective_quotient_maps_are_surjective(field):
    pi_left, pi_right = preprojective_quotient_maps(3, field)
    for m in (pi_left, pi_right):
        assert m.is_multiplicative()
        assert field.rank(m.matrix) == m.target.dim
    assert pi_left.vertex_map == (1, 2, None)
    assert pi_right.vertex_map == (None, 1, 2)


def test_linear_orientation_algebra(field):
    line, surjection = linear_orientation_algebra(4, field)
    assert line.dim == 10
    assert surjection.is_multiplicative()


# =============================================================================
# Automorphisms
# =============================================================================


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tau_is_an_involution(field, n):
    t = tau(n, field)
    assert t.is_graded()
    assert t.order() == 2
    assert t.permutation == tuple(range(n, 0, -1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_tau_dual_is_an_involution(field, n):
    t = tau_dual(n, field)
    assert t.is_multiplicative()
    assert t.order() == 2


def test_identity_automorphism(gamma3):
    ident = Automorphism.identity(gamma3)
    assert ident.is_identity() and ident.order() == 1
    assert ident.then(tau(3, gamma3.field)).equals(tau(3, gamma3.field))


def test_inverse_composes_to_identity(field):
    t = tau(4, field)
    assert t.then(t.inverse()).is_identity()


# =============================================================================
# Corners and quotients
# =============================================================================


@pytest.mark.parametrize("i,j", [(1, 1), (1, 2), (2, 4), (1, 3)])
def test_corners_of_gamma_are_gamma(field, i, j):
    """e A e for an interval of vertices is again a zig-zag algebra."""
    iso = gamma_corner_isomorphism(4, i, j, field)
    assert iso.is_multiplicative()
    assert iso.is_isomorphism()


def test_corner_is_cached(gamma3):
    first, _ = corner_algebra(gamma3, [1, 2])
    second, _ = corner_algebra(gamma3, (2, 1))
    assert first is second


def test_corner_rejects_empty_idempotent(gamma3):
    with pytest.raises(PreconditionError):
        corner_algebra(gamma3, [])


def test_quotient_by_idempotent(gamma3):
    """Killing e_3 also kills the loop at 2, leaving e1, e2, a1, b2 and a1.b2."""
    q, pi = quotient_by_idempotent(gamma3, [1, 2])
    assert q.num_vertices == 2
    assert pi.is_multiplicative()
    assert q.dim == 5
    assert pi.vertex_map == (1, 2, None)


# =============================================================================
# Frobenius forms
# =============================================================================


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gamma_is_symmetric(field, n):
    data = find_frobenius_form(gamma(n, field))
    assert data is not None
    assert data.is_symmetric
    assert data.gorenstein == 2


def test_preprojective_nakayama_reverses_vertices(field):
    data = find_frobenius_form(preprojective(3, field))
    assert data is not None
    assert data.gorenstein == 2
    assert data.nakayama.permutation == (3, 2, 1)


def test_to_dict_lists_basis_paths(gamma3):
    data = gamma3.to_dict()
    assert len(data["basis"]) == 10
    assert data["vertices"] == 3
    assert data["p"] == gamma3.field.p
