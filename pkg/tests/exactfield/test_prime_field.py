"""Linear algebra over F_p."""

import numpy as np
import pytest

from twistbench.errors import DimensionMismatch, FieldError, SingularMatrix
from twistbench.exactfield import PrimeField


# =============================================================================
# Construction
# =============================================================================


@pytest.mark.parametrize("p", [2, 4, 9, 32001])
def test_rejects_non_odd_primes(p):
    """p must be an odd prime."""
    with pytest.raises(FieldError):
        PrimeField(p)


def test_default_prime():
    assert PrimeField().p == 32003


def test_inverse_scalar(field):
    """x * x^-1 = 1 and 0 has no inverse."""
    assert (7 * field.inv_scalar(7)) % field.p == 1
    assert field.inv_scalar(-1) == field.p - 1
    with pytest.raises(SingularMatrix):
        field.inv_scalar(0)


# =============================================================================
# Row reduction
# =============================================================================


def test_rank_counts_dependent_rows(field):
    m = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert field.rank(m) == 2
    assert field.rank(np.zeros((3, 4), dtype=np.int64)) == 0


def test_rref_is_idempotent(field, rng):
    """Reducing a reduced matrix changes nothing."""
    m = rng.integers(0, field.p, size=(5, 7))
    m[4] = (m[0] + 3 * m[1]) % field.p
    reduced = field.rref(m)
    again = field.rref(reduced.matrix)
    assert np.array_equal(again.matrix, reduced.matrix)
    assert again.pivots == reduced.pivots
    assert reduced.rank == 4


def test_rank_wraps_modulo_p():
    """A matrix singular only mod p has the smaller rank."""
    f = PrimeField(5)
    assert f.rank(np.array([[1, 2], [3, 1]])) == 1


def test_solve_returns_a_solution(field, rng):
    m = field.random(rng, 5, 4)
    x = field.random(rng, 4)
    b = field.matmul(m, x[:, None]).ravel()
    sol = field.solve(m, b)
    assert sol is not None
    assert np.array_equal(field.matmul(m, sol[:, None]).ravel(), b)


def test_solve_inconsistent_is_none(field):
    m = np.array([[1, 0], [1, 0]])
    assert field.solve(m, np.array([1, 2])) is None


def test_solve_shape_mismatch(field):
    with pytest.raises(DimensionMismatch):
        field.solve(np.eye(2, dtype=np.int64), np.array([1, 2, 3]))


def test_nullspace_rank_nullity(field, rng):
    """rank + nullity = number of columns and m kills its nullspace."""
    m = field.random(rng, 3, 6)
    ns = field.nullspace(m)
    assert field.rank(m) + ns.shape[1] == 6
    assert not field.matmul(m, ns).any()


def test_inverse_round_trip(field):
    m = np.array([[2, 1], [1, 1]])
    inv = field.inverse(m)
    assert np.array_equal(field.matmul(m, inv), np.eye(2, dtype=np.int64))


def test_inverse_of_singular_raises(field):
    with pytest.raises(SingularMatrix):
        field.inverse(np.array([[1, 2], [2, 4]]))


def test_coordinates_in_span(field):
    basis = np.array([[1, 0], [0, 1], [1, 1]])
    assert np.array_equal(field.coordinates(basis, np.array([[3], [4], [7]])).ravel(), [3, 4])
    assert field.coordinates(basis, np.array([[1], [0], [0]])) is None


def test_complement_columns_extend_to_a_basis(field):
    sub = np.array([[1], [1], [0]])
    extra = field.complement_columns(sub, 3)
    full = np.hstack([sub, np.eye(3, dtype=np.int64)[:, extra]])
    assert field.rank(full) == 3 and len(extra) == 2


def test_stacked_row_basis_matches_rank(field, rng):
    blocks = [field.random(rng, 2, 5) for _ in range(4)]
    basis = field.stacked_row_basis(blocks, 5, batch=3)
    assert basis.shape[0] == field.rank(np.vstack(blocks))
