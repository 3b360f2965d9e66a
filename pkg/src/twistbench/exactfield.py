# exactfield.py - Exact linear algebra over a prime field F_p
# Matrices are plain numpy int64 arrays with entries in [0, p). Row reduction,
# inversion and rank go through galois field arrays; everything that only needs
# a product stays in numpy.

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import galois
import numpy as np
import numpy.typing as npt

from twistbench.errors import DimensionMismatch, FieldError, SingularMatrix

Matrix = npt.NDArray[np.int64]

DEFAULT_P = 32003
# int64 products of residues must not overflow inside a matmul.
MAX_P = 1 << 24


@dataclass(frozen=True)
class RowEchelon:
    """Reduced row echelon form together with rank and pivot columns."""

    matrix: Matrix
    rank: int
    pivots: tuple[int, ...]


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for an odd prime p."""

    p: int = DEFAULT_P

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or self.p < 3 or self.p >= MAX_P:
            raise FieldError(f"p must be an odd prime below {MAX_P}, got {self.p!r}")
        if not galois.is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    @cached_property
    def gf(self) -> type[galois.FieldArray]:
        return galois.GF(self.p)

    # =========================================================================
    # Construction helpers
    # =========================================================================

    def array(self, data: object) -> Matrix:
        return np.asarray(data, dtype=np.int64) % self.p

    def zeros(self, *shape: int) -> Matrix:
        return np.zeros(shape, dtype=np.int64)

    def identity(self, n: int) -> Matrix:
        return np.eye(n, dtype=np.int64)

    def scalar(self, x: int) -> int:
        return int(x) % self.p

    def inv_scalar(self, x: int) -> int:
        x = int(x) % self.p
        if x == 0:
            raise SingularMatrix("0 has no inverse")
        return pow(x, -1, self.p)

    def random(self, rng: np.random.Generator, *shape: int) -> Matrix:
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    # =========================================================================
    # Arithmetic
    # =========================================================================

    def matmul(self, a: Matrix, b: Matrix) -> Matrix:
        if a.shape[-1] != b.shape[0]:
            raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
        return (a @ b) % self.p

    def neg(self, a: Matrix) -> Matrix:
        return (-a) % self.p

    def _to_gf(self, m: Matrix) -> galois.FieldArray:
        return self.gf(np.ascontiguousarray(m % self.p))

    @staticmethod
    def _from_gf(m: galois.FieldArray) -> Matrix:
        return np.asarray(m.view(np.ndarray), dtype=np.int64)

    # =========================================================================
    # Row reduction and everything built on it
    # =========================================================================

    def rref(self, m: Matrix) -> RowEchelon:
        m = self.array(m)
        if m.ndim != 2:
            raise DimensionMismatch(f"rref expects a matrix, got shape {m.shape}")
        if m.size == 0 or not m.any():
            return RowEchelon(np.zeros_like(m), 0, ())
        reduced = self._from_gf(self._to_gf(m).row_reduce())
        pivots: list[int] = []
        for row in reduced:
            nonzero = np.flatnonzero(row)
            if nonzero.size == 0:
                break
            pivots.append(int(nonzero[0]))
        return RowEchelon(reduced, len(pivots), tuple(pivots))

    def rank(self, m: Matrix) -> int:
        return self.rref(m).rank

    def row_basis(self, m: Matrix) -> Matrix:
        """Rows of the rref spanning the row space of m."""
        ech = self.rref(m)
        return ech.matrix[: ech.rank]

    def solve(self, m: Matrix, b: Matrix) -> Matrix | None:
        """Some x with m @ x = b, or None if the system is inconsistent.

        b may be a vector or a matrix of right-hand columns; free variables
        are set to zero.
        """
        m = self.array(m)
        b = self.array(b)
        vector = b.ndim == 1
        rhs = b.reshape(-1, 1) if vector else b
        if m.ndim != 2 or rhs.shape[0] != m.shape[0]:
            raise DimensionMismatch(f"solve: matrix {m.shape} vs right side {b.shape}")
        rows, cols = m.shape
        x = np.zeros((cols, rhs.shape[1]), dtype=np.int64)
        if rows == 0 or rhs.shape[1] == 0:
            return x.ravel() if vector else x
        ech = self.rref(np.hstack([m, rhs]))
        if ech.pivots and ech.pivots[-1] >= cols:
            return None
        for row, col in enumerate(ech.pivots):
            x[col] = ech.matrix[row, cols:]
        return x.ravel() if vector else x

    def stacked_row_basis(self, blocks: Iterable[Matrix], width: int, batch: int | None = None) -> Matrix:
        """Row basis of many stacked row blocks, reduced as they arrive.

        The basis never exceeds `width` rows, so memory stays bounded by
        width * (width + batch) however many equations are fed in.
        """
        batch = batch or max(64, width)
        basis = np.zeros((0, width), dtype=np.int64)
        pending: list[Matrix] = []
        size = 0
        for block in blocks:
            if block.size == 0:
                continue
            pending.append(block % self.p)
            size += block.shape[0]
            if size >= batch:
                basis = self.row_basis(np.vstack([basis, *pending]))
                pending, size = [], 0
        if pending:
            basis = self.row_basis(np.vstack([basis, *pending]))
        return basis

    def nullspace(self, m: Matrix) -> Matrix:
        """Columns forming a basis of ker(m); shape (cols, cols - rank)."""
        m = self.array(m)
        if m.ndim != 2:
            raise DimensionMismatch(f"nullspace expects a matrix, got shape {m.shape}")
        cols = m.shape[1]
        ech = self.rref(m)
        pivots = list(ech.pivots)
        free = np.setdiff1d(np.arange(cols), pivots)
        basis = np.zeros((cols, free.size), dtype=np.int64)
        if free.size == 0:
            return basis
        basis[free, np.arange(free.size)] = 1
        if pivots:
            basis[pivots, :] = (-ech.matrix[: ech.rank][:, free]) % self.p
        return basis

    def inverse(self, m: Matrix) -> Matrix:
        m = self.array(m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"inverse needs a square matrix, got {m.shape}")
        if m.shape[0] == 0:
            return m.copy()
        if self.rank(m) < m.shape[0]:
            raise SingularMatrix(f"matrix of size {m.shape[0]} is singular")
        return self._from_gf(np.linalg.inv(self._to_gf(m)))

    def is_invertible(self, m: Matrix) -> bool:
        return m.ndim == 2 and m.shape[0] == m.shape[1] and self.rank(m) == m.shape[0]

    def coordinates(self, basis: Matrix, vectors: Matrix) -> Matrix | None:
        """Coordinates of vectors (columns) in the span of basis columns.

        The basis columns must be independent; None if some vector lies
        outside the span.
        """
        return self.solve(basis, vectors)

    def independent_columns(self, m: Matrix) -> tuple[int, ...]:
        """Indices of a maximal independent set among the columns, leftmost first."""
        return self.rref(m).pivots

    def complement_columns(self, sub: Matrix, n: int) -> list[int]:
        """Standard basis vectors e_k that extend the column span of sub to F_p^n."""
        if sub.size == 0:
            return list(range(n))
        ech = self.rref(np.hstack([sub, np.eye(n, dtype=np.int64)]))
        offset = sub.shape[1]
        return [c - offset for c in ech.pivots if c >= offset]
