# module.py - Finite-dimensional bimodules and bimodule maps
# Actions are dense stacks: left_action[a] is the matrix of m -> b_a * m and
# right_action[b] the matrix of m -> m * b_b, so R_c R_b = R_{bc}. Every basis
# vector carries its vertex labels (e_lv m e_rv = m); all constructions keep
# bases vertex-homogeneous.

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from twistbench.errors import AlgebraMismatch, DimensionMismatch, GradingError, PreconditionError
from twistbench.exactfield import Matrix
from twistbench.quivalg import Algebra, AlgebraMap, Automorphism, CornerEmbedding


def vertex_labels(actions: Matrix, alg: Algebra, dim: int) -> np.ndarray:
    """For each basis vector the unique vertex whose idempotent fixes it."""
    labels = np.zeros(dim, dtype=np.int64)
    eye = np.eye(dim, dtype=np.int64)
    for v in alg.vertices:
        fixed = np.all(actions[alg.idempotent(v)] == eye, axis=0)
        if np.any(labels[fixed]):
            raise PreconditionError("basis vector fixed by two idempotents")
        labels[fixed] = v
    if dim and not np.all(labels):
        raise PreconditionError("bimodule basis is not vertex-homogeneous")
    return labels


@dataclass(frozen=True, eq=False)
class Bimodule:
    """An A-B bimodule with vertex-homogeneous basis and optional grading."""

    left: Algebra
    right: Algebra
    left_action: Matrix
    right_action: Matrix
    left_vertex: np.ndarray
    right_vertex: np.ndarray
    grading: np.ndarray | None = None
    name: str = ""

    def __post_init__(self) -> None:
        n = self.left_vertex.shape[0]
        if self.left_action.shape != (self.left.dim, n, n) or self.right_action.shape != (self.right.dim, n, n):
            raise DimensionMismatch(f"action shapes do not match dimension {n}")
        if self.right_vertex.shape[0] != n or (self.grading is not None and self.grading.shape[0] != n):
            raise DimensionMismatch("label arrays do not match dimension")

    def __repr__(self) -> str:
        return f"Bimodule({self.name or '?'}, {self.left.name}-{self.right.name}, dim={self.dim})"

    @classmethod
    def from_actions(
        cls,
        left: Algebra,
        right: Algebra,
        left_action: Matrix,
        right_action: Matrix,
        grading: np.ndarray | None = None,
        name: str = "",
    ) -> Bimodule:
        n = left_action.shape[1]
        p = left.field.p
        la, ra = left_action % p, right_action % p
        return cls(left, right, la, ra, vertex_labels(la, left, n), vertex_labels(ra, right, n), grading, name)

    @classmethod
    def zero(cls, left: Algebra, right: Algebra) -> Bimodule:
        empty = np.zeros(0, dtype=np.int64)
        return cls(left, right, np.zeros((left.dim, 0, 0), dtype=np.int64),
                   np.zeros((right.dim, 0, 0), dtype=np.int64), empty, empty, empty.copy(), "0")

    @property
    def dim(self) -> int:
        return int(self.left_vertex.shape[0])

    @property
    def field(self):
        return self.left.field

    @property
    def is_graded(self) -> bool:
        return self.grading is not None

    def block(self, v: int, w: int) -> np.ndarray:
        return np.flatnonzero((self.left_vertex == v) & (self.right_vertex == w))

    @cached_property
    def block_keys(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(set(zip(self.left_vertex.tolist(), self.right_vertex.tolist()))))

    @cached_property
    def block_profile(self) -> dict[tuple[int, int], int]:
        return {key: int(self.block(*key).size) for key in self.block_keys}

    def graded_piece(self, d: int) -> np.ndarray:
        if self.grading is None:
            raise GradingError("bimodule carries no grading")
        return np.flatnonzero(self.grading == d)

    @property
    def degrees_present(self) -> list[int]:
        if self.grading is None:
            raise GradingError("bimodule carries no grading")
        return sorted(set(self.grading.tolist()))

    def check(self) -> bool:
        """Actions commute, are unital, and respect the grading when present."""
        p = self.field.p
        n = self.dim
        if n == 0:
            return True
        eye = np.eye(n, dtype=np.int64)
        if not np.array_equal(np.einsum("a,aij->ij", self.left.unit(), self.left_action) % p, eye):
            return False
        if not np.array_equal(np.einsum("b,bij->ij", self.right.unit(), self.right_action) % p, eye):
            return False
        for a in self.left.action_generators:
            for b in self.right.action_generators:
                la, rb = self.left_action[a], self.right_action[b]
                if not np.array_equal((la @ rb) % p, (rb @ la) % p):
                    return False
        if self.grading is not None:
            for alg, acts in ((self.left, self.left_action), (self.right, self.right_action)):
                for x in alg.action_generators:
                    rows, cols = np.nonzero(acts[x])
                    if np.any(self.grading[rows] != self.grading[cols] + alg.degrees[x]):
                        return False
        return True

    def with_grading(self, grading: np.ndarray | None, name: str | None = None) -> Bimodule:
        return Bimodule(self.left, self.right, self.left_action, self.right_action,
                        self.left_vertex, self.right_vertex,
                        None if grading is None else np.asarray(grading, dtype=np.int64),
                        self.name if name is None else name)


@dataclass(frozen=True, eq=False)
class BimoduleMap:
    source: Bimodule
    target: Bimodule
    matrix: Matrix

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatch(f"map matrix {self.matrix.shape} vs {self.source.dim} -> {self.target.dim}")
        if self.source.left is not self.target.left or self.source.right is not self.target.right:
            raise AlgebraMismatch("bimodule map between modules over different algebras")

    def is_bimodule_map(self) -> bool:
        p = self.source.field.p
        f = self.matrix
        for x in self.source.left.action_generators:
            if not np.array_equal((f @ self.source.left_action[x]) % p, (self.target.left_action[x] @ f) % p):
                return False
        for y in self.source.right.action_generators:
            if not np.array_equal((f @ self.source.right_action[y]) % p, (self.target.right_action[y] @ f) % p):
                return False
        return True

    def is_invertible(self) -> bool:
        return self.source.field.is_invertible(self.matrix)

    def compose(self, inner: BimoduleMap) -> BimoduleMap:
        """self after inner."""
        if inner.target is not self.source:
            raise DimensionMismatch("maps do not compose")
        return BimoduleMap(inner.source, self.target, self.source.field.matmul(self.matrix, inner.matrix))

    def rank(self) -> int:
        return self.source.field.rank(self.matrix)

    @classmethod
    def identity(cls, m: Bimodule) -> BimoduleMap:
        return cls(m, m, np.eye(m.dim, dtype=np.int64))


# =============================================================================
# Constructors
# =============================================================================


@lru_cache(maxsize=None)
def regular(a: Algebra) -> Bimodule:
    return Bimodule(a, a, a.left_mult, a.right_mult, a.sources.copy(), a.targets.copy(),
                    a.degrees.copy(), name=f"{a.name}")


@lru_cache(maxsize=None)
def projective_bimodule(x: Algebra, y: Algebra, i: int, j: int, grade: int = 0) -> Bimodule:
    """X e_i ⊗_k e_j Y with outer actions; basis pairs (u, v) ordered u-major."""
    us = x.with_target(i)
    vs = y.with_source(j)
    nu, nv = us.size, vs.size
    lsub = x.left_mult[:, us][:, :, us]
    rsub = y.right_mult[:, vs][:, :, vs]
    left = np.einsum("xab,cd->xacbd", lsub, np.eye(nv, dtype=np.int64)).reshape(x.dim, nu * nv, nu * nv)
    right = np.einsum("ab,ycd->yacbd", np.eye(nu, dtype=np.int64), rsub).reshape(y.dim, nu * nv, nu * nv)
    lv = np.repeat(x.sources[us], nv)
    rv = np.tile(y.targets[vs], nu)
    grading = (np.repeat(x.degrees[us], nv) + np.tile(y.degrees[vs], nu) + grade).astype(np.int64)
    return Bimodule(x, y, left, right, lv, rv, grading, name=f"P{i},{j}")


def projective_atom(a: Algebra, i: int, j: int) -> Bimodule:
    a.idempotent(i)
    a.idempotent(j)
    return projective_bimodule(a, a, i, j)


def twist_right(m: Bimodule, sigma: Automorphism) -> Bimodule:
    """M_σ: m * b := m σ(b)."""
    if sigma.algebra is not m.right:
        raise AlgebraMismatch("automorphism acts on a different algebra")
    acts = np.einsum("cb,cij->bij", sigma.matrix, m.right_action) % m.field.p
    return Bimodule(m.left, m.right, m.left_action, acts, m.left_vertex,
                    vertex_labels(acts, m.right, m.dim), m.grading, name=f"{m.name}_tw")


def twist_left(m: Bimodule, sigma: Automorphism) -> Bimodule:
    """_σM: a * m := σ(a) m."""
    if sigma.algebra is not m.left:
        raise AlgebraMismatch("automorphism acts on a different algebra")
    acts = np.einsum("ca,cij->aij", sigma.matrix, m.left_action) % m.field.p
    return Bimodule(m.left, m.right, acts, m.right_action, vertex_labels(acts, m.left, m.dim),
                    m.right_vertex, m.grading, name=f"tw_{m.name}")


def dual(m: Bimodule) -> Bimodule:
    """Hom_k(M, k) as a B-A bimodule in the dual basis; grading negated."""
    left = np.ascontiguousarray(m.right_action.transpose(0, 2, 1))
    right = np.ascontiguousarray(m.left_action.transpose(0, 2, 1))
    grading = None if m.grading is None else -m.grading
    return Bimodule(m.right, m.left, left, right, m.right_vertex.copy(), m.left_vertex.copy(),
                    grading, name=f"{m.name}*")


def double_dual_map(m: Bimodule) -> BimoduleMap:
    """The natural identification M -> M** (identity in dual-of-dual bases)."""
    return BimoduleMap(m, dual(dual(m)), np.eye(m.dim, dtype=np.int64))


def direct_sum(modules: Sequence[Bimodule], name: str = "") -> Bimodule:
    if not modules:
        raise PreconditionError("direct sum of nothing needs explicit algebras; use Bimodule.zero")
    left, right = modules[0].left, modules[0].right
    if any(m.left is not left or m.right is not right for m in modules):
        raise AlgebraMismatch("summands over different algebras")
    n = sum(m.dim for m in modules)
    la = np.zeros((left.dim, n, n), dtype=np.int64)
    ra = np.zeros((right.dim, n, n), dtype=np.int64)
    offset = 0
    for m in modules:
        s = slice(offset, offset + m.dim)
        la[:, s, s] = m.left_action
        ra[:, s, s] = m.right_action
        offset += m.dim
    lv = np.concatenate([m.left_vertex for m in modules])
    rv = np.concatenate([m.right_vertex for m in modules])
    graded = all(m.grading is not None for m in modules)
    grading = np.concatenate([m.grading for m in modules]) if graded else None
    return Bimodule(left, right, la, ra, lv, rv, grading, name=name or "+".join(m.name for m in modules))


def inflate(m: Bimodule, left_map: AlgebraMap, right_map: AlgebraMap, name: str = "") -> Bimodule:
    """Pull M back along algebra maps A -> M.left and A' -> M.right."""
    if left_map.target is not m.left or right_map.target is not m.right:
        raise AlgebraMismatch("inflation maps do not land in the acting algebras")
    p = m.field.p
    la = np.einsum("ba,bij->aij", left_map.matrix, m.left_action) % p
    ra = np.einsum("ba,bij->aij", right_map.matrix, m.right_action) % p
    return Bimodule(left_map.source, right_map.source, la, ra,
                    vertex_labels(la, left_map.source, m.dim), vertex_labels(ra, right_map.source, m.dim),
                    m.grading, name=name or f"infl({m.name})")


def regrade(m: Bimodule, k: int) -> Bimodule:
    """M<k>: degree j holds M_{j+k}; actions unchanged."""
    if m.grading is None:
        raise GradingError("regrade needs a graded bimodule")
    return m.with_grading(m.grading - k, name=f"{m.name}<{k}>")


def koszul_shift(m: Bimodule, k: int) -> Bimodule:
    """M<k> with the left action twisted by (-1)^(k * deg a)."""
    if m.grading is None:
        raise GradingError("koszul_shift needs a graded bimodule")
    signs = np.where((k * m.left.degrees) % 2 == 0, 1, -1)
    la = (signs[:, None, None] * m.left_action) % m.field.p
    return Bimodule(m.left, m.right, la, m.right_action, m.left_vertex, m.right_vertex,
                    m.grading - k, name=f"{m.name}<{k}>s")


def corner_indices(m: Bimodule, emb: CornerEmbedding) -> np.ndarray:
    """Basis vectors of M lying in e M e."""
    verts = list(emb.vertices)
    return np.flatnonzero(np.isin(m.left_vertex, verts) & np.isin(m.right_vertex, verts))


def restrict_bimodule(m: Bimodule, emb: CornerEmbedding, name: str = "") -> Bimodule:
    """e M e as an eAe-eAe bimodule, basis a subset of the basis of M."""
    if m.left is not emb.ambient or m.right is not emb.ambient:
        raise AlgebraMismatch("restriction along a corner of a different algebra")
    idx = corner_indices(m, emb)
    amb = list(emb.basis_map)
    la = m.left_action[amb][:, idx][:, :, idx]
    ra = m.right_action[amb][:, idx][:, :, idx]
    lv = np.array([emb.corner_vertex(int(v)) for v in m.left_vertex[idx]], dtype=np.int64)
    rv = np.array([emb.corner_vertex(int(v)) for v in m.right_vertex[idx]], dtype=np.int64)
    grading = None if m.grading is None else m.grading[idx].copy()
    return Bimodule(emb.corner, emb.corner, np.ascontiguousarray(la), np.ascontiguousarray(ra),
                    lv, rv, grading, name=name or f"e{m.name}e")


# =============================================================================
# Invariant subspaces
# =============================================================================


def _block_basis(m: Bimodule, cols: Matrix) -> Matrix:
    """Vertex-homogeneous basis of the span of cols (an invariant subspace)."""
    fld = m.field
    pieces = []
    for key in m.block_keys:
        idx = m.block(*key)
        part = np.zeros_like(cols)
        part[idx] = cols[idx]
        if part.size and part.any():
            pieces.append(fld.row_basis(part.T).T)
    if not pieces:
        return np.zeros((m.dim, 0), dtype=np.int64)
    return np.hstack(pieces)


def _solver(basis: Matrix, fld) -> tuple[np.ndarray, Matrix]:
    """Rows R and inverse of basis[R], so coordinates of v in span are inv @ v[R]."""
    rows = list(fld.independent_columns(basis.T))
    return np.array(rows, dtype=np.int64), fld.inverse(basis[rows])


@dataclass(frozen=True, eq=False)
class Subquotient:
    """outer/inner with inclusion-projection data.

    basis: columns (in the ambient module) whose classes form the basis;
    project(v) gives coordinates of the class of v for v in outer.
    """

    module: Bimodule
    ambient: Bimodule
    basis: Matrix
    inner: Matrix
    _rows: np.ndarray
    _inv: Matrix

    def project(self, vecs: Matrix) -> Matrix:
        coords = self.module.field.matmul(self._inv, vecs[self._rows])
        return coords[self.inner.shape[1]:]


def subquotient(m: Bimodule, outer: Matrix, inner: Matrix | None = None, name: str = "") -> Subquotient:
    """outer/inner for invariant subspaces inner ⊆ outer given by spanning columns."""
    fld = m.field
    outer_b = _block_basis(m, outer)
    inner_b = _block_basis(m, inner) if inner is not None and inner.size else np.zeros((m.dim, 0), dtype=np.int64)
    if inner_b.shape[1]:
        ech = fld.rref(np.hstack([inner_b, outer_b]))
        chosen = [c - inner_b.shape[1] for c in ech.pivots if c >= inner_b.shape[1]]
    else:
        chosen = list(range(outer_b.shape[1]))
    basis = outer_b[:, chosen]
    full = np.hstack([inner_b, basis])
    if full.shape[1] == 0:
        q = Bimodule.zero(m.left, m.right)
        return Subquotient(q, m, basis, inner_b, np.zeros(0, dtype=np.int64), np.zeros((0, 0), dtype=np.int64))
    rows, inv = _solver(full, fld)
    k = inner_b.shape[1]

    def act(stack: Matrix) -> Matrix:
        images = np.einsum("xij,jk->xik", stack, basis) % fld.p
        coords = np.einsum("ab,xbk->xak", inv, images[:, rows, :]) % fld.p
        return coords[:, k:, :]

    la, ra = act(m.left_action), act(m.right_action)
    lv = np.array([m.left_vertex[np.flatnonzero(c)[0]] for c in basis.T], dtype=np.int64)
    rv = np.array([m.right_vertex[np.flatnonzero(c)[0]] for c in basis.T], dtype=np.int64)
    grading = None
    if m.grading is not None:
        grading = np.array([m.grading[np.flatnonzero(c)[0]] for c in basis.T], dtype=np.int64)
    q = Bimodule(m.left, m.right, la, ra, lv, rv, grading, name=name)
    return Subquotient(q, m, basis, inner_b, rows, inv)


def sub_bimodule_closure(m: Bimodule, generators: Matrix) -> Matrix:
    """Columns spanning the sub-bimodule generated by the given vectors."""
    fld = m.field
    span = fld.row_basis(generators.T).T if generators.size else np.zeros((m.dim, 0), dtype=np.int64)
    while True:
        images = [span]
        for x in m.left.action_generators:
            images.append(m.left_action[x] @ span)
        for y in m.right.action_generators:
            images.append(m.right_action[y] @ span)
        grown = fld.row_basis(np.hstack(images).T % fld.p).T
        if grown.shape[1] == span.shape[1]:
            return span
        span = grown


def sub_bimodule(m: Bimodule, generators: Matrix, name: str = "") -> tuple[Bimodule, BimoduleMap]:
    """The sub-bimodule generated by columns, with its inclusion."""
    sq = subquotient(m, sub_bimodule_closure(m, generators), name=name or f"sub({m.name})")
    return sq.module, BimoduleMap(sq.module, m, sq.basis % m.field.p)


def quotient_bimodule(m: Bimodule, sub_cols: Matrix, name: str = "") -> tuple[Bimodule, BimoduleMap]:
    """M / (sub-bimodule generated by columns), with the projection."""
    inner = sub_bimodule_closure(m, sub_cols)
    sq = subquotient(m, np.eye(m.dim, dtype=np.int64), inner, name=name or f"{m.name}/sub")
    proj = sq.project(np.eye(m.dim, dtype=np.int64)) if sq.module.dim else np.zeros((0, m.dim), dtype=np.int64)
    return sq.module, BimoduleMap(m, sq.module, proj % m.field.p)
