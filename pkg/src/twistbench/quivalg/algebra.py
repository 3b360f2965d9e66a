# algebra.py - Graded basic algebras given by basis and structure constants
# mult[i, j, k] is the coefficient of basis element k in b_i * b_j. Every basis
# element lives in one block e_s A e_t, so vertex bookkeeping is by labels.

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any

import numpy as np

from twistbench.errors import AlgebraMismatch, DimensionMismatch, GradingError, PreconditionError
from twistbench.exactfield import Matrix, PrimeField
from twistbench.log import get_logger
from twistbench.quivalg.paths import (
    Arrow,
    BasisElement,
    Quiver,
    Relation,
    enumerate_basis,
)

log = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Algebra:
    """A basic finite-dimensional graded algebra.

    Instances hash by identity, so they can key caches; two algebras built
    separately are never "the same" object even if isomorphic.
    """

    field: PrimeField
    quiver: Quiver
    basis: tuple[BasisElement, ...]
    mult: Matrix
    name: str = ""

    def __post_init__(self) -> None:
        d = len(self.basis)
        if self.mult.shape != (d, d, d):
            raise DimensionMismatch(f"structure constants {self.mult.shape} for dimension {d}")

    def __repr__(self) -> str:
        return f"Algebra({self.name or '?'}, dim={self.dim})"

    # =========================================================================
    # Basis bookkeeping
    # =========================================================================

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def num_vertices(self) -> int:
        return self.quiver.num_vertices

    @property
    def vertices(self) -> range:
        return self.quiver.vertices

    @cached_property
    def sources(self) -> np.ndarray:
        return np.array([b.source for b in self.basis], dtype=np.int64)

    @cached_property
    def targets(self) -> np.ndarray:
        return np.array([b.target for b in self.basis], dtype=np.int64)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([b.degree for b in self.basis], dtype=np.int64)

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        """Basis index of e_v for v = 1..num_vertices."""
        found = {b.source: k for k, b in enumerate(self.basis) if b.degree == 0 and b.source == b.target}
        try:
            return tuple(found[v] for v in self.vertices)
        except KeyError as exc:
            raise PreconditionError(f"{self.name}: vertex {exc} has no idempotent") from exc

    def idempotent(self, v: int) -> int:
        if not 1 <= v <= self.num_vertices:
            raise PreconditionError(f"vertex {v} out of range 1..{self.num_vertices}")
        return self.idempotents[v - 1]

    def block(self, s: int, t: int) -> np.ndarray:
        """Basis indices of e_s A e_t."""
        return np.flatnonzero((self.sources == s) & (self.targets == t))

    def with_target(self, v: int) -> np.ndarray:
        """Basis of A e_v."""
        return np.flatnonzero(self.targets == v)

    def with_source(self, v: int) -> np.ndarray:
        """Basis of e_v A."""
        return np.flatnonzero(self.sources == v)

    @cached_property
    def word_index(self) -> dict[tuple[str, ...], int]:
        return {b.word: k for k, b in enumerate(self.basis) if b.word}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        """Basis index of each quiver arrow (arrows are nonzero in an admissible quotient)."""
        return {a.name: self.word_index[(a.name,)] for a in self.quiver.arrows if (a.name,) in self.word_index}

    @cached_property
    def top_degree(self) -> int:
        return int(self.degrees.max()) if self.dim else 0

    @cached_property
    def graded_dimensions(self) -> list[int]:
        return [int(np.count_nonzero(self.degrees == d)) for d in range(self.top_degree + 1)]

    # =========================================================================
    # Multiplication
    # =========================================================================

    @cached_property
    def left_mult(self) -> Matrix:
        """left_mult[x] is the matrix of c -> b_x * c."""
        return np.ascontiguousarray(self.mult.transpose(0, 2, 1))

    @cached_property
    def right_mult(self) -> Matrix:
        """right_mult[y] is the matrix of c -> c * b_y."""
        return np.ascontiguousarray(self.mult.transpose(1, 2, 0))

    def unit(self) -> Matrix:
        out = np.zeros(self.dim, dtype=np.int64)
        out[list(self.idempotents)] = 1
        return out

    def basis_vector(self, k: int) -> Matrix:
        out = np.zeros(self.dim, dtype=np.int64)
        out[k] = 1
        return out

    def multiply(self, u: Matrix, v: Matrix) -> Matrix:
        return np.einsum("i,j,ijk->k", u, v, self.mult) % self.field.p

    def element(self, word: str | Sequence[str]) -> Matrix:
        """Element of a path given by arrow names ("a1.b2" or ["a1", "b2"])."""
        names = [w for w in word.split(".") if w] if isinstance(word, str) else list(word)
        if not names:
            return self.unit()
        out = self.basis_vector(self.arrow_index[names[0]])
        for name in names[1:]:
            out = self.multiply(out, self.basis_vector(self.arrow_index[name]))
        return out

    @cached_property
    def radical(self) -> np.ndarray:
        return np.flatnonzero(self.degrees > 0)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Basis indices spanning a complement of rad^2 inside rad."""
        rad = self.radical
        if rad.size == 0:
            return ()
        rad2 = self.mult[np.ix_(rad, rad)].reshape(-1, self.dim).T
        chosen = self.field.complement_columns(rad2[rad], rad.size) if rad2.size else list(range(rad.size))
        return tuple(int(rad[c]) for c in chosen)

    @cached_property
    def action_generators(self) -> tuple[int, ...]:
        """Idempotents plus radical generators: enough to test module maps."""
        return tuple(self.idempotents) + self.generators

    @cached_property
    def generator_names(self) -> dict[int, str]:
        by_arrow = {k: name for name, k in self.arrow_index.items()}
        return {k: by_arrow.get(k, self.basis[k].label) for k in self.generators}

    def is_generated_in_degree_one(self) -> bool:
        return all(self.basis[k].degree == 1 for k in self.generators)

    @cached_property
    def loewy_length(self) -> int:
        """Smallest L with rad^L = 0."""
        power = np.eye(self.dim, dtype=np.int64)[:, self.radical]
        length = 1
        while power.size and power.any():
            length += 1
            products = np.einsum("am,abl->mbl", power, self.mult)[:, self.radical, :]
            power = self.field.row_basis(products.reshape(-1, self.dim)).T
        return length

    def is_associative(self) -> bool:
        left = np.einsum("ijm,mkl->ijkl", self.mult, self.mult) % self.field.p
        right = np.einsum("jkm,iml->ijkl", self.mult, self.mult) % self.field.p
        return bool(np.array_equal(left, right))

    def check_unit(self) -> bool:
        one = self.unit()
        left = np.einsum("i,ijk->jk", one, self.mult) % self.field.p
        right = np.einsum("j,ijk->ik", one, self.mult) % self.field.p
        eye = np.eye(self.dim, dtype=np.int64)
        return bool(np.array_equal(left, eye) and np.array_equal(right, eye))

    def to_dict(self) -> dict[str, Any]:
        consts = [
            [int(i), int(j), int(k), int(self.mult[i, j, k])]
            for i, j, k in zip(*np.nonzero(self.mult))
        ]
        return {
            "name": self.name,
            "p": self.field.p,
            "vertices": self.num_vertices,
            "arrows": [
                {"name": a.name, "source": a.source, "target": a.target, "degree": a.degree}
                for a in self.quiver.arrows
            ],
            "basis": [
                {"path": b.label, "source": b.source, "target": b.target, "degree": b.degree}
                for b in self.basis
            ],
            "graded_dimensions": self.graded_dimensions,
            "structure_constants": consts,
        }

def build_path_algebra(
    quiver: Quiver,
    relations: Sequence[Relation] = (),
    *,
    field: PrimeField | None = None,
    max_degree: int = 16,
    name: str = "",
) -> Algebra:
    """kQ/(relations), graded by arrow degrees."""
    fld = field or PrimeField()
    result = enumerate_basis(fld, quiver, relations, max_degree)
    alg = Algebra(fld, quiver, tuple(result.basis), result.mult, name=name)
    log.debug("built %s: graded dims %s", name or "path algebra", result.graded_dims)
    return alg


# =============================================================================
# Algebra maps
# =============================================================================


@dataclass(frozen=True, eq=False)
class AlgebraMap:
    """Multiplicative linear map; column k of matrix is the image of basis k.

    vertex_map[v-1] is the target vertex of e_v, or None when e_v is killed.
    """

    source: Algebra
    target: Algebra
    matrix: Matrix
    vertex_map: tuple[int | None, ...]

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatch(
                f"map matrix {self.matrix.shape} does not fit {self.source} -> {self.target}"
            )

    def __call__(self, vec: Matrix) -> Matrix:
        return self.source.field.matmul(self.matrix, vec)

    def is_multiplicative(self) -> bool:
        p = self.source.field.p
        m = self.matrix
        lhs = np.einsum("ijk,lk->ijl", self.source.mult, m) % p
        rhs = np.einsum("ai,bj,abl->ijl", m, m, self.target.mult) % p
        return bool(np.array_equal(lhs, rhs))

    def is_graded(self) -> bool:
        rows, cols = np.nonzero(self.matrix)
        return bool(np.all(self.target.degrees[rows] == self.source.degrees[cols]))

    def is_isomorphism(self) -> bool:
        return self.source.field.is_invertible(self.matrix)

    def kernel(self) -> Matrix:
        return self.source.field.nullspace(self.matrix)

    def compose(self, inner: AlgebraMap) -> AlgebraMap:
        """self after inner."""
        if inner.target is not self.source:
            raise AlgebraMismatch("cannot compose maps between different algebras")
        vmap = tuple(None if v is None else self.vertex_map[v - 1] for v in inner.vertex_map)
        return AlgebraMap(inner.source, self.target, self.source.field.matmul(self.matrix, inner.matrix), vmap)

    @classmethod
    def from_arrow_images(
        cls,
        source: Algebra,
        target: Algebra,
        images: Mapping[str, Matrix],
        vertex_map: Sequence[int | None],
        *,
        check: bool = True,
    ) -> AlgebraMap:
        """Extend images of the arrows of source multiplicatively.

        Each basis element of source is a path word, so its image is the
        product of the arrow images; e_v goes to e_{vertex_map[v]} or 0.
        """
        if len(vertex_map) != source.num_vertices:
            raise DimensionMismatch("vertex_map must list one target per source vertex")
        cols = []
        for b in source.basis:
            if not b.word:
                w = vertex_map[b.source - 1]
                col = target.basis_vector(target.idempotent(w)) if w is not None else np.zeros(target.dim, dtype=np.int64)
            else:
                col = target.field.array(images[b.word[0]])
                for name in b.word[1:]:
                    col = target.multiply(col, target.field.array(images[name]))
            cols.append(col)
        matrix = np.stack(cols, axis=1) if cols else np.zeros((target.dim, 0), dtype=np.int64)
        result = cls(source, target, matrix % target.field.p, tuple(vertex_map))
        if check and not result.is_multiplicative():
            raise AlgebraMismatch(f"arrow images do not define a homomorphism {source} -> {target}")
        return result


@dataclass(frozen=True, eq=False)
class Automorphism(AlgebraMap):
    """An invertible algebra endomorphism."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.source is not self.target:
            raise AlgebraMismatch("an automorphism maps an algebra to itself")

    @property
    def algebra(self) -> Algebra:
        return self.source

    @classmethod
    def identity(cls, a: Algebra) -> Automorphism:
        return cls(a, a, np.eye(a.dim, dtype=np.int64), tuple(a.vertices))

    @classmethod
    def from_map(cls, m: AlgebraMap) -> Automorphism:
        if m.source is not m.target or not m.is_isomorphism():
            raise PreconditionError("map is not an automorphism")
        return cls(m.source, m.target, m.matrix, m.vertex_map)

    @classmethod
    def from_matrix(cls, a: Algebra, matrix: Matrix) -> Automorphism:
        """Wrap a basis matrix; the vertex permutation is read off the idempotents."""
        vmap: list[int | None] = []
        for v in a.vertices:
            col = matrix[:, a.idempotent(v)]
            hit = [w for w in a.vertices if col[a.idempotent(w)] % a.field.p]
            # non-graded images of idempotents are conjugates; the degree-0
            # part still picks out the permuted vertex
            vmap.append(hit[0] if len(hit) == 1 else None)
        return cls(a, a, matrix % a.field.p, tuple(vmap))

    @property
    def permutation(self) -> tuple[int | None, ...]:
        return self.vertex_map

    def inverse(self) -> Automorphism:
        inv = self.algebra.field.inverse(self.matrix)
        return Automorphism.from_matrix(self.algebra, inv)

    def then(self, other: Automorphism) -> Automorphism:
        """other after self."""
        return Automorphism.from_map(other.compose(self))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.matrix % self.algebra.field.p, np.eye(self.algebra.dim, dtype=np.int64)))

    def equals(self, other: Automorphism) -> bool:
        return other.algebra is self.algebra and bool(np.array_equal(self.matrix, other.matrix))

    def order(self, bound: int = 64) -> int | None:
        power = self
        for k in range(1, bound + 1):
            if power.is_identity():
                return k
            power = power.then(self)
        return None


# =============================================================================
# Corners and quotients
# =============================================================================


def _normalise_vertices(a: Algebra, vertices: Iterable[int]) -> tuple[int, ...]:
    chosen = tuple(sorted(set(int(v) for v in vertices)))
    if not chosen:
        raise PreconditionError("idempotent sum is zero")
    for v in chosen:
        if not 1 <= v <= a.num_vertices:
            raise PreconditionError(f"vertex {v} out of range 1..{a.num_vertices}")
    return chosen


@dataclass(frozen=True, eq=False)
class CornerEmbedding:
    """eAe inside A: corner vertex k is ambient vertex vertices[k-1]."""

    corner: Algebra
    ambient: Algebra
    vertices: tuple[int, ...]
    basis_map: tuple[int, ...]

    def ambient_vertex(self, k: int) -> int:
        return self.vertices[k - 1]

    def corner_vertex(self, v: int) -> int | None:
        return self.vertices.index(v) + 1 if v in self.vertices else None

    @cached_property
    def ambient_to_corner(self) -> dict[int, int]:
        return {amb: k for k, amb in enumerate(self.basis_map)}

    def embed(self, vec: Matrix) -> Matrix:
        out = np.zeros(self.ambient.dim, dtype=np.int64)
        out[list(self.basis_map)] = vec
        return out

    def restrict(self, vec: Matrix) -> Matrix:
        return np.asarray(vec)[list(self.basis_map)]

    def within(self, outer: CornerEmbedding) -> CornerEmbedding:
        """This corner as a corner of outer.corner (both inside the same ambient)."""
        if outer.ambient is not self.ambient:
            raise AlgebraMismatch("corners of different algebras")
        try:
            verts = tuple(outer.vertices.index(v) + 1 for v in self.vertices)
            bmap = tuple(outer.ambient_to_corner[b] for b in self.basis_map)
        except (ValueError, KeyError) as exc:
            raise PreconditionError("corner is not contained in the outer corner") from exc
        return CornerEmbedding(self.corner, outer.corner, verts, bmap)

    @property
    def idempotent_vector(self) -> Matrix:
        """e as an element of the ambient algebra."""
        out = np.zeros(self.ambient.dim, dtype=np.int64)
        out[[self.ambient.idempotent(v) for v in self.vertices]] = 1
        return out


def _sub_quiver(a: Algebra, keep: Sequence[int], idx: Sequence[int], mult: Matrix, name: str) -> Quiver:
    # Gabriel quiver of the new algebra, arrows named after their paths in a
    renumber = {v: k + 1 for k, v in enumerate(keep)}
    tmp = Algebra(a.field, Quiver(len(keep)), tuple(
        BasisElement(a.basis[i].word, renumber[a.basis[i].source], renumber[a.basis[i].target], a.basis[i].degree)
        for i in idx
    ), mult, name=name)
    arrows = []
    for g in tmp.generators:
        b = tmp.basis[g]
        arrows.append(Arrow(b.label, b.source, b.target, b.degree))
    return Quiver(len(keep), tuple(arrows))


def corner_algebra(a: Algebra, vertices: Iterable[int]) -> tuple[Algebra, CornerEmbedding]:
    """eAe for e = sum of e_v over the given vertices, renumbered 1..m.

    Repeated calls return the same corner object.
    """
    return _corner(a, _normalise_vertices(a, vertices))


@lru_cache(maxsize=None)
def _corner(a: Algebra, keep: tuple[int, ...]) -> tuple[Algebra, CornerEmbedding]:
    keep_set = set(keep)
    idx = [k for k, b in enumerate(a.basis) if b.source in keep_set and b.target in keep_set]
    mult = np.ascontiguousarray(a.mult[np.ix_(idx, idx, idx)])
    name = f"{a.name}[{','.join(map(str, keep))}]"
    quiver = _sub_quiver(a, keep, idx, mult, name)
    renumber = {v: k + 1 for k, v in enumerate(keep)}
    basis = tuple(
        BasisElement(a.basis[i].word, renumber[a.basis[i].source], renumber[a.basis[i].target], a.basis[i].degree)
        for i in idx
    )
    corner = Algebra(a.field, quiver, basis, mult, name=name)
    return corner, CornerEmbedding(corner, a, keep, tuple(idx))


def quotient_by_idempotent(a: Algebra, vertices: Iterable[int]) -> tuple[Algebra, AlgebraMap]:
    """A / A(1-e)A for e the sum of e_v over the given vertices."""
    keep = _normalise_vertices(a, vertices)
    fld = a.field
    killed = [v for v in a.vertices if v not in keep]
    spans = []
    for v in killed:
        left = a.with_target(v)
        right = a.with_source(v)
        spans.append(a.mult[np.ix_(left, right)].reshape(-1, a.dim).T)
    ideal = np.hstack(spans) if spans else np.zeros((a.dim, 0), dtype=np.int64)
    independent = list(fld.independent_columns(ideal)) if ideal.size else []
    ideal = ideal[:, independent]
    complement = fld.complement_columns(ideal, a.dim)
    change = np.hstack([ideal, np.eye(a.dim, dtype=np.int64)[:, complement]])
    coords = fld.inverse(change)[ideal.shape[1]:]  # quotient coordinates of each basis vector
    mult = np.einsum("kc,ijc->ijk", coords, a.mult[np.ix_(complement, complement)]) % fld.p

    renumber = {v: k + 1 for k, v in enumerate(keep)}
    basis = tuple(
        BasisElement(a.basis[i].word, renumber[a.basis[i].source], renumber[a.basis[i].target], a.basis[i].degree)
        for i in complement
    )
    arrows = tuple(
        Arrow(x.name, renumber[x.source], renumber[x.target], x.degree)
        for x in a.quiver.arrows
        if x.source in renumber and x.target in renumber
    )
    quotient = Algebra(fld, Quiver(len(keep), arrows), basis, np.ascontiguousarray(mult),
                       name=f"{a.name}/<{','.join(map(str, killed))}>")
    vmap = tuple(renumber.get(v) for v in a.vertices)
    surjection = AlgebraMap(a, quotient, coords % fld.p, vmap)
    return quotient, surjection


def center(a: Algebra) -> Matrix:
    """Columns spanning Z(A)."""
    gens = a.action_generators
    blocks = [(a.right_mult[x] - a.left_mult[x]) % a.field.p for x in gens]
    return a.field.nullspace(np.vstack(blocks)) if blocks else np.eye(a.dim, dtype=np.int64)


@dataclass(frozen=True)
class LinearForm:
    algebra: Algebra
    coefficients: Matrix = field(repr=False)

    def __call__(self, vec: Matrix) -> int:
        return int(np.dot(self.coefficients, vec) % self.algebra.field.p)

    def gram(self) -> Matrix:
        """G[i, j] = form(b_i * b_j)."""
        return np.einsum("ijk,k->ij", self.algebra.mult, self.coefficients) % self.algebra.field.p


def check_graded_automorphism(t: AlgebraMap) -> None:
    if not t.is_graded():
        raise GradingError("automorphism does not preserve degrees")
