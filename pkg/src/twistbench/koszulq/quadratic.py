# quadratic.py - Quadratic presentations, quadratic duals and Koszul pairs
# A presentation is (Q, R) with R ⊆ V ⊗ V, V spanned by the arrows and R
# given by coefficient columns over the composable arrow pairs (k, l), read as
# the path arrows[k] arrows[l]. The dual has an arrow a*: t(a) -> s(a) for
# every arrow a; the pair (l, k) of dual arrows is paired with (k, l), and
# R⊥ is the annihilator of R under that pairing, one vertex block at a time.

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any

import numpy as np

from twistbench.errors import AlgebraMismatch, CornerNotQuadratic, GradingError, NotFiniteDimensional
from twistbench.exactfield import Matrix, PrimeField
from twistbench.log import get_logger
from twistbench.quivalg import (
    Algebra,
    AlgebraMap,
    Arrow,
    Automorphism,
    CornerEmbedding,
    Quiver,
    build_path_algebra,
    check_graded_automorphism,
    corner_algebra,
    gamma,
    preprojective,
    quotient_by_idempotent,
)

log = get_logger(__name__)


def _empty_relations(arrows: tuple[Arrow, ...]) -> Matrix:
    count = sum(1 for a in arrows for b in arrows if a.target == b.source)
    return np.zeros((count, 0), dtype=np.int64)


@dataclass(frozen=True, eq=False)
class QuadraticPresentation:
    """kQ/(R) with every arrow in degree one and R ⊆ V ⊗ V."""

    field: PrimeField
    num_vertices: int
    arrows: tuple[Arrow, ...]
    relations: Matrix
    name: str = ""
    origin: Algebra | None = None
    arrow_basis: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(a.degree != 1 for a in self.arrows):
            raise GradingError("a quadratic presentation has its arrows in degree one")
        if self.relations.shape[0] != len(self.pairs):
            raise AlgebraMismatch(
                f"relations have {self.relations.shape[0]} rows for {len(self.pairs)} composable pairs"
            )

    @classmethod
    def free(cls, field: PrimeField, num_vertices: int, arrows, name: str = "") -> QuadraticPresentation:
        """R = 0."""
        arrows = tuple(arrows)
        return cls(field, num_vertices, arrows, _empty_relations(arrows), name=name)

    @classmethod
    def radical_square_zero(cls, field: PrimeField, num_vertices: int, arrows, name: str = "") -> QuadraticPresentation:
        """R = V ⊗ V."""
        arrows = tuple(arrows)
        count = _empty_relations(arrows).shape[0]
        return cls(field, num_vertices, arrows, np.eye(count, dtype=np.int64), name=name)

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (k, l)
            for k, a in enumerate(self.arrows)
            for l, b in enumerate(self.arrows)
            if a.target == b.source
        )

    @cached_property
    def pair_index(self) -> dict[tuple[int, int], int]:
        return {pq: r for r, pq in enumerate(self.pairs)}

    def pair_block(self, r: int) -> tuple[int, int]:
        k, l = self.pairs[r]
        return self.arrows[k].source, self.arrows[l].target

    @property
    def quiver(self) -> Quiver:
        return Quiver(self.num_vertices, self.arrows)

    @property
    def num_relations(self) -> int:
        return self.relations.shape[1]

    def relation_dicts(self) -> list[dict[tuple[str, str], int]]:
        out = []
        for col in self.relations.T:
            rel = {}
            for r in np.flatnonzero(col):
                k, l = self.pairs[r]
                rel[(self.arrows[k].name, self.arrows[l].name)] = int(col[r])
            if rel:
                out.append(rel)
        return out

    @cached_property
    def algebra(self) -> Algebra:
        return self.origin if self.origin is not None else realize(self)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "vertices": self.num_vertices,
            "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in self.arrows],
            "relations": [
                {".".join(w): c for w, c in rel.items()} for rel in self.relation_dicts()
            ],
        }


def _blocks(p: QuadraticPresentation) -> dict[tuple[int, int], list[int]]:
    out: dict[tuple[int, int], list[int]] = defaultdict(list)
    for r in range(len(p.pairs)):
        out[p.pair_block(r)].append(r)
    return out


def _hstack(cols: list[Matrix], rows: int) -> Matrix:
    return np.hstack(cols) if cols else np.zeros((rows, 0), dtype=np.int64)


@lru_cache(maxsize=None)
def realize(p: QuadraticPresentation, max_degree: int = 16) -> Algebra:
    """The graded algebra kQ/(R); raises NotFiniteDimensional past max_degree."""
    return build_path_algebra(p.quiver, p.relation_dicts(), field=p.field, max_degree=max_degree,
                              name=p.name)


def presentation_from_algebra(a: Algebra, name: str = "") -> QuadraticPresentation:
    """V = degree-one generators of a, R = kernel of V ⊗ V -> a₂, per vertex block.

    Raises CornerNotQuadratic unless a is generated in degree one and kQ/(R)
    recovers a.
    """
    if not a.is_generated_in_degree_one():
        raise CornerNotQuadratic(f"{a.name} is not generated in degree one")
    fld = a.field
    gens = a.generators
    names = a.generator_names
    arrows = tuple(Arrow(names[k], a.basis[k].source, a.basis[k].target) for k in gens)
    shell = QuadraticPresentation(fld, a.num_vertices, arrows, _empty_relations(arrows))
    cols = []
    for rows in _blocks(shell).values():
        products = np.stack([a.mult[gens[shell.pairs[r][0]], gens[shell.pairs[r][1]]] for r in rows], axis=1)
        ns = fld.nullspace(products)
        if ns.shape[1]:
            full = np.zeros((len(shell.pairs), ns.shape[1]), dtype=np.int64)
            full[rows] = ns
            cols.append(full)
    pres = QuadraticPresentation(fld, a.num_vertices, arrows, _hstack(cols, len(shell.pairs)),
                                 name=name or a.name, origin=a, arrow_basis=tuple(gens))
    try:
        rebuilt = realize(pres, a.top_degree + 2)
    except NotFiniteDimensional as exc:
        raise CornerNotQuadratic(f"{a.name} is not quadratic: {exc}") from exc
    if rebuilt.graded_dimensions != a.graded_dimensions:
        raise CornerNotQuadratic(
            f"{a.name} is not quadratic: kQ/(R) has graded dimensions {rebuilt.graded_dimensions}, "
            f"not {a.graded_dimensions}"
        )
    log.debug("%s: %d arrows, %d quadratic relations", a.name, len(arrows), pres.num_relations)
    return pres


def is_quadratic(a: Algebra) -> bool:
    try:
        presentation_from_algebra(a)
    except CornerNotQuadratic:
        return False
    return True


@lru_cache(maxsize=None)
def quadratic_dual(p: QuadraticPresentation) -> QuadraticPresentation:
    """(Q^op, R⊥)."""
    fld = p.field
    arrows = tuple(Arrow(f"{a.name}*", a.target, a.source) for a in p.arrows)
    shell = QuadraticPresentation(fld, p.num_vertices, arrows, _empty_relations(arrows))
    cols = []
    for rows in _blocks(p).values():
        dual_rows = [shell.pair_index[(p.pairs[r][1], p.pairs[r][0])] for r in rows]
        block = p.relations[rows]
        block = block[:, np.flatnonzero(block.any(axis=0))]
        ns = fld.nullspace(block.T.copy()) if block.shape[1] else np.eye(len(rows), dtype=np.int64)
        if ns.shape[1]:
            full = np.zeros((len(shell.pairs), ns.shape[1]), dtype=np.int64)
            full[dual_rows] = ns
            cols.append(full)
    return QuadraticPresentation(fld, p.num_vertices, arrows, _hstack(cols, len(shell.pairs)),
                                 name=f"{p.name}!")


def same_relations(p: QuadraticPresentation, q: QuadraticPresentation) -> bool:
    """Equal arrows (by endpoints, in order) and equal relation spaces."""
    if p.num_vertices != q.num_vertices or len(p.arrows) != len(q.arrows):
        return False
    if any((a.source, a.target) != (b.source, b.target) for a, b in zip(p.arrows, q.arrows)):
        return False
    fld = p.field
    rp, rq = fld.rank(p.relations), fld.rank(q.relations)
    return rp == rq and fld.rank(np.hstack([p.relations, q.relations])) == rp


# =============================================================================
# Quadratic pairs
# =============================================================================


@dataclass(frozen=True, eq=False)
class QuadraticPair:
    """Λ with a concrete Λ^!: column k of dual_arrows is a_k* written in dual."""

    presentation: QuadraticPresentation
    algebra: Algebra
    dual: Algebra
    dual_arrows: Matrix
    arrow_basis: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.dual_arrows.shape != (self.dual.dim, len(self.arrow_basis)):
            raise AlgebraMismatch("dual arrow images do not match the presentation")

    @property
    def field(self) -> PrimeField:
        return self.algebra.field

    @property
    def num_arrows(self) -> int:
        return len(self.arrow_basis)

    @cached_property
    def dual_degree_one(self) -> np.ndarray:
        return np.flatnonzero(self.dual.degrees == 1)

    def to_dict(self) -> dict[str, Any]:
        return {
            "algebra": self.algebra.name,
            "dual": self.dual.name,
            "arrows": [a.name for a in self.presentation.arrows],
            "relations": self.presentation.num_relations,
        }


def quadratic_pair(p: QuadraticPresentation, dual: Algebra | None = None) -> QuadraticPair:
    """Pair p with realize(quadratic_dual(p)), or with a dual whose arrows are named a*."""
    d = dual if dual is not None else realize(quadratic_dual(p))
    lam = p.algebra
    basis = p.arrow_basis if p.origin is not None else tuple(lam.arrow_index[a.name] for a in p.arrows)
    try:
        cols = [d.basis_vector(d.arrow_index[f"{a.name}*"]) for a in p.arrows]
    except KeyError as exc:
        raise AlgebraMismatch(f"{d.name} has no dual arrow {exc}") from exc
    return QuadraticPair(p, lam, d, _hstack([c[:, None] for c in cols], d.dim), basis)


def _default(field_: PrimeField | None) -> PrimeField:
    return field_ or PrimeField()


def gamma_presentation(n: int, field: PrimeField | None = None) -> QuadraticPresentation:
    """Γₙ as a quadratic presentation; n >= 3."""
    return _gamma_presentation(n, _default(field))


@lru_cache(maxsize=None)
def _gamma_presentation(n: int, fld: PrimeField) -> QuadraticPresentation:
    return presentation_from_algebra(gamma(n, fld))


def identify_dual_with_preprojective(n: int, field: PrimeField | None = None) -> AlgebraMap:
    """Πₙ -> Γₙ^!, x_i -> b_{i+1}*, y_j -> (-1)^(j-1) a_{j-1}*."""
    return _identify(n, _default(field))


@lru_cache(maxsize=None)
def _identify(n: int, fld: PrimeField) -> AlgebraMap:
    pi = preprojective(n, fld)
    d = realize(quadratic_dual(_gamma_presentation(n, fld)))
    images = {}
    for i in range(1, n):
        images[f"x{i}"] = d.element(f"b{i + 1}*")
    for j in range(2, n + 1):
        images[f"y{j}"] = ((-1) ** (j - 1) * d.element(f"a{j - 1}*")) % fld.p
    phi = AlgebraMap.from_arrow_images(pi, d, images, tuple(pi.vertices))
    if not phi.is_isomorphism():
        raise AlgebraMismatch(f"{pi.name} is not identified with {d.name}")
    return phi


def gamma_pair(n: int, field: PrimeField | None = None) -> QuadraticPair:
    """(Γₙ, Πₙ) with the dual arrows transported into Πₙ."""
    return _gamma_pair(n, _default(field))


@lru_cache(maxsize=None)
def _gamma_pair(n: int, fld: PrimeField) -> QuadraticPair:
    pres = _gamma_presentation(n, fld)
    phi = _identify(n, fld)
    d = phi.target
    inv = fld.inverse(phi.matrix)
    cols = [inv[:, d.arrow_index[f"{a.name}*"]] for a in pres.arrows]
    return QuadraticPair(pres, pres.algebra, phi.source, np.stack(cols, axis=1), pres.arrow_basis)


# =============================================================================
# Automorphisms and corners
# =============================================================================


def dual_automorphism(pair: QuadraticPair, sigma: Automorphism) -> Automorphism:
    """σ! on Λ^!: a_k* -> Σ_l (σ₁⁻¹)[k, l] a_l*, σ₁ the action of σ on V."""
    lam = pair.algebra
    if sigma.algebra is not lam:
        raise AlgebraMismatch(f"automorphism does not act on {lam.name}")
    check_graded_automorphism(sigma)
    fld = pair.field
    basis = list(pair.arrow_basis)
    s1 = sigma.matrix[np.ix_(basis, basis)]
    if fld.rank(s1) < len(basis):
        raise GradingError("automorphism does not preserve the arrow span")
    t_inv = fld.inverse(s1)
    d = pair.dual
    deg1 = pair.dual_degree_one
    coords_of = pair.dual_arrows[deg1]
    images = {}
    for arrow in d.quiver.arrows:
        c = fld.solve(coords_of, d.basis_vector(d.arrow_index[arrow.name])[deg1])
        if c is None:
            raise AlgebraMismatch(f"arrow {arrow.name} is not spanned by the dual arrows")
        images[arrow.name] = fld.matmul(pair.dual_arrows, fld.matmul(t_inv.T.copy(), c))
    return Automorphism.from_map(AlgebraMap.from_arrow_images(d, d, images, sigma.vertex_map))


def corner_presentation(a: Algebra, vertices) -> QuadraticPresentation:
    """The presentation of eAe; CornerNotQuadratic when it has none."""
    corner, _ = corner_algebra(a, vertices)
    return presentation_from_algebra(corner)


@lru_cache(maxsize=None)
def _dual_quotient(pair: QuadraticPair, keep: tuple[int, ...]) -> tuple[Algebra, AlgebraMap]:
    return quotient_by_idempotent(pair.dual, keep)


def dual_quotient(pair: QuadraticPair, vertices) -> tuple[Algebra, AlgebraMap]:
    """Λ^!/(1-e) with its surjection; repeated calls return the same objects."""
    return _dual_quotient(pair, tuple(sorted(set(int(v) for v in vertices))))


def corner_pair(pair: QuadraticPair, vertices) -> tuple[QuadraticPair, CornerEmbedding]:
    """(eΛe, Λ^!/(1-e)) as a quadratic pair, with the corner embedding of eΛe."""
    corner, emb = corner_algebra(pair.algebra, vertices)
    pres = presentation_from_algebra(corner)
    quotient, pi = dual_quotient(pair, emb.vertices)
    position = {b: k for k, b in enumerate(pair.arrow_basis)}
    cols = []
    for g in pres.arrow_basis:
        k = position.get(emb.basis_map[g])
        if k is None:
            raise CornerNotQuadratic(f"generator {corner.basis[g].label} of {corner.name} is not an arrow")
        cols.append(pi(pair.dual_arrows[:, k]))
    return QuadraticPair(pres, corner, quotient, np.stack(cols, axis=1), pres.arrow_basis), emb
