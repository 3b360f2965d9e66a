# paths.py - Quivers and graded path algebras with homogeneous relations
# The basis is found degree by degree: all paths of degree d span the path
# space, the ideal in degree d is the span of the relations of degree d and
# of (ideal of lower degree) * arrow, arrow * (ideal of lower degree). Normal
# words are the non-pivot paths of the row-reduced ideal.

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from twistbench.errors import InhomogeneousRelation, NotFiniteDimensional, PreconditionError
from twistbench.exactfield import Matrix, PrimeField
from twistbench.log import get_logger

log = get_logger(__name__)

Word = tuple[str, ...]
# A relation is a linear combination of paths, keyed by arrow-name words.
Relation = Mapping[Word, int]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int
    degree: int = 1


@dataclass(frozen=True)
class Quiver:
    """Vertices 1..num_vertices and named arrows."""

    num_vertices: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self) -> None:
        if self.num_vertices < 1:
            raise PreconditionError("a quiver needs at least one vertex")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise PreconditionError(f"arrow names must be unique: {names}")
        for a in self.arrows:
            if not (1 <= a.source <= self.num_vertices and 1 <= a.target <= self.num_vertices):
                raise PreconditionError(f"arrow {a.name} has an endpoint out of range")
            if a.degree < 1:
                raise PreconditionError(f"arrow {a.name} must have positive degree")

    @property
    def vertices(self) -> range:
        return range(1, self.num_vertices + 1)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def path_endpoints(self, word: Word) -> tuple[int, int]:
        arrows = [self.arrow(n) for n in word]
        for first, second in zip(arrows, arrows[1:]):
            if first.target != second.source:
                raise PreconditionError(f"{'.'.join(word)} is not a path")
        return arrows[0].source, arrows[-1].target

    def word_degree(self, word: Word) -> int:
        return sum(self.arrow(n).degree for n in word)


@dataclass(frozen=True)
class BasisElement:
    """A normal path: e_source * b = b = b * e_target."""

    word: Word
    source: int
    target: int
    degree: int

    @property
    def label(self) -> str:
        return ".".join(self.word) if self.word else f"e{self.source}"


@dataclass
class PathBasis:
    """Result of the enumeration, consumed by Algebra construction."""

    basis: list[BasisElement] = field(default_factory=list)
    mult: Matrix | None = None
    graded_dims: list[int] = field(default_factory=list)


# =============================================================================
# Degree-by-degree enumeration
# =============================================================================


@dataclass
class _Degree:
    """Paths of one degree, split into endpoint blocks."""

    paths: list[tuple[int, int, Word]]
    index: dict[tuple[int, int, Word], int]
    # per block: reduce[b] has shape (len(block paths), len(normal words))
    blocks: dict[tuple[int, int], list[int]]
    normal: dict[tuple[int, int], list[int]]
    reduce: dict[tuple[int, int], Matrix]
    ideal: dict[tuple[int, int], Matrix]  # rows spanning the ideal, block coords


class _Enumerator:
    def __init__(self, fld: PrimeField, quiver: Quiver, relations: Sequence[Relation]):
        self.field = fld
        self.quiver = quiver
        self.degrees: list[_Degree] = []
        self.relations: dict[int, list[dict[tuple[int, int, Word], int]]] = defaultdict(list)
        for rel in relations:
            self._add_relation(rel)

    def _add_relation(self, rel: Relation) -> None:
        terms = {tuple(w): c % self.field.p for w, c in rel.items() if c % self.field.p}
        if not terms:
            return
        degrees = {self.quiver.word_degree(w) for w in terms if w}
        if any(not w for w in terms) or len(degrees) != 1:
            raise InhomogeneousRelation(f"relation {rel} mixes degrees or contains a vertex")
        degree = degrees.pop()
        # relations with mixed endpoints split into one relation per block
        by_block: dict[tuple[int, int], dict[tuple[int, int, Word], int]] = defaultdict(dict)
        for w, c in terms.items():
            s, t = self.quiver.path_endpoints(w)
            by_block[(s, t)][(s, t, w)] = c
        self.relations[degree].extend(by_block.values())

    def _paths_of_degree(self, d: int) -> list[tuple[int, int, Word]]:
        if d == 0:
            return [(v, v, ()) for v in self.quiver.vertices]
        out = []
        for a in self.quiver.arrows:
            if a.degree > d:
                continue
            for s, t, w in self.degrees[d - a.degree].paths:
                if t == a.source:
                    out.append((s, a.target, w + (a.name,)))
        return out

    def _ideal_vectors(self, d: int, index: Mapping[tuple[int, int, Word], int]) -> list[dict[int, int]]:
        vectors: list[dict[int, int]] = []
        for rel in self.relations.get(d, []):
            vectors.append({index[k]: c for k, c in rel.items()})
        for a in self.quiver.arrows:
            lower = d - a.degree
            if lower < 1:
                continue
            prev = self.degrees[lower]
            for (s, t), rows in prev.ideal.items():
                block = prev.blocks[(s, t)]
                for row in rows:
                    support = {prev.paths[block[k]][2]: int(c) for k, c in enumerate(row) if c}
                    if t == a.source:
                        vectors.append({index[(s, a.target, w + (a.name,))]: c for w, c in support.items()})
                    if a.target == s:
                        vectors.append({index[(a.source, t, (a.name,) + w)]: c for w, c in support.items()})
        return vectors

    def step(self, d: int) -> _Degree:
        paths = self._paths_of_degree(d)
        index = {p: k for k, p in enumerate(paths)}
        blocks: dict[tuple[int, int], list[int]] = defaultdict(list)
        for k, (s, t, _) in enumerate(paths):
            blocks[(s, t)].append(k)
        local = {k: pos for block in blocks.values() for pos, k in enumerate(block)}

        rows_by_block: dict[tuple[int, int], list[Matrix]] = defaultdict(list)
        for vec in self._ideal_vectors(d, index) if d > 0 else []:
            first = next(iter(vec))
            key = (paths[first][0], paths[first][1])
            row = np.zeros(len(blocks[key]), dtype=np.int64)
            for k, c in vec.items():
                row[local[k]] = (row[local[k]] + c) % self.field.p
            rows_by_block[key].append(row)

        normal, reduce, ideal = {}, {}, {}
        for key, block in blocks.items():
            n = len(block)
            if rows_by_block[key]:
                ech = self.field.rref(np.vstack(rows_by_block[key]))
            else:
                ech = self.field.rref(np.zeros((0, n), dtype=np.int64))
            pivots = list(ech.pivots)
            pivot_set = set(pivots)
            free = [c for c in range(n) if c not in pivot_set]
            red = np.zeros((n, len(free)), dtype=np.int64)
            red[free, np.arange(len(free))] = 1
            if pivots and free:
                red[pivots, :] = (-ech.matrix[: ech.rank][:, free]) % self.field.p
            normal[key] = free
            reduce[key] = red
            ideal[key] = ech.matrix[: ech.rank]
        level = _Degree(paths, index, dict(blocks), normal, reduce, ideal)
        self.degrees.append(level)
        return level

    def normal_count(self, level: _Degree) -> int:
        return sum(len(v) for v in level.normal.values())


def graded_dimensions(
    fld: PrimeField,
    quiver: Quiver,
    relations: Sequence[Relation],
    bound: int,
) -> list[int]:
    """Dimensions of the graded pieces in degrees 0..bound, without raising."""
    enum = _Enumerator(fld, quiver, relations)
    return [enum.normal_count(enum.step(d)) for d in range(bound + 1)]


def enumerate_basis(
    fld: PrimeField,
    quiver: Quiver,
    relations: Sequence[Relation],
    max_degree: int,
) -> PathBasis:
    """Normal-word basis and dense structure constants of kQ/(relations)."""
    enum = _Enumerator(fld, quiver, relations)
    stop_after = max((a.degree for a in quiver.arrows), default=1)
    zero_run = 0
    dims: list[int] = []
    for d in range(max_degree + 1):
        level = enum.step(d)
        count = enum.normal_count(level)
        dims.append(count)
        log.debug("degree %d: %d paths, %d normal words", d, len(level.paths), count)
        zero_run = zero_run + 1 if count == 0 else 0
        if zero_run >= stop_after:
            break
    else:
        raise NotFiniteDimensional(
            f"graded piece of degree {max_degree} is still nonzero (dims {dims})"
        )
    while dims and dims[-1] == 0:
        dims.pop()

    basis: list[BasisElement] = []
    position: dict[tuple[int, tuple[int, int], int], int] = {}
    for d, level in enumerate(enum.degrees[: len(dims)]):
        for key in sorted(level.blocks):
            for local in level.normal[key]:
                s, t, w = level.paths[level.blocks[key][local]]
                position[(d, key, local)] = len(basis)
                basis.append(BasisElement(w, s, t, d))

    def reduce_path(s: int, t: int, w: Word, d: int) -> dict[int, int]:
        if d >= len(dims):
            return {}
        level = enum.degrees[d]
        k = level.index[(s, t, w)]
        block = level.blocks[(s, t)]
        row = level.reduce[(s, t)][block.index(k)]
        normal = level.normal[(s, t)]
        return {
            position[(d, (s, t), normal[j])]: int(c) for j, c in enumerate(row) if c
        }

    dim = len(basis)
    mult = np.zeros((dim, dim, dim), dtype=np.int64)
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            if bi.target != bj.source:
                continue
            d = bi.degree + bj.degree
            for k, c in reduce_path(bi.source, bj.target, bi.word + bj.word, d).items():
                mult[i, j, k] = c
    return PathBasis(basis=basis, mult=mult, graded_dims=dims)


def parse_relation(spec: Iterable[tuple[int, str]]) -> dict[Word, int]:
    """[(1, "a1.a2"), (-1, "b2.a1")] -> relation dict."""
    out: dict[Word, int] = {}
    for coeff, text in spec:
        word = tuple(part for part in text.split(".") if part)
        out[word] = out.get(word, 0) + coeff
    return out
