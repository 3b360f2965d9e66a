# complex.py - Bounded chain complexes of bimodules and chain maps
# Homological indexing: d_k maps C_k to C_{k-1}. Each term is an ordered tuple
# of atoms and its module is their direct sum; differentials and chain map
# components are plain matrices in the concatenated atom bases.

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from twistbench.bimod import Bimodule, BimoduleMap, direct_sum
from twistbench.chainx.atoms import Atom, module_atom, regular_atom
from twistbench.errors import AlgebraMismatch, DimensionMismatch
from twistbench.exactfield import Matrix, PrimeField
from twistbench.log import get_logger
from twistbench.quivalg import Algebra

log = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Complex:
    """A bounded complex of left-right bimodules."""

    left: Algebra
    right: Algebra
    terms: Mapping[int, tuple[Atom, ...]]
    diffs: Mapping[int, Matrix] = field(repr=False)
    name: str = ""

    @classmethod
    def build(
        cls,
        left: Algebra,
        right: Algebra,
        terms: Mapping[int, Sequence[Atom]],
        diffs: Mapping[int, Matrix] | None = None,
        name: str = "",
    ) -> Complex:
        """Drop empty terms and zero differentials, reduce entries mod p."""
        p = left.field.p
        kept = {int(k): tuple(v) for k, v in terms.items() if len(v)}
        for atoms in kept.values():
            for a in atoms:
                if a.module.left is not left or a.module.right is not right:
                    raise AlgebraMismatch(f"atom {a} does not live over {left.name}-{right.name}")
        out: dict[int, Matrix] = {}
        for k, d in (diffs or {}).items():
            if k in kept and k - 1 in kept:
                d = np.asarray(d, dtype=np.int64) % p
                if d.any():
                    out[int(k)] = d
        c = cls(left, right, kept, out, name)
        for k, d in out.items():
            if d.shape != (c.dim(k - 1), c.dim(k)):
                raise DimensionMismatch(f"d_{k} has shape {d.shape}, expected {(c.dim(k - 1), c.dim(k))}")
        return c

    def __repr__(self) -> str:
        body = ", ".join(f"{k}:{self.dim(k)}" for k in reversed(self.degrees))
        return f"Complex({self.name or '?'}; {body})"

    @property
    def field(self) -> PrimeField:
        return self.left.field

    @cached_property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    @property
    def lo(self) -> int:
        return self.degrees[0] if self.degrees else 0

    @property
    def hi(self) -> int:
        return self.degrees[-1] if self.degrees else -1

    def atoms(self, k: int) -> tuple[Atom, ...]:
        return self.terms.get(k, ())

    @cached_property
    def _modules(self) -> dict[int, Bimodule]:
        return {}

    def module(self, k: int) -> Bimodule:
        if k not in self._modules:
            atoms = self.atoms(k)
            if not atoms:
                self._modules[k] = Bimodule.zero(self.left, self.right)
            elif len(atoms) == 1:
                self._modules[k] = atoms[0].module
            else:
                self._modules[k] = direct_sum([a.module for a in atoms], name="+".join(a.label for a in atoms))
        return self._modules[k]

    def dim(self, k: int) -> int:
        return sum(a.dim for a in self.atoms(k))

    @property
    def dims(self) -> dict[int, int]:
        return {k: self.dim(k) for k in self.degrees}

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def offsets(self, k: int) -> np.ndarray:
        return np.concatenate([[0], np.cumsum([a.dim for a in self.atoms(k)], dtype=np.int64)]).astype(np.int64)

    def atom_slice(self, k: int, index: int) -> slice:
        off = self.offsets(k)
        return slice(int(off[index]), int(off[index + 1]))

    def diff(self, k: int) -> Matrix:
        d = self.diffs.get(k)
        if d is None:
            return np.zeros((self.dim(k - 1), self.dim(k)), dtype=np.int64)
        return d

    def is_zero(self) -> bool:
        return not self.terms

    def atom_counts(self, k: int) -> Counter:
        return Counter(a.label for a in self.atoms(k))

    def check(self) -> bool:
        """d∘d = 0 and every differential is a bimodule map."""
        fld = self.field
        for k in self.degrees:
            if k - 1 in self.terms and k - 2 in self.terms:
                if fld.matmul(self.diff(k - 1), self.diff(k)).any():
                    return False
            if k in self.diffs and not BimoduleMap(self.module(k), self.module(k - 1), self.diffs[k]).is_bimodule_map():
                return False
        return True

    def renamed(self, name: str) -> Complex:
        return Complex(self.left, self.right, self.terms, self.diffs, name)


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Components f_k: source_k -> target_{k+degree}.

    A map of degree r is a chain map when d∘f = (-1)^r f∘d.
    """

    source: Complex
    target: Complex
    components: Mapping[int, Matrix] = field(repr=False)
    degree: int = 0

    def component(self, k: int) -> Matrix:
        f = self.components.get(k)
        if f is None:
            return np.zeros((self.target.dim(k + self.degree), self.source.dim(k)), dtype=np.int64)
        return f

    @classmethod
    def build(cls, source: Complex, target: Complex, components: Mapping[int, Matrix], degree: int = 0) -> ChainMap:
        p = source.field.p
        out = {}
        for k, f in components.items():
            if k in source.terms and k + degree in target.terms:
                f = np.asarray(f, dtype=np.int64) % p
                if f.shape != (target.dim(k + degree), source.dim(k)):
                    raise DimensionMismatch(f"component {k} has shape {f.shape}")
                if f.any():
                    out[int(k)] = f
        return cls(source, target, out, degree)

    @classmethod
    def identity(cls, c: Complex) -> ChainMap:
        return cls(c, c, {k: np.eye(c.dim(k), dtype=np.int64) for k in c.degrees})

    @classmethod
    def zero(cls, source: Complex, target: Complex, degree: int = 0) -> ChainMap:
        return cls(source, target, {}, degree)

    def is_chain_map(self) -> bool:
        fld = self.source.field
        sign = -1 if self.degree % 2 else 1
        for k in set(self.source.degrees) | {k + 1 for k in self.source.degrees}:
            lhs = fld.matmul(self.target.diff(k + self.degree), self.component(k))
            rhs = fld.matmul(self.component(k - 1), self.source.diff(k))
            if not np.array_equal(lhs, (sign * rhs) % fld.p):
                return False
        for k, f in self.components.items():
            if not BimoduleMap(self.source.module(k), self.target.module(k + self.degree), f).is_bimodule_map():
                return False
        return True

    def compose(self, inner: ChainMap) -> ChainMap:
        """self after inner."""
        if inner.target is not self.source:
            raise DimensionMismatch("chain maps do not compose")
        fld = self.source.field
        comps = {
            k: fld.matmul(self.component(k + inner.degree), f)
            for k, f in inner.components.items()
        }
        return ChainMap.build(inner.source, self.target, comps, inner.degree + self.degree)

    def __add__(self, other: ChainMap) -> ChainMap:
        self._check_parallel(other)
        keys = set(self.components) | set(other.components)
        return ChainMap.build(self.source, self.target,
                              {k: self.component(k) + other.component(k) for k in keys}, self.degree)

    def __sub__(self, other: ChainMap) -> ChainMap:
        return self + other.scale(-1)

    def __neg__(self) -> ChainMap:
        return self.scale(-1)

    def scale(self, c: int) -> ChainMap:
        return ChainMap.build(self.source, self.target, {k: c * f for k, f in self.components.items()}, self.degree)

    def _check_parallel(self, other: ChainMap) -> None:
        if other.source is not self.source or other.target is not self.target or other.degree != self.degree:
            raise DimensionMismatch("chain maps are not parallel")

    def is_zero(self) -> bool:
        return not any(f.any() for f in self.components.values())

    def is_degreewise_invertible(self) -> bool:
        if self.degree != 0 or self.source.dims != self.target.dims:
            return False
        fld = self.source.field
        return all(fld.is_invertible(self.component(k)) for k in self.source.degrees)

    def inverse(self) -> ChainMap:
        fld = self.source.field
        return ChainMap.build(self.target, self.source,
                              {k: fld.inverse(self.component(k)) for k in self.source.degrees})

    def retarget(self, source: Complex | None = None, target: Complex | None = None) -> ChainMap:
        """Same matrices between complexes with identical term dimensions."""
        src, tgt = source or self.source, target or self.target
        if src.dims != self.source.dims or tgt.dims != self.target.dims:
            raise DimensionMismatch("retarget needs complexes with the same term dimensions")
        return ChainMap.build(src, tgt, dict(self.components), self.degree)

    def rank(self, k: int) -> int:
        return self.source.field.rank(self.component(k))


# =============================================================================
# Constructors
# =============================================================================


def zero_complex(left: Algebra, right: Algebra) -> Complex:
    return Complex.build(left, right, {}, {}, name="0")


def stalk(m: Bimodule | Atom, degree: int = 0, name: str = "") -> Complex:
    atom = m if isinstance(m, Atom) else module_atom(m)
    return Complex.build(atom.module.left, atom.module.right, {degree: (atom,)}, {}, name=name or atom.label)


@lru_cache(maxsize=None)
def stalk_algebra(a: Algebra, degree: int = 0) -> Complex:
    return stalk(regular_atom(a), degree, name=a.name)


def block_matrix(row_dims: Sequence[int], col_dims: Sequence[int], blocks: Mapping[tuple[int, int], Matrix]) -> Matrix:
    roff = np.concatenate([[0], np.cumsum(row_dims)]).astype(int)
    coff = np.concatenate([[0], np.cumsum(col_dims)]).astype(int)
    out = np.zeros((int(roff[-1]), int(coff[-1])), dtype=np.int64)
    for (r, c), blk in blocks.items():
        out[roff[r]:roff[r + 1], coff[c]:coff[c + 1]] = blk
    return out


def direct_sum_complex(cs: Sequence[Complex], name: str = "") -> Complex:
    if not cs:
        raise DimensionMismatch("empty direct sum")
    left, right = cs[0].left, cs[0].right
    degrees = sorted(set().union(*(c.degrees for c in cs)))
    terms = {k: sum((c.atoms(k) for c in cs), ()) for k in degrees}
    diffs = {}
    for k in degrees:
        blocks = {(n, n): c.diff(k) for n, c in enumerate(cs)}
        diffs[k] = block_matrix([c.dim(k - 1) for c in cs], [c.dim(k) for c in cs], blocks)
    return Complex.build(left, right, terms, diffs, name=name or "⊕".join(c.name for c in cs))


def sum_inclusion(cs: Sequence[Complex], total: Complex, index: int) -> ChainMap:
    """The inclusion of cs[index] into their direct sum."""
    comps = {}
    for k in cs[index].degrees:
        before = sum(c.dim(k) for c in cs[:index])
        f = np.zeros((total.dim(k), cs[index].dim(k)), dtype=np.int64)
        f[before:before + cs[index].dim(k)] = np.eye(cs[index].dim(k), dtype=np.int64)
        comps[k] = f
    return ChainMap.build(cs[index], total, comps)


def sum_projection(cs: Sequence[Complex], total: Complex, index: int) -> ChainMap:
    incl = sum_inclusion(cs, total, index)
    return ChainMap.build(total, cs[index], {k: f.T for k, f in incl.components.items()})


def map_into_sum(maps: Sequence[ChainMap], total: Complex) -> ChainMap:
    """(f_1, ..., f_r): C -> ⊕ D_n stacked vertically."""
    src = maps[0].source
    comps = {}
    for k in src.degrees:
        comps[k] = np.vstack([f.component(k) for f in maps])
    return ChainMap.build(src, total, comps, maps[0].degree)


def map_from_sum(maps: Sequence[ChainMap], total: Complex) -> ChainMap:
    """[g_1, ..., g_r]: ⊕ C_n -> D placed side by side."""
    tgt = maps[0].target
    comps = {}
    for k in total.degrees:
        comps[k] = np.hstack([g.component(k) for g in maps])
    return ChainMap.build(total, tgt, comps, maps[0].degree)


# =============================================================================
# Shift and cone
# =============================================================================


def shift(c: Complex, k: int) -> Complex:
    """C[k]: degree i moves to i+k, differential times (-1)^k."""
    if k == 0:
        return c
    sign = -1 if k % 2 else 1
    return Complex.build(c.left, c.right, {i + k: a for i, a in c.terms.items()},
                         {i + k: sign * d for i, d in c.diffs.items()}, name=f"{c.name}[{k}]")


def shift_map(f: ChainMap, k: int, source: Complex | None = None, target: Complex | None = None) -> ChainMap:
    src = source or shift(f.source, k)
    tgt = target or shift(f.target, k)
    return ChainMap.build(src, tgt, {i + k: m for i, m in f.components.items()}, f.degree)


def cone(f: ChainMap, name: str = "") -> Complex:
    """cone_i = source_{i-1} ⊕ target_i with d = [[-d, 0], [f, d]]."""
    if f.degree != 0:
        raise DimensionMismatch("cone of a map of nonzero degree")
    s, t = f.source, f.target
    degrees = sorted({k + 1 for k in s.degrees} | set(t.degrees))
    terms = {k: s.atoms(k - 1) + t.atoms(k) for k in degrees}
    diffs = {}
    for k in degrees:
        blocks = {
            (0, 0): -s.diff(k - 1),
            (1, 0): f.component(k - 1),
            (1, 1): t.diff(k),
        }
        diffs[k] = block_matrix([s.dim(k - 2), t.dim(k - 1)], [s.dim(k - 1), t.dim(k)], blocks)
    return Complex.build(s.left, s.right, terms, diffs, name=name or f"cone({s.name}->{t.name})")


def cone_inclusion(f: ChainMap, c: Complex) -> ChainMap:
    """target -> cone(f)."""
    t = f.target
    comps = {}
    for k in t.degrees:
        m = np.zeros((c.dim(k), t.dim(k)), dtype=np.int64)
        m[f.source.dim(k - 1):] = np.eye(t.dim(k), dtype=np.int64)
        comps[k] = m
    return ChainMap.build(t, c, comps)


def cone_projection(f: ChainMap, c: Complex, shifted_source: Complex | None = None) -> ChainMap:
    """cone(f) -> source[1]."""
    s = f.source
    ss = shifted_source or shift(s, 1)
    comps = {}
    for k in c.degrees:
        m = np.zeros((s.dim(k - 1), c.dim(k)), dtype=np.int64)
        m[:, : s.dim(k - 1)] = np.eye(s.dim(k - 1), dtype=np.int64)
        comps[k] = m
    return ChainMap.build(c, ss, comps)


def cone_source_inclusion(f: ChainMap, c: Complex) -> ChainMap:
    """x -> (x, 0) as a degree +1 map source -> cone(f); not a chain map."""
    s = f.source
    comps = {}
    for k in s.degrees:
        m = np.zeros((c.dim(k + 1), s.dim(k)), dtype=np.int64)
        m[: s.dim(k)] = np.eye(s.dim(k), dtype=np.int64)
        comps[k] = m
    return ChainMap.build(s, c, comps, degree=1)


def cone_map(f: ChainMap, g: ChainMap, h: ChainMap, c1: Complex, c2: Complex) -> ChainMap:
    """(x, y) -> (g x, h y) from cone(f) to cone(f').

    A chain map when f'∘g = h∘f holds on the nose.
    """
    comps = {}
    for k in c1.degrees:
        comps[k] = block_matrix(
            [g.target.dim(k - 1), h.target.dim(k)], [g.source.dim(k - 1), h.source.dim(k)],
            {(0, 0): g.component(k - 1), (1, 1): h.component(k)},
        )
    return ChainMap.build(c1, c2, comps)


def complexes_equal(c: Complex, d: Complex) -> bool:
    """Same atoms and the same differentials."""
    if c.left is not d.left or c.right is not d.right or c.degrees != d.degrees:
        return False
    if any(c.atoms(k) != d.atoms(k) for k in c.degrees):
        return False
    return all(np.array_equal(c.diff(k), d.diff(k)) for k in c.degrees)
