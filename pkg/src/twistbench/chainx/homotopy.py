# homotopy.py - Spaces of graded maps, homotopies and chain isomorphisms
# A map between complexes is fixed by one bimodule map per atom pair. For a
# projective source atom P_{i,j} such a map is the choice of an image of
# e_i ⊗ e_j in e_i N e_j, so the unknowns are cheap; other atoms go through
# hom_space. Equations d f - (-1)^r f d = rhs only need checking on the
# generator columns of the source atoms, both sides being bimodule maps.

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from twistbench.bimod import hom_space
from twistbench.chainx.atoms import PROJECTIVE, Atom
from twistbench.chainx.complex import ChainMap, Complex
from twistbench.chainx.homology import homology_dims
from twistbench.chainx.report import Verdict
from twistbench.errors import DimensionMismatch
from twistbench.exactfield import Matrix
from twistbench.log import get_logger

log = get_logger(__name__)


@lru_cache(maxsize=4096)
def atom_hom_basis(s: Atom, t: Atom) -> Matrix:
    """Basis of Hom(s, t) as a stack (h, dim t, dim s)."""
    if s.module.left is not t.module.left or s.module.right is not t.module.right:
        return np.zeros((0, t.dim, s.dim), dtype=np.int64)
    if s.kind != PROJECTIVE:
        return hom_space(s.module, t.module)
    n = t.module
    x, y = s.module.left, s.module.right
    zs = n.block(s.i, s.j)
    if zs.size == 0 or n.dim == 0:
        return np.zeros((0, n.dim, s.dim), dtype=np.int64)
    us = x.with_target(s.i)
    vs = y.with_source(s.j)
    # column (u, v) of the map sending the generator to z is u z v
    right = n.right_action[vs][:, :, zs]
    basis = np.einsum("uab,vbz->zauv", n.left_action[us], right) % x.field.p
    return np.ascontiguousarray(basis.reshape(zs.size, n.dim, us.size * vs.size))


@dataclass(frozen=True)
class _Param:
    degree: int
    src: int
    tgt: int
    start: int
    basis: Matrix

    @property
    def size(self) -> int:
        return int(self.basis.shape[0])


class _MapSystem:
    """Linear system in the coefficients of a degree-r map c -> d."""

    def __init__(self, c: Complex, d: Complex, degree: int) -> None:
        if c.left is not d.left or c.right is not d.right:
            raise DimensionMismatch("maps between complexes over different algebras")
        self.c, self.d, self.degree = c, d, degree
        self.fld = c.field
        self.params: list[_Param] = []
        start = 0
        for k in c.degrees:
            if k + degree not in d.terms:
                continue
            for ia, a in enumerate(c.atoms(k)):
                for ib, b in enumerate(d.atoms(k + degree)):
                    basis = atom_hom_basis(a, b)
                    if basis.shape[0]:
                        self.params.append(_Param(k, ia, ib, start, basis))
                        start += basis.shape[0]
        self.unknowns = start
        self.gens = {k: self._generators(k) for k in c.degrees}

    def _generators(self, k: int) -> np.ndarray:
        off = self.c.offsets(k)
        cols = [off[ia] + a.generator_columns for ia, a in enumerate(self.c.atoms(k))]
        return np.concatenate(cols).astype(np.int64) if cols else np.zeros(0, dtype=np.int64)

    def equation_degrees(self) -> list[int]:
        # d f - s f d evaluated on C_k lands in D_{k+r-1}
        return [k for k in self.c.degrees
                if self.gens[k].size and self.d.dim(k + self.degree - 1)]

    def block(self, k: int) -> Matrix:
        """Equation rows for degree k, flattened (row of D, generator of C_k)."""
        c, d, r, p = self.c, self.d, self.degree, self.fld.p
        gens = self.gens[k]
        rows = d.dim(k + r - 1)
        out = np.zeros((rows * gens.size, self.unknowns), dtype=np.int64)
        sign = 1 if r % 2 else -1
        for prm in self.params:
            cols = slice(prm.start, prm.start + prm.size)
            if prm.degree == k:
                a_sl = c.atom_slice(k, prm.src)
                local = (gens >= a_sl.start) & (gens < a_sl.stop)
                if local.any() and k + r in d.diffs:
                    dd = d.diff(k + r)[:, d.atom_slice(k + r, prm.tgt)]
                    term = np.einsum("rt,htg->hrg", dd, prm.basis[:, :, gens[local] - a_sl.start]) % p
                    full = np.zeros((prm.size, rows, gens.size), dtype=np.int64)
                    full[:, :, local] = term
                    out[:, cols] += full.reshape(prm.size, -1).T
            elif prm.degree == k - 1 and k in c.diffs:
                dc = c.diff(k)[c.atom_slice(k - 1, prm.src)][:, gens]
                term = np.einsum("htd,dg->htg", prm.basis, dc) % p
                full = np.zeros((prm.size, rows, gens.size), dtype=np.int64)
                full[:, d.atom_slice(k + r - 1, prm.tgt), :] = term
                out[:, cols] += sign * full.reshape(prm.size, -1).T
        return out % p

    def rhs(self, f: ChainMap, k: int) -> Matrix:
        return f.component(k)[:, self.gens[k]].reshape(-1)

    def to_map(self, coeffs: Matrix) -> ChainMap:
        comps: dict[int, Matrix] = {}
        for prm in self.params:
            part = np.einsum("h,hij->ij", coeffs[prm.start:prm.start + prm.size], prm.basis)
            k = prm.degree
            if k not in comps:
                comps[k] = np.zeros((self.d.dim(k + self.degree), self.c.dim(k)), dtype=np.int64)
            comps[k][self.d.atom_slice(k + self.degree, prm.tgt), self.c.atom_slice(k, prm.src)] += part
        return ChainMap.build(self.c, self.d, comps, self.degree)


@dataclass(frozen=True, eq=False)
class ChainMapSpace:
    """Basis of the degree-r chain maps c -> d (d f = (-1)^r f d)."""

    system: _MapSystem
    basis: Matrix

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    def element(self, coeffs: Matrix) -> ChainMap:
        fld = self.system.fld
        return self.system.to_map(fld.matmul(self.basis, np.asarray(coeffs, dtype=np.int64)))

    def maps(self) -> list[ChainMap]:
        return [self.system.to_map(col) for col in self.basis.T]

    def random(self, rng: np.random.Generator) -> ChainMap:
        return self.element(self.system.fld.random(rng, self.dim))


def chain_map_space(c: Complex, d: Complex, degree: int = 0) -> ChainMapSpace:
    system = _MapSystem(c, d, degree)
    fld = system.fld
    n = system.unknowns
    if n == 0:
        return ChainMapSpace(system, np.zeros((0, 0), dtype=np.int64))
    constraints = fld.stacked_row_basis((system.block(k) for k in system.equation_degrees()), n)
    basis = fld.nullspace(constraints) if constraints.shape[0] else np.eye(n, dtype=np.int64)
    log.debug("chain maps %s -> %s of degree %d: %d unknowns, dim %d", c.name, d.name, degree, n, basis.shape[1])
    return ChainMapSpace(system, basis)


def find_homotopy(f: ChainMap, g: ChainMap) -> ChainMap | None:
    """h of degree r+1 with f - g = d h + (-1)^r h d, or None."""
    if f.source is not g.source or f.target is not g.target or f.degree != g.degree:
        raise DimensionMismatch("homotopy between maps that are not parallel")
    diff = f - g
    system = _MapSystem(f.source, f.target, f.degree + 1)
    fld = system.fld
    degrees = [k for k in f.source.degrees if system.gens[k].size and f.target.dim(k + f.degree)]
    if not degrees:
        return ChainMap.zero(f.source, f.target, f.degree + 1)
    rhs = np.concatenate([system.rhs(diff, k) for k in degrees])
    if not rhs.any():
        return ChainMap.zero(f.source, f.target, f.degree + 1)
    if system.unknowns == 0:
        return None
    # every degree of the difference lands in D_{k+r}, the row space of block(k)
    eqs = np.vstack([_rows_for(system, k) for k in degrees])
    sol = fld.solve(eqs, rhs)
    if sol is None:
        return None
    return system.to_map(sol)


def _rows_for(system: _MapSystem, k: int) -> Matrix:
    if system.gens[k].size and system.d.dim(k + system.degree - 1):
        return system.block(k)
    return np.zeros((0, system.unknowns), dtype=np.int64)


def homotopic(f: ChainMap, g: ChainMap) -> bool:
    return find_homotopy(f, g) is not None


def is_null_homotopic(f: ChainMap) -> bool:
    return homotopic(f, ChainMap.zero(f.source, f.target, f.degree))


# =============================================================================
# Isomorphisms
# =============================================================================


def find_chain_isomorphism(
    c: Complex,
    d: Complex,
    *,
    rng: np.random.Generator | None = None,
    trials: int = 16,
) -> ChainMap | None:
    """A degreewise invertible chain map c -> d, or None if none was found."""
    if c.dims != d.dims:
        return None
    if c.is_zero():
        return ChainMap.zero(c, d)
    if any(sorted(a.shape for a in c.atoms(k)) != sorted(b.shape for b in d.atoms(k)) for k in c.degrees):
        return None
    space = chain_map_space(c, d)
    if space.dim == 0:
        return None
    rng = rng if rng is not None else np.random.default_rng(0)
    for _ in range(trials):
        f = space.random(rng)
        if f.is_degreewise_invertible():
            return f
    log.debug("no chain isomorphism %s -> %s in %d trials", c.name, d.name, trials)
    return None


def compare_complexes(
    c: Complex,
    d: Complex,
    *,
    rng: np.random.Generator | None = None,
    trials: int = 16,
) -> Verdict:
    """PASS with an isomorphism, FAIL on a homology mismatch, else INCONCLUSIVE."""
    if homology_dims(c) != homology_dims(d):
        return Verdict.FAIL
    if find_chain_isomorphism(c, d, rng=rng, trials=trials) is not None:
        return Verdict.PASS
    return Verdict.INCONCLUSIVE
