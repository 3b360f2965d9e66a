# atoms.py - Indecomposable-ish building blocks of complex terms
# A term of a complex is an ordered list of atoms: projective bimodules
# P_{i,j} = X e_i ⊗ e_j Y, the regular bimodule A, or an arbitrary bimodule.
# Atoms are hashable by (kind, module identity, labels) so tensor data can be
# cached per pair.

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from twistbench.bimod import Bimodule, projective_bimodule, regular, top_space
from twistbench.quivalg import Algebra

PROJECTIVE = "P"
REGULAR = "A"
MODULE = "M"


@dataclass(frozen=True)
class Atom:
    kind: str
    module: Bimodule
    i: int = 0
    j: int = 0
    grade: int = 0

    def __repr__(self) -> str:
        return self.label

    @property
    def label(self) -> str:
        if self.kind == PROJECTIVE:
            return f"P{self.i},{self.j}" + (f"<{self.grade}>" if self.grade else "")
        if self.kind == REGULAR:
            return self.module.left.name or "A"
        return self.module.name or f"M({self.dim})"

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def shape(self) -> tuple:
        """Atoms of equal shape are the only candidates for isomorphic pairs."""
        if self.kind == PROJECTIVE:
            return (PROJECTIVE, self.i, self.j)
        if self.kind == REGULAR:
            return (REGULAR,)
        return (MODULE, self.dim, tuple(sorted(self.module.block_profile.items())))

    @cached_property
    def generator_columns(self) -> np.ndarray:
        """Basis indices generating the atom as a bimodule."""
        m = self.module
        if self.kind == PROJECTIVE:
            x, y = m.left, m.right
            us = x.with_target(self.i)
            vs = y.with_source(self.j)
            iu = int(np.flatnonzero(us == x.idempotent(self.i))[0])
            jv = int(np.flatnonzero(vs == y.idempotent(self.j))[0])
            return np.array([iu * vs.size + jv], dtype=np.int64)
        if self.kind == REGULAR:
            return np.array(m.left.idempotents, dtype=np.int64)
        top = top_space(m)
        return np.array([int(np.flatnonzero(c)[0]) for c in top.T], dtype=np.int64)

    def regraded(self, grade: int) -> Atom:
        if self.kind == PROJECTIVE:
            return projective(self.module.left, self.module.right, self.i, self.j, grade)
        return self


@lru_cache(maxsize=None)
def projective(x: Algebra, y: Algebra, i: int, j: int, grade: int = 0) -> Atom:
    return Atom(PROJECTIVE, projective_bimodule(x, y, i, j, grade), i, j, grade)


@lru_cache(maxsize=None)
def regular_atom(a: Algebra) -> Atom:
    return Atom(REGULAR, regular(a))


def module_atom(m: Bimodule) -> Atom:
    return Atom(MODULE, m)


def generator_map(a: Atom, target: Bimodule, image: np.ndarray) -> np.ndarray:
    """Matrix of the map out of a projective atom sending e_i ⊗ e_j to image.

    Column (u, v) is u * image * v, u-major like the atom basis.
    """
    x, y = a.module.left, a.module.right
    p = x.field.p
    us, vs = x.with_target(a.i), y.with_source(a.j)
    right = np.einsum("vbc,c->bv", target.right_action[vs], np.asarray(image, dtype=np.int64)) % p
    cols = np.einsum("uab,bv->auv", target.left_action[us], right) % p
    return cols.reshape(target.dim, us.size * vs.size)


def pure_tensor(a: Atom, u: int, v: int) -> np.ndarray:
    """u ⊗ v inside the projective atom a, for basis elements u in X e_i and v in e_j Y."""
    x, y = a.module.left, a.module.right
    us, vs = x.with_target(a.i), y.with_source(a.j)
    out = np.zeros(a.dim, dtype=np.int64)
    out[int(np.flatnonzero(us == u)[0]) * vs.size + int(np.flatnonzero(vs == v)[0])] = 1
    return out
