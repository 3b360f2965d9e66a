# minimize.py - Gaussian elimination of invertible differential components
# If d_k restricted to atoms a -> b is an isomorphism φ, then with
#   d_k = [[φ, β], [γ, δ]]
# the complex is homotopy equivalent to the one without a and b whose
# differential is δ - γ φ^-1 β. Witness maps are
#   f_{k-1} = [-γ φ^-1, 1]   and   g_k = [-φ^-1 β; 1],
# all other components being the obvious projections and inclusions.

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from twistbench.chainx.atoms import PROJECTIVE, Atom
from twistbench.chainx.complex import ChainMap, Complex
from twistbench.exactfield import Matrix, PrimeField
from twistbench.log import get_logger

log = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Minimization:
    complex: Complex
    to_minimal: ChainMap
    from_minimal: ChainMap
    cancelled: int


def _offsets(atoms: list[Atom]) -> np.ndarray:
    return np.concatenate([[0], np.cumsum([a.dim for a in atoms])]).astype(np.int64)


def _invertible_block(a: Atom, b: Atom, blk: Matrix, fld: PrimeField) -> bool:
    if a.shape != b.shape or not blk.any():
        return False
    if a.kind == PROJECTIVE:
        g = int(a.generator_columns[0])
        return bool(blk[g, g] % fld.p)
    return fld.is_invertible(blk)


def _find_pivot(terms: dict[int, list[Atom]], diffs: dict[int, Matrix], k: int, fld: PrimeField):
    src, tgt = terms.get(k, []), terms.get(k - 1, [])
    if not src or not tgt or k not in diffs:
        return None
    d = diffs[k]
    so, to = _offsets(src), _offsets(tgt)
    for ia, a in enumerate(src):
        for ib, b in enumerate(tgt):
            blk = d[to[ib]:to[ib + 1], so[ia]:so[ia + 1]]
            if _invertible_block(a, b, blk, fld):
                return ia, ib
    return None


class _Eliminator:
    def __init__(self, c: Complex, with_witness: bool) -> None:
        self.c = c
        self.fld = c.field
        self.terms = {k: list(c.atoms(k)) for k in c.degrees}
        self.diffs = {k: c.diff(k).copy() for k in c.degrees if k - 1 in c.terms}
        self.witness = with_witness
        if with_witness:
            self.f = {k: np.eye(c.dim(k), dtype=np.int64) for k in c.degrees}
            self.g = {k: np.eye(c.dim(k), dtype=np.int64) for k in c.degrees}
        self.cancelled = 0

    def cancel(self, k: int, ia: int, ib: int) -> None:
        fld, p = self.fld, self.fld.p
        so, to = _offsets(self.terms[k]), _offsets(self.terms[k - 1])
        a_idx = np.arange(so[ia], so[ia + 1])
        b_idx = np.arange(to[ib], to[ib + 1])
        rest_k = np.setdiff1d(np.arange(so[-1]), a_idx)
        rest_k1 = np.setdiff1d(np.arange(to[-1]), b_idx)

        d = self.diffs[k]
        phi_inv = fld.inverse(d[np.ix_(b_idx, a_idx)])
        beta = d[np.ix_(b_idx, rest_k)]
        gamma = d[np.ix_(rest_k1, a_idx)]
        gphi = fld.matmul(gamma, phi_inv)
        self.diffs[k] = (d[np.ix_(rest_k1, rest_k)] - fld.matmul(gphi, beta)) % p
        if k + 1 in self.diffs:
            self.diffs[k + 1] = self.diffs[k + 1][rest_k]
        if k - 1 in self.diffs:
            self.diffs[k - 1] = self.diffs[k - 1][:, rest_k1]

        if self.witness:
            fk1 = self.f[k - 1]
            self.f[k - 1] = (fk1[rest_k1] - fld.matmul(gphi, fk1[b_idx])) % p
            self.f[k] = self.f[k][rest_k]
            gk = self.g[k]
            self.g[k] = (gk[:, rest_k] - fld.matmul(gk[:, a_idx], fld.matmul(phi_inv, beta))) % p
            self.g[k - 1] = self.g[k - 1][:, rest_k1]

        del self.terms[k][ia]
        del self.terms[k - 1][ib]
        self.cancelled += 1

    def run(self) -> None:
        changed = True
        while changed:
            changed = False
            for k in sorted(self.terms, reverse=True):
                while (pivot := _find_pivot(self.terms, self.diffs, k, self.fld)) is not None:
                    self.cancel(k, *pivot)
                    changed = True


def minimize(c: Complex, *, with_witness: bool = False) -> Complex | Minimization:
    """Cancel invertible atom components until none is left.

    With with_witness, also return the homotopy equivalences between c and
    the result.
    """
    elim = _Eliminator(c, with_witness)
    elim.run()
    result = Complex.build(c.left, c.right, elim.terms, elim.diffs, name=c.name)
    if elim.cancelled:
        log.debug("minimize %s: cancelled %d atom pairs, dims %s -> %s", c.name, elim.cancelled, c.dims, result.dims)
    if not with_witness:
        return result
    f = ChainMap.build(c, result, elim.f)
    g = ChainMap.build(result, c, elim.g)
    return Minimization(result, f, g, elim.cancelled)


def is_minimal(c: Complex) -> bool:
    terms = {k: list(c.atoms(k)) for k in c.degrees}
    diffs = {k: c.diff(k) for k in c.degrees}
    return all(_find_pivot(terms, diffs, k, c.field) is None for k in c.degrees)
