# duality.py - Termwise duals and corner restriction of complexes
# Over symmetric algebras X, Y the dual of X e_i ⊗ e_j Y is again projective:
#   Y e_j ⊗ e_i X -> (X e_i ⊗ e_j Y)*,  (y, x) -> [(u, v) -> λ(v y) λ(x u)]
# is a bimodule isomorphism, so dual complexes keep their projective atoms.
# Atoms over non-symmetric algebras dualize to plain module atoms.

from __future__ import annotations

from functools import lru_cache

import numpy as np

from twistbench.bimod import corner_indices, dual, restrict_bimodule
from twistbench.chainx.atoms import PROJECTIVE, REGULAR, Atom, module_atom, projective, regular_atom
from twistbench.chainx.complex import ChainMap, Complex
from twistbench.errors import AlgebraMismatch, FrobeniusMissing
from twistbench.exactfield import Matrix
from twistbench.quivalg import Algebra, CornerEmbedding, frobenius_data


@lru_cache(maxsize=None)
def symmetric_gram(a: Algebra) -> Matrix | None:
    """Gram matrix of a symmetric Frobenius form on a, or None."""
    try:
        data = frobenius_data(a)
    except FrobeniusMissing:
        return None
    return data.form.gram() if data.is_symmetric else None


@lru_cache(maxsize=None)
def dual_atom(a: Atom) -> tuple[Atom, Matrix, Matrix]:
    """(a', θ, θ^-1) with θ: dual(a.module) -> a'.module in the dual basis."""
    m = a.module
    x, y = m.left, m.right
    fld = x.field
    gx, gy = symmetric_gram(x), symmetric_gram(y)
    if a.kind == PROJECTIVE and gx is not None and gy is not None:
        us, vs = x.with_target(a.i), y.with_source(a.j)
        ys, xs = y.with_target(a.j), x.with_source(a.i)
        pairing = np.einsum("vy,xu->uvyx", gy[np.ix_(vs, ys)], gx[np.ix_(xs, us)]) % fld.p
        pairing = pairing.reshape(us.size * vs.size, ys.size * xs.size)
        grade = -a.grade - x.top_degree - y.top_degree
        target = projective(y, x, a.j, a.i, grade)
        return target, fld.inverse(pairing), pairing
    if a.kind == REGULAR and gx is not None:
        return regular_atom(x), fld.inverse(gx), gx.copy()
    eye = np.eye(m.dim, dtype=np.int64)
    return module_atom(dual(m)), eye, eye


def _block_diag(mats: list[Matrix]) -> Matrix:
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=np.int64)
    off = 0
    for m in mats:
        out[off:off + m.shape[0], off:off + m.shape[0]] = m
        off += m.shape[0]
    return out


def _thetas(c: Complex) -> dict[int, tuple[Matrix, Matrix]]:
    out = {}
    for k in c.degrees:
        data = [dual_atom(a) for a in c.atoms(k)]
        out[k] = (_block_diag([d[1] for d in data]), _block_diag([d[2] for d in data]))
    return out


@lru_cache(maxsize=256)
def dualize(c: Complex) -> Complex:
    """Termwise dual: degree -k holds C_k*, differentials transposed."""
    fld = c.field
    thetas = _thetas(c)
    terms = {-k: tuple(dual_atom(a)[0] for a in c.atoms(k)) for k in c.degrees}
    diffs = {}
    for k, d in c.diffs.items():
        theta_k, _ = thetas[k]
        _, theta_inv = thetas[k - 1]
        diffs[1 - k] = fld.matmul(fld.matmul(theta_k, d.T.copy()), theta_inv)
    return Complex.build(c.right, c.left, terms, diffs, name=f"{c.name}*")


def dualize_map(f: ChainMap, source: Complex | None = None, target: Complex | None = None) -> ChainMap:
    """f*: dualize(f.target) -> dualize(f.source) for a degree-zero map."""
    fld = f.source.field
    src = source or dualize(f.target)
    tgt = target or dualize(f.source)
    ts, tt = _thetas(f.source), _thetas(f.target)
    comps = {}
    for k, m in f.components.items():
        comps[-k] = fld.matmul(fld.matmul(ts[k][0], m.T.copy()), tt[k][1])
    return ChainMap.build(src, tgt, comps)


def double_dual_iso(c: Complex) -> ChainMap:
    """The natural chain isomorphism c -> dualize(dualize(c))."""
    fld = c.field
    cd = dualize(c)
    cdd = dualize(cd)
    first, second = _thetas(c), _thetas(cd)
    comps = {k: fld.matmul(second[-k][0], first[k][1].T.copy()) for k in c.degrees}
    return ChainMap.build(c, cdd, comps)


# =============================================================================
# Corner restriction
# =============================================================================


def _restrict_atom(a: Atom, emb: CornerEmbedding) -> tuple[Atom | None, np.ndarray]:
    m = a.module
    idx = corner_indices(m, emb)
    if idx.size == 0:
        return None, idx
    e = emb.corner
    if a.kind == PROJECTIVE and a.i in emb.vertices and a.j in emb.vertices:
        return projective(e, e, emb.corner_vertex(a.i), emb.corner_vertex(a.j), a.grade), idx
    if a.kind == REGULAR:
        return regular_atom(e), idx
    return module_atom(restrict_bimodule(m, emb)), idx


def _restriction_layout(c: Complex, emb: CornerEmbedding) -> tuple[dict[int, list[Atom]], dict[int, np.ndarray]]:
    terms: dict[int, list[Atom]] = {}
    select: dict[int, np.ndarray] = {}
    for k in c.degrees:
        off = c.offsets(k)
        atoms, picks = [], []
        for ia, a in enumerate(c.atoms(k)):
            atom, idx = _restrict_atom(a, emb)
            if atom is not None:
                atoms.append(atom)
                picks.append(off[ia] + idx)
        terms[k] = atoms
        select[k] = np.concatenate(picks).astype(np.int64) if picks else np.zeros(0, dtype=np.int64)
    return terms, select


def restrict(c: Complex, emb: CornerEmbedding) -> Complex:
    """e c e as a complex of eAe-eAe bimodules; P^∨ ⊗_A c ⊗_A P."""
    if c.left is not emb.ambient or c.right is not emb.ambient:
        raise AlgebraMismatch("restriction along a corner of a different algebra")
    terms, select = _restriction_layout(c, emb)
    diffs = {k: d[np.ix_(select[k - 1], select[k])] for k, d in c.diffs.items()}
    return Complex.build(emb.corner, emb.corner, terms, diffs, name=f"e{c.name}e")
