# hom.py - Bimodule homomorphisms, isomorphism search, invertible bimodules
# Hom spaces are solved as linear systems whose unknowns are the matrix
# entries allowed by the vertex labels; commuting with idempotents is then
# automatic and only radical generators produce equations.

from __future__ import annotations

import itertools

import numpy as np

from twistbench.bimod.module import Bimodule, BimoduleMap, regular, twist_right
from twistbench.errors import AlgebraMismatch
from twistbench.exactfield import Matrix
from twistbench.log import get_logger
from twistbench.quivalg import Automorphism

log = get_logger(__name__)

EXHAUSTIVE_LIMIT = 8


def _unknowns(m: Bimodule, n: Bimodule) -> tuple[np.ndarray, np.ndarray]:
    """(row in N, column in M) of every entry a bimodule map may use."""
    same = (n.left_vertex[:, None] == m.left_vertex[None, :]) & (n.right_vertex[:, None] == m.right_vertex[None, :])
    return np.nonzero(same)


def _equations(act_m: Matrix, act_n: Matrix, rows_n: np.ndarray, cols_m: np.ndarray, dm: int, p: int) -> Matrix:
    """Rows of f @ act_m - act_n @ f = 0 in the unknowns (rows_n, cols_m)."""
    u = rows_n.size
    q1, i1 = np.nonzero(act_m[cols_m])
    r1 = rows_n[q1] * dm + i1
    v1 = act_m[cols_m][q1, i1]
    k2, q2 = np.nonzero(act_n[:, rows_n])
    r2 = k2 * dm + cols_m[q2]
    v2 = -act_n[:, rows_n][k2, q2]
    rows = np.concatenate([r1, r2])
    if rows.size == 0:
        return np.zeros((0, u), dtype=np.int64)
    keys, inverse = np.unique(rows, return_inverse=True)
    eq = np.zeros((keys.size, u), dtype=np.int64)
    np.add.at(eq, (inverse, np.concatenate([q1, q2])), np.concatenate([v1, v2]))
    eq %= p
    return eq[eq.any(axis=1)]


def hom_space(m: Bimodule, n: Bimodule) -> Matrix:
    """Basis of Hom(M, N) as a stack of shape (h, dim N, dim M)."""
    if m.left is not n.left or m.right is not n.right:
        raise AlgebraMismatch("Hom between bimodules over different algebras")
    fld = m.field
    rows_n, cols_m = _unknowns(m, n)
    u = rows_n.size
    if u == 0:
        return np.zeros((0, n.dim, m.dim), dtype=np.int64)

    def blocks():
        for x in m.left.generators:
            yield _equations(m.left_action[x], n.left_action[x], rows_n, cols_m, m.dim, fld.p)
        for y in m.right.generators:
            yield _equations(m.right_action[y], n.right_action[y], rows_n, cols_m, m.dim, fld.p)

    constraints = fld.stacked_row_basis(blocks(), u)
    sols = fld.nullspace(constraints) if constraints.shape[0] else np.eye(u, dtype=np.int64)
    out = np.zeros((sols.shape[1], n.dim, m.dim), dtype=np.int64)
    out[:, rows_n, cols_m] = sols.T
    log.debug("Hom(%s, %s): %d unknowns, dim %d", m.name, n.name, u, out.shape[0])
    return out


def hom_dim(m: Bimodule, n: Bimodule) -> int:
    return int(hom_space(m, n).shape[0])


def _combinations(h: int, rng: np.random.Generator, trials: int, p: int):
    for _ in range(trials):
        yield rng.integers(0, p, size=h, dtype=np.int64)
    if h <= EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product((0, 1, p - 1), repeat=h):
            if any(coeffs):
                yield np.array(coeffs, dtype=np.int64)
        return
    eye = np.eye(h, dtype=np.int64)
    for i in range(h):
        yield eye[i]
    for i, j in itertools.combinations(range(h), 2):
        yield eye[i] + eye[j]


def find_isomorphism(
    m: Bimodule,
    n: Bimodule,
    *,
    rng: np.random.Generator | None = None,
    trials: int = 16,
) -> BimoduleMap | None:
    """An invertible bimodule map M -> N, or None.

    Random elements of Hom(M, N) are tried first; when Hom is small all
    combinations with coefficients in {0, 1, -1} follow.
    """
    if m.dim != n.dim or m.block_profile != n.block_profile:
        return None
    if m.dim == 0:
        return BimoduleMap(m, n, np.zeros((0, 0), dtype=np.int64))
    rng = rng if rng is not None else np.random.default_rng(0)
    fld = m.field
    basis = hom_space(m, n)
    if basis.shape[0] == 0:
        return None
    for coeffs in _combinations(basis.shape[0], rng, trials, fld.p):
        f = np.einsum("h,hij->ij", coeffs, basis) % fld.p
        if fld.is_invertible(f):
            witness = BimoduleMap(m, n, f)
            if witness.is_bimodule_map():
                return witness
    log.debug("no isomorphism %s -> %s among %d-dimensional Hom", m.name, n.name, basis.shape[0])
    return None


def is_isomorphic(m: Bimodule, n: Bimodule, **kwargs) -> bool:
    return find_isomorphism(m, n, **kwargs) is not None


# =============================================================================
# Invertible bimodules
# =============================================================================


def top_space(m: Bimodule) -> Matrix:
    """Columns lifting a basis of M / (rad M + M rad), one block at a time."""
    fld = m.field
    images = [m.left_action[x] for x in m.left.generators] + [m.right_action[y] for y in m.right.generators]
    rad = np.hstack(images) % fld.p if images else np.zeros((m.dim, 0), dtype=np.int64)
    chosen = fld.complement_columns(rad, m.dim) if rad.size else list(range(m.dim))
    return np.eye(m.dim, dtype=np.int64)[:, chosen]


def _automorphism_from_generator(m: Bimodule, h: Matrix) -> Automorphism | None:
    fld = m.field
    a = m.left
    lh = np.einsum("aij,j->ia", m.left_action, h) % fld.p
    rh = np.einsum("aij,j->ia", m.right_action, h) % fld.p
    if not (fld.is_invertible(lh) and fld.is_invertible(rh)):
        return None
    sigma = Automorphism.from_matrix(a, fld.matmul(fld.inverse(lh), rh))
    return sigma if sigma.is_multiplicative() else None


def identify_invertible(
    m: Bimodule,
    *,
    rng: np.random.Generator | None = None,
    trials: int = 16,
) -> Automorphism | None:
    """σ with M ≅ A_σ, for an A-A bimodule free of rank one on both sides.

    A generator h is a lift of the top that meets every right vertex once;
    then h·b = σ(b)·h defines σ up to an inner automorphism. Returns None
    when M is not of this form.
    """
    if m.left is not m.right:
        log.debug("%s: left and right algebras differ", m.name)
        return None
    a = m.left
    if m.dim != a.dim:
        log.debug("%s: dimension %d differs from dim A = %d", m.name, m.dim, a.dim)
        return None
    top = top_space(m)
    idx = [int(np.flatnonzero(col)[0]) for col in top.T]
    per_vertex = {v: [k for k in idx if m.right_vertex[k] == v] for v in a.vertices}
    if any(len(ks) != 1 for ks in per_vertex.values()):
        log.debug("%s is not generated by one element per vertex", m.name)
        return None

    h = top.sum(axis=1) % a.field.p
    sigma = _automorphism_from_generator(m, h)
    rng = rng if rng is not None else np.random.default_rng(0)
    attempts = 0
    while sigma is None and attempts < trials:
        attempts += 1
        h = np.zeros(m.dim, dtype=np.int64)
        for v, (k,) in per_vertex.items():
            blk = m.block(int(m.left_vertex[k]), v)
            h[blk] = a.field.random(rng, blk.size)
        sigma = _automorphism_from_generator(m, h)
    if sigma is None:
        log.debug("%s: no generator gave an automorphism in %d trials", m.name, trials)
        return None
    log.debug("%s ≅ A_σ with vertex permutation %s", m.name, sigma.permutation)
    return sigma


def automorphisms_equivalent(sigma: Automorphism, other: Automorphism, **kwargs) -> bool:
    """Same outer class: equal vertex permutations and A_σ ≅ A_τ."""
    if sigma.algebra is not other.algebra or sigma.permutation != other.permutation:
        return False
    reg = regular(sigma.algebra)
    return is_isomorphic(twist_right(reg, sigma), twist_right(reg, other), **kwargs)
