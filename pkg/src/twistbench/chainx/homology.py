# homology.py - Homology of complexes, computed one vertex block at a time
# A differential is a bimodule map, so it sends the (v, w) block of C_k into
# the (v, w) block of C_{k-1}; ranks and kernels split over the blocks.

from __future__ import annotations

import numpy as np

from twistbench.bimod import Bimodule, BimoduleMap, Subquotient, subquotient
from twistbench.chainx.complex import ChainMap, Complex
from twistbench.exactfield import Matrix


def _blocks(c: Complex, k: int):
    src, tgt = c.module(k), c.module(k - 1)
    for key in src.block_keys:
        yield key, src.block(*key), tgt.block(*key)


def blockwise_rank(c: Complex, k: int) -> int:
    if k not in c.diffs:
        return 0
    d = c.diffs[k]
    return sum(c.field.rank(d[np.ix_(rows, cols)]) for _, cols, rows in _blocks(c, k) if rows.size)


def cycles(c: Complex, k: int) -> Matrix:
    """Columns spanning ker d_k inside C_k."""
    n = c.dim(k)
    if k not in c.diffs:
        return np.eye(n, dtype=np.int64)
    d = c.diffs[k]
    pieces = []
    for _, cols, rows in _blocks(c, k):
        ns = c.field.nullspace(d[np.ix_(rows, cols)]) if rows.size else np.eye(cols.size, dtype=np.int64)
        if ns.shape[1]:
            full = np.zeros((n, ns.shape[1]), dtype=np.int64)
            full[cols] = ns
            pieces.append(full)
    return np.hstack(pieces) if pieces else np.zeros((n, 0), dtype=np.int64)


def homology_dims(c: Complex) -> dict[int, int]:
    """dim H_k for every degree with nonzero homology."""
    ranks = {k: blockwise_rank(c, k) for k in c.degrees}
    out = {}
    for k in c.degrees:
        h = c.dim(k) - ranks[k] - ranks.get(k + 1, 0)
        if h:
            out[k] = h
    return out


def homology_subquotient(c: Complex, k: int) -> Subquotient:
    z = cycles(c, k)
    b = c.diff(k + 1) if k + 1 in c.diffs else None
    return subquotient(c.module(k), z, b, name=f"H{k}({c.name})")


def homology(c: Complex, k: int) -> Bimodule:
    """H_k(c) = ker d_k / im d_{k+1} with the induced actions."""
    if k not in c.terms:
        return Bimodule.zero(c.left, c.right)
    return homology_subquotient(c, k).module


def induced_map(f: ChainMap, k: int) -> BimoduleMap:
    """H_k(f) for a degree-zero chain map."""
    hs = homology_subquotient(f.source, k) if k in f.source.terms else None
    ht = homology_subquotient(f.target, k) if k in f.target.terms else None
    src = hs.module if hs else Bimodule.zero(f.source.left, f.source.right)
    tgt = ht.module if ht else Bimodule.zero(f.target.left, f.target.right)
    if not src.dim or not tgt.dim:
        return BimoduleMap(src, tgt, np.zeros((tgt.dim, src.dim), dtype=np.int64))
    images = f.source.field.matmul(f.component(k), hs.basis)
    return BimoduleMap(src, tgt, ht.project(images))


def is_acyclic(c: Complex) -> bool:
    return not homology_dims(c)


def concentrated_degree(c: Complex) -> int | None:
    """The single degree carrying homology, if there is exactly one."""
    dims = homology_dims(c)
    return next(iter(dims)) if len(dims) == 1 else None


def is_quasi_isomorphism(f: ChainMap) -> bool:
    degrees = set(homology_dims(f.source)) | set(homology_dims(f.target))
    return all(induced_map(f, k).is_invertible() for k in degrees)
