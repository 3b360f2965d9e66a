# tensor.py - Tensor products over an algebra and the projective pieces P, P^∨
# M ⊗_B N is the quotient of the span of basis pairs (m, n) with rv(m) = lv(n)
# by m*b ⊗ n - m ⊗ b*n for radical generators b. The quotient basis consists of
# pure pairs (the section) and every pair has a row in the projection table.

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from twistbench.bimod.module import Bimodule, BimoduleMap, regular
from twistbench.errors import AlgebraMismatch
from twistbench.exactfield import Matrix
from twistbench.log import get_logger
from twistbench.quivalg import Algebra, CornerEmbedding

log = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class TensorProduct:
    """M ⊗_B N with section and projection.

    section[t] = (m, n) is a pure pair whose class is basis vector t;
    projection[m, n] gives the coordinates of the class of m ⊗ n.
    """

    module: Bimodule
    first: Bimodule
    second: Bimodule
    section_first: np.ndarray
    section_second: np.ndarray
    projection: Matrix

    def map_first(self, f: BimoduleMap, other: TensorProduct) -> BimoduleMap:
        """f ⊗ id_N: self -> other, where other = f.target ⊗ N."""
        cols = np.einsum("kt,ktu->ut", f.matrix[:, self.section_first],
                         other.projection[:, self.section_second, :])
        return BimoduleMap(self.module, other.module, cols % f.source.field.p)

    def map_second(self, g: BimoduleMap, other: TensorProduct) -> BimoduleMap:
        """id_M ⊗ g: self -> other, where other = M ⊗ g.target."""
        cols = np.einsum("kt,tku->ut", g.matrix[:, self.section_second],
                         other.projection[self.section_first, :, :])
        return BimoduleMap(self.module, other.module, cols % g.source.field.p)


@lru_cache(maxsize=4096)
def tensor_over(m: Bimodule, n: Bimodule) -> TensorProduct:
    """M ⊗_B N for an A-B bimodule M and a B-C bimodule N."""
    if m.right is not n.left:
        raise AlgebraMismatch(f"cannot tensor {m} with {n}: middle algebras differ")
    mid = m.right
    fld = mid.field
    p = fld.p
    dm, dn = m.dim, n.dim

    pairs = [(i, j) for i in range(dm) for j in range(dn) if m.right_vertex[i] == n.left_vertex[j]]
    pair_index = {pr: k for k, pr in enumerate(pairs)}
    npairs = len(pairs)

    rows = []
    for b in mid.generators:
        src, tgt = mid.basis[b].source, mid.basis[b].target
        rb = m.right_action[b]
        lb = n.left_action[b]
        for i in np.flatnonzero(m.right_vertex == src):
            for j in np.flatnonzero(n.left_vertex == tgt):
                row = np.zeros(npairs, dtype=np.int64)
                for i2 in np.flatnonzero(rb[:, i]):
                    row[pair_index[(int(i2), int(j))]] += rb[i2, i]
                for j2 in np.flatnonzero(lb[:, j]):
                    row[pair_index[(int(i), int(j2))]] -= lb[j2, j]
                row %= p
                if row.any():
                    rows.append(row)

    ech = fld.rref(np.vstack(rows)) if rows else fld.rref(np.zeros((0, npairs), dtype=np.int64))
    pivots = list(ech.pivots)
    pivot_set = set(pivots)
    free = [c for c in range(npairs) if c not in pivot_set]
    reduce = np.zeros((npairs, len(free)), dtype=np.int64)
    reduce[free, np.arange(len(free))] = 1
    if pivots and free:
        reduce[pivots, :] = (-ech.matrix[: ech.rank][:, free]) % p

    dt = len(free)
    projection = np.zeros((dm, dn, dt), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        projection[i, j] = reduce[k]
    sec_m = np.array([pairs[c][0] for c in free], dtype=np.int64)
    sec_n = np.array([pairs[c][1] for c in free], dtype=np.int64)

    left = np.einsum("akt,ktu->aut", m.left_action[:, :, sec_m], projection[:, sec_n, :]) % p
    right = np.einsum("ckt,tku->cut", n.right_action[:, :, sec_n], projection[sec_m, :, :]) % p
    grading = None
    if m.grading is not None and n.grading is not None:
        grading = m.grading[sec_m] + n.grading[sec_n]
    module = Bimodule(m.left, n.right, left, right, m.left_vertex[sec_m].copy(), n.right_vertex[sec_n].copy(),
                      grading, name=f"({m.name}⊗{n.name})")
    log.debug("tensor %s ⊗ %s: %d pairs -> dim %d", m.name, n.name, npairs, dt)
    return TensorProduct(module, m, n, sec_m, sec_n, projection)


# =============================================================================
# P = Ae, P^∨ = eA and the evaluation map
# =============================================================================


@lru_cache(maxsize=None)
def left_projective(emb: CornerEmbedding) -> Bimodule:
    """P = Ae as an A-E bimodule (E = eAe)."""
    a, e = emb.ambient, emb.corner
    us = np.flatnonzero(np.isin(a.targets, emb.vertices))
    amb = np.array(emb.basis_map, dtype=np.int64)
    left = a.left_mult[:, us][:, :, us]
    right = a.right_mult[amb][:, us][:, :, us]
    rv = np.array([emb.corner_vertex(int(v)) for v in a.targets[us]], dtype=np.int64)
    return Bimodule(a, e, left, right, a.sources[us].copy(), rv, a.degrees[us].copy(), name=f"{a.name}e")


@lru_cache(maxsize=None)
def right_projective(emb: CornerEmbedding) -> Bimodule:
    """P^∨ = eA as an E-A bimodule."""
    a, e = emb.ambient, emb.corner
    vs = np.flatnonzero(np.isin(a.sources, emb.vertices))
    amb = np.array(emb.basis_map, dtype=np.int64)
    left = a.left_mult[amb][:, vs][:, :, vs]
    right = a.right_mult[:, vs][:, :, vs]
    lv = np.array([emb.corner_vertex(int(v)) for v in a.sources[vs]], dtype=np.int64)
    return Bimodule(e, a, left, right, lv, a.targets[vs].copy(), a.degrees[vs].copy(), name=f"e{a.name}")


def projective_basis(emb: CornerEmbedding, side: str) -> np.ndarray:
    """Ambient basis indices underlying Ae (side="left") or eA (side="right")."""
    a = emb.ambient
    labels = a.targets if side == "left" else a.sources
    return np.flatnonzero(np.isin(labels, emb.vertices))


def evaluation_map(emb: CornerEmbedding) -> tuple[TensorProduct, BimoduleMap]:
    """ev: Ae ⊗_E eA -> A, p ⊗ q -> pq."""
    a = emb.ambient
    t = tensor_over(left_projective(emb), right_projective(emb))
    us = projective_basis(emb, "left")
    vs = projective_basis(emb, "right")
    cols = a.mult[us[t.section_first], vs[t.section_second], :].T
    return t, BimoduleMap(t.module, regular(a), cols % a.field.p)


def multiplication_map(a: Algebra) -> BimoduleMap:
    """A ⊗_A A -> A."""
    reg = regular(a)
    t = tensor_over(reg, reg)
    cols = a.mult[t.section_first, t.section_second, :].T
    return BimoduleMap(t.module, reg, cols % a.field.p)
