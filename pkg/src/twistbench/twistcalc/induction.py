# induction.py - The functor P ⊗_E - ⊗_E P^∨ on complexes of projective bimodules
# For E = eAe, P = Ae and P^∨ = eA,
#   P ⊗_E (E e_k ⊗ e_l E) ⊗_E P^∨ = A e_k ⊗ e_l A,
# so a complex of projective E-E bimodules induces to one of projective A-A
# bimodules on the same atoms, renumbered. Maps out of projective atoms are
# fixed by the image of e_k ⊗ e_l, which is carried along the corner
# embedding; a map into E becomes a map into A through P ⊗_E P^∨ -> A.

from __future__ import annotations

from functools import lru_cache

import numpy as np

from twistbench.chainx import (
    PROJECTIVE,
    REGULAR,
    Atom,
    ChainMap,
    Complex,
    generator_map,
    projective,
    regular_atom,
    stalk_algebra,
)
from twistbench.errors import AlgebraMismatch, PreconditionError
from twistbench.exactfield import Matrix
from twistbench.quivalg import CornerEmbedding


def _check_over_corner(c: Complex, emb: CornerEmbedding) -> None:
    if c.left is not emb.corner or c.right is not emb.corner:
        raise AlgebraMismatch(f"{c.name} is not a complex over {emb.corner.name}")


def _require_projective(c: Complex) -> None:
    bad = [a.label for k in c.degrees for a in c.atoms(k) if a.kind != PROJECTIVE]
    if bad:
        raise PreconditionError(f"{c.name} has non-projective atoms {bad}")


def induced_atom(a: Atom, emb: CornerEmbedding) -> Atom:
    amb = emb.ambient
    if a.kind == PROJECTIVE:
        return projective(amb, amb, emb.ambient_vertex(a.i), emb.ambient_vertex(a.j), a.grade)
    if a.kind == REGULAR:
        return regular_atom(amb)
    raise PreconditionError(f"cannot induce the atom {a.label}")


def _transport(z: Matrix, a: Atom, emb: CornerEmbedding) -> tuple[Atom, Matrix]:
    """An element of the corner atom a, written in the induced atom."""
    target = induced_atom(a, emb)
    if a.kind == REGULAR:
        return target, emb.embed(z)
    amb, e = emb.ambient, emb.corner
    bmap = np.asarray(emb.basis_map, dtype=np.int64)
    us, vs = amb.with_target(target.i), amb.with_source(target.j)
    pos_u = np.searchsorted(us, bmap[e.with_target(a.i)])
    pos_v = np.searchsorted(vs, bmap[e.with_source(a.j)])
    out = np.zeros(target.dim, dtype=np.int64)
    out[(pos_u[:, None] * vs.size + pos_v[None, :]).ravel()] = z
    return target, out


def _induced_block(
    m: Matrix,
    src: Complex,
    ks: int,
    tgt: Complex,
    kt: int,
    src_ind: Complex,
    tgt_ind: Complex,
    emb: CornerEmbedding,
) -> Matrix:
    out = np.zeros((tgt_ind.dim(kt), src_ind.dim(ks)), dtype=np.int64)
    offsets = src.offsets(ks)
    for ia, atom in enumerate(src.atoms(ks)):
        col = m[:, int(offsets[ia]) + int(atom.generator_columns[0])]
        if not col.any():
            continue
        s_ind = src_ind.atoms(ks)[ia]
        for ib, t_atom in enumerate(tgt.atoms(kt)):
            z = col[tgt.atom_slice(kt, ib)]
            if not z.any():
                continue
            t_ind, z_ind = _transport(z, t_atom, emb)
            out[tgt_ind.atom_slice(kt, ib), src_ind.atom_slice(ks, ia)] = generator_map(s_ind, t_ind.module, z_ind)
    return out


@lru_cache(maxsize=256)
def induce(c: Complex, emb: CornerEmbedding) -> Complex:
    """P ⊗_E c ⊗_E P^∨ for a complex c of projective E-E bimodules."""
    _check_over_corner(c, emb)
    _require_projective(c)
    amb = emb.ambient
    terms = {k: tuple(induced_atom(a, emb) for a in c.atoms(k)) for k in c.degrees}
    shell = Complex.build(amb, amb, terms, {})
    diffs = {k: _induced_block(d, c, k, c, k - 1, shell, shell, emb) for k, d in c.diffs.items()}
    return Complex.build(amb, amb, terms, diffs, name=f"P⊗{c.name}⊗P∨")


def induce_map(f: ChainMap, emb: CornerEmbedding, source: Complex | None = None,
               target: Complex | None = None) -> ChainMap:
    """P ⊗ f ⊗ P^∨ between induced complexes of projectives."""
    src = source or induce(f.source, emb)
    tgt = target or induce(f.target, emb)
    _require_projective(f.source)
    comps = {
        k: _induced_block(m, f.source, k, f.target, k + f.degree, src, tgt, emb)
        for k, m in f.components.items()
    }
    return ChainMap.build(src, tgt, comps, f.degree)


def induce_augmentation(f: ChainMap, emb: CornerEmbedding) -> ChainMap:
    """ev ∘ (P ⊗ f ⊗ P^∨): induce(Y) -> A for an augmentation f: Y -> E."""
    _check_over_corner(f.source, emb)
    tgt = f.target
    if f.degree or tgt.degrees != [0] or any(a.kind != REGULAR for a in tgt.atoms(0)):
        raise PreconditionError("an augmentation maps into E concentrated in degree 0")
    src = induce(f.source, emb)
    amb_stalk = stalk_algebra(emb.ambient)
    if len(tgt.atoms(0)) != 1:
        raise PreconditionError("an augmentation maps into a single copy of E")
    comps = {0: _induced_block(f.component(0), f.source, 0, tgt, 0, src, amb_stalk, emb)} if 0 in f.source.terms else {}
    return ChainMap.build(src, amb_stalk, comps)
