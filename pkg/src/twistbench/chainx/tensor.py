# tensor.py - Koszul-signed tensor products of complexes over a middle algebra
# Atom pairs are tensored by rule: A ⊗ X and X ⊗ A collapse to X through the
# action, P_{i,j} ⊗ P_{k,l} splits as a sum of P_{i,l} over a basis of e_j A e_k,
# anything else goes through the generic quotient construction. Every pair
# keeps a section and a projection table so maps can be tensored blockwise.

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from twistbench.bimod import Bimodule, TensorProduct, direct_sum, tensor_over
from twistbench.chainx.atoms import PROJECTIVE, REGULAR, Atom, module_atom, projective
from twistbench.chainx.complex import ChainMap, Complex, stalk_algebra
from twistbench.errors import AlgebraMismatch
from twistbench.exactfield import Matrix
from twistbench.log import get_logger

log = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class AtomTensor:
    atoms: tuple[Atom, ...]
    data: TensorProduct

    @property
    def dim(self) -> int:
        return int(self.data.section_first.size)


def _collapse_left(a: Atom, b: Atom) -> AtomTensor:
    # A ⊗_A M = M with x ⊗ m -> x m
    m = b.module
    mid = a.module.right
    first = np.array([mid.idempotent(int(v)) for v in m.left_vertex], dtype=np.int64)
    proj = np.ascontiguousarray(m.left_action.transpose(0, 2, 1))
    return AtomTensor((b,), TensorProduct(m, a.module, m, first, np.arange(m.dim), proj))


def _collapse_right(a: Atom, b: Atom) -> AtomTensor:
    # M ⊗_A A = M with m ⊗ y -> m y
    m = a.module
    mid = b.module.left
    second = np.array([mid.idempotent(int(v)) for v in m.right_vertex], dtype=np.int64)
    proj = np.ascontiguousarray(m.right_action.transpose(2, 0, 1))
    return AtomTensor((a,), TensorProduct(m, m, b.module, np.arange(m.dim), second, proj))


def _split_projectives(a: Atom, b: Atom) -> AtomTensor:
    # (X e_i ⊗ e_j B) ⊗_B (B e_k ⊗ e_l Y) = ⊕_{w in e_j B e_k} X e_i ⊗ e_l Y
    x, mid, y = a.module.left, a.module.right, b.module.right
    us = x.with_target(a.i)
    xs2 = mid.with_source(a.j)
    ys1 = mid.with_target(b.i)
    vs = y.with_source(b.j)
    ws = mid.block(a.j, b.i)
    nu, n2, n1, nv, nr = us.size, xs2.size, ys1.size, vs.size, ws.size
    atoms = tuple(projective(x, y, a.i, b.j, a.grade + b.grade + int(mid.degrees[w])) for w in ws)

    coef = mid.mult[np.ix_(xs2, ys1, ws)]
    proj = np.zeros((nu, n2, n1, nv, nr, nu, nv), dtype=np.int64)
    uu = np.arange(nu)[:, None]
    vv = np.arange(nv)[None, :]
    proj[uu, :, :, vv, :, uu, vv] = coef
    proj = proj.reshape(nu * n2, n1 * nv, nr * nu * nv)

    ej = int(np.flatnonzero(xs2 == mid.idempotent(a.j))[0])
    w_pos = np.array([int(np.flatnonzero(ys1 == w)[0]) for w in ws], dtype=np.int64)
    r, u, v = np.meshgrid(np.arange(nr), np.arange(nu), np.arange(nv), indexing="ij")
    first = (u * n2 + ej).ravel()
    second = (w_pos[r] * nv + v).ravel()
    if atoms:
        module = direct_sum([t.module for t in atoms]) if len(atoms) > 1 else atoms[0].module
    else:
        module = Bimodule.zero(x, y)
    return AtomTensor(atoms, TensorProduct(module, a.module, b.module, first.astype(np.int64),
                                           second.astype(np.int64), proj))


@lru_cache(maxsize=None)
def atom_tensor(a: Atom, b: Atom) -> AtomTensor:
    """a ⊗_B b as a tuple of atoms with section and projection data."""
    if a.module.right is not b.module.left:
        raise AlgebraMismatch(f"cannot tensor {a} with {b}")
    if a.kind == REGULAR:
        return _collapse_left(a, b)
    if b.kind == REGULAR:
        return _collapse_right(a, b)
    if a.kind == PROJECTIVE and b.kind == PROJECTIVE:
        return _split_projectives(a, b)
    t = tensor_over(a.module, b.module)
    atoms = (module_atom(t.module),) if t.module.dim else ()
    return AtomTensor(atoms, t)


# =============================================================================
# Complexes
# =============================================================================


@dataclass(frozen=True)
class _Summand:
    p: int
    first: int
    second: int
    offset: int
    tensor: AtomTensor


def _layout(c: Complex, d: Complex) -> dict[int, list[_Summand]]:
    layout: dict[int, list[_Summand]] = {}
    for n in range(c.lo + d.lo, c.hi + d.hi + 1):
        offset = 0
        summands = []
        for p in c.degrees:
            q = n - p
            if q not in d.terms:
                continue
            for ia, a in enumerate(c.atoms(p)):
                for ib, b in enumerate(d.atoms(q)):
                    t = atom_tensor(a, b)
                    summands.append(_Summand(p, ia, ib, offset, t))
                    offset += t.dim
        if summands:
            layout[n] = summands
    return layout


@lru_cache(maxsize=256)
def tensor_complex(c: Complex, d: Complex) -> Complex:
    """Total complex of c ⊗_B d with d = d_c ⊗ 1 + (-1)^p 1 ⊗ d_d."""
    if c.right is not d.left:
        raise AlgebraMismatch(f"cannot tensor {c} with {d}: middle algebras differ")
    p_ = c.field.p
    layout = _layout(c, d)
    terms = {n: sum((s.tensor.atoms for s in ss), ()) for n, ss in layout.items()}
    dims = {n: sum(s.tensor.dim for s in ss) for n, ss in layout.items()}
    diffs = {}
    for n, summands in layout.items():
        if n - 1 not in layout:
            continue
        index = {(s.p, s.first, s.second): s for s in layout[n - 1]}
        out = np.zeros((dims[n - 1], dims[n]), dtype=np.int64)
        for s in summands:
            q = n - s.p
            cols = slice(s.offset, s.offset + s.tensor.dim)
            sec_a, sec_b = s.tensor.data.section_first, s.tensor.data.section_second
            if s.p - 1 in c.terms:
                dc = c.diff(s.p)[:, c.atom_slice(s.p, s.first)]
                for ia2 in range(len(c.atoms(s.p - 1))):
                    blk = dc[c.atom_slice(s.p - 1, ia2)]
                    if not blk.any():
                        continue
                    tgt = index[(s.p - 1, ia2, s.second)]
                    val = np.einsum("kt,ktu->ut", blk[:, sec_a], tgt.tensor.data.projection[:, sec_b, :])
                    out[tgt.offset:tgt.offset + tgt.tensor.dim, cols] += val
            if q - 1 in d.terms:
                sign = -1 if s.p % 2 else 1
                dd = d.diff(q)[:, d.atom_slice(q, s.second)]
                for ib2 in range(len(d.atoms(q - 1))):
                    blk = dd[d.atom_slice(q - 1, ib2)]
                    if not blk.any():
                        continue
                    tgt = index[(s.p, s.first, ib2)]
                    val = np.einsum("kt,tku->ut", blk[:, sec_b], tgt.tensor.data.projection[sec_a, :, :])
                    out[tgt.offset:tgt.offset + tgt.tensor.dim, cols] += sign * val
        diffs[n] = out % p_
    result = Complex.build(c.left, d.right, terms, diffs, name=f"{c.name}⊗{d.name}")
    log.debug("tensor %s ⊗ %s -> dims %s", c.name, d.name, result.dims)
    return result


def tensor_maps(f: ChainMap, g: ChainMap, source: Complex | None = None, target: Complex | None = None) -> ChainMap:
    """f ⊗ g with (f ⊗ g)(x ⊗ y) = (-1)^{|g| |x|} f(x) ⊗ g(y)."""
    src = source or tensor_complex(f.source, g.source)
    tgt = target or tensor_complex(f.target, g.target)
    src_layout = _layout(f.source, g.source)
    tgt_layout = _layout(f.target, g.target)
    comps: dict[int, Matrix] = {}
    deg = f.degree + g.degree
    p = f.source.field.p
    for n, summands in src_layout.items():
        if n + deg not in tgt_layout:
            continue
        index = {(s.p, s.first, s.second): s for s in tgt_layout[n + deg]}
        out = np.zeros((tgt.dim(n + deg), src.dim(n)), dtype=np.int64)
        for s in summands:
            q = n - s.p
            sign = -1 if (g.degree * s.p) % 2 else 1
            fx = f.component(s.p)
            gy = g.component(q)
            if not fx.any() or not gy.any():
                continue
            fx = fx[:, f.source.atom_slice(s.p, s.first)]
            gy = gy[:, g.source.atom_slice(q, s.second)]
            sec_a, sec_b = s.tensor.data.section_first, s.tensor.data.section_second
            cols = slice(s.offset, s.offset + s.tensor.dim)
            for ia2 in range(len(f.target.atoms(s.p + f.degree))):
                fblk = fx[f.target.atom_slice(s.p + f.degree, ia2)]
                if not fblk.any():
                    continue
                for ib2 in range(len(g.target.atoms(q + g.degree))):
                    gblk = gy[g.target.atom_slice(q + g.degree, ib2)]
                    if not gblk.any():
                        continue
                    tgt_s = index[(s.p + f.degree, ia2, ib2)]
                    half = np.einsum("kt,klu->tlu", fblk[:, sec_a], tgt_s.tensor.data.projection) % p
                    val = np.einsum("lt,tlu->ut", gblk[:, sec_b], half)
                    out[tgt_s.offset:tgt_s.offset + tgt_s.tensor.dim, cols] += sign * val
        comps[n] = out
    return ChainMap.build(src, tgt, comps, deg)


def summand_offsets(c: Complex, d: Complex) -> dict[int, dict[tuple[int, int, int], tuple[int, int]]]:
    """(p, atom of c_p, atom of d_{n-p}) -> (offset, dim) inside (c ⊗ d)_n."""
    return {
        n: {(s.p, s.first, s.second): (s.offset, s.tensor.dim) for s in summands}
        for n, summands in _layout(c, d).items()
    }


# =============================================================================
# Canonical isomorphisms
# =============================================================================


def left_unit(c: Complex) -> ChainMap:
    """A ⊗_A C -> C; the atoms agree so the map is the identity."""
    t = tensor_complex(stalk_algebra(c.left), c)
    return ChainMap.identity(c).retarget(source=t)


def right_unit(c: Complex) -> ChainMap:
    """C ⊗_B B -> C."""
    t = tensor_complex(c, stalk_algebra(c.right))
    return ChainMap.identity(c).retarget(source=t)


def shift_out_left(shifted: Complex, d: Complex, k: int, target: Complex) -> ChainMap:
    """(C[k]) ⊗ D -> (C ⊗ D)[k], identity on elements; shifted is C[k]."""
    src = tensor_complex(shifted, d)
    return ChainMap.build(src, target, {n: np.eye(src.dim(n), dtype=np.int64) for n in src.degrees})


def shift_out_right(c: Complex, shifted: Complex, k: int, target: Complex) -> ChainMap:
    """C ⊗ (D[k]) -> (C ⊗ D)[k], x ⊗ y -> (-1)^{k deg x} x ⊗ y; shifted is D[k]."""
    src = tensor_complex(c, shifted)
    comps = {}
    for n, summands in _layout(c, shifted).items():
        signs = np.concatenate([
            np.full(s.tensor.dim, -1 if (k * s.p) % 2 else 1, dtype=np.int64) for s in summands
        ])
        comps[n] = np.diag(signs)
    return ChainMap.build(src, target, comps)
