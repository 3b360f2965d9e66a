# spherical.py - Spherical twists X_i, braid words and the complexes G_m, H_m
# X_i = cone(A e_i ⊗ e_i A -> A) sits in degrees 1, 0. A braid word evaluates
# to the tensor product of the X_i in word order, minimized after every
# factor so the atom count stays quadratic in the word length.
#
# G_m lives in degrees 0..m-1 with G_{m,i} = ⊕_{j=1}^{m-i} P_{i+j,j}. The
# generator of P_{i+j,j} goes to b_{i+j} ⊗ e_j and to (-1)^i e_{i+j} ⊗ b_{j+1};
# H_m = cone(G_m -> A) is isomorphic to the evaluation of (m, m-1, ..., 1).

from __future__ import annotations

from collections.abc import Iterable, Sequence
from functools import lru_cache

import numpy as np

from twistbench.bimod import regular
from twistbench.chainx import (
    ChainMap,
    Complex,
    cone,
    generator_map,
    minimize,
    projective,
    pure_tensor,
    stalk,
    stalk_algebra,
    tensor_complex,
)
from twistbench.errors import NotAnConfiguration, NotSpherical, PreconditionError
from twistbench.log import get_logger
from twistbench.quivalg import Algebra, corner_algebra
from twistbench.twistcalc.braid import BraidWord

log = get_logger(__name__)


def _check_vertex(a: Algebra, i: int) -> None:
    if not isinstance(i, (int, np.integer)) or not 1 <= i <= a.num_vertices:
        raise PreconditionError(f"vertex {i!r} out of range 1..{a.num_vertices}")


def is_spherical(a: Algebra, i: int) -> bool:
    """End(A e_i) ≅ k[x]/(x²): a local corner of dimension 2."""
    _check_vertex(a, i)
    corner, _ = corner_algebra(a, [i])
    return corner.dim == 2 and corner.loewy_length == 2


def require_spherical(a: Algebra, i: int) -> None:
    if not is_spherical(a, i):
        corner, _ = corner_algebra(a, [i])
        raise NotSpherical(f"e_{i} {a.name} e_{i} has dimension {corner.dim}, not k[x]/(x^2)")


def is_an_configuration(a: Algebra, vertices: Iterable[int]) -> bool:
    """Spherical projectives with one-dimensional Hom between neighbours, none otherwise."""
    chain = list(vertices)
    if not chain or len(set(chain)) != len(chain):
        return False
    for v in chain:
        _check_vertex(a, v)
    if not all(is_spherical(a, v) for v in chain):
        return False
    for s, v in enumerate(chain):
        for t, w in enumerate(chain):
            if s == t:
                continue
            want = 1 if abs(s - t) == 1 else 0
            if a.block(v, w).size != want:
                return False
    return True


def require_an_configuration(a: Algebra, vertices: Iterable[int]) -> None:
    chain = list(vertices)
    if not is_an_configuration(a, chain):
        raise NotAnConfiguration(f"vertices {chain} of {a.name} are not an A_{len(chain)}-configuration")


# =============================================================================
# Twist complexes
# =============================================================================


@lru_cache(maxsize=None)
def spherical_evaluation(a: Algebra, i: int) -> ChainMap:
    """ev: A e_i ⊗ e_i A -> A as a map of stalk complexes in degree 0."""
    require_spherical(a, i)
    atom = projective(a, a, i, i)
    src = stalk(atom, 0, name=atom.label)
    ev = generator_map(atom, regular(a), a.basis_vector(a.idempotent(i)))
    return ChainMap.build(src, stalk_algebra(a), {0: ev})


@lru_cache(maxsize=None)
def spherical_twist_complex(a: Algebra, i: int) -> Complex:
    """X_i = cone(ev), terms P_{i,i} in degree 1 and A in degree 0."""
    return cone(spherical_evaluation(a, i), name=f"X{i}")


def apply_word(a: Algebra, w: BraidWord | Sequence[int]) -> Complex:
    """X_{i_1} ⊗ X_{i_2} ⊗ ... for the word (i_1, i_2, ...), minimized."""
    word = w if isinstance(w, BraidWord) else BraidWord(a.num_vertices, tuple(w))
    if word.n > a.num_vertices:
        raise PreconditionError(f"word for B_{word.n + 1} does not act on {a.name}")
    require_an_configuration(a, range(1, word.n + 1))
    return _evaluate(a, word.letters)


@lru_cache(maxsize=512)
def _evaluate(a: Algebra, letters: tuple[int, ...]) -> Complex:
    if not letters:
        return stalk_algebra(a)
    prefix = _evaluate(a, letters[:-1])
    product = minimize(tensor_complex(prefix, spherical_twist_complex(a, letters[-1])))
    name = "X(" + ",".join(map(str, letters)) + ")"
    log.debug("word %s: dims %s", name, product.dims)
    return product.renamed(name)


# =============================================================================
# G_m and H_m
# =============================================================================


def _pure_tensor(a: Algebra, i: int, j: int, u: int, v: int) -> np.ndarray:
    return pure_tensor(projective(a, a, i, j), u, v)


def _check_m(a: Algebra, m: int) -> None:
    if not isinstance(m, int) or not 1 <= m <= a.num_vertices:
        raise PreconditionError(f"m must lie in 1..{a.num_vertices}, got {m!r}")
    missing = [f"b{k}" for k in range(2, m + 1) if f"b{k}" not in a.arrow_index]
    if missing:
        raise PreconditionError(f"{a.name} has no arrows {missing}")


@lru_cache(maxsize=None)
def g_complex(a: Algebra, m: int) -> Complex:
    _check_m(a, m)
    p = a.field.p
    terms = {i: tuple(projective(a, a, i + j, j) for j in range(1, m - i + 1)) for i in range(m)}
    shell = Complex.build(a, a, terms, {})
    diffs = {}
    for i in range(1, m):
        d = np.zeros((shell.dim(i - 1), shell.dim(i)), dtype=np.int64)
        for j in range(1, m - i + 1):
            src = terms[i][j - 1]
            cols = shell.atom_slice(i, j - 1)
            # b_{i+j} ⊗ e_j in P_{i+j-1,j}
            down = _pure_tensor(a, i + j - 1, j, a.arrow_index[f"b{i + j}"], a.idempotent(j))
            d[shell.atom_slice(i - 1, j - 1), cols] = generator_map(src, terms[i - 1][j - 1].module, down)
            # (-1)^i e_{i+j} ⊗ b_{j+1} in P_{i+j,j+1}
            right = _pure_tensor(a, i + j, j + 1, a.idempotent(i + j), a.arrow_index[f"b{j + 1}"])
            blk = generator_map(src, terms[i - 1][j].module, right)
            d[shell.atom_slice(i - 1, j), cols] = (-blk if i % 2 else blk) % p
        diffs[i] = d
    return Complex.build(a, a, terms, diffs, name=f"G{m}")


@lru_cache(maxsize=None)
def h_complex(a: Algebra, m: int) -> Complex:
    """H_m = cone(G_m -> A), the augmentation sending each generator e_j ⊗ e_j to e_j."""
    g = g_complex(a, m)
    reg = regular(a)
    ev = np.hstack([generator_map(atom, reg, a.basis_vector(a.idempotent(atom.i))) for atom in g.atoms(0)])
    return cone(ChainMap.build(g, stalk_algebra(a), {0: ev}), name=f"H{m}")
