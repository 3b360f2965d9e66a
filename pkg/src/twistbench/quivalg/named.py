# named.py - The zig-zag algebras Γₙ, preprojective algebras Πₙ and friends
# Arrows: Γₙ has a{i}: i -> i+1 and b{j}: j -> j-1; Πₙ has x{i}: i -> i+1 and
# y{j}: j -> j-1. Paths compose left to right. Constructors are cached per
# (n, field) so automorphisms and maps refer to the same Algebra object.

from __future__ import annotations

from functools import lru_cache

import numpy as np

from twistbench.errors import PreconditionError
from twistbench.exactfield import PrimeField
from twistbench.quivalg.algebra import (
    Algebra,
    AlgebraMap,
    Automorphism,
    build_path_algebra,
    corner_algebra,
)
from twistbench.quivalg.paths import Arrow, Quiver

DEFAULT_FIELD = PrimeField()


def _check_n(n: int, least: int = 1) -> None:
    if not isinstance(n, int) or n < least:
        raise PreconditionError(f"n must be an integer >= {least}, got {n!r}")


@lru_cache(maxsize=None)
def gamma(n: int, field: PrimeField = DEFAULT_FIELD) -> Algebra:
    """Γₙ: Γ₁ = k[x]/(x²) with deg x = 2, otherwise path-length graded of dim 4n-2."""
    _check_n(n)
    if n == 1:
        quiver = Quiver(1, (Arrow("x", 1, 1, 2),))
        return build_path_algebra(quiver, [{("x", "x"): 1}], field=field, name="Gamma1")
    arrows = [Arrow(f"a{i}", i, i + 1) for i in range(1, n)]
    arrows += [Arrow(f"b{j}", j, j - 1) for j in range(2, n + 1)]
    quiver = Quiver(n, tuple(arrows))
    if n == 2:
        relations = [{("a1", "b2", "a1"): 1}, {("b2", "a1", "b2"): 1}]
    else:
        relations = []
        for i in range(2, n):
            relations.append({(f"a{i-1}", f"a{i}"): 1})
            relations.append({(f"b{i+1}", f"b{i}"): 1})
            relations.append({(f"a{i}", f"b{i+1}"): 1, (f"b{i}", f"a{i-1}"): -1})
    return build_path_algebra(quiver, relations, field=field, name=f"Gamma{n}")


@lru_cache(maxsize=None)
def preprojective(n: int, field: PrimeField = DEFAULT_FIELD) -> Algebra:
    """Πₙ of type Aₙ; top degree n-1, dimension n(n+1)(n+2)/6."""
    _check_n(n)
    arrows = [Arrow(f"x{i}", i, i + 1) for i in range(1, n)]
    arrows += [Arrow(f"y{j}", j, j - 1) for j in range(2, n + 1)]
    quiver = Quiver(n, tuple(arrows))
    relations = []
    if n >= 2:
        relations.append({("x1", "y2"): 1})
        for i in range(2, n):
            relations.append({(f"x{i}", f"y{i+1}"): 1, (f"y{i}", f"x{i-1}"): -1})
        relations.append({(f"y{n}", f"x{n-1}"): 1})
    return build_path_algebra(quiver, relations, field=field, max_degree=n + 2, name=f"Pi{n}")


@lru_cache(maxsize=None)
def linear_orientation_algebra(n: int, field: PrimeField = DEFAULT_FIELD) -> tuple[Algebra, AlgebraMap]:
    """Path algebra of 1 -> 2 -> ... -> n and the surjection Πₙ -> kA⃗ₙ killing every y."""
    _check_n(n)
    quiver = Quiver(n, tuple(Arrow(f"x{i}", i, i + 1) for i in range(1, n)))
    line = build_path_algebra(quiver, (), field=field, max_degree=n + 1, name=f"A{n}")
    pi = preprojective(n, field)
    images = {f"x{i}": line.basis_vector(line.arrow_index[f"x{i}"]) for i in range(1, n)}
    images.update({f"y{j}": np.zeros(line.dim, dtype=np.int64) for j in range(2, n + 1)})
    surjection = AlgebraMap.from_arrow_images(pi, line, images, tuple(pi.vertices))
    return line, surjection


@lru_cache(maxsize=None)
def tau(n: int, field: PrimeField = DEFAULT_FIELD) -> Automorphism:
    """τₙ on Γₙ: e_i -> e_{n+1-i}, a_i <-> b_{n+1-i}; τ₁(x) = -x."""
    a = gamma(n, field)
    if n == 1:
        images = {"x": (-a.element("x")) % field.p}
        return Automorphism.from_map(AlgebraMap.from_arrow_images(a, a, images, (1,)))
    images = {}
    for i in range(1, n):
        images[f"a{i}"] = a.element(f"b{n + 1 - i}")
    for j in range(2, n + 1):
        images[f"b{j}"] = a.element(f"a{n + 1 - j}")
    vmap = tuple(n + 1 - v for v in a.vertices)
    return Automorphism.from_map(AlgebraMap.from_arrow_images(a, a, images, vmap))


@lru_cache(maxsize=None)
def tau_dual(n: int, field: PrimeField = DEFAULT_FIELD) -> Automorphism:
    """τₙ! on Πₙ: x_i -> (-1)^(n-i) y_{n+1-i}, y_j -> (-1)^(j-1) x_{n+1-j}."""
    a = preprojective(n, field)
    images = {}
    for i in range(1, n):
        images[f"x{i}"] = ((-1) ** (n - i) * a.element(f"y{n + 1 - i}")) % field.p
    for j in range(2, n + 1):
        images[f"y{j}"] = ((-1) ** (j - 1) * a.element(f"x{n + 1 - j}")) % field.p
    vmap = tuple(n + 1 - v for v in a.vertices)
    return Automorphism.from_map(AlgebraMap.from_arrow_images(a, a, images, vmap))


@lru_cache(maxsize=None)
def preprojective_quotient_maps(n: int, field: PrimeField = DEFAULT_FIELD) -> tuple[AlgebraMap, AlgebraMap]:
    """(π^ℓ, π^r): Πₙ -> Π_{n-1}, killing e_n resp. e_1."""
    _check_n(n, 2)
    big = preprojective(n, field)
    small = preprojective(n - 1, field)
    zero = np.zeros(small.dim, dtype=np.int64)

    left_images = {}
    for i in range(1, n):
        left_images[f"x{i}"] = small.element(f"x{i}") if i <= n - 2 else zero
    for j in range(2, n + 1):
        left_images[f"y{j}"] = small.element(f"y{j}") if j <= n - 1 else zero
    left_vmap = tuple(v if v <= n - 1 else None for v in big.vertices)
    pi_left = AlgebraMap.from_arrow_images(big, small, left_images, left_vmap)

    right_images = {}
    for i in range(1, n):
        right_images[f"x{i}"] = small.element(f"x{i - 1}") if i >= 2 else zero
    for j in range(2, n + 1):
        right_images[f"y{j}"] = small.element(f"y{j - 1}") if j >= 3 else zero
    right_vmap = tuple(v - 1 if v >= 2 else None for v in big.vertices)
    pi_right = AlgebraMap.from_arrow_images(big, small, right_images, right_vmap)
    return pi_left, pi_right


def gamma_corner_isomorphism(n: int, i: int, j: int, field: PrimeField = DEFAULT_FIELD) -> AlgebraMap:
    """The explicit map Γ_{j-i+1} -> corner of Γₙ at e_i + ... + e_j.

    For m = j-i+1 >= 3 arrows go to arrows; for m = 2 the corner's loops
    make the cubic relations of Γ₂ hold; for m = 1 x goes to the loop at i.
    """
    if not 1 <= i <= j <= n:
        raise PreconditionError(f"need 1 <= i <= j <= n, got i={i}, j={j}, n={n}")
    big = gamma(n, field)
    corner, emb = corner_algebra(big, range(i, j + 1))
    m = j - i + 1
    small = gamma(m, field)

    def in_corner(word: str):
        return emb.restrict(big.element(word))

    if m == 1:
        if n == 1:
            loop = "x"
        else:
            loop = f"a{i}.b{i + 1}" if i < n else f"b{i}.a{i - 1}"
        images = {"x": in_corner(loop)}
        return AlgebraMap.from_arrow_images(small, corner, images, (1,))
    images = {}
    for k in range(1, m):
        images[f"a{k}"] = in_corner(f"a{i + k - 1}")
    for k in range(2, m + 1):
        images[f"b{k}"] = in_corner(f"b{i + k - 1}")
    return AlgebraMap.from_arrow_images(small, corner, images, tuple(range(1, m + 1)))
