# periodic.py - Periodic twists from truncated bimodule resolutions
# TwistData bundles A, a corner embedding E = eAe, a complex Y of projective
# E-E bimodules and an augmentation f: Y -> E. The twist is
#   X = cone(P ⊗_E Y ⊗_E P^∨ -> P ⊗_E E ⊗_E P^∨ -> A).
# detect_periodicity builds the minimal projective bimodule resolution of E
# one syzygy at a time and stops at the first syzygy of the form E_τ.

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any

import numpy as np

from twistbench.bimod import (
    BimoduleMap,
    automorphisms_equivalent,
    find_isomorphism,
    identify_invertible,
    left_projective,
    regular,
    right_projective,
    sub_bimodule,
    top_space,
    twist_right,
)
from twistbench.chainx import (
    PROJECTIVE,
    REGULAR,
    ChainMap,
    Complex,
    cone,
    generator_map,
    homology_dims,
    module_atom,
    projective,
    stalk,
    stalk_algebra,
    symmetric_gram,
)
from twistbench.errors import MalformedTwistData, PreconditionError
from twistbench.exactfield import Matrix
from twistbench.log import get_logger
from twistbench.quivalg import Algebra, Automorphism, CornerEmbedding, corner_algebra
from twistbench.twistcalc.induction import induce_augmentation
from twistbench.twistcalc.spherical import require_spherical

log = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class TwistData:
    """P = A e with E = eAe, a resolution Y of E-E bimodules and f: Y -> E."""

    algebra: Algebra
    emb: CornerEmbedding
    resolution: Complex
    augmentation: ChainMap
    name: str = ""

    def __post_init__(self) -> None:
        e = self.emb.corner
        if self.emb.ambient is not self.algebra:
            raise MalformedTwistData("corner embedding does not live in the algebra")
        y, f = self.resolution, self.augmentation
        if y.left is not e or y.right is not e:
            raise MalformedTwistData(f"{y.name} is not a complex of {e.name}-{e.name} bimodules")
        if any(a.kind != PROJECTIVE for k in y.degrees for a in y.atoms(k)):
            raise MalformedTwistData(f"{y.name} must consist of projective bimodules")
        if f.source is not y or f.degree:
            raise MalformedTwistData("augmentation must be a degree-zero map out of the resolution")
        t = f.target
        if t.left is not e or t.degrees != [0] or [a.kind for a in t.atoms(0)] != [REGULAR]:
            raise MalformedTwistData("augmentation must land in E concentrated in degree 0")
        if not f.is_chain_map():
            raise MalformedTwistData("augmentation is not a chain map")

    @property
    def corner(self) -> Algebra:
        return self.emb.corner

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.emb.vertices

    @property
    def period(self) -> int:
        return self.resolution.hi + 1

    @cached_property
    def projective(self) -> Complex:
        return projective_complex(self.emb)

    @cached_property
    def projective_dual(self) -> Complex:
        return projective_dual_complex(self.emb)

    def is_resolution(self) -> bool:
        """cone(f) has homology only in degree period, as for 0 -> E_τ[n-1] -> Y -> E -> 0."""
        dims = homology_dims(cone(self.augmentation))
        return set(dims) <= {self.period} and self.augmentation.rank(0) == self.corner.dim

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "vertices": list(self.vertices),
            "period": self.period,
            "resolution_dims": {str(k): v for k, v in self.resolution.dims.items()},
        }


@lru_cache(maxsize=None)
def projective_complex(emb: CornerEmbedding) -> Complex:
    """P = A e as a stalk A-E complex."""
    return stalk(module_atom(left_projective(emb)), 0, name="P")


@lru_cache(maxsize=None)
def projective_dual_complex(emb: CornerEmbedding) -> Complex:
    """P^∨ = e A as a stalk E-A complex."""
    return stalk(module_atom(right_projective(emb)), 0, name="P∨")


def unit_augmentation(y: Complex) -> ChainMap:
    """Send each degree-0 generator e_k ⊗ e_k to e_k."""
    e = y.left
    reg = regular(e)
    cols = [generator_map(a, reg, e.basis_vector(e.idempotent(a.i))) for a in y.atoms(0)]
    return ChainMap.build(y, stalk_algebra(e), {0: np.hstack(cols)})


def spherical_twist_data(a: Algebra, i: int) -> TwistData:
    """Period-one data 0 -> E_τ -> E ⊗ E -> E -> 0 for a spherical vertex."""
    require_spherical(a, i)
    e, emb = corner_algebra(a, [i])
    y = stalk(projective(e, e, 1, 1), 0, name="E⊗E")
    return TwistData(a, emb, y, unit_augmentation(y), name=f"S{i}")


def periodic_twist(td: TwistData) -> Complex:
    """X = cone(ev ∘ (P ⊗ f ⊗ P^∨))."""
    g = induce_augmentation(td.augmentation, td.emb)
    label = ",".join(map(str, td.vertices))
    return cone(g, name=f"X[{label}]")


def corner_twist(td: TwistData, outer: CornerEmbedding) -> tuple[ChainMap, Complex]:
    """(g', W) for td seen inside a larger corner: g' induces f into outer.corner, W = cone(g')."""
    inner = td.emb.within(outer)
    g = induce_augmentation(td.augmentation, inner)
    label = ",".join(map(str, td.vertices))
    return g, cone(g, name=f"W[{label}]")


# =============================================================================
# Periodicity
# =============================================================================


@dataclass(frozen=True, eq=False)
class PeriodicityCertificate:
    """Ω^period E ≅ E_τ, witnessed by the truncated resolution Y."""

    period: int
    automorphism: Automorphism
    resolution: Complex
    augmentation: ChainMap
    syzygy: BimoduleMap
    syzygy_iso: BimoduleMap

    def matches(self, sigma: Automorphism, **kwargs) -> bool:
        return automorphisms_equivalent(self.automorphism, sigma, **kwargs)

    def to_dict(self) -> dict[str, Any]:
        return {
            "period": self.period,
            "permutation": list(self.automorphism.permutation),
            "resolution_dims": {str(k): v for k, v in self.resolution.dims.items()},
            "syzygy_dim": self.syzygy.source.dim,
            "witness": self.syzygy_iso.is_bimodule_map(),
        }


def _kernel_columns(source, target, m: Matrix) -> Matrix:
    """ker m, one (left vertex, right vertex, degree) piece at a time."""
    fld = source.field

    def keys(mod):
        deg = mod.grading if mod.grading is not None else np.zeros(mod.dim, dtype=np.int64)
        return list(zip(mod.left_vertex.tolist(), mod.right_vertex.tolist(), deg.tolist()))

    s_keys, t_keys = keys(source), keys(target)
    pieces = []
    for key in sorted(set(s_keys)):
        cols = np.array([k for k, x in enumerate(s_keys) if x == key], dtype=np.int64)
        rows = np.array([k for k, x in enumerate(t_keys) if x == key], dtype=np.int64)
        ns = fld.nullspace(m[np.ix_(rows, cols)]) if rows.size else np.eye(cols.size, dtype=np.int64)
        if ns.shape[1]:
            full = np.zeros((source.dim, ns.shape[1]), dtype=np.int64)
            full[cols] = ns
            pieces.append(full)
    return np.hstack(pieces) if pieces else np.zeros((source.dim, 0), dtype=np.int64)


def detect_periodicity(
    e: Algebra,
    max_period: int = 6,
    *,
    rng: np.random.Generator | None = None,
    trials: int = 16,
) -> PeriodicityCertificate | None:
    """First n <= max_period with Ω^n E ≅ E_τ, or None."""
    rng = rng if rng is not None else np.random.default_rng(0)
    if symmetric_gram(e) is None:
        log.warning("%s has no symmetric Frobenius form; a period found here may not give a twist", e.name)
    terms = {0: tuple(projective(e, e, v, v) for v in e.vertices)}
    diffs: dict[int, Matrix] = {}
    reg = regular(e)
    cover = np.hstack([generator_map(a, reg, e.basis_vector(e.idempotent(a.i))) for a in terms[0]])
    previous, target = cover, reg
    for n in range(1, max_period + 1):
        partial = Complex.build(e, e, terms, diffs, name=f"Y({e.name})")
        module = partial.module(n - 1)
        kernel = _kernel_columns(module, target, previous)
        if kernel.shape[1] == 0:
            log.debug("%s has finite projective dimension %d", e.name, n - 1)
            return None
        syz, incl = sub_bimodule(module, kernel, name=f"Ω{n}")
        log.debug("%s: syzygy %d has dimension %d", e.name, n, syz.dim)
        sigma = identify_invertible(syz, rng=rng, trials=trials)
        if sigma is not None:
            f = ChainMap.build(partial, stalk_algebra(e), {0: cover})
            twisted = twist_right(reg, sigma)
            witness = find_isomorphism(twisted, syz, rng=rng, trials=trials)
            if witness is None:
                witness = find_isomorphism(twisted, syz, rng=rng, trials=4 * trials)
            if witness is not None:
                log.info("%s is twisted periodic of period %d, permutation %s", e.name, n, sigma.permutation)
                return PeriodicityCertificate(n, sigma, partial, f, incl, witness)
            log.warning("%s: syzygy %d looks invertible but no isomorphism was found; continuing", e.name, n)

        top = top_space(syz)
        gens = [int(np.flatnonzero(col)[0]) for col in top.T]
        atoms = []
        blocks = []
        for g in gens:
            grade = int(syz.grading[g]) if syz.grading is not None else 0
            atom = projective(e, e, int(syz.left_vertex[g]), int(syz.right_vertex[g]), grade)
            atoms.append(atom)
            blocks.append(generator_map(atom, module, incl.matrix[:, g]))
        terms[n] = tuple(atoms)
        diffs[n] = np.hstack(blocks)
        previous, target = diffs[n], module
    log.debug("%s: no period found up to %d", e.name, max_period)
    return None


def periodic_twist_data(
    a: Algebra,
    vertices,
    *,
    max_period: int = 6,
    rng: np.random.Generator | None = None,
    trials: int = 16,
) -> TwistData:
    """TwistData for P = ⊕ A e_v using the truncated resolution of E = eAe."""
    e, emb = corner_algebra(a, vertices)
    cert = detect_periodicity(e, max_period, rng=rng, trials=trials)
    if cert is None:
        raise PreconditionError(f"{e.name} is not twisted periodic within period {max_period}")
    label = ",".join(map(str, emb.vertices))
    return TwistData(a, emb, cert.resolution, cert.augmentation, name=f"T[{label}]")
