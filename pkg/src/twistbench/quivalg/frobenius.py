# frobenius.py - Graded Frobenius forms and Nakayama automorphisms
# A form supported in the top degree is nondegenerate iff its Gram matrix
# G[a, b] = form(b_a b_b) has full rank; then form(ab) = form(b nu(a)) gives
# nu = G^-1 G^T.

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from twistbench.errors import FrobeniusMissing
from twistbench.exactfield import Matrix
from twistbench.log import get_logger
from twistbench.quivalg.algebra import Algebra, Automorphism, LinearForm

log = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class FrobeniusData:
    form: LinearForm
    nakayama: Automorphism
    gorenstein: int

    @property
    def algebra(self) -> Algebra:
        return self.form.algebra

    @property
    def is_symmetric(self) -> bool:
        return self.nakayama.is_identity()


def _candidates(a: Algebra, rng: np.random.Generator, trials: int) -> Iterator[Matrix]:
    top = np.flatnonzero(a.degrees == a.top_degree)
    coeffs = np.zeros(a.dim, dtype=np.int64)
    coeffs[top] = 1
    yield coeffs
    for k in top:
        single = np.zeros(a.dim, dtype=np.int64)
        single[k] = 1
        yield single
    for _ in range(trials):
        rand = np.zeros(a.dim, dtype=np.int64)
        rand[top] = a.field.random(rng, top.size)
        yield rand


def find_frobenius_form(
    a: Algebra,
    *,
    rng: np.random.Generator | None = None,
    trials: int = 16,
) -> FrobeniusData | None:
    """A nondegenerate form on the top degree with its Nakayama automorphism, or None."""
    rng = rng if rng is not None else np.random.default_rng(0)
    for coeffs in _candidates(a, rng, trials):
        form = LinearForm(a, coeffs)
        gram = form.gram()
        if not a.field.is_invertible(gram):
            continue
        nu = a.field.matmul(a.field.inverse(gram), gram.T.copy())
        nakayama = Automorphism.from_matrix(a, nu)
        log.debug("%s: Frobenius form found, gorenstein %d", a.name, a.top_degree)
        return FrobeniusData(form, nakayama, a.top_degree)
    log.info("%s: no nondegenerate top-degree form found", a.name)
    return None


@lru_cache(maxsize=None)
def frobenius_data(a: Algebra) -> FrobeniusData:
    """Cached Frobenius structure; raises when the algebra has none."""
    data = find_frobenius_form(a)
    if data is None:
        raise FrobeniusMissing(f"{a.name} is not Frobenius")
    return data


def is_symmetric(a: Algebra) -> bool:
    data = find_frobenius_form(a)
    return data is not None and data.is_symmetric
