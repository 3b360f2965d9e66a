# tilting.py - Comparing two-sided tilting complexes
# For invertible complexes c, d over a symmetric algebra, c ⊗ d* has homology
# in a single degree k exactly when c ≅ A_σ[k] ⊗ d; the homology is then an
# invertible bimodule and σ is read off from it.

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from twistbench.bimod import automorphisms_equivalent, identify_invertible
from twistbench.chainx.complex import Complex
from twistbench.chainx.duality import dualize
from twistbench.chainx.homology import homology, homology_dims
from twistbench.chainx.minimize import minimize
from twistbench.chainx.tensor import tensor_complex
from twistbench.errors import AlgebraMismatch
from twistbench.log import get_logger
from twistbench.quivalg import Automorphism

log = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class TiltingComparison:
    """c ⊗ d* ≅ A_σ[degree]."""

    automorphism: Automorphism
    degree: int
    homology_dims: dict[int, int] = field(default_factory=dict)

    def matches(self, sigma: Automorphism | None = None, degree: int = 0, **kwargs) -> bool:
        """True if the comparison is (sigma, degree); sigma None means identity."""
        if self.degree != degree:
            return False
        if sigma is None:
            sigma = Automorphism.identity(self.automorphism.algebra)
        return automorphisms_equivalent(self.automorphism, sigma, **kwargs)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "permutation": list(self.automorphism.permutation),
            "identity": self.automorphism.is_identity(),
            "homology_dims": {str(k): v for k, v in self.homology_dims.items()},
        }


def compare_tilting(
    c: Complex,
    d: Complex,
    *,
    rng: np.random.Generator | None = None,
    trials: int = 16,
) -> TiltingComparison | None:
    """(σ, k) with c ⊗ d* ≅ A_σ[k], or None if c ⊗ d* is not of that form."""
    if c.left is not d.left or c.right is not d.right:
        raise AlgebraMismatch("tilting complexes over different algebras")
    if c.left is not c.right:
        raise AlgebraMismatch("tilting comparison needs A-A complexes")
    t = minimize(tensor_complex(c, dualize(d)))
    dims = homology_dims(t)
    if len(dims) != 1:
        log.debug("compare %s with %s: homology in degrees %s", c.name, d.name, sorted(dims))
        return None
    (k,) = dims
    sigma = identify_invertible(homology(t, k), rng=rng, trials=trials)
    if sigma is None:
        log.debug("compare %s with %s: H_%d not invertible", c.name, d.name, k)
        return None
    log.debug("compare %s with %s: degree %d, permutation %s", c.name, d.name, k, sigma.permutation)
    return TiltingComparison(sigma, k, dims)
