"""twistbench - exact-arithmetic workbench for twist functors.

Builds zig-zag (Γₙ) and preprojective (Πₙ) algebras over a prime field,
bimodule complexes between them, spherical and periodic twists, and checks
braid relations, the longest-element action and quadratic duality.
"""

from twistbench.errors import TwistbenchError

__all__ = ["TwistbenchError", "__version__"]

__version__ = "0.1.0"
