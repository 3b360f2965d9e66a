# export.py - JSON shape of complexes
# Atoms per degree, term dimensions, the atom pairs carrying a nonzero
# differential block, and the homology table.

from __future__ import annotations

from typing import Any

from twistbench.chainx.complex import Complex
from twistbench.chainx.homology import homology_dims


def differential_support(c: Complex, k: int) -> list[list[int]]:
    """[source atom, target atom] pairs with a nonzero block in d_k."""
    if k not in c.diffs:
        return []
    d = c.diffs[k]
    pairs = []
    for ia in range(len(c.atoms(k))):
        cols = c.atom_slice(k, ia)
        for ib in range(len(c.atoms(k - 1))):
            if d[c.atom_slice(k - 1, ib), cols].any():
                pairs.append([ia, ib])
    return pairs


def complex_to_dict(c: Complex, *, with_homology: bool = True) -> dict[str, Any]:
    data: dict[str, Any] = {
        "name": c.name,
        "left": c.left.name,
        "right": c.right.name,
        "degrees": {
            str(k): {
                "atoms": [a.label for a in c.atoms(k)],
                "dim": c.dim(k),
                "differential": differential_support(c, k),
            }
            for k in reversed(c.degrees)
        },
    }
    if with_homology:
        data["homology"] = {str(k): v for k, v in sorted(homology_dims(c).items())}
    return data
