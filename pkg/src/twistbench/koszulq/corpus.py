# corpus.py - Seeded corpora of graded bimodules for the property checks
# Every member is a graded A-A bimodule built from the regular bimodule by
# truncation, radical powers, random homogeneous subquotients, inflation along
# a vertex quotient, Nakayama twists, duals and shifts.

from __future__ import annotations

from collections.abc import Callable

import numpy as np

from twistbench.bimod import (
    Bimodule,
    BimoduleMap,
    dual,
    inflate,
    koszul_shift,
    quotient_bimodule,
    regrade,
    regular,
    sub_bimodule,
    twist_left,
    twist_right,
)
from twistbench.errors import PreconditionError
from twistbench.exactfield import Matrix
from twistbench.log import get_logger
from twistbench.quivalg import Algebra, find_frobenius_form, quotient_by_idempotent

log = get_logger(__name__)


def _columns(a: Algebra, mask: np.ndarray) -> Matrix:
    return np.eye(a.dim, dtype=np.int64)[:, np.flatnonzero(mask)]


def _homogeneous_element(m: Bimodule, rng: np.random.Generator) -> Matrix:
    """A random vector inside one (left vertex, right vertex, degree) piece."""
    keys = sorted(set(zip(m.left_vertex.tolist(), m.right_vertex.tolist(), m.grading.tolist())))
    lv, rv, deg = keys[int(rng.integers(len(keys)))]
    idx = np.flatnonzero((m.left_vertex == lv) & (m.right_vertex == rv) & (m.grading == deg))
    vec = np.zeros(m.dim, dtype=np.int64)
    vec[idx] = m.field.random(rng, idx.size)
    if not vec.any():
        vec[idx[0]] = 1
    return vec[:, None]


def _top(a: Algebra, rng: np.random.Generator) -> Bimodule:
    q, _ = quotient_bimodule(regular(a), _columns(a, a.degrees > 0), name=f"top({a.name})")
    return q


def _truncation(a: Algebra, rng: np.random.Generator) -> Bimodule:
    d = int(rng.integers(1, a.top_degree + 1)) if a.top_degree else 1
    q, _ = quotient_bimodule(regular(a), _columns(a, a.degrees >= d), name=f"{a.name}/deg>={d}")
    return q


def _radical_power(a: Algebra, rng: np.random.Generator) -> Bimodule:
    d = int(rng.integers(1, a.top_degree + 1)) if a.top_degree else 0
    s, _ = sub_bimodule(regular(a), _columns(a, a.degrees >= d), name=f"rad^{d}({a.name})")
    return s


def _random_sub(a: Algebra, rng: np.random.Generator) -> Bimodule:
    s, _ = sub_bimodule(regular(a), _homogeneous_element(regular(a), rng), name=f"sub({a.name})")
    return s


def _random_quotient(a: Algebra, rng: np.random.Generator) -> Bimodule:
    q, _ = quotient_bimodule(regular(a), _homogeneous_element(regular(a), rng), name=f"quot({a.name})")
    return q


def _inflation(a: Algebra, rng: np.random.Generator) -> Bimodule:
    if a.num_vertices < 2:
        return regular(a)
    size = int(rng.integers(1, a.num_vertices))
    keep = sorted(int(v) for v in rng.choice(np.arange(1, a.num_vertices + 1), size=size, replace=False))
    q, pi = quotient_by_idempotent(a, keep)
    return inflate(regular(q), pi, pi, name=f"infl({q.name})")


def _nakayama_twist(a: Algebra, rng: np.random.Generator) -> Bimodule:
    data = find_frobenius_form(a, rng=rng)
    if data is None or not data.nakayama.is_graded():
        return regular(a)
    if rng.integers(2):
        return twist_right(regular(a), data.nakayama)
    return twist_left(regular(a), data.nakayama)


_BUILDERS: tuple[Callable[[Algebra, np.random.Generator], Bimodule], ...] = (
    lambda a, rng: regular(a),
    _top,
    _truncation,
    _radical_power,
    _random_sub,
    _random_quotient,
    _inflation,
    _nakayama_twist,
)


def graded_corpus(a: Algebra, rng: np.random.Generator, size: int = 20) -> list[Bimodule]:
    """size nonzero graded A-A bimodules; duals and shifts of earlier members fill every third slot."""
    if size < 1:
        raise PreconditionError("a corpus needs at least one member")
    out: list[Bimodule] = []
    step = 0
    while len(out) < size:
        if out and step % 3 == 2:
            base = out[int(rng.integers(len(out)))]
            if rng.integers(2):
                m = dual(base)
            else:
                k = int(rng.integers(-1, 3))
                m = koszul_shift(base, k) if rng.integers(2) else regrade(base, k)
        else:
            m = _BUILDERS[step % len(_BUILDERS)](a, rng)
        step += 1
        if m.dim:
            out.append(m)
    log.debug("corpus over %s: dims %s", a.name, [m.dim for m in out])
    return out


def short_exact_sequences(
    m: Bimodule,
    rng: np.random.Generator,
    count: int = 3,
) -> list[tuple[BimoduleMap, BimoduleMap]]:
    """0 -> K -> M -> M/K -> 0 for sub-bimodules K generated by random homogeneous vectors."""
    out = []
    for _ in range(count):
        gens = _homogeneous_element(m, rng)
        _, incl = sub_bimodule(m, gens)
        _, proj = quotient_bimodule(m, gens)
        out.append((incl, proj))
    return out
