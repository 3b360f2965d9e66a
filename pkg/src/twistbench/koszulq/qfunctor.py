# qfunctor.py - The functor Q from graded Λ^!-bimodules to linear complexes over Λ
# For a graded Λ^!-Λ^! bimodule M, Q(M) has in homological degree i the sum
#   ⊕_β Λ e_{rv(β)} ⊗ e_{lv(β)} Λ <i>
# over a basis β of M_i; the generator of the β summand stands for the dual
# basis vector m_β*. With L_k, R_k the actions of a_k* on M,
#   d(gen_β) = Σ_{k,γ} L_k[β, γ] gen_γ a_k + (-1)^i Σ_{k,γ} R_k[β, γ] a_k gen_γ.
# The cross terms cancel because the two actions commute; the pure terms
# vanish because a_k* a_l* satisfies R⊥ exactly when Σ a_k ⊗ a_l lies in R.

from __future__ import annotations

from collections.abc import Iterable
from functools import lru_cache

import numpy as np

from twistbench.bimod import (
    Bimodule,
    BimoduleMap,
    dual,
    inflate,
    koszul_shift,
    regular,
    twist_left,
    twist_right,
)
from twistbench.chainx import (
    ChainMap,
    Complex,
    TriangleReport,
    compare_complexes,
    complexes_equal,
    dualize,
    generator_map,
    module_atom,
    projective,
    pure_tensor,
    shift,
    symmetric_gram,
)
from twistbench.errors import AlgebraMismatch, GradingError, PreconditionError
from twistbench.exactfield import Matrix
from twistbench.koszulq.quadratic import QuadraticPair, corner_pair, dual_automorphism, dual_quotient
from twistbench.log import get_logger
from twistbench.quivalg import Automorphism, frobenius_data
from twistbench.twistcalc import induce

log = get_logger(__name__)


def _check_module(pair: QuadraticPair, m: Bimodule) -> None:
    if m.left is not pair.dual or m.right is not pair.dual:
        raise AlgebraMismatch(f"{m.name} is not a {pair.dual.name}-bimodule")
    if m.grading is None:
        raise GradingError(f"{m.name} carries no grading")


def _arrow_actions(pair: QuadraticPair, acts: Matrix) -> Matrix:
    """Stack of the actions of a_k*, shape (num_arrows, dim, dim)."""
    return np.einsum("ck,cij->kij", pair.dual_arrows, acts) % pair.field.p


@lru_cache(maxsize=512)
def q_functor(pair: QuadraticPair, m: Bimodule) -> Complex:
    """Q(M) as a complex of projective Λ-Λ bimodules."""
    _check_module(pair, m)
    lam = pair.algebra
    fld = lam.field
    left = _arrow_actions(pair, m.left_action)
    right = _arrow_actions(pair, m.right_action)
    for acts in (left, right):
        k, rows, cols = np.nonzero(acts)
        if np.any(m.grading[rows] != m.grading[cols] + 1):
            raise GradingError(f"the dual arrows do not raise the degree of {m.name} by one")

    pieces = {i: m.graded_piece(i) for i in m.degrees_present}
    terms = {
        i: tuple(projective(lam, lam, int(m.right_vertex[b]), int(m.left_vertex[b]), i) for b in idx)
        for i, idx in pieces.items()
    }
    shell = Complex.build(lam, lam, terms, {})
    diffs = {}
    for i, src in pieces.items():
        tgt = pieces.get(i - 1)
        if tgt is None:
            continue
        sign = -1 if i % 2 else 1
        target = shell.module(i - 1)
        d = np.zeros((shell.dim(i - 1), shell.dim(i)), dtype=np.int64)
        for col, beta in enumerate(src):
            image = np.zeros(shell.dim(i - 1), dtype=np.int64)
            for row, gamma in enumerate(tgt):
                atom = terms[i - 1][row]
                block = shell.atom_slice(i - 1, row)
                for k, arrow in enumerate(pair.arrow_basis):
                    cl, cr = int(left[k, beta, gamma]), int(right[k, beta, gamma])
                    if cl:
                        image[block] += cl * pure_tensor(atom, lam.idempotent(atom.i), arrow)
                    if cr:
                        image[block] += sign * cr * pure_tensor(atom, arrow, lam.idempotent(atom.j))
            d[:, shell.atom_slice(i, col)] = generator_map(terms[i][col], target, image % fld.p)
        diffs[i] = d
    c = Complex.build(lam, lam, terms, diffs, name=f"Q({m.name})")
    if not c.check():
        raise AlgebraMismatch(f"Q({m.name}) is not a complex; {pair.dual.name} is not the dual of {lam.name}")
    log.debug("Q(%s): dims %s", m.name, c.dims)
    return c


def _generator_column(c: Complex, k: int, index: int) -> int:
    return int(c.offsets(k)[index]) + int(c.atoms(k)[index].generator_columns[0])


def q_map(pair: QuadraticPair, phi: BimoduleMap) -> ChainMap:
    """Q(φ): Q(N) -> Q(M) for a degree-preserving bimodule map φ: M -> N."""
    m, n = phi.source, phi.target
    _check_module(pair, m)
    _check_module(pair, n)
    rows, cols = np.nonzero(phi.matrix)
    if np.any(n.grading[rows] != m.grading[cols]):
        raise GradingError("Q is applied to degree-preserving maps only")
    qm, qn = q_functor(pair, m), q_functor(pair, n)
    comps = {}
    for i in qn.degrees:
        src_idx, tgt_idx = n.graded_piece(i), m.graded_piece(i)
        block = np.zeros((qm.dim(i), qn.dim(i)), dtype=np.int64)
        target = qm.module(i)
        for col, gamma in enumerate(src_idx):
            image = np.zeros(qm.dim(i), dtype=np.int64)
            for row, beta in enumerate(tgt_idx):
                coeff = int(phi.matrix[gamma, beta])
                if coeff:
                    image[_generator_column(qm, i, row)] = coeff
            block[:, qn.atom_slice(i, col)] = generator_map(qn.atoms(i)[col], target, image)
        comps[i] = block
    return ChainMap.build(qn, qm, comps)


def regrade_complex(c: Complex, k: int) -> Complex:
    """C<k>: every projective atom of grade g becomes grade g - k."""
    if k == 0:
        return c
    terms = {i: tuple(a.regraded(a.grade - k) for a in atoms) for i, atoms in c.terms.items()}
    return Complex.build(c.left, c.right, terms, c.diffs, name=f"{c.name}<{k}>")


def twist_complex_left(c: Complex, sigma: Automorphism) -> Complex:
    """_σC: the left action on every term twisted by σ, differentials unchanged."""
    terms = {
        i: tuple(module_atom(twist_left(a.module, sigma)) for a in atoms) for i, atoms in c.terms.items()
    }
    return Complex.build(c.left, c.right, terms, c.diffs, name=f"tw_{c.name}")


def twist_comparison(pair: QuadraticPair, m: Bimodule, sigma: Automorphism) -> ChainMap:
    """σ ⊗ id ⊗ id: Q(M_{σ!}) -> _σ Q(M), termwise on each projective summand."""
    lam = pair.algebra
    fld = lam.field
    n = twist_right(m, dual_automorphism(pair, sigma))
    qn, qm = q_functor(pair, n), q_functor(pair, m)
    target = twist_complex_left(qm, sigma)
    comps = {}
    for i in qn.degrees:
        block = np.zeros((target.dim(i), qn.dim(i)), dtype=np.int64)
        for index, (a, b) in enumerate(zip(qn.atoms(i), qm.atoms(i))):
            us_src, us_tgt = lam.with_target(a.i), lam.with_target(b.i)
            sub = sigma.matrix[np.ix_(us_tgt, us_src)]
            eye = np.eye(lam.with_source(a.j).size, dtype=np.int64)
            block[qm.atom_slice(i, index), qn.atom_slice(i, index)] = np.kron(sub, eye) % fld.p
        comps[i] = block
    return ChainMap.build(qn, target, comps)


# =============================================================================
# Properties of Q
# =============================================================================


def verify_q_properties(
    pair: QuadraticPair,
    m: Bimodule,
    shifts: Iterable[int] = (1,),
    sigma: Automorphism | None = None,
    *,
    rng: np.random.Generator | None = None,
    trials: int = 16,
) -> TriangleReport:
    """Q(M<i>) = Q(M)<i>[-i], Q(M_{σ!}) ≅ _σQ(M) and, over symmetric Λ, Q(M*) ≅ Q(M)*<-2n>."""
    report = TriangleReport(f"q_properties({m.name})")
    qm = q_functor(pair, m)
    report.add("q_is_complex", True, dims=qm.dims)

    with report.timed():
        for i in shifts:
            lhs = q_functor(pair, koszul_shift(m, i))
            rhs = shift(regrade_complex(qm, i), -i)
            report.add(f"shift_{i}", complexes_equal(lhs, rhs), shift=i)

    if sigma is not None:
        with report.timed():
            phi = twist_comparison(pair, m, sigma)
            report.add("twist_is_chain_map", phi.is_chain_map())
            report.add("twist_is_invertible", phi.is_degreewise_invertible(),
                       permutation=list(sigma.permutation))

    lam = pair.algebra
    if symmetric_gram(lam) is None:
        log.warning("%s is not symmetric; skipping the duality check for %s", lam.name, m.name)
        return report
    with report.timed():
        n = frobenius_data(lam).gorenstein
        lhs = q_functor(pair, dual(m))
        rhs = regrade_complex(dualize(qm), -2 * n)
        verdict = compare_complexes(lhs, rhs, rng=rng, trials=trials)
        report.add("duality", verdict, gorenstein=n)
    return report


def _is_short_exact(incl: BimoduleMap, proj: BimoduleMap) -> bool:
    fld = incl.source.field
    if incl.target is not proj.source:
        return False
    if fld.matmul(proj.matrix, incl.matrix).any():
        return False
    k, l, q = incl.source.dim, incl.target.dim, proj.target.dim
    return incl.rank() == k and proj.rank() == q and k + q == l


def verify_q_exact(pair: QuadraticPair, incl: BimoduleMap, proj: BimoduleMap) -> TriangleReport:
    """Q of 0 -> K -> L -> M -> 0 is 0 -> Q(M) -> Q(L) -> Q(K) -> 0, degreewise."""
    if not _is_short_exact(incl, proj):
        raise PreconditionError("the maps do not form a short exact sequence")
    report = TriangleReport("q_exact")
    with report.timed():
        into = q_map(pair, proj)
        out = q_map(pair, incl)
        report.add("maps_are_chain_maps", into.is_chain_map() and out.is_chain_map())
        ql = q_functor(pair, incl.target)
        bad = []
        for i in ql.degrees:
            a, b = into.rank(i), out.rank(i)
            if a != into.source.dim(i) or b != out.target.dim(i) or a + b != ql.dim(i):
                bad.append(i)
        composite = out.compose(into)
        report.add("composite_is_zero", composite.is_zero())
        report.add("degreewise_exact", not bad, bad_degrees=bad)
    return report


def verify_q_inflation(
    pair: QuadraticPair,
    vertices,
    m_small: Bimodule | None = None,
    *,
    rng: np.random.Generator | None = None,
    trials: int = 16,
) -> TriangleReport:
    """Q(infl M') = Λe ⊗ Q'(M') ⊗ eΛ for M' over Λ^!/(1-e), Q' the functor of eΛe.

    Raises CornerNotQuadratic when eΛe is not generated in degree one or not
    quadratic. M' defaults to the regular bimodule of the quotient.
    """
    small, emb = corner_pair(pair, vertices)
    quotient, pi = dual_quotient(pair, emb.vertices)
    m_small = m_small if m_small is not None else regular(quotient)
    report = TriangleReport(f"q_inflation({m_small.name})")
    with report.timed():
        try:
            q_small = q_functor(small, m_small)
        except AlgebraMismatch as exc:
            report.add("corner_dual_is_quotient", False, reason=str(exc))
            return report
        report.add("corner_dual_is_quotient", True, corner=small.algebra.name, quotient=quotient.name)
        big = inflate(m_small, pi, pi, name=f"infl({m_small.name})")
        lhs = q_functor(pair, big)
        rhs = induce(q_small, emb)
        if complexes_equal(lhs, rhs):
            report.add("inflation_commutes", True, dims=lhs.dims)
        else:
            report.add("inflation_commutes", compare_complexes(lhs, rhs, rng=rng, trials=trials),
                       dims=lhs.dims, on_the_nose=False)
    return report
