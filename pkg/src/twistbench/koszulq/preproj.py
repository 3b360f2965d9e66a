# preproj.py - Preprojective algebras as quadratic duals of Γₙ
# Πₙ sits in 0 -> infl(Π_{n-1})<-1> -> Πₙ -> kA⃗ₙ -> 0, the sub-bimodule
# generated by the arrows y, and Q(Πₙ) over Γₙ is a truncated resolution
# 0 -> (Γₙ)_τ -> Y_{n-1} -> ... -> Y_0 -> Γₙ -> 0.

from __future__ import annotations

from collections import Counter
from functools import lru_cache

import numpy as np

from twistbench.bimod import (
    BimoduleMap,
    automorphisms_equivalent,
    hom_space,
    identify_invertible,
    inflate,
    regrade,
    regular,
)
from twistbench.chainx import Complex, TriangleReport, cone, homology, homology_dims
from twistbench.errors import PreconditionError
from twistbench.exactfield import PrimeField
from twistbench.koszulq.qfunctor import q_functor, verify_q_exact
from twistbench.koszulq.quadratic import corner_pair, dual_automorphism, gamma_pair
from twistbench.log import get_logger
from twistbench.quivalg import (
    find_frobenius_form,
    gamma,
    linear_orientation_algebra,
    preprojective,
    preprojective_quotient_maps,
    tau,
    tau_dual,
)
from twistbench.twistcalc import TwistData, detect_periodicity, unit_augmentation

log = get_logger(__name__)


def _field(field: PrimeField | None) -> PrimeField:
    return field or PrimeField()


def prep_sequence(n: int, field: PrimeField | None = None) -> tuple[BimoduleMap, BimoduleMap]:
    """(ι, π) for 0 -> infl(Π_{n-1})<-1> -> Πₙ -> kA⃗ₙ -> 0 with ι(e_i) = y_{i+1}."""
    return _prep_sequence(n, _field(field))


@lru_cache(maxsize=None)
def _prep_sequence(n: int, fld: PrimeField) -> tuple[BimoduleMap, BimoduleMap]:
    if not isinstance(n, int) or n < 2:
        raise PreconditionError(f"the sequence needs n >= 2, got {n!r}")
    big, small = preprojective(n, fld), preprojective(n - 1, fld)
    pi_left, pi_right = preprojective_quotient_maps(n, fld)
    sub = regrade(inflate(regular(small), pi_right, pi_left, name=f"infl({small.name})"), -1)
    whole = regular(big)
    line, surjection = linear_orientation_algebra(n, fld)
    quotient = inflate(regular(line), surjection, surjection, name=f"k{line.name}")

    homs = hom_space(sub, whole)
    gens = [small.idempotent(i) for i in small.vertices]
    system = np.vstack([homs[:, :, g].T for g in gens]) if homs.shape[0] else np.zeros((0, 0), dtype=np.int64)
    rhs = np.concatenate([big.element(f"y{i + 1}") for i in small.vertices])
    coeffs = fld.solve(system, rhs) if homs.shape[0] else None
    if coeffs is None:
        raise PreconditionError(f"e_i -> y_(i+1) does not extend to a bimodule map into {big.name}")
    incl = BimoduleMap(sub, whole, np.einsum("h,hij->ij", coeffs, homs) % fld.p)
    return incl, BimoduleMap(whole, quotient, surjection.matrix)


def prep_ses(n: int, field: PrimeField | None = None) -> TriangleReport:
    fld = _field(field)
    report = TriangleReport(f"prep_ses({n})")
    with report.timed():
        incl, proj = prep_sequence(n, fld)
        sub, whole, quotient = incl.source, incl.target, proj.target
        report.add("inclusion_is_bimodule_map", incl.is_bimodule_map())
        report.add("projection_is_bimodule_map", proj.is_bimodule_map())
        rows, cols = np.nonzero(incl.matrix)
        report.add("inclusion_is_graded", bool(np.all(whole.grading[rows] == sub.grading[cols])))
        report.add("injective", incl.rank() == sub.dim, rank=incl.rank(), dim=sub.dim)
        report.add("surjective", proj.rank() == quotient.dim, rank=proj.rank(), dim=quotient.dim)
        report.add("composite_is_zero", not fld.matmul(proj.matrix, incl.matrix).any())
        report.add("exact_in_the_middle", sub.dim + quotient.dim == whole.dim,
                   dims=[sub.dim, whole.dim, quotient.dim])
        report.add("line_has_expected_dimension", quotient.dim == n * (n + 1) // 2, dim=quotient.dim)
    return report


# =============================================================================
# Truncated resolutions
# =============================================================================


def truncated_resolution(n: int, field: PrimeField | None = None) -> Complex:
    """Y_n = Q(Πₙ) over Γₙ for n >= 3; the minimal truncated resolution below that."""
    fld = _field(field)
    if n >= 3:
        return q_functor(gamma_pair(n, fld), regular(preprojective(n, fld))).renamed(f"Y{n}")
    cert = detect_periodicity(gamma(n, fld))
    if cert is None:
        raise PreconditionError(f"Gamma{n} is not twisted periodic")
    return cert.resolution.renamed(f"Y{n}")


def truncated_twist_data(n: int, field: PrimeField | None = None) -> TwistData:
    """Periodic twist data for P = Γₙ built from Q(Πₙ) over the full corner."""
    fld = _field(field)
    if n < 3:
        raise PreconditionError("the Q route needs n >= 3")
    pair, emb = corner_pair(gamma_pair(n, fld), range(1, n + 1))
    y = q_functor(pair, regular(pair.dual)).renamed(f"Y{n}")
    return TwistData(gamma(n, fld), emb, y, unit_augmentation(y), name=f"Q{n}")


def verify_truncated(
    n: int,
    field: PrimeField | None = None,
    *,
    cross_check: bool = True,
    rng: np.random.Generator | None = None,
    trials: int = 16,
) -> TriangleReport:
    """H_0(Y) = Γ, H_{n-1}(Y) = Γ_τ, nothing in between; agreement with the minimal resolution."""
    fld = _field(field)
    a = gamma(n, fld)
    report = TriangleReport(f"truncated({n})")
    with report.timed():
        y = truncated_resolution(n, fld)
        dims = homology_dims(y)
        report.add("terms", sorted(y.degrees) == list(range(n)), dims=y.dims)
        report.add("homology_degrees", set(dims) == {0, n - 1}, homology_dims=dims)
        if n > 1:
            report.add("h0_dimension", dims.get(0) == a.dim, dim=dims.get(0))
        f = unit_augmentation(y)
        report.add("augmentation_is_chain_map", f.is_chain_map())
        cone_dims = homology_dims(cone(f))
        report.add("cone_concentrated_in_period", set(cone_dims) == {n}, homology_dims=cone_dims)
    if n == 1:
        return report
    with report.timed():
        sigma = identify_invertible(homology(y, n - 1), rng=rng, trials=trials)
        if sigma is None:
            report.add("top_homology_is_twisted", False, reason=f"H_{n - 1} is not invertible")
        else:
            ok = automorphisms_equivalent(sigma, tau(n, fld), rng=rng, trials=trials)
            report.add("top_homology_is_twisted", ok, permutation=list(sigma.permutation))
    if n >= 3:
        with report.timed():
            td = truncated_twist_data(n, fld)
            report.add("twist_data_is_resolution", td.is_resolution(), period=td.period)
    if cross_check:
        with report.timed():
            cert = detect_periodicity(a, max_period=n + 1, rng=rng, trials=trials)
            if cert is None:
                report.add("matches_minimal_resolution", False, reason="no period found")
            else:
                shapes = {k: Counter((x.i, x.j) for x in y.atoms(k)) for k in y.degrees}
                other = {k: Counter((x.i, x.j) for x in cert.resolution.atoms(k)) for k in cert.resolution.degrees}
                report.add("matches_minimal_resolution", cert.period == n and shapes == other,
                           period=cert.period)
    return report


# =============================================================================
# Frobenius structure
# =============================================================================


def verify_frobenius(
    n: int,
    field: PrimeField | None = None,
    *,
    rng: np.random.Generator | None = None,
    trials: int = 16,
) -> TriangleReport:
    """Γₙ symmetric of parameter 2, Πₙ Frobenius of parameter n-1 with Nakayama τₙ! = (τₙ)!."""
    fld = _field(field)
    report = TriangleReport(f"frobenius({n})")
    with report.timed():
        g = find_frobenius_form(gamma(n, fld), rng=rng, trials=trials)
        report.add("gamma_is_frobenius", g is not None)
        if g is not None:
            report.add("gamma_is_symmetric", g.is_symmetric)
            report.add("gamma_gorenstein", g.gorenstein == 2, gorenstein=g.gorenstein)
    with report.timed():
        pi = preprojective(n, fld)
        data = find_frobenius_form(pi, rng=rng, trials=trials)
        report.add("preprojective_is_frobenius", data is not None)
        if data is None:
            return report
        report.add("preprojective_gorenstein", data.gorenstein == n - 1, gorenstein=data.gorenstein)
        reversed_vertices = tuple(n + 1 - v for v in pi.vertices)
        report.add("nakayama_reverses_vertices", data.nakayama.permutation == reversed_vertices,
                   permutation=list(data.nakayama.permutation))
        ok = automorphisms_equivalent(data.nakayama, tau_dual(n, fld), rng=rng, trials=trials)
        report.add("nakayama_is_tau_dual", ok)
    if n >= 3:
        with report.timed():
            dual_tau = dual_automorphism(gamma_pair(n, fld), tau(n, fld))
            report.add("dual_of_tau_is_tau_dual", dual_tau.equals(tau_dual(n, fld)))
    return report


def verify_prep_exactness(n: int, field: PrimeField | None = None) -> TriangleReport:
    """Q applied to the preprojective sequence stays exact, for n >= 3."""
    fld = _field(field)
    incl, proj = prep_sequence(n, fld)
    return verify_q_exact(gamma_pair(n, fld), incl, proj)
