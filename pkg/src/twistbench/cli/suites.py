# suites.py - Verification suites behind `twistbench verify`
# A suite expands into independent jobs; each job rebuilds its inputs from
# (suite, n, label, config) so it can run in a worker process. Every job gets
# its own generator seeded from (seed, job index), so reports do not depend on
# --jobs.

from __future__ import annotations

from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from twistbench.bimod import regular
from twistbench.chainx import (
    ChainMap,
    TriangleReport,
    braid_grid_check,
    chain_map_space,
    kappa,
    stalk,
    stalk_algebra,
)
from twistbench.chainx.atoms import projective
from twistbench.config import RunConfig
from twistbench.errors import PreconditionError
from twistbench.exactfield import PrimeField
from twistbench.koszulq import (
    gamma_pair,
    graded_corpus,
    prep_ses,
    short_exact_sequences,
    verify_frobenius,
    verify_prep_exactness,
    verify_q_exact,
    verify_q_inflation,
    verify_q_properties,
    verify_truncated,
)
from twistbench.log import get_logger
from twistbench.quivalg import Algebra, gamma, tau
from twistbench.twistcalc import (
    periodic_twist_data,
    spherical_evaluation,
    spherical_twist_complex,
    spherical_twist_data,
    verify_braid_relation,
    verify_composition,
    verify_giprime,
    verify_h_complex,
    verify_invertible,
    verify_longest,
    verify_onetritooth,
    verify_pdnp,
)

log = get_logger(__name__)

CORPUS_SIZE = 8
MAP_PAIRS = 25

# =============================================================================
# Jobs
# =============================================================================


@dataclass(frozen=True)
class Job:
    suite: str
    n: int
    label: str
    args: tuple[int, ...] = ()


@dataclass(frozen=True)
class Suite:
    name: str
    least_n: int
    plan: Callable[[int], list[Job]]
    run: Callable[[Job, Algebra, RunConfig, np.random.Generator], TriangleReport]


def job_rng(cfg: RunConfig, index: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, index])


def _field(cfg: RunConfig) -> PrimeField:
    return PrimeField(cfg.p)


# =============================================================================
# Braid group action
# =============================================================================


def _plan_braid(n: int) -> list[Job]:
    jobs = [Job("braid", n, f"invertible({i})", (i,)) for i in range(1, n + 1)]
    jobs += [Job("braid", n, f"braid({i},{j})", (i, j)) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return jobs


def _run_braid(job: Job, a: Algebra, cfg: RunConfig, rng: np.random.Generator) -> TriangleReport:
    if len(job.args) == 1:
        return verify_invertible(a, job.args[0], rng=rng, trials=cfg.trials)
    i, j = job.args
    return verify_braid_relation(a, i, j, rng=rng, trials=cfg.trials)


def _plan_longest(n: int) -> list[Job]:
    jobs = [Job("longest", n, f"longest({n})")]
    jobs += [Job("longest", n, f"h_complex({m})", (m,)) for m in range(1, n + 1)]
    return jobs


def _run_longest(job: Job, a: Algebra, cfg: RunConfig, rng: np.random.Generator) -> TriangleReport:
    if job.args:
        return verify_h_complex(a, job.args[0], rng=rng, trials=cfg.trials)
    return verify_longest(job.n, a.field, rng=rng, trials=cfg.trials)


# =============================================================================
# Periodic twists
# =============================================================================


def _run_periodicity(job: Job, a: Algebra, cfg: RunConfig, rng: np.random.Generator) -> TriangleReport:
    return verify_truncated(job.n, a.field, rng=rng, trials=cfg.trials)


def _run_composition(job: Job, a: Algebra, cfg: RunConfig, rng: np.random.Generator) -> TriangleReport:
    i, j = job.args
    td1, td2 = spherical_twist_data(a, i), spherical_twist_data(a, j)
    return verify_composition(a, td1, td2, rng=rng, trials=cfg.trials)


def _plan_composition(n: int) -> list[Job]:
    return [Job("composition", n, f"composition({i},{j})", (i, j))
            for i in range(1, n + 1) for j in range(i + 2, n + 1)]


def _plan_pdnp(n: int) -> list[Job]:
    jobs = []
    for i in range(1, n + 1):
        jobs.append(Job("pdnp", n, f"pdnp({i})", (0, i)))
        jobs.append(Job("pdnp", n, f"onetritooth({i})", (1, i)))
        if i < n:
            jobs.append(Job("pdnp", n, f"giprime({i},{i + 1})", (2, i)))
    if n >= 3:
        jobs.append(Job("pdnp", n, f"pdnp(1..{n - 1})", (3, n - 1)))
    return jobs


def _run_pdnp(job: Job, a: Algebra, cfg: RunConfig, rng: np.random.Generator) -> TriangleReport:
    kind, i = job.args
    if kind == 0:
        return verify_pdnp(a, spherical_twist_data(a, i), rng=rng, trials=cfg.trials)
    if kind == 1:
        return verify_onetritooth(a, spherical_twist_data(a, i), rng=rng, trials=cfg.trials)
    if kind == 2:
        return verify_giprime(a, spherical_twist_data(a, i), (i, i + 1))
    td = periodic_twist_data(a, range(1, i + 1), max_period=cfg.max_period, rng=rng, trials=cfg.trials)
    return verify_pdnp(a, td, rng=rng, trials=cfg.trials)


# =============================================================================
# Quadratic duality
# =============================================================================


def _plan_koszul(n: int) -> list[Job]:
    jobs = [Job("koszul-q", n, f"q_properties({k})", (0, k)) for k in range(CORPUS_SIZE)]
    jobs.append(Job("koszul-q", n, "q_exact", (1,)))
    if n >= 4:
        jobs.append(Job("koszul-q", n, f"q_inflation(1..{n - 1})", (2,)))
    return jobs


def _run_koszul(job: Job, a: Algebra, cfg: RunConfig, rng: np.random.Generator) -> TriangleReport:
    pair = gamma_pair(job.n, a.field)
    kind = job.args[0]
    if kind == 0:
        corpus = graded_corpus(pair.dual, np.random.default_rng(cfg.seed), size=CORPUS_SIZE)
        m = corpus[job.args[1]]
        return verify_q_properties(pair, m, shifts=(1, -1), sigma=tau(job.n, a.field),
                                   rng=rng, trials=cfg.trials)
    if kind == 1:
        report = TriangleReport("q_exact")
        for idx, (incl, proj) in enumerate(short_exact_sequences(regular(pair.dual), rng)):
            report.extend(verify_q_exact(pair, incl, proj), prefix=f"ses{idx}.")
        return report
    return verify_q_inflation(pair, range(1, job.n), rng=rng, trials=cfg.trials)


def _plan_prep(n: int) -> list[Job]:
    jobs = [Job("prep-ses", n, f"prep_ses({n})")]
    if n >= 3:
        jobs.append(Job("prep-ses", n, f"prep_exact({n})", (1,)))
    return jobs


def _run_prep(job: Job, a: Algebra, cfg: RunConfig, rng: np.random.Generator) -> TriangleReport:
    if job.args:
        return verify_prep_exactness(job.n, a.field)
    return prep_ses(job.n, a.field)


def _run_frobenius(job: Job, a: Algebra, cfg: RunConfig, rng: np.random.Generator) -> TriangleReport:
    return verify_frobenius(job.n, a.field, rng=rng, trials=cfg.trials)


# =============================================================================
# Triangle grids
# =============================================================================


def _map_pool(a: Algebra) -> list:
    pool = [stalk_algebra(a)]
    for i in a.vertices:
        pool.append(stalk(projective(a, a, i, i), 0, name=f"P{i}{i}"))
        pool.append(spherical_twist_complex(a, i))
    return pool


def random_map(a: Algebra, rng: np.random.Generator) -> ChainMap:
    """A random degree-zero chain map between two small complexes over a."""
    pool = _map_pool(a)
    for _ in range(8):
        src, tgt = (pool[int(k)] for k in rng.integers(len(pool), size=2))
        space = chain_map_space(src, tgt)
        if space.dim:
            return space.random(rng)
    return spherical_evaluation(a, int(rng.integers(1, a.num_vertices + 1)))


def map_pairs(a: Algebra, rng: np.random.Generator, count: int = MAP_PAIRS) -> list[tuple[ChainMap, ChainMap]]:
    return [(random_map(a, rng), random_map(a, rng)) for _ in range(count)]


def _plan_maps(suite: str) -> Callable[[int], list[Job]]:
    def plan(n: int) -> list[Job]:
        jobs = [Job(suite, n, f"{suite}[{k}]", (k,)) for k in range(MAP_PAIRS)]
        if suite == "grid":
            jobs.append(Job(suite, n, "unsigned_control", (-1,)))
        return jobs
    return plan


def _pair_for(job: Job, a: Algebra, cfg: RunConfig) -> tuple[ChainMap, ChainMap]:
    return map_pairs(a, np.random.default_rng([cfg.seed, job.n]))[job.args[0]]


def _run_kappa(job: Job, a: Algebra, cfg: RunConfig, rng: np.random.Generator) -> TriangleReport:
    _, report = kappa(*_pair_for(job, a, cfg))
    return report


def _run_grid(job: Job, a: Algebra, cfg: RunConfig, rng: np.random.Generator) -> TriangleReport:
    if job.args[0] >= 0:
        return braid_grid_check(*_pair_for(job, a, cfg))
    # zero maps split every cone, so the unsigned grid must break the marked square
    zero = ChainMap.zero(stalk_algebra(a), stalk_algebra(a))
    unsigned = braid_grid_check(zero, zero, koszul_signs=False)
    report = TriangleReport("unsigned_control")
    report.add("sign_flip_detected", not unsigned.passed,
               failed=[c.name for c in unsigned.failures()])
    caught = None
    for k, (fx, fy) in enumerate(map_pairs(a, np.random.default_rng([cfg.seed, job.n]))):
        unsigned = braid_grid_check(fx, fy, koszul_signs=False)
        if not unsigned.passed:
            caught = (k, [c.name for c in unsigned.failures()])
            break
    report.add("sign_flip_detected_on_random_pair", caught is not None,
               pair=None if caught is None else caught[0],
               failed=[] if caught is None else caught[1])
    return report


# =============================================================================
# Registry
# =============================================================================


def _single(suite: str) -> Callable[[int], list[Job]]:
    return lambda n: [Job(suite, n, f"{suite}({n})")]


SUITES: dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("braid", 1, _plan_braid, _run_braid),
        Suite("longest", 1, _plan_longest, _run_longest),
        Suite("periodicity", 1, _single("periodicity"), _run_periodicity),
        Suite("composition", 3, _plan_composition, _run_composition),
        Suite("pdnp", 1, _plan_pdnp, _run_pdnp),
        Suite("koszul-q", 3, _plan_koszul, _run_koszul),
        Suite("prep-ses", 2, _plan_prep, _run_prep),
        Suite("frobenius", 2, _single("frobenius"), _run_frobenius),
        Suite("kappa", 1, _plan_maps("kappa"), _run_kappa),
        Suite("grid", 1, _plan_maps("grid"), _run_grid),
    )
}

SUITE_ORDER = tuple(SUITES)


def plan_suites(names: list[str], n: int, *, skip_small: bool = False) -> list[Job]:
    """Jobs for the named suites in order; suites needing a larger n raise or are skipped."""
    if not isinstance(n, int) or n < 1:
        raise PreconditionError(f"n must be a positive integer, got {n!r}")
    jobs: list[Job] = []
    for name in names:
        suite = SUITES[name]
        if n < suite.least_n:
            if skip_small:
                log.info("skipping %s: needs n >= %d", name, suite.least_n)
                continue
            raise PreconditionError(f"suite {name} needs n >= {suite.least_n}, got {n}")
        jobs.extend(suite.plan(n))
    return jobs


def run_job(job: Job, index: int, cfg: RunConfig) -> TriangleReport:
    a = gamma(job.n, _field(cfg))
    report = SUITES[job.suite].run(job, a, cfg, job_rng(cfg, index))
    report.name = f"{job.suite}/{job.label}"
    log.info("%s: %s", report.name, report.verdict.value)
    return report


def run_jobs(jobs: list[Job], cfg: RunConfig) -> list[TriangleReport]:
    """Run jobs serially or across cfg.jobs worker processes; results keep job order."""
    if cfg.jobs == 1 or len(jobs) < 2:
        return [run_job(job, k, cfg) for k, job in enumerate(jobs)]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        futures = [pool.submit(run_job, job, k, cfg) for k, job in enumerate(jobs)]
        return [f.result() for f in futures]
