# main.py - The `twistbench` command line
# verify runs suites and prints a JSON report; dump prints algebras and
# complexes; config prints the resolved run configuration.
# Exit codes: 0 every verdict passes, 1 a check failed or stayed
# inconclusive, 2 usage, configuration or precondition error.

from __future__ import annotations

import json
import sys
import time
from pathlib import Path
from typing import Any, NoReturn

import click

from twistbench import __version__, log
from twistbench.chainx import Verdict, complex_to_dict
from twistbench.cli.suites import SUITE_ORDER, plan_suites, run_jobs
from twistbench.config import RunConfig, load_config
from twistbench.errors import PreconditionError
from twistbench.exactfield import PrimeField
from twistbench.quivalg import gamma, linear_orientation_algebra, preprojective
from twistbench.twistcalc import BraidWord, apply_word, g_complex, h_complex

logger = log.get_logger(__name__)

SCHEMA = 1

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _fail(exc: PreconditionError) -> NoReturn:
    logger.error("%s", exc)
    sys.exit(EXIT_USAGE)


def _emit(data: dict[str, Any], out: Path | None = None) -> None:
    text = json.dumps(data, indent=2, ensure_ascii=False)
    click.echo(text)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text + "\n", encoding="utf-8")
        logger.info("report written to %s", out)


def _config(**overrides: Any) -> RunConfig:
    try:
        cfg = load_config(**overrides)
    except PreconditionError as exc:
        log.configure(bool(overrides.get("verbose")))
        _fail(exc)
    log.configure(cfg.verbose)
    return cfg


def _field(cfg: RunConfig) -> PrimeField:
    return PrimeField(cfg.p)


@click.group()
@click.version_option(__version__, prog_name="twistbench")
def cli() -> None:
    """Exact checks for spherical and periodic twists over F_p."""


# =============================================================================
# verify
# =============================================================================


@cli.command()
@click.argument("suite", type=click.Choice([*SUITE_ORDER, "all"]))
@click.option("--n", "n", type=int, required=True, help="Size of Γₙ.")
@click.option("--p", "p", type=int, default=None, help="Field characteristic (odd prime).")
@click.option("--seed", type=int, default=None)
@click.option("--trials", type=int, default=None, help="Random trials per isomorphism test.")
@click.option("--jobs", type=int, default=None, help="Worker processes.")
@click.option("--max-period", "max_period", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Also write the report here.")
@click.option("--verbose", is_flag=True, default=None)
def verify(suite: str, n: int, **options: Any) -> None:
    """Run SUITE for Γₙ and print a JSON report."""
    cfg = _config(**options)
    names = list(SUITE_ORDER) if suite == "all" else [suite]
    try:
        jobs = plan_suites(names, n, skip_small=suite == "all")
        start = time.perf_counter()
        reports = run_jobs(jobs, cfg)
    except PreconditionError as exc:
        _fail(exc)
    elapsed = time.perf_counter() - start

    verdict = Verdict.PASS
    if not reports or any(r.verdict is not Verdict.PASS for r in reports):
        verdict = Verdict.FAIL if any(r.verdict is Verdict.FAIL for r in reports) else Verdict.INCONCLUSIVE
    data = {
        "schema": SCHEMA,
        "command": {"name": "verify", "suite": suite, "n": n},
        "config": {k: v for k, v in cfg.to_dict().items() if k not in ("out", "verbose", "jobs")},
        "verdict": verdict.value,
        "reports": [r.to_dict() for r in reports],
        "timings": {"total": round(elapsed, 6), **{r.name: r.timings() for r in reports}},
    }
    _emit(data, cfg.out)
    for r in reports:
        for c in r.failures():
            logger.warning("%s: %s is %s", r.name, c.name, c.verdict.value)
    logger.info("%s --n %d: %s (%d reports, %.2fs)", suite, n, verdict.value, len(reports), elapsed)
    sys.exit(EXIT_PASS if verdict is Verdict.PASS else EXIT_FAIL)


# =============================================================================
# dump
# =============================================================================


@cli.group()
def dump() -> None:
    """Print algebras and complexes as JSON."""


@dump.command("algebra")
@click.option("--gamma", "gamma_n", type=int, default=None, help="Zig-zag algebra Γₙ.")
@click.option("--preprojective", "pi_n", type=int, default=None, help="Preprojective algebra Πₙ.")
@click.option("--linear", "line_n", type=int, default=None, help="Path algebra of 1 -> ... -> n.")
@click.option("--p", "p", type=int, default=None)
def dump_algebra(gamma_n: int | None, pi_n: int | None, line_n: int | None, p: int | None) -> None:
    chosen = [v for v in (gamma_n, pi_n, line_n) if v is not None]
    if len(chosen) != 1:
        raise click.UsageError("give exactly one of --gamma, --preprojective, --linear")
    cfg = _config(p=p)
    fld = _field(cfg)
    try:
        if gamma_n is not None:
            a = gamma(gamma_n, fld)
        elif pi_n is not None:
            a = preprojective(pi_n, fld)
        else:
            a, _ = linear_orientation_algebra(line_n, fld)
    except PreconditionError as exc:
        _fail(exc)
    _emit({"schema": SCHEMA, "algebra": a.to_dict()})


@dump.command("complex")
@click.option("--h", "h_m", type=int, default=None, help="H_m = cone(G_m -> Γₙ).")
@click.option("--g", "g_m", type=int, default=None, help="G_m.")
@click.option("--n", "n", type=int, required=True)
@click.option("--p", "p", type=int, default=None)
def dump_complex(h_m: int | None, g_m: int | None, n: int, p: int | None) -> None:
    if (h_m is None) == (g_m is None):
        raise click.UsageError("give exactly one of --h, --g")
    cfg = _config(p=p)
    try:
        a = gamma(n, _field(cfg))
        c = h_complex(a, h_m) if h_m is not None else g_complex(a, g_m)
    except PreconditionError as exc:
        _fail(exc)
    _emit({"schema": SCHEMA, "complex": complex_to_dict(c)})


@dump.command("word-complex")
@click.option("--n", "n", type=int, required=True)
@click.option("--word", "word", type=str, required=True, help="Comma separated generators, e.g. 1,2,1.")
@click.option("--p", "p", type=int, default=None)
def dump_word_complex(n: int, word: str, p: int | None) -> None:
    cfg = _config(p=p)
    try:
        w = BraidWord.parse(n, word)
        c = apply_word(gamma(n, _field(cfg)), w)
    except PreconditionError as exc:
        _fail(exc)
    _emit({"schema": SCHEMA, "word": str(w), "complex": complex_to_dict(c)})


# =============================================================================
# config
# =============================================================================


@cli.command("config")
@click.option("--p", "p", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--trials", type=int, default=None)
@click.option("--jobs", type=int, default=None)
def show_config(**options: Any) -> None:
    """Print the resolved configuration."""
    cfg = _config(**options)
    _emit({"schema": SCHEMA, "config": cfg.to_dict()})
