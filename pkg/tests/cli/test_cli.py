"""The twistbench command line: JSON output and exit codes."""

import json

import pytest
from click.testing import CliRunner

from twistbench.cli import cli
from twistbench.cli.suites import SUITE_ORDER, SUITES, Job, job_rng, plan_suites, run_jobs
from twistbench.config import RunConfig
from twistbench.errors import PreconditionError


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def run(runner, *args):
    result = runner.invoke(cli, list(args))
    data = json.loads(result.stdout) if result.stdout.strip().startswith("{") else None
    return result, data


# =============================================================================
# config and dump
# =============================================================================


def test_config(runner):
    result, data = run(runner, "config", "--p", "31013", "--jobs", "2")
    assert result.exit_code == 0
    assert data["schema"] == 1
    assert data["config"]["p"] == 31013
    assert data["config"]["jobs"] == 2


def test_config_rejects_even_p(runner):
    result, data = run(runner, "config", "--p", "4")
    assert result.exit_code == 2
    assert data is None


def test_dump_gamma(runner):
    result, data = run(runner, "dump", "algebra", "--gamma", "3")
    assert result.exit_code == 0
    assert len(data["algebra"]["basis"]) == 10


def test_dump_preprojective(runner):
    result, data = run(runner, "dump", "algebra", "--preprojective", "3")
    assert result.exit_code == 0
    assert len(data["algebra"]["basis"]) == 10


@pytest.mark.parametrize("args", [[], ["--gamma", "3", "--linear", "3"]])
def test_dump_algebra_needs_one_choice(runner, args):
    result, _ = run(runner, "dump", "algebra", *args)
    assert result.exit_code == 2


def test_dump_complex(runner):
    result, data = run(runner, "dump", "complex", "--g", "2", "--n", "3")
    assert result.exit_code == 0
    assert data["complex"]["degrees"]["1"]["atoms"] and data["complex"]["degrees"]["0"]["atoms"]


def test_dump_complex_needs_one_choice(runner):
    result, _ = run(runner, "dump", "complex", "--g", "2", "--h", "2", "--n", "3")
    assert result.exit_code == 2


def test_dump_complex_m_out_of_range(runner):
    result, _ = run(runner, "dump", "complex", "--h", "5", "--n", "3")
    assert result.exit_code == 2


def test_dump_word_complex(runner):
    result, data = run(runner, "dump", "word-complex", "--n", "2", "--word", "1,2,1")
    assert result.exit_code == 0
    assert data["word"] == "1,2,1"
    assert data["complex"]["left"] == data["complex"]["right"]


def test_dump_bad_word(runner):
    result, _ = run(runner, "dump", "word-complex", "--n", "2", "--word", "1,3")
    assert result.exit_code == 2


# =============================================================================
# verify
# =============================================================================


def test_verify_needs_positive_n(runner):
    result, _ = run(runner, "verify", "longest", "--n", "0")
    assert result.exit_code == 2


def test_verify_suite_too_small(runner):
    result, _ = run(runner, "verify", "composition", "--n", "2")
    assert result.exit_code == 2


def test_verify_unknown_suite(runner):
    result, _ = run(runner, "verify", "everything", "--n", "2")
    assert result.exit_code == 2


def test_verify_longest(runner, tmp_path):
    out = tmp_path / "reports" / "longest.json"
    result, data = run(runner, "verify", "longest", "--n", "2", "--out", str(out))
    assert result.exit_code == 0, result.stderr
    assert data["schema"] == 1
    assert data["verdict"] == "pass"
    assert data["command"] == {"name": "verify", "suite": "longest", "n": 2}
    assert "jobs" not in data["config"]
    assert [r["name"] for r in data["reports"]] == [
        "longest/longest(2)", "longest/h_complex(1)", "longest/h_complex(2)",
    ]
    assert json.loads(out.read_text(encoding="utf-8")) == data


def test_verify_prep_ses(runner):
    result, data = run(runner, "verify", "prep-ses", "--n", "3")
    assert result.exit_code == 0
    assert len(data["reports"]) == 2


# =============================================================================
# Suite planning
# =============================================================================


def test_suite_order():
    assert SUITE_ORDER == ("braid", "longest", "periodicity", "composition", "pdnp",
                           "koszul-q", "prep-ses", "frobenius", "kappa", "grid")


def test_plan_braid():
    labels = [j.label for j in plan_suites(["braid"], 3)]
    assert labels == ["invertible(1)", "invertible(2)", "invertible(3)",
                      "braid(1,2)", "braid(1,3)", "braid(2,3)"]


def test_plan_all_skips_small_suites():
    suites = {j.suite for j in plan_suites(list(SUITE_ORDER), 2, skip_small=True)}
    assert "composition" not in suites and "koszul-q" not in suites
    assert "braid" in suites


def test_plan_rejects_small_n():
    with pytest.raises(PreconditionError):
        plan_suites(["koszul-q"], 2)


def test_grid_has_a_control():
    jobs = SUITES["grid"].plan(1)
    assert jobs[-1].label == "unsigned_control"


def test_job_generators_depend_on_index():
    cfg = RunConfig()
    assert job_rng(cfg, 0).integers(1 << 30) != job_rng(cfg, 1).integers(1 << 30)
    assert job_rng(cfg, 3).integers(1 << 30) == job_rng(cfg, 3).integers(1 << 30)


def test_run_jobs_keeps_order():
    cfg = RunConfig()
    jobs = [Job("prep-ses", 2, "prep_ses(2)"), Job("frobenius", 2, "frobenius(2)")]
    reports = run_jobs(jobs, cfg)
    assert [r.name for r in reports] == ["prep-ses/prep_ses(2)", "frobenius/frobenius(2)"]


def test_unsigned_control_detects_the_sign(runner):
    result, data = run(runner, "verify", "grid", "--n", "1")
    control = data["reports"][-1]
    assert control["name"] == "grid/unsigned_control"
    assert control["verdict"] == "pass"
    names = [c["name"] for c in control["checks"]]
    assert names == ["sign_flip_detected", "sign_flip_detected_on_random_pair"]
    assert control["checks"][1]["details"]["pair"] is not None
