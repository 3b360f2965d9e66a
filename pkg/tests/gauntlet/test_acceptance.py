"""Acceptance gauntlet: every suite at the sizes the workbench is meant to handle.

Runs through the command line exactly as a user would, one suite per test.
Slow; deselect with -m 'not slow'.
"""

import json

import pytest
from click.testing import CliRunner

from twistbench.cli import cli

pytestmark = pytest.mark.slow


def verify(suite: str, n: int, *extra: str) -> dict:
    result = CliRunner().invoke(cli, ["verify", suite, "--n", str(n), *extra])
    data = json.loads(result.stdout)
    failed = {
        r["name"]: [c["name"] for c in r["checks"] if c["verdict"] != "pass"]
        for r in data["reports"]
        if r["verdict"] != "pass"
    }
    assert result.exit_code == 0, failed
    assert data["verdict"] == "pass"
    return data


@pytest.mark.parametrize("n", [2, 3, 4])
def test_braid_relations(n):
    """Every X_i is invertible and every pair satisfies its braid relation."""
    data = verify("braid", n)
    assert len(data["reports"]) == n + n * (n - 1) // 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_longest_element(n):
    """The longest word acts as a shift by n composed with τₙ."""
    verify("longest", n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_periodicity(n):
    """Γₙ has period n with automorphism τₙ."""
    verify("periodicity", n)


def test_composition():
    """Distant spherical twists compose to the periodic twist of the sum."""
    verify("composition", 4)


def test_pdnp():
    """Restriction and induction of twists along corners agree."""
    verify("pdnp", 3)


@pytest.mark.parametrize("n", [3, 4])
def test_koszul(n):
    """Q properties over a random corpus, exactness and inflation."""
    verify("koszul-q", n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_preprojective_sequence(n):
    verify("prep-ses", n)


@pytest.mark.parametrize("n", [2, 3])
def test_triangles(n):
    """κ and the signed grid on random map pairs; the unsigned control breaks."""
    verify("kappa", n)
    verify("grid", n)


def test_second_prime():
    """Nothing depends on the characteristic."""
    data = verify("braid", 3, "--p", "31013")
    assert data["config"]["p"] == 31013


def test_parallel_matches_serial():
    serial = verify("prep-ses", 4)
    parallel = verify("prep-ses", 4, "--jobs", "2")
    assert [r["checks"] for r in serial["reports"]] == [r["checks"] for r in parallel["reports"]]
