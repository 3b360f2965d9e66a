"""The preprojective sequence, truncated resolutions and Frobenius data."""

import pytest

from twistbench.errors import PreconditionError
from twistbench.koszulq import (
    prep_sequence,
    prep_ses,
    truncated_resolution,
    truncated_twist_data,
    verify_frobenius,
    verify_prep_exactness,
    verify_truncated,
)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_prep_ses(field, n):
    report = prep_ses(n, field)
    assert report.passed, report.failures()


def test_prep_sequence_dimensions(field):
    incl, proj = prep_sequence(4, field)
    assert (incl.source.dim, incl.target.dim, proj.target.dim) == (10, 20, 10)


def test_prep_sequence_needs_two_vertices(field):
    with pytest.raises(PreconditionError):
        prep_sequence(1, field)


def test_prep_exactness(field):
    report = verify_prep_exactness(3, field)
    assert report.passed, report.failures()


def test_small_truncated_resolutions(field):
    assert truncated_resolution(1, field).degrees == [0]
    assert truncated_resolution(2, field).degrees == [0, 1]
    with pytest.raises(PreconditionError):
        truncated_twist_data(2, field)


def test_truncated_twist_data(field):
    td = truncated_twist_data(3, field)
    assert td.period == 3
    assert td.is_resolution()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_truncated(field, rng, n):
    report = verify_truncated(n, field, rng=rng, trials=8)
    assert report.passed, report.failures()


def test_frobenius(field, rng):
    report = verify_frobenius(3, field, rng=rng, trials=8)
    verdicts = {c.name: c.verdict.value for c in report.checks}
    for name in ("gamma_is_symmetric", "gamma_gorenstein", "preprojective_gorenstein",
                 "nakayama_reverses_vertices", "dual_of_tau_is_tau_dual"):
        assert verdicts[name] == "pass", name
