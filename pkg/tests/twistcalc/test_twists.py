"""Spherical twists, A_n-configurations and periodic twist data over Γₙ."""

import logging

import pytest

from twistbench.chainx import REGULAR, homology_dims, is_acyclic
from twistbench.errors import NotAnConfiguration, NotSpherical, PreconditionError
from twistbench.quivalg import corner_algebra, gamma, linear_orientation_algebra, tau
from twistbench.twistcalc import (
    BraidWord,
    apply_word,
    detect_periodicity,
    h_complex,
    is_an_configuration,
    is_spherical,
    periodic_twist,
    periodic_twist_data,
    require_spherical,
    spherical_twist_data,
    verify_braid_relation,
    verify_giprime,
    verify_h_complex,
    verify_invertible,
    verify_longest,
    verify_onetritooth,
    verify_pdnp,
)


# =============================================================================
# Configurations
# =============================================================================


def test_gamma_vertices_are_spherical(gamma3, field):
    assert all(is_spherical(gamma3, i) for i in gamma3.vertices)
    assert is_spherical(gamma(1, field), 1)


def test_preprojective_vertex_is_not_spherical(pi3):
    with pytest.raises(NotSpherical):
        require_spherical(pi3, 1)


def test_vertex_out_of_range(gamma3):
    with pytest.raises(PreconditionError):
        is_spherical(gamma3, 4)


@pytest.mark.parametrize(
    "vertices, expected",
    [([1, 2, 3], True), ([3, 2, 1], True), ([1, 3], False), ([1, 1], False), ([], False)],
)
def test_an_configuration(gamma3, vertices, expected):
    assert is_an_configuration(gamma3, vertices) is expected


def test_word_outside_configuration(gamma3):
    with pytest.raises(PreconditionError):
        apply_word(gamma3, BraidWord(4, (4,)))


def test_braid_needs_distinct_vertices(gamma3):
    with pytest.raises(PreconditionError):
        verify_braid_relation(gamma3, 2, 2)


# =============================================================================
# Spherical twists
# =============================================================================


def test_empty_word_is_identity(gamma2):
    assert homology_dims(apply_word(gamma2, BraidWord(2))) == {0: gamma2.dim}


@pytest.mark.parametrize("i", [1, 2])
def test_twist_is_invertible(gamma2, rng, i):
    report = verify_invertible(gamma2, i, rng=rng, trials=8)
    assert report.passed, report.failures()


def test_braid_relation(gamma2, rng):
    report = verify_braid_relation(gamma2, 1, 2, rng=rng, trials=8)
    assert report.passed, report.failures()


def test_distant_twists_commute(gamma3, rng):
    report = verify_braid_relation(gamma3, 1, 3, rng=rng, trials=8)
    assert report.passed, report.failures()


@pytest.mark.parametrize("n", [1, 2])
def test_longest_element(field, rng, n):
    report = verify_longest(n, field, rng=rng, trials=8)
    assert report.passed, report.failures()


def test_twist_word_is_not_acyclic(gamma2):
    t = apply_word(gamma2, BraidWord(2, (1, 2)))
    assert not is_acyclic(t)
    assert t.check()


# =============================================================================
# Periodic twist data
# =============================================================================


def test_spherical_twist_data(gamma3):
    td = spherical_twist_data(gamma3, 2)
    assert td.period == 1
    assert td.vertices == (2,)
    assert td.is_resolution()
    assert td.to_dict()["period"] == 1


def test_periodic_twist_of_spherical_data_is_the_spherical_twist(gamma3):
    td = spherical_twist_data(gamma3, 1)
    psi = periodic_twist(td)
    assert psi.check()
    assert homology_dims(psi) == {0: 5, 1: 4}


def test_gamma_one_has_period_one(field):
    g1 = gamma(1, field)
    cert = detect_periodicity(g1, 3)
    assert cert is not None and cert.period == 1
    assert cert.matches(tau(1, field))


def test_gamma_two_has_period_two(gamma2, field):
    cert = detect_periodicity(gamma2, 4)
    assert cert is not None and cert.period == 2
    assert cert.matches(tau(2, field))
    assert cert.to_dict()["witness"]
    assert cert.syzygy_iso.is_invertible()


def test_period_bound(gamma2):
    assert detect_periodicity(gamma2, 1) is None


def test_periodicity_warns_without_symmetric_form(field, caplog):
    """kA2 has finite projective dimension and no symmetric form."""
    line, _ = linear_orientation_algebra(2, field)
    logger = logging.getLogger("twistbench")
    logger.addHandler(caplog.handler)
    try:
        assert detect_periodicity(line, 3) is None
    finally:
        logger.removeHandler(caplog.handler)
    assert any("no symmetric Frobenius form" in r.getMessage() for r in caplog.records)


def test_corner_data_on_two_vertices(gamma3):
    td = periodic_twist_data(gamma3, [1, 2], max_period=3)
    assert td.period == 2
    assert td.is_resolution()
    assert corner_algebra(gamma3, [1, 2])[0] is td.corner


def test_missing_period(gamma3):
    with pytest.raises(PreconditionError):
        periodic_twist_data(gamma3, [1, 2], max_period=1)


def test_pdnp_and_corollary(gamma3, rng):
    td = spherical_twist_data(gamma3, 2)
    assert verify_pdnp(gamma3, td, rng=rng, trials=8).passed
    assert verify_onetritooth(gamma3, td, rng=rng, trials=8).passed


def test_giprime(gamma3):
    report = verify_giprime(gamma3, spherical_twist_data(gamma3, 1), (1, 2))
    assert report.passed, report.failures()


def test_unlinked_corner_is_not_a_configuration(gamma3):
    corner, _ = corner_algebra(gamma3, [1, 3])
    with pytest.raises(NotAnConfiguration):
        apply_word(corner, BraidWord(2, (1,)))


# =============================================================================
# G_m and H_m
# =============================================================================


def test_h4_diagram(gamma4):
    h = h_complex(gamma4, 4)
    assert {k: len(h.atoms(k)) for k in h.degrees} == {0: 1, 1: 4, 2: 3, 3: 2, 4: 1}
    assert [x.kind for x in h.atoms(0)] == [REGULAR]
    assert sorted((x.i, x.j) for x in h.atoms(3)) == [(3, 1), (4, 2)]


@pytest.mark.parametrize("m", [1, 2])
def test_word_is_h_complex(gamma2, rng, m):
    report = verify_h_complex(gamma2, m, rng=rng, trials=8)
    assert report.passed, report.failures()


@pytest.mark.slow
def test_word_is_h3(gamma3, rng):
    assert verify_h_complex(gamma3, 3, rng=rng, trials=8).passed
