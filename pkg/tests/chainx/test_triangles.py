"""Triangles built from a pair of maps: the Mayer-Vietoris cone and the 3x3 grid."""

import pytest

from twistbench.chainx import ChainMap, braid_grid_check, kappa, stalk_algebra
from twistbench.errors import AlgebraMismatch
from twistbench.twistcalc import spherical_evaluation


def test_kappa_of_zero_maps(gamma2):
    zero = ChainMap.zero(stalk_algebra(gamma2), stalk_algebra(gamma2))
    k, report = kappa(zero, zero)
    assert report.passed, report.failures()
    assert k.check()


def test_kappa_of_evaluations(gamma2):
    k, report = kappa(spherical_evaluation(gamma2, 1), spherical_evaluation(gamma2, 2))
    assert report.passed, report.failures()
    assert k.check()


def test_grid_with_signs(gamma2):
    report = braid_grid_check(spherical_evaluation(gamma2, 1), spherical_evaluation(gamma2, 2))
    assert report.passed, report.failures()
    assert len(report.checks) == 9


def test_unsigned_grid_breaks_the_corner(gamma2):
    """Split cones keep X1 Y1 alive in X3 Y3, so only the signed grid closes."""
    zero = ChainMap.zero(stalk_algebra(gamma2), stalk_algebra(gamma2))
    assert braid_grid_check(zero, zero).passed
    unsigned = braid_grid_check(zero, zero, koszul_signs=False)
    assert not unsigned.passed


def test_maps_over_different_algebras(gamma2, gamma3):
    with pytest.raises(AlgebraMismatch):
        kappa(spherical_evaluation(gamma2, 1), spherical_evaluation(gamma3, 1))
