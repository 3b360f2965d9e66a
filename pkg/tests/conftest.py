"""Shared fixtures: the field, a seeded generator and small named algebras."""

import os

import numpy as np
import pytest

from twistbench.exactfield import PrimeField
from twistbench.quivalg import gamma, preprojective


def _seed() -> int:
    return int(os.environ.get("TWISTBENCH_SEED", "0"))


@pytest.fixture(scope="session")
def field():
    return PrimeField(int(os.environ.get("TWISTBENCH_P", "32003")))


@pytest.fixture
def rng():
    return np.random.default_rng(_seed())


@pytest.fixture(scope="session")
def gamma2(field):
    return gamma(2, field)


@pytest.fixture(scope="session")
def gamma3(field):
    return gamma(3, field)


@pytest.fixture(scope="session")
def gamma4(field):
    return gamma(4, field)


@pytest.fixture(scope="session")
def pi3(field):
    return preprojective(3, field)
