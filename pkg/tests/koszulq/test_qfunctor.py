"""The functor Q from graded Λ^!-bimodules to complexes of projective Λ-bimodules."""

import numpy as np
import pytest

from twistbench.bimod import BimoduleMap, regular
from twistbench.chainx import homology_dims
from twistbench.errors import AlgebraMismatch, PreconditionError
from twistbench.koszulq import (
    gamma_pair,
    graded_corpus,
    q_functor,
    q_map,
    regrade_complex,
    short_exact_sequences,
    verify_q_exact,
    verify_q_inflation,
    verify_q_properties,
)
from twistbench.quivalg import tau


@pytest.fixture(scope="module")
def pair3(field):
    return gamma_pair(3, field)


def test_q_of_the_dual_algebra(pair3):
    y = q_functor(pair3, regular(pair3.dual))
    assert y.check()
    assert {k: len(y.atoms(k)) for k in y.degrees} == {0: 3, 1: 4, 2: 3}
    assert homology_dims(y)[0] == pair3.algebra.dim


def test_q_needs_a_dual_bimodule(pair3):
    with pytest.raises(AlgebraMismatch):
        q_functor(pair3, regular(pair3.algebra))


def test_regrade_by_zero(pair3):
    y = q_functor(pair3, regular(pair3.dual))
    assert regrade_complex(y, 0) is y


def test_q_of_identity(pair3):
    m = regular(pair3.dual)
    f = q_map(pair3, BimoduleMap.identity(m))
    assert f.is_chain_map()
    for k in f.source.degrees:
        assert np.array_equal(f.component(k), np.eye(f.source.dim(k), dtype=np.int64))


def test_properties_on_regular(pair3, field, rng):
    report = verify_q_properties(pair3, regular(pair3.dual), shifts=(1, -1), sigma=tau(3, field),
                                 rng=rng, trials=8)
    assert report.passed, report.failures()


def test_shift_on_corpus(pair3):
    corpus = graded_corpus(pair3.dual, np.random.default_rng(7), size=4)
    assert len(corpus) == 4
    for m in corpus:
        report = verify_q_properties(pair3, m, shifts=(1,), rng=np.random.default_rng(1), trials=8)
        assert [c.verdict.value for c in report.checks if c.name.startswith("shift")] == ["pass"], m.name


def test_exactness(pair3, rng):
    for incl, proj in short_exact_sequences(regular(pair3.dual), rng, count=2):
        report = verify_q_exact(pair3, incl, proj)
        assert report.passed, report.failures()


def test_exactness_needs_a_sequence(pair3, rng):
    ((incl, _),) = short_exact_sequences(regular(pair3.dual), rng, count=1)
    with pytest.raises(PreconditionError):
        verify_q_exact(pair3, incl, incl)


def test_corpus_size_must_be_positive(pair3, rng):
    with pytest.raises(PreconditionError):
        graded_corpus(pair3.dual, rng, size=0)


@pytest.mark.slow
def test_inflation(field, rng):
    report = verify_q_inflation(gamma_pair(4, field), [1, 2, 3], rng=rng, trials=8)
    assert report.passed, report.failures()
