"""Complexes of bimodules: cones, shifts, homology, tensor products and minimization."""

import numpy as np
import pytest

from twistbench.chainx import (
    ChainMap,
    Complex,
    Verdict,
    TriangleReport,
    chain_map_space,
    complex_to_dict,
    complexes_equal,
    cone,
    cone_inclusion,
    cone_projection,
    double_dual_iso,
    dualize,
    find_homotopy,
    homology_dims,
    homotopic,
    is_acyclic,
    is_minimal,
    is_null_homotopic,
    is_quasi_isomorphism,
    left_unit,
    minimize,
    projective,
    right_unit,
    shift,
    stalk,
    stalk_algebra,
    symmetric_gram,
    tensor_complex,
)
from twistbench.errors import AlgebraMismatch, DimensionMismatch
from twistbench.twistcalc import g_complex, h_complex, spherical_evaluation, spherical_twist_complex


# =============================================================================
# Construction
# =============================================================================


def test_build_rejects_wrong_shape(gamma3):
    atoms = {0: (projective(gamma3, gamma3, 1, 1),), 1: (projective(gamma3, gamma3, 2, 2),)}
    with pytest.raises(DimensionMismatch):
        Complex.build(gamma3, gamma3, atoms, {1: np.ones((2, 2), dtype=np.int64)})


def test_build_rejects_foreign_atoms(gamma3, gamma4):
    with pytest.raises(AlgebraMismatch):
        Complex.build(gamma3, gamma3, {0: (projective(gamma4, gamma4, 1, 1),)})


def test_spherical_twist_complex(gamma3):
    """X_1 = cone(A e_1 ⊗ e_1 A -> A) with H_0 = A / A e_1 A."""
    x = spherical_twist_complex(gamma3, 1)
    assert x.check()
    assert x.dims == {0: 10, 1: 9}
    assert homology_dims(x) == {0: 5, 1: 4}


def test_shift_round_trip(gamma3):
    x = spherical_twist_complex(gamma3, 2)
    assert complexes_equal(shift(shift(x, 1), -1), x)
    assert shift(x, 3).degrees == [3, 4]
    assert np.array_equal(shift(x, 1).diff(2), (-x.diff(1)) % gamma3.field.p)


def test_cone_maps_are_chain_maps(gamma3):
    ev = spherical_evaluation(gamma3, 1)
    c = cone(ev)
    assert cone_inclusion(ev, c).is_chain_map()
    assert cone_projection(ev, c).is_chain_map()


def test_cone_of_identity_is_contractible(gamma3):
    c = cone(ChainMap.identity(stalk_algebra(gamma3)))
    assert is_acyclic(c)
    assert minimize(c).is_zero()
    assert is_null_homotopic(ChainMap.identity(c))


# =============================================================================
# G_m and H_m
# =============================================================================


@pytest.mark.parametrize("m", [1, 2, 3])
def test_g_complex_shape(gamma3, m):
    g = g_complex(gamma3, m)
    assert g.check()
    assert {k: len(g.atoms(k)) for k in g.degrees} == {i: m - i for i in range(m)}


def test_h_complex_is_a_complex(gamma4):
    h = h_complex(gamma4, 4)
    assert h.check()
    assert h.degrees == [0, 1, 2, 3, 4]


# =============================================================================
# Tensor products
# =============================================================================


def test_unit_isomorphisms(gamma3):
    x = spherical_twist_complex(gamma3, 1)
    for f in (left_unit(x), right_unit(x)):
        assert f.is_chain_map()
        assert is_quasi_isomorphism(f)


def test_tensor_is_a_complex(gamma3):
    t = tensor_complex(spherical_twist_complex(gamma3, 1), spherical_twist_complex(gamma3, 2))
    assert t.check()
    assert t.degrees == [0, 1, 2]


def test_minimize_preserves_homology(gamma3):
    t = tensor_complex(spherical_twist_complex(gamma3, 1), spherical_twist_complex(gamma3, 2))
    mn = minimize(t, with_witness=True)
    assert homology_dims(mn.complex) == homology_dims(t)
    assert is_minimal(mn.complex)
    assert mn.to_minimal.is_chain_map() and mn.from_minimal.is_chain_map()
    assert homotopic(mn.to_minimal.compose(mn.from_minimal), ChainMap.identity(mn.complex))


# =============================================================================
# Maps and homotopies
# =============================================================================


def test_endomorphisms_of_the_stalk(gamma3):
    space = chain_map_space(stalk_algebra(gamma3), stalk_algebra(gamma3))
    assert space.dim == 4
    assert all(f.is_chain_map() for f in space.maps())


def test_random_map_is_a_chain_map(gamma3, rng):
    x = spherical_twist_complex(gamma3, 1)
    f = chain_map_space(x, x).random(rng)
    assert f.is_chain_map()
    assert homotopic(f, f)


def test_homotopy_witness(gamma3):
    c = cone(ChainMap.identity(stalk_algebra(gamma3)))
    ident = ChainMap.identity(c)
    h = find_homotopy(ident, ChainMap.zero(c, c))
    assert h is not None and h.degree == 1


def test_stalk_of_projective(gamma3):
    s = stalk(projective(gamma3, gamma3, 2, 2), 3)
    assert s.degrees == [3] and s.dim(3) == 16


# =============================================================================
# Duality
# =============================================================================


def test_symmetric_gram(gamma3, pi3):
    assert symmetric_gram(gamma3) is not None
    assert symmetric_gram(pi3) is None


def test_dual_of_twist_complex(gamma3):
    x = spherical_twist_complex(gamma3, 1)
    d = dualize(x)
    assert d.check()
    assert d.degrees == [-1, 0]
    assert double_dual_iso(x).is_chain_map()


# =============================================================================
# Reports and export
# =============================================================================


def test_report_verdicts():
    report = TriangleReport("demo")
    report.add("ok", True)
    assert report.passed
    report.add("unknown", None)
    assert report.verdict is Verdict.INCONCLUSIVE
    report.add("bad", False, dims=[1, 2])
    assert report.verdict is Verdict.FAIL
    assert [c.name for c in report.failures()] == ["unknown", "bad"]
    assert report.to_dict()["checks"][2]["details"] == {"dims": [1, 2]}


def test_empty_report_does_not_pass():
    assert not TriangleReport("empty").passed


def test_complex_to_dict(gamma4):
    data = complex_to_dict(h_complex(gamma4, 2))
    assert set(data) == {"name", "left", "right", "degrees", "homology"}
    assert list(data["degrees"]) == ["2", "1", "0"]
    assert all("differential" in v for v in data["degrees"].values())
