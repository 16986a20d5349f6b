import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from webflat.catalog import CLASSIFIED, expand_generator, get
from webflat.errors import SingularMatrix
from webflat.foliation import pullback
from webflat.mpoly import MPoly, scalar_nullspace
from webflat.parser import parse_poly
from webflat.symmetry import (ProjMap, _lie_rows, conjugacy_witness_check, isotropy_lie_dimension,
                              isotropy_report, orbit_dimension, preserves, random_proj_map)

ORBIT_DIMS = {"F1": 6, "F2": 6, "F3": 8, "F4": 7, "F5": 7}


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


@given(st.integers(0, 10 ** 6))
def test_projmap_text_round_trip(seed):
    phi = random_proj_map(random.Random(seed), 4)
    assert ProjMap.parse(str(phi)) == phi


def test_projmap_parse_and_errors():
    assert ProjMap.parse("[y:x:2*z]").rows()[0][1] == 1
    with pytest.raises(SingularMatrix):
        ProjMap.parse("[x:x:z]")
    with pytest.raises(ValueError):
        ProjMap.parse("[x^2:y:z]")
    assert ProjMap.parse("[2*x:2*y:2*z]") == ProjMap.identity()


@pytest.mark.parametrize("name", CLASSIFIED)
def test_orbit_dimensions(name):
    expected = ORBIT_DIMS.get(name, 7)
    assert orbit_dimension(get(name).homog) == expected


@pytest.mark.parametrize("name", ["F1", "F2", "H1", "H5"])
def test_lie_algebra_is_first_order_isotropy(name):
    """Each computed infinitesimal symmetry X keeps F invariant to first order under I + eps*X."""
    h = get(name).homog
    basis = scalar_nullspace(_lie_rows(h), 9)
    assert len(basis) - 1 == isotropy_lie_dimension(h)
    eps = parse_poly("eps")
    for vec in basis:
        M = [[MPoly.const(int(i == j)) + eps.scale(vec[3 * i + j]) for j in range(3)] for i in range(3)]
        g = pullback(h, M, saturate=False)
        a, b, c = (f.with_vars(g.vars) for f in h.comps)
        wedge = [g.a * b - g.b * a, g.a * c - g.c * a, g.b * c - g.c * b]
        for f in wedge:
            assert f.coeff({"eps": 1}).is_zero()


@given(st.integers(0, 10 ** 6), st.sampled_from(["F1", "F4", "H2"]))
def test_orbit_dimension_is_a_conjugacy_invariant(seed, name):
    phi = random_proj_map(random.Random(seed), 2)
    h = get(name).homog
    assert orbit_dimension(pullback(h, phi.rows())) == orbit_dimension(h)


@given(st.integers(0, 10 ** 6))
def test_conjugated_symmetries(seed):
    """If g preserves F then phi^-1 g phi preserves phi^* F."""
    phi = random_proj_map(random.Random(seed), 2)
    h = get("F3").homog
    g = ProjMap.parse("[y:x:z]")
    assert preserves(g, h)
    from webflat.mpoly import scalar_inverse

    conj = matmul(matmul(scalar_inverse(phi.rows()), g.rows()), phi.rows())
    assert preserves(ProjMap(conj), pullback(h, phi.rows()))
    assert conjugacy_witness_check(pullback(h, phi.rows()), h, phi)


def test_symmetries_form_a_group():
    h = get("F3").homog
    gens = [g for t in get("F3").generators for g in expand_generator(t)]
    for a in gens[:4]:
        for b in gens[:4]:
            assert preserves(ProjMap(matmul(a.rows(), b.rows())), h)


def test_report():
    rep = isotropy_report(get("F1").homog, expand_generator(get("F1").generators[0]))
    js = rep.to_json()
    assert js["lie_dim"] == 2 and js["orbit_dim"] == 6 and js["verified_generators"] >= 1


def test_parameters_rejected():
    with pytest.raises(ValueError):
        isotropy_lie_dimension(get("NF1").homog)
