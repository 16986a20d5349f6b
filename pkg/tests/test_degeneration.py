import pytest
from hypothesis import given
from hypothesis import strategies as st

from webflat.catalog import WITNESSES, get
from webflat.degeneration import (ParamFamily, contact_polynomials, degeneration_suite_F1, degeneration_suite_F2,
                                  double_inflection_points, family_limit, is_double_inflection, looks_like_F1,
                                  looks_like_F2, parse_scale, tangent_line, valuation_of)
from webflat.errors import HypothesisViolated, NotDoubleInflection, WrongScale
from webflat.exactnum import to_field
from webflat.foliation import ProjPoint, homogenize, inflection_divisor, inflection_polynomial
from webflat.mpoly import render
from webflat.parser import parse_oneform
from webflat.symmetry import ProjMap, conjugacy_witness_check


def target(text):
    return homogenize(parse_oneform(text))


def fam(matrix, scale, shift=0):
    return ParamFamily.from_json({"matrix": matrix, "scale": scale, "shift": shift})


@pytest.mark.parametrize("text,coeff,k", [
    ("-eps^4", -1, 4), ("eps", 1, 1), ("1/(8*eps)", to_field(1) / 8, -1), ("3", 3, 0),
    ("2*eps^-3", 2, -3), ("eps^(-2)", 1, -2),
])
def test_parse_scale(text, coeff, k):
    c, kk = parse_scale(text)
    assert c == coeff and kk == k


def test_bad_families():
    with pytest.raises(ValueError):
        fam([["1", "0"], ["0", "1"]], "1")
    with pytest.raises(ValueError):
        fam([["x", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]], "1")
    with pytest.raises(ValueError):
        fam([["eps", "0", "0"], ["eps", "0", "0"], ["0", "0", "1"]], "1")


def test_family_json_round_trip():
    f = fam([["1", "0", "0"], ["0", "eps^2", "0"], ["0", "0", "eps^3"]], "-eps^4", 3)
    g = ParamFamily.from_json(f.to_json())
    assert (g.scale, g.coeff, g.shift) == (f.scale, f.coeff, f.shift)
    assert g.matrix == f.matrix


def test_homothety_limit_of_the_lattice_form():
    f = fam([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "eps"]], "-eps^4", 1)
    assert family_limit(get("F3").homog, f).proportional(get("H1").homog)


def test_wrong_scale_reports_valuation():
    f = fam([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "eps"]], "eps^2", 1)
    with pytest.raises(WrongScale) as exc:
        family_limit(get("F3").homog, f)
    assert exc.value.valuation == -2
    assert valuation_of(get("F3").homog, f) == -2


@given(st.integers(-6, 6))
def test_only_one_scale_works(k):
    f = fam([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "eps"]], f"eps^{k}", 1)
    assert (valuation_of(get("F3").homog, f) == 0) == (k == 4)


def test_weighted_limits_of_examples():
    f = fam([["1", "0", "0"], ["0", "eps^2", "0"], ["0", "0", "eps^3"]], "eps^4", 3)
    assert family_limit(get("EX_KAPPA").homog, f).proportional(target("x*dy-y*dx+y^3*dy"))
    f = fam([["1", "0", "0"], ["0", "eps^3", "0"], ["0", "0", "eps^4"]], "eps^4", 4)
    lim = family_limit(get("EX_NOINFL").homog, f)
    assert lim.proportional(target("dx+y^3*dy"))
    assert conjugacy_witness_check(lim, get("F2").homog, ProjMap.parse("[z:y:-x]"))


def test_witness_maps():
    for (a, b), phi in WITNESSES.items():
        assert conjugacy_witness_check(get(a).homog, get(b).homog, ProjMap.parse(phi))


def test_contact_polynomials_start_with_the_inflection_curve():
    h = get("F4").homog
    Q1 = contact_polynomials(h, 1)[0]
    I = inflection_polynomial(h).with_vars(Q1.vars)
    assert (Q1.scale(I.leading_coeff()) - I.scale(Q1.leading_coeff())).is_zero()


def test_double_inflection_detection():
    h = get("F2").homog
    rep = double_inflection_points(h)
    assert rep and [render(g) for g in rep.curves] == ["y"]
    p = rep.sample(h)
    Q1, Q2, Q3 = contact_polynomials(h, 3)
    at = dict(zip("xyz", p.coords))
    assert Q1.evaluate(at) == 0 and Q2.evaluate(at) == 0 and Q3.evaluate(at) != 0
    assert is_double_inflection(h, p)
    assert tangent_line(h, p).contains(p)
    assert not double_inflection_points(get("F1").homog)


def test_isolated_double_inflection_points():
    rep = double_inflection_points(get("JOUANOLOU").homog)
    assert {str(p) for p, _ in rep.points} >= {"[0:0:1]", "[1:0:0]", "[0:1:0]"}


def test_suite_hypotheses_are_checked():
    with pytest.raises(HypothesisViolated):
        degeneration_suite_F1(get("F1").homog, ProjPoint(0, 0, 1))
    with pytest.raises(NotDoubleInflection) as exc:
        degeneration_suite_F2(get("H1").homog, ProjPoint(1, 2, 3))
    assert "beta" in exc.value.payload()["data"] or "point" in exc.value.payload()["data"]


def test_suites_on_one_example_each():
    lim, f = degeneration_suite_F1(get("H1").homog, ProjPoint(1, 0, 0))
    assert looks_like_F1(lim)
    h = get("H2").homog
    lim, f = degeneration_suite_F2(h, double_inflection_points(h).sample(h))
    assert looks_like_F2(lim)
    assert inflection_divisor(lim).invariant_degree >= inflection_divisor(h).invariant_degree
