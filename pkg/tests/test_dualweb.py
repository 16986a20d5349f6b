import random

import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st

from webflat.catalog import CLASSIFIED, get
from webflat.dualweb import (DualChart, curvature, curvature_numerator_coeff, discriminant_w, flatness_by_chart,
                             is_flat, legendre, rho)
from webflat.errors import NotAThreeWeb
from webflat.foliation import pullback
from webflat.mpoly import render
from webflat.parser import parse_oneform, parse_poly
from webflat.symmetry import random_proj_map

from helpers import to_sympy

p, q, w = sp.symbols("p q w")


def blaschke_curvature(slopes):
    """Curvature of the web dq = w_i dp from its normalized forms and connection."""
    lam = [slopes[1] - slopes[2], slopes[2] - slopes[0], slopes[0] - slopes[1]]
    gp, gq = sp.symbols("gp gq")
    eqs = []
    for li, wi in zip(lam[:2], slopes[:2]):
        # omega_i = li*(dq - wi*dp); d(omega_i) = gamma ^ omega_i
        eqs.append(sp.Eq(sp.diff(li, p) + sp.diff(li * wi, q), gp * li + gq * li * wi))
    sol = sp.solve(eqs, [gp, gq], dict=True)[0]
    return sp.diff(sol[gq], p) - sp.diff(sol[gp], q)


def web_from_slopes(slopes):
    F = sp.expand((w - slopes[0]) * (w - slopes[1]) * (w - slopes[2]))
    return parse_poly(str(F).replace("**", "^")).with_vars(("p", "q", "w"))


def as_expr(K):
    return to_sympy(K.num) / to_sympy(K.den)


def same_rational(a, b):
    return sp.cancel(sp.together(a - b)) == 0


coef = st.integers(-3, 3)


@given(st.lists(st.tuples(coef, coef, coef), min_size=3, max_size=3))
def test_curvature_against_blaschke_connection(rows):
    slopes = [a * p + b * q + c for a, b, c in rows]
    assume(all(sp.expand(slopes[i] - slopes[j]) != 0 for i in range(3) for j in range(i)))
    K = curvature(web_from_slopes(slopes))
    assert same_rational(as_expr(K), blaschke_curvature(slopes))


def test_curvature_against_blaschke_nonlinear_slopes():
    for slopes in ([p * q, 1, -1], [q, -q, p], [p ** 2, q, 0]):
        assert same_rational(as_expr(curvature(web_from_slopes(slopes))), blaschke_curvature(slopes))


def test_parallel_families_are_flat():
    assert curvature(web_from_slopes([0, 1, -1])).is_zero()


def test_discriminant_against_sympy():
    W = legendre(get("NF2").homog, "unitA")
    ours = to_sympy(discriminant_w(W))
    theirs = sp.discriminant(to_sympy(W.F), w)
    assert sp.expand(ours - theirs) == 0


def test_legendre_equations():
    assert render(legendre(get("NF1").homog, "unitA").F) == "q*w^3 + w*c + 1"
    assert render(legendre(get("NF2").homog, "unitA").F) == "q*w^3 + p*w^2 - q*w + w*c + 1"
    J = get("JET3").specialize(b0=0, b1=0, c1=0, c2=0)
    W = legendre(J, "unitB")
    assert render(W.F) == "p*w^3 + p*w^2*a1 + p*w*a0 - 1"
    assert W.removed == [("p*w - q", 1)]


def test_chart_parsing():
    assert DualChart.parse("unitA") is DualChart.UNIT_A
    assert DualChart.parse("slope") is DualChart.SLOPE_INTERCEPT
    with pytest.raises(ValueError):
        DualChart.parse("polar")


def test_not_a_three_web():
    with pytest.raises(NotAThreeWeb):
        curvature(parse_poly("w^2-p").with_vars(("p", "q", "w")))


def test_rho_is_k_times_discriminant_squared():
    W = legendre(get("NF1").specialize(c=1), "unitA")
    K, D = as_expr(curvature(W)), to_sympy(discriminant_w(W))
    assert same_rational(K * D ** 2, to_sympy(rho(W)))


def test_rho_leading_coefficient():
    assert curvature_numerator_coeff(get("NF2").homog, "unitA", (1, 5)) == 4


@pytest.mark.parametrize("name", CLASSIFIED)
def test_catalog_flat_in_every_chart(name):
    verdicts = {k: v for k, v in flatness_by_chart(get(name).homog).items() if v is not None}
    assert verdicts and set(verdicts.values()) == {True}


@given(st.integers(0, 10 ** 6), st.sampled_from(["F1", "F2", "H3"]))
def test_flatness_is_projectively_invariant(seed, name):
    phi = random_proj_map(random.Random(seed), 2)
    assert is_flat(pullback(get(name).homog, phi.rows()))


@given(st.integers(0, 10 ** 6))
def test_non_flatness_is_projectively_invariant(seed):
    phi = random_proj_map(random.Random(seed), 2)
    h = get("NF1").specialize(c=1)
    assert not is_flat(pullback(h, phi.rows()), cross_check=True)


def test_degree_check():
    with pytest.raises(ValueError):
        is_flat(parse_oneform("x*dy-y*dx+y^2*dx"))


def test_rho_with_a_square_factor():
    """For (b0, b1, c1, c2) = (0, 0, 1, 0) the numerator carries p^2; the cofactor's coefficients are tabulated."""
    from webflat.mpoly import exact_div

    W = legendre(get("JET3").specialize(b0=0, b1=0, c1=1, c2=0), "unitB")
    r = rho(W)
    q = exact_div(r, parse_poly("p^2").with_vars(r.vars))
    want = {
        (0, 0): "-81-60*a0+8*a0*a1+81*a1-7*a1^2-a1^3",
        (1, 0): "-4*(a1-3)*(6*a0^2-9*a0*a1-a0*a1^2+2*a1^3)",
        (3, 0): "-2*a0^2*(6*a0+a0*a1-2*a1^2)*(4*a0-a1^2)",
    }
    for (i, j), text in want.items():
        got = q.coeff({"p": i, "q": j}).drop_unused()
        assert sp.expand(to_sympy(got) - sp.sympify(text.replace("^", "**"))) == 0
