"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see conftest.py) or when this file is executed directly.
"""

import random

import pytest

from webflat.catalog import CLASSIFIED, CONVEX, GENERATOR_ERRATA, check_generators, expand_generator, get, names
from webflat.degeneration import (ParamFamily, degeneration_suite_F1, degeneration_suite_F2,
                                  double_inflection_points, family_limit, looks_like_F1, looks_like_F2)
from webflat.dualweb import curvature, curvature_numerator_coeff, flatness_by_chart, is_flat, legendre
from webflat.exactnum import imag_unit, sqrt3
from webflat.foliation import ProjPoint, homogenize, inflection_divisor, singular_points
from webflat.localinv import local_invariants, localize, alg_multiplicity
from webflat.mpoly import RatFunc, render
from webflat.parser import parse_oneform, parse_poly
from webflat.symmetry import orbit_dimension, preserves

RESULTS = {}
ORIGIN = ProjPoint(0, 0, 1)


def record(n, ok, detail=""):
    RESULTS[n] = (bool(ok), detail)
    print(f"CRITERION {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def summary_lines():
    return [f"CRITERION {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}" for n, (ok, detail) in sorted(RESULTS.items())]


def same_ratfunc(K, num, den):
    W = RatFunc(parse_poly(num), parse_poly(den))
    return (K.num * W.den - W.num * K.den).is_zero()


def same_poly(f, text):
    g = parse_poly(text)
    vs = tuple(sorted(set(f.vars) | set(g.vars)))
    return f.with_vars(vs) == g.with_vars(vs)


def jet3(**values):
    return get("JET3").specialize(**values)


# 1 -------------------------------------------------------------------------
def test_criterion_01_all_classified_forms_are_flat():
    bad = [n for n in CLASSIFIED if not is_flat(get(n).homog)]
    record(1, not bad, f"{len(CLASSIFIED) - len(bad)}/{len(CLASSIFIED)} flat" + (f"; not flat: {bad}" if bad else ""))
    assert not bad


# 2 -------------------------------------------------------------------------
def test_criterion_02_closed_form_curvatures():
    checks = {
        "NF1/unitA": same_ratfunc(curvature(legendre(get("NF1").homog, "unitA")),
                                  "-4*c^2*(2*c^3+27*q)", "q^2*(4*c^3+27*q)^2"),
        "a1=0/unitB": same_ratfunc(curvature(legendre(jet3(b0=0, b1=0, c1=0, c2=0, a1=0), "unitB")),
                                   "-48*a0^4*p", "(4*a0^3*p^2+27)^2"),
        "a1=3/unitB": same_ratfunc(curvature(legendre(jet3(b0=0, b1=0, c1=0, c2=0, a1=3), "unitB")),
                                   "-12*(a0-3)*(a0^2*(4*a0-9)*p+27*(a0-2))",
                                   "(a0^2*(4*a0-9)*p^2+54*(a0-2)*p+27)^2"),
    }
    ok = all(checks.values())
    record(2, ok, ", ".join(f"{k}={'ok' if v else 'differs'}" for k, v in checks.items()))
    assert ok


# 3 -------------------------------------------------------------------------
def test_criterion_03_dual_equations():
    W1 = legendre(get("NF1").homog, "unitA")
    W2 = legendre(get("NF2").homog, "unitA")
    W3 = legendre(jet3(b0=0, b1=0, c1=0, c2=0), "unitB")
    checks = [
        same_poly(W1.F, "q*w^3+c*w+1"),
        same_poly(W2.F, "q*w^3+p*w^2+(c-q)*w+1"),
        same_poly(W3.F, "p*w^3+a1*p*w^2+a0*p*w-1"),
        W3.removed == [("p*w - q", 1)],
    ]
    ok = all(checks)
    record(3, ok, f"{render(W1.F)} | {render(W2.F)} | {render(W3.F)} (removed {W3.removed})")
    assert ok


# 4 -------------------------------------------------------------------------
def test_criterion_04_rho_obstructions():
    coeff = curvature_numerator_coeff
    case3 = jet3(b0=0, b1=2, c2=0)
    named = {
        "rho_1^5 (second normal form)": same_poly(coeff(get("NF2").homog, "unitA", (1, 5)), "4"),
        "rho_0^5 (b0,b1,c1)=(1,0,0)": same_poly(coeff(jet3(b0=1, b1=0, c1=0), "unitB", (0, 5)), "4*c2"),
        "rho_1^0": same_poly(coeff(case3, "unitB", (1, 0)), "24*c1^4"),
        "rho_1^4": same_poly(coeff(case3, "unitB", (1, 4)), "-256*a0^2"),
        "rho_0^4": same_poly(coeff(case3, "unitB", (0, 4)), "64*(14*a1+3*a0*c1)"),
    }
    case4 = jet3(b0=0, b1=0, c2=1)
    system = [coeff(case4, "unitB", (i, 0)) for i in (1, 2, 4, 5)]

    def values(a0, a1, c1):
        pt = {"a0": a0, "a1": a1, "c1": c1}
        return [f.evaluate({k: v for k, v in pt.items() if k in f.vars}) if f.used_vars() else f.constant_value()
                for f in system]

    solutions = [(1, 2, 2), (1, -2, -2)]
    sols_ok = all(all(v == 0 for v in values(*s)) for s in solutions)
    rng = random.Random(20240601)
    tried, nonvanishing = 0, 0
    while tried < 200:
        t = tuple(rng.randint(-12, 12) for _ in range(3))
        if t in solutions:
            continue
        tried += 1
        nonvanishing += any(v != 0 for v in values(*t))
    ok = all(named.values()) and sols_ok and nonvanishing == 200
    record(4, ok, f"coefficients {sum(named.values())}/5, solutions vanish: {sols_ok}, "
                  f"non-solutions with a nonzero coefficient: {nonvanishing}/200")
    assert ok


# 5 -------------------------------------------------------------------------
def test_criterion_05_flatness_boundary():
    values = {"0": 0, "1": 1, "-2": -2, "i": imag_unit(), "r3": sqrt3()}
    verdicts = {k: is_flat(get("NF1").specialize(c=v)) for k, v in values.items()}
    ok = verdicts == {"0": True, "1": False, "-2": False, "i": False, "r3": False}
    record(5, ok, f"flat at c: {verdicts}")
    assert ok


# 6 -------------------------------------------------------------------------
def test_criterion_06_convexity():
    from webflat.foliation import is_convex

    convex = {n for n in CLASSIFIED if is_convex(get(n).homog)}
    tr = inflection_divisor(get("F2").homog).residual
    ok = convex == set(CONVEX) == {"H1", "H3", "F1", "F3"} and same_poly(tr.scale(1 / tr.leading_coeff()), "y^2")
    record(6, ok, f"convex: {sorted(convex)}; transverse inflection of F2: {render(tr)}")
    assert ok


# 7 -------------------------------------------------------------------------
def test_criterion_07_singular_census():
    expected_counts = {"F3": 13, "F2": 1, "F1": 2, "F4": 2, "F5": 2}
    counts = {n: singular_points(get(n).homog).count for n in expected_counts}
    milnor = {n: singular_points(get(n).homog).accounted_milnor for n in CLASSIFIED}
    nus = {n: alg_multiplicity(localize(get(n).homog, ORIGIN)) for n in ("F1", "F2", "F4", "F5")}
    ok = counts == expected_counts and set(milnor.values()) == {13} and set(nus.values()) == {3}
    uncert = [n for n in CLASSIFIED if not singular_points(get(n).homog).certified]
    record(7, ok, f"#Sing {counts}; Milnor sums all 13: {set(milnor.values()) == {13}} "
                  f"(points outside the field counted by Milnor mass for {uncert}); nu=3 at [0:0:1]: {nus}")
    assert ok


# 8 -------------------------------------------------------------------------
def test_criterion_08_worked_example():
    h = get("EX_KAPPA").homog
    li = local_invariants(h, ORIGIN)
    mu_far = local_invariants(h, ProjPoint(1, 0, 0)).mu
    ok = li.mu == 1 and li.bb == 4 and li.kappa == 2 and mu_far > 1
    record(8, ok, f"mu={li.mu}, BB={li.bb}, kappa={li.kappa}, mu at [1:0:0]={mu_far}")
    assert ok


# 9 -------------------------------------------------------------------------
def _generator_sweep():
    results = {n: check_generators(n) for n in CLASSIFIED}
    failing = [(n, t) for n, rs in results.items() for t, ok in rs if not ok]
    total = sum(len(rs) for rs in results.values())
    return failing, total


def test_criterion_09_isotropy():
    failing, total = _generator_sweep()
    dims = {n: orbit_dimension(get(n).homog) for n in CLASSIFIED}
    dims_ok = [dims[f"F{i}"] for i in range(1, 6)] == [6, 6, 8, 7, 7] and all(
        dims[n] == 7 for n in CLASSIFIED if n.startswith("H"))
    corrected = all(preserves(g, get(n).homog) for (n, t), fix in GENERATOR_ERRATA.items()
                    for g in expand_generator(fix))
    every_listed_passes = not failing
    detail = (f"{total - len(failing)}/{total} listed generators preserve their form; orbit dims ok: {dims_ok}")
    if failing:
        detail += (f"; failing as printed: {failing}; corrected element(s) "
                   f"{list(GENERATOR_ERRATA.values())} verified: {corrected}")
    record(9, every_listed_passes and dims_ok, detail)
    # everything except the documented misprint must hold
    assert dims_ok and corrected
    assert set(failing) <= set(GENERATOR_ERRATA)


@pytest.mark.xfail(strict=True, reason="the printed H8 generator [4*y-x:y:alpha*z] does not preserve H8; "
                                       "[x:-y:alpha*z] does (see the README)")
def test_criterion_09_every_printed_generator():
    failing, _ = _generator_sweep()
    assert not failing


# 10 ------------------------------------------------------------------------
F3_FAMILIES = {
    "H1": {"matrix": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "eps"]], "scale": "-eps^4", "shift": 1},
    "H3": {"matrix": [["1", "-1", "0"], ["-1", "-1", "2*eps"], ["1", "1", "0"]], "scale": "1/(8*eps)"},
    "F1": {"matrix": [["eps", "0", "0"], ["0", "1", "0"], ["2*eps", "0", "6*eps^3"]], "scale": "-1/6*eps",
           "shift": 1},
}
F1_SUITE = {"H1": (1, 0, 0), "H3": (1, -1, 0), "H5": (1, 0, 0), "H7": (1, 0, 0), "F4": (0, 1, 0)}
F2_SUITE = ["H2", "H4", "H6", "H8", "F4", "JOUANOLOU"]


def _monotone(src, lim):
    flat_ok = (not is_flat(src)) or is_flat(lim)
    inv_ok = inflection_divisor(lim).invariant_degree >= inflection_divisor(src).invariant_degree
    orbit_ok = orbit_dimension(lim) < orbit_dimension(src)
    return flat_ok and inv_ok and orbit_ok


def test_criterion_10_degenerations():
    problems = []
    f3 = get("F3").homog
    for name, fam in F3_FAMILIES.items():
        lim = family_limit(f3, ParamFamily.from_json(fam))
        if not lim.proportional(get(name).homog):
            problems.append(f"F3->{name}: got {render(lim.a)};...")
        if not _monotone(f3, lim):
            problems.append(f"F3->{name}: monotonicity")
    for name, pt in F1_SUITE.items():
        h = get(name).homog
        lim, _ = degeneration_suite_F1(h, ProjPoint(*pt))
        if not (looks_like_F1(lim) and _monotone(h, lim)):
            problems.append(f"{name}->F1")
    for name in F2_SUITE:
        h = get(name).homog
        m = ORIGIN if name == "JOUANOLOU" else double_inflection_points(h).sample(h)
        lim, _ = degeneration_suite_F2(h, m)
        if not (looks_like_F2(lim) and _monotone(h, lim)):
            problems.append(f"{name}->F2")
    ok = not problems
    record(10, ok, f"3 explicit families from F3, {len(F1_SUITE)} F1-suite and {len(F2_SUITE)} F2-suite limits"
                   + (f"; problems: {problems}" if problems else ""))
    assert ok


# 11 ------------------------------------------------------------------------
def _random_cubic(rng, lo):
    terms = []
    for k in range(lo, 4):
        for i in range(k + 1):
            terms.append(f"({rng.randint(-3, 3)})*x^{i}*y^{k - i}")
    return "+".join(terms)


def _degenerate_sample(rng):
    """A degree-3 form with a degenerate singular point of multiplicity <= 2 at the origin."""
    while True:
        kind = rng.choice(["nilpotent", "nu2"])
        radial = "+".join(f"({rng.randint(-3, 3)})*x^{i}*y^{3 - i}" for i in range(4))
        if kind == "nilpotent":
            A, B = f"-({_random_cubic(rng, 2)})", f"y+{_random_cubic(rng, 2)}"
        else:
            A, B = _random_cubic(rng, 2), _random_cubic(rng, 2)
        h = homogenize(parse_oneform(f"({A})*dx+({B})*dy+({radial})*(x*dy-y*dx)"))
        if h.degree != 3 or any(f.evaluate({"x": 0, "y": 0, "z": 1}) for f in h.comps):
            continue
        li = local_invariants(h, ORIGIN)
        if li.mu > 1 and li.nu <= 2:
            return kind, h


def test_criterion_11_degenerate_low_multiplicity_points_obstruct_flatness():
    rng = random.Random(11)
    samples = [_degenerate_sample(rng) for _ in range(25)]
    flat = [i for i, (_, h) in enumerate(samples) if is_flat(h)]
    kinds = {k: sum(1 for kk, _ in samples if kk == k) for k in ("nilpotent", "nu2")}
    ok = not flat
    verdict = f"25 random forms {kinds}: none flat" if ok else f"flat samples: {flat}"
    record(11, ok, verdict + " (a sample, not a proof)")
    assert ok


# 12 ------------------------------------------------------------------------
def test_criterion_12_chart_independence():
    entries = [n for n in names() if not get(n).params and get(n).homog.degree == 3]
    disagree, charts_used = [], 0
    for n in entries:
        verdicts = {k: v for k, v in flatness_by_chart(get(n).homog).items() if v is not None}
        charts_used += len(verdicts)
        if len(set(verdicts.values())) != 1:
            disagree.append((n, verdicts))
    ok = not disagree
    record(12, ok, f"{len(entries)} entries, {charts_used} chart evaluations agree" if ok else f"{disagree}")
    assert ok


if __name__ == "__main__":
    import sys

    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
