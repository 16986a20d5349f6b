"""Shared strategies and the sympy bridge used as an independent oracle."""

import sympy as sp
from hypothesis import strategies as st

from gmpy2 import mpq

from webflat.exactnum import FieldElement
from webflat.mpoly import MPoly, render

SYMPY_LOCALS = {"i": sp.I, "r3": sp.sqrt(3), "zeta": sp.exp(sp.I * sp.pi / 6)}


def to_sympy(f):
    """MPoly (or scalar) -> sympy expression, through the text rendering."""
    text = render(f) if isinstance(f, MPoly) else str(f)
    names = {}
    for v in getattr(f, "vars", ()):
        names[v] = sp.Symbol(v)
    return sp.sympify(text.replace("^", "**"), locals={**SYMPY_LOCALS, **names})


def sympy_equal(a, b):
    return sp.simplify(sp.expand(a - b)) == 0


small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def field_elements(draw, allow_zero=True):
    cs = [draw(rationals) for _ in range(4)]
    x = FieldElement(*[mpq(c.numerator, c.denominator) for c in cs])
    if not allow_zero and not x:
        x = FieldElement(1)
    return x


@st.composite
def polys(draw, vars=("x", "y"), max_terms=5, max_deg=3, gaussian=False):
    f = MPoly.zero(vars)
    for _ in range(draw(st.integers(0, max_terms))):
        c = draw(small_ints)
        if gaussian:
            from webflat.exactnum import imag_unit

            c = c + draw(small_ints) * imag_unit()
        mono = MPoly.const(c, vars)
        for v in vars:
            mono = mono * MPoly.var(v, vars) ** draw(st.integers(0, max_deg))
        f = f + mono
    return f
