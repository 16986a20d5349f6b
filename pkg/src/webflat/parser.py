"""Text syntax for polynomials and polynomial 1-forms.

Grammar (whitespace is ignored)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary | <juxtaposed differential>)*
    unary   := '-' unary | '+' unary | power
    power   := atom ('^' INT)?
    atom    := NUMBER | NAME | '(' expr ')'

``^`` binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``.  Names are
``x y z`` (coordinates), ``dx dy dz`` (differentials), ``i``, ``r3`` (sqrt 3),
``zeta`` (primitive 12th root of unity); every other name is a symbolic
parameter.  ``eps`` (or the letter epsilon) is the
degeneration parameter.  A ``*`` may be omitted only next to a differential,
so ``x^3 dx`` is accepted but ``2x`` is not.  Division is allowed by nonzero
constants only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from gmpy2 import mpq

from .errors import ParseError
from .exactnum import imag_unit, sqrt3, zeta_power
from .mpoly import MPoly

DIFFERENTIALS = ("dx", "dy", "dz")
_GREEK = {"ε": "eps", "δ": "delta", "λ": "lam", "α": "alpha", "β": "beta", "γ": "gamma"}

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[^\W\d]\w*)|(?P<op>[-+*/^()]))", re.UNICODE)

_ATOM_START = ("number", "name", "'('")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos, _ATOM_START)
        start = m.start(m.lastgroup)
        toks.append(_Tok(m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    toks.append(_Tok("end", "", n))
    return toks


class _Value:
    """A function (basis None) or a 1-form {differential: coefficient}."""

    __slots__ = ("fn", "form")

    def __init__(self, fn=None, form=None):
        self.fn = fn
        self.form = form

    @property
    def is_form(self):
        return self.form is not None


def _name_value(name: str):
    name = _GREEK.get(name, name)
    if name in DIFFERENTIALS:
        return _Value(form={name: MPoly.const(1)})
    if name == "i":
        return _Value(MPoly.const(imag_unit()))
    if name == "r3":
        return _Value(MPoly.const(sqrt3()))
    if name == "zeta":
        return _Value(MPoly.const(zeta_power(1)))
    return _Value(MPoly.var(name))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # -- helpers
    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, message, expected=_ATOM_START, tok=None):
        tok = tok or self.tok
        raise ParseError(message, self.text, tok.pos, expected)

    def is_op(self, ch):
        t = self.tok
        return t.kind == "op" and t.text == ch

    # -- grammar
    def parse(self):
        if self.tok.kind == "end":
            self.fail("empty input")
        v = self.expr()
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r}", ("'+'", "'-'", "'*'", "'/'", "'^'", "end of input"))
        return v

    def expr(self):
        v = self.term()
        while self.is_op("+") or self.is_op("-"):
            op = self.advance()
            rhs = self.term()
            v = self.combine_add(v, rhs, op)
        return v

    def term(self):
        v = self.unary()
        while True:
            t = self.tok
            if t.kind == "op" and t.text in "*/":
                self.advance()
                rhs = self.unary()
                v = self.combine_mul(v, rhs, t) if t.text == "*" else self.combine_div(v, rhs, t)
            elif self._juxtaposed(v):
                rhs = self.power()
                v = self.combine_mul(v, rhs, t)
            else:
                return v

    def _juxtaposed(self, left):
        """Implicit product allowed when either side is a differential."""
        t = self.tok
        if t.kind == "name" and t.text in DIFFERENTIALS:
            return True
        if left.is_form and (t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")):
            return True
        return False

    def unary(self):
        if self.is_op("-"):
            self.advance()
            v = self.unary()
            return self.negate(v)
        if self.is_op("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base_tok = self.tok
        v = self.atom()
        if self.is_op("^"):
            self.advance()
            t = self.tok
            if t.kind != "num":
                self.fail("exponent must be a nonnegative integer", ("integer",))
            self.advance()
            if v.is_form:
                self.fail("cannot raise a differential to a power", (), tok=base_tok)
            return _Value(v.fn ** int(t.text))
        return v

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return _Value(MPoly.const(mpq(int(t.text))))
        if t.kind == "name":
            self.advance()
            if t.text == "d" and self.is_op("("):
                self.fail("'d(...)' is not supported; write dx or dy", ("dx", "dy"), tok=t)
            return _name_value(t.text)
        if self.is_op("("):
            self.advance()
            v = self.expr()
            if not self.is_op(")"):
                self.fail("missing ')'", ("')'",))
            self.advance()
            return v
        what = "end of input" if t.kind == "end" else repr(t.text)
        self.fail(f"unexpected {what}")

    # -- semantics
    def negate(self, v):
        if v.is_form:
            return _Value(form={k: -c for k, c in v.form.items()})
        return _Value(-v.fn)

    def combine_add(self, a, b, op):
        sign = 1 if op.text == "+" else -1
        if a.is_form and b.is_form:
            out = dict(a.form)
            for k, c in b.form.items():
                out[k] = out[k] + c * sign if k in out else c * sign
            return _Value(form=out)
        if a.is_form or b.is_form:
            fn = b.fn if a.is_form else a.fn
            if fn.is_zero():
                return a if a.is_form else (b if sign > 0 else self.negate(b))
            self.fail("cannot add a function to a 1-form", (), tok=op)
        return _Value(a.fn + b.fn if sign > 0 else a.fn - b.fn)

    def combine_mul(self, a, b, op):
        if a.is_form and b.is_form:
            self.fail("product of two differentials is not a 1-form", (), tok=op)
        if a.is_form:
            return _Value(form={k: c * b.fn for k, c in a.form.items()})
        if b.is_form:
            return _Value(form={k: a.fn * c for k, c in b.form.items()})
        return _Value(a.fn * b.fn)

    def combine_div(self, a, b, op):
        if b.is_form or not b.fn.is_constant() or b.fn.is_zero():
            self.fail("division is only allowed by a nonzero constant", (), tok=op)
        c = b.fn.constant_value()
        if a.is_form:
            return _Value(form={k: v.scale(1 / c) for k, v in a.form.items()})
        return _Value(a.fn.scale(1 / c))


def parse_poly(text: str) -> MPoly:
    """Parse a polynomial (no differentials)."""
    v = _Parser(text).parse()
    if v.is_form:
        raise ParseError("expected a polynomial, found a 1-form", text, 0, ())
    return v.fn


def parse_form_parts(text: str):
    """Parse a 1-form into {differential: coefficient} (missing keys are zero)."""
    v = _Parser(text).parse()
    if not v.is_form:
        if v.fn.is_zero():
            return {}
        raise ParseError("expected a 1-form (use dx, dy)", text, len(text), ("dx", "dy"))
    return {k: c for k, c in v.form.items() if not c.is_zero()}


def parse_oneform(text: str):
    """Parse an affine 1-form A dx + B dy into a :class:`~webflat.foliation.PolyOneForm`."""
    from .foliation import PolyOneForm

    parts = parse_form_parts(text)
    if "dz" in parts:
        raise ParseError("dz is not allowed in an affine form; use the homogeneous input", text,
                         text.find("dz"), ("dx", "dy"))
    A = parts.get("dx", MPoly.zero())
    B = parts.get("dy", MPoly.zero())
    if A.is_zero() and B.is_zero():
        raise ParseError("the 1-form is zero", text, 0, ())
    return PolyOneForm(A, B)


def parse_homogeneous(text: str):
    """Parse ``a;b;c`` into a :class:`~webflat.foliation.HomogForm` (Euler relation checked)."""
    from .foliation import HomogForm

    pieces = text.split(";")
    if len(pieces) != 3:
        raise ParseError("homogeneous input needs three ';'-separated polynomials", text, len(text), ("';'",))
    polys = []
    offset = 0
    for piece in pieces:
        try:
            polys.append(parse_poly(piece))
        except ParseError as exc:
            raise ParseError(str(exc).split(" at line")[0], text, offset + exc.offset, exc.expected) from None
        offset += len(piece) + 1
    return HomogForm(*polys)


__all__ = ["parse_poly", "parse_oneform", "parse_homogeneous", "parse_form_parts", "tokenize"]
