"""Exact arithmetic in Q and in the cyclotomic field Q(zeta_12).

The field is Q[t]/(t^4 - t^2 + 1); an element is stored as four rational
coordinates on the power basis 1, zeta, zeta^2, zeta^3 with zeta = e^{i pi/6}.
It contains i = zeta^3, sqrt(3) = zeta + zeta^11 and j = zeta^4.

Rationals are gmpy2 ``mpq`` values.  Arithmetic that lands back in Q returns a
plain ``mpq``, so polynomial code that never touches an irrational constant
runs at rational speed; treat ``mpq`` and :class:`FieldElement` together as
"scalars" and use :func:`to_field` when a FieldElement is really needed.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational as _RationalABC

from gmpy2 import mpq

Rational = mpq

ZETA_C = cmath.exp(1j * math.pi / 6)
_ZETA_POWERS_C = [ZETA_C**k for k in range(4)]
SQRT3_F = math.sqrt(3.0)


def as_rational(x) -> mpq:
    if isinstance(x, type(mpq())):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, _RationalABC):
        return mpq(x.numerator, x.denominator) if not isinstance(x, int) else mpq(x)
    if isinstance(x, str):
        return mpq(x)
    raise TypeError(f"cannot convert {x!r} to a rational")


_MPQ = type(mpq())
_ZERO = mpq(0)
_ONE = mpq(1)


def _make(c0, c1, c2, c3):
    """Build a scalar, demoting to mpq when the irrational part vanishes."""
    if not (c1 or c2 or c3):
        return c0
    obj = FieldElement.__new__(FieldElement)
    obj.c = (c0, c1, c2, c3)
    return obj


class FieldElement:
    """Element c0 + c1 z + c2 z^2 + c3 z^3 of Q(z), z a primitive 12th root of unity."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = (as_rational(c0), as_rational(c1), as_rational(c2), as_rational(c3))

    @property
    def coeffs(self):
        return self.c

    def is_rational(self) -> bool:
        return not (self.c[1] or self.c[2] or self.c[3])

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return f"FieldElement({', '.join(str(x) for x in self.c)})"

    def __str__(self):
        return render_scalar(self)

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.c == other.c
        if isinstance(other, (_MPQ, int, Fraction)):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __neg__(self):
        a = self.c
        return _make(-a[0], -a[1], -a[2], -a[3])

    def __pos__(self):
        return self

    def __add__(self, other):
        a = self.c
        if isinstance(other, FieldElement):
            b = other.c
            return _make(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])
        if isinstance(other, (_MPQ, int)):
            return _make(a[0] + other, a[1], a[2], a[3])
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        a = self.c
        if isinstance(other, FieldElement):
            b = other.c
            return _make(a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])
        if isinstance(other, (_MPQ, int)):
            return _make(a[0] - other, a[1], a[2], a[3])
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a = self.c
        if isinstance(other, FieldElement):
            b = other.c
            a0, a1, a2, a3 = a
            b0, b1, b2, b3 = b
            p0 = a0 * b0
            p1 = a0 * b1 + a1 * b0
            p2 = a0 * b2 + a1 * b1 + a2 * b0
            p3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
            p4 = a1 * b3 + a2 * b2 + a3 * b1
            p5 = a2 * b3 + a3 * b2
            p6 = a3 * b3
            # z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1
            return _make(p0 - p4 - p6, p1 - p5, p2 + p4, p3 + p5)
        if isinstance(other, (_MPQ, int)):
            if not other:
                return _ZERO
            return _make(a[0] * other, a[1] * other, a[2] * other, a[3] * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate_by(self, k: int):
        """Image under the Galois automorphism z -> z^k, gcd(k, 12) = 1."""
        out = _ZERO
        for j, cj in enumerate(self.c):
            if cj:
                out = out + zeta_power(j * k) * cj
        return out

    def norm(self) -> mpq:
        n = self * self.conjugate_by(5) * self.conjugate_by(7) * self.conjugate_by(11)
        if isinstance(n, FieldElement):
            assert n.is_rational()
            n = n.c[0]
        return n

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta12)")
        if self.is_rational():
            return 1 / self.c[0]
        others = self.conjugate_by(5) * self.conjugate_by(7) * self.conjugate_by(11)
        n = self * others
        n = n.c[0] if isinstance(n, FieldElement) else n
        return others * (1 / n)

    def __truediv__(self, other):
        if isinstance(other, FieldElement):
            return self * other.inverse()
        if isinstance(other, (_MPQ, int)):
            if not other:
                raise ZeroDivisionError("division by zero")
            inv = _ONE / other
            return self * inv
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (_MPQ, int)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return pow(self.inverse(), -n)
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __complex__(self):
        return embed_complex(self)


def to_field(x) -> FieldElement:
    """Promote a scalar to a FieldElement (no demotion)."""
    if isinstance(x, FieldElement):
        return x
    return FieldElement(as_rational(x))


def coords(x):
    """Power-basis coordinates of a scalar."""
    if isinstance(x, FieldElement):
        return x.c
    return (as_rational(x), _ZERO, _ZERO, _ZERO)


def is_scalar(x) -> bool:
    return isinstance(x, (FieldElement, _MPQ, int, Fraction))


def is_rational_scalar(x) -> bool:
    return isinstance(x, (_MPQ, int, Fraction)) or (isinstance(x, FieldElement) and x.is_rational())


def zeta_power(k: int) -> FieldElement:
    """zeta_12^k reduced modulo t^4 - t^2 + 1."""
    k %= 12
    # z^6 = -1
    sign = 1
    if k >= 6:
        k -= 6
        sign = -1
    table = {
        0: (1, 0, 0, 0),
        1: (0, 1, 0, 0),
        2: (0, 0, 1, 0),
        3: (0, 0, 0, 1),
        4: (-1, 0, 1, 0),
        5: (0, -1, 0, 1),
    }
    c = table[k]
    return FieldElement(*(sign * x for x in c))


def imag_unit() -> FieldElement:
    return zeta_power(3)


def sqrt3() -> FieldElement:
    """sqrt(3) = z + z^11 = 2z - z^3."""
    return zeta_power(1) + zeta_power(11)


def cube_root_of_unity() -> FieldElement:
    """j = e^{2 i pi / 3} = z^4."""
    return zeta_power(4)


def embed_complex(x) -> complex:
    """Evaluate at z = e^{i pi/6} in double precision."""
    if isinstance(x, FieldElement):
        return sum(float(cj) * zk for cj, zk in zip(x.c, _ZETA_POWERS_C))
    return complex(float(x), 0.0)


def from_basis_i_r3(a, b, c, d):
    """Scalar a + b*sqrt3 + c*i + d*i*sqrt3."""
    a, b, c, d = (as_rational(v) for v in (a, b, c, d))
    # sqrt3 = 2z - z^3, i = z^3, i*sqrt3 = 2z^2 - 1
    return _make(a - d, 2 * b, 2 * d, c - b)


def to_basis_i_r3(x):
    """Inverse of :func:`from_basis_i_r3`."""
    c0, c1, c2, c3 = coords(x)
    b = c1 / 2
    d = c2 / 2
    return (c0 + d, b, c3 + b, d)


def _fmt_q(q: mpq) -> str:
    return str(q)


def render_scalar(x) -> str:
    """Text in the lexicon of the form parser: rationals ``a/b``, ``i``, ``r3``."""
    if not isinstance(x, FieldElement) or x.is_rational():
        return _fmt_q(coords(x)[0])
    a, b, c, d = to_basis_i_r3(x)
    parts = []
    for coef, tok in ((a, ""), (b, "r3"), (c, "i"), (d, "i*r3")):
        if not coef:
            continue
        if not tok:
            parts.append(_fmt_q(coef))
        elif coef == 1:
            parts.append(tok)
        elif coef == -1:
            parts.append("-" + tok)
        else:
            parts.append(f"{_fmt_q(coef)}*{tok}")
    text = parts[0]
    for p in parts[1:]:
        text += p if p.startswith("-") else "+" + p
    return "(" + text + ")"


def _real_candidates(t: float, denom_bound: int, tol: float):
    """Pairs (a, b) of rationals, denominators <= bound, with |a + b sqrt3 - t| < tol."""
    out = []
    bmax = abs(t) + 2.0
    for den in range(1, denom_bound + 1):
        nb = int(math.floor(bmax * den))
        for bn in sorted(range(-nb, nb + 1), key=abs):
            rest = (t - bn * SQRT3_F / den) * den
            an = round(rest)
            if abs(an - rest) < tol * den:
                a = mpq(an, den)
                b = mpq(bn, den)
                if a.denominator == den or b.denominator == den:
                    out.append((a, b))
                elif den == 1:
                    out.append((a, b))
    return out


def recognize_candidates(z: complex, denom_bound: int, tol: float = 1e-8, limit: int = 64):
    """All field elements within ``tol`` of z, smallest denominators first."""
    z = complex(z)
    re = _real_candidates(z.real, denom_bound, tol)
    im = _real_candidates(z.imag, denom_bound, tol)

    def height(pair):
        a, b = pair
        return max(a.denominator, b.denominator)

    combos = []
    for ra in re:
        for ia in im:
            combos.append((max(height(ra), height(ia)), ra, ia))
    combos.sort(key=lambda item: item[0])
    for _, (a, b), (c, d) in combos[:limit]:
        yield from_basis_i_r3(a, b, c, d)


def recognize(z: complex, denom_bound: int):
    """Best candidate in Q(zeta12) within 1e-8 of z, or None.

    The answer is a guess; callers must confirm it by exact substitution.
    """
    if denom_bound < 1:
        raise ValueError("denom_bound must be >= 1")
    for cand in recognize_candidates(z, denom_bound):
        return cand
    return None
