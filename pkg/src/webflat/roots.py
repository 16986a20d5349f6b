"""Exact roots in Q(zeta12) of univariate polynomials.

Numeric roots come from mpmath at high precision; each one is turned into an
exact candidate and kept only if it annihilates the polynomial exactly.  The
candidate search uses integrality: if ``lc`` is the leading coefficient of a
polynomial with coefficients in Z[zeta], then ``lc * r`` is an algebraic
integer of Q(zeta12), whose coordinates on 1, sqrt3, i, i*sqrt3 are halves of
integers.
"""

from __future__ import annotations

from math import lcm

import mpmath
from gmpy2 import mpq

from .exactnum import FieldElement, coords, from_basis_i_r3, recognize_candidates, to_basis_i_r3
from .mpoly import MPoly, exact_div, squarefree_part

_DPS = 60
_SQRT3 = None


def _sqrt3():
    global _SQRT3
    if _SQRT3 is None:
        with mpmath.workdps(_DPS):
            _SQRT3 = mpmath.sqrt(3)
    return _SQRT3


def _to_mpc(c):
    """High-precision complex value of a field element."""
    a, b, cc, d = to_basis_i_r3(c)
    s3 = _sqrt3()
    return mpmath.mpc(mpmath.mpf(a.numerator) / a.denominator + s3 * mpmath.mpf(b.numerator) / b.denominator,
                      mpmath.mpf(cc.numerator) / cc.denominator + s3 * mpmath.mpf(d.numerator) / d.denominator)


def _integer_pairs(t, tol, max_iter=200000):
    """Integer pairs (A, B) with |A + B*sqrt3 - t| < tol, smallest |B| first."""
    s3 = _sqrt3()
    bmax = int(abs(t) / s3) + 3
    if bmax > max_iter:
        bmax = max_iter
    out = []
    for bb in range(0, bmax + 1):
        for b in ((bb, -bb) if bb else (0,)):
            rest = t - b * s3
            a = int(mpmath.nint(rest))
            if abs(rest - a) < tol:
                out.append((a, b))
    return out


def integral_candidates(z, tol=None):
    """Elements of Z[zeta12] (half-integer coordinates) within ``tol`` of z."""
    with mpmath.workdps(_DPS):
        z = mpmath.mpc(z)
        tol = tol if tol is not None else mpmath.mpf(10) ** (-25)
        re = _integer_pairs(2 * z.real, 2 * tol)
        im = _integer_pairs(2 * z.imag, 2 * tol)
    for a, b in re:
        for c, d in im:
            yield from_basis_i_r3(mpq(a, 2), mpq(b, 2), mpq(c, 2), mpq(d, 2))


def _eval(coeffs, x):
    acc = mpq(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _integralize(coeffs):
    """Scale a coefficient list (highest degree first) into Z[zeta]."""
    den = 1
    for c in coeffs:
        for q in coords(c):
            den = lcm(den, int(q.denominator))
    return [c * den for c in coeffs]


def field_roots(f: MPoly, var: str):
    """Distinct roots of f in Q(zeta12), plus the squarefree cofactor left over.

    ``f`` must be univariate in ``var`` with scalar coefficients.  The
    returned residual has no roots in the field when recognition is complete;
    a residual of positive degree means some roots lie outside Q(zeta12).
    """
    if f.is_zero():
        raise ValueError("roots of the zero polynomial")
    others = set(f.used_vars()) - {var}
    if others:
        raise ValueError(f"polynomial is not univariate in {var}: {sorted(others)}")
    g = squarefree_part(f, var).monic()
    roots = []
    x = MPoly.var(var)
    while g.degree(var) > 0:
        coeffs = [c.constant_value() for c in g.coeff_list(var)][::-1]
        if len(coeffs) == 2:
            r = -coeffs[1] / coeffs[0]
            roots.append(r)
            g = MPoly.const(1)
            break
        found = None
        icoeffs = _integralize(coeffs)
        lc = icoeffs[0]
        with mpmath.workdps(_DPS):
            nums = _numeric_roots(coeffs)
            lcc = _to_mpc(lc)
            for z in nums:
                for beta in integral_candidates(lcc * z):
                    cand = beta / lc if lc != 1 else beta
                    if not _eval(coeffs, cand):
                        found = cand
                        break
                if found is not None:
                    break
                # fall back to a small-denominator search on the raw value
                for cand in recognize_candidates(complex(z), 12, tol=1e-9):
                    if not _eval(coeffs, cand):
                        found = cand
                        break
                if found is not None:
                    break
        if found is None:
            break
        roots.append(found)
        g = exact_div(g, x.with_vars(g.vars) - found if g.vars else x - found)
    residual = g
    return roots, residual


def _numeric_roots(coeffs):
    cs = [_to_mpc(c) for c in coeffs]
    n = len(cs) - 1
    try:
        return mpmath.polyroots(cs, maxsteps=400, extraprec=4 * _DPS + 20 * n)
    except mpmath.libmp.libhyper.NoConvergence:
        return mpmath.polyroots(cs, maxsteps=2000, extraprec=12 * _DPS + 40 * n, error=False)


def binary_form_roots(g: MPoly, a: str, b: str):
    """Projective roots [a:b] of a binary form as normalized pairs, plus a residual flag.

    Returns (roots, complete) where roots are (ra, rb) with first nonzero = 1.
    """
    if g.is_zero():
        raise ValueError("roots of the zero form")
    roots = []
    deg = g.total_degree()
    ga = g.subs({b: 1})
    # b = 0 root: coefficient of a^deg vanishes
    if ga.degree(a) < deg:
        roots.append((mpq(1), mpq(0)))
    # roots with b != 0: [t:1] where g(t, 1) = 0, normalized to (1, 1/t) if t != 0
    rs, residual = field_roots(ga, a) if ga.degree(a) > 0 else ([], MPoly.const(1))
    for t in rs:
        if t:
            roots.append((mpq(1), 1 / t))
        else:
            roots.append((mpq(0), mpq(1)))
    return roots, residual.degree(a) <= 0


__all__ = ["field_roots", "binary_form_roots", "integral_candidates", "FieldElement"]
