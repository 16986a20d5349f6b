"""Local invariants of a foliation at a point.

The germ at a point s is the vector field X = Au d/du + Bv d/dv obtained from
the affine form A dx + B dy of a chart containing s, translated so that s is
the origin, with (Au, Bv) = (-B, A).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from gmpy2 import mpq

from .errors import Degenerate, IndeterminateCS, NonIsolated
from .foliation import CHARTS, XYZ, ProjLine, ProjPoint, as_homog, dehomogenize
from .mpoly import MPoly, RatFunc, exact_div, gcd, homogeneous_part, scalar, squarefree_part, substitute, valuation
from .roots import field_roots

INVARIANT = math.inf  # tangency order of an invariant line
UV = ("u", "v")


@dataclass(frozen=True)
class LocalVectorField:
    """Germ X = Au d/du + Bv d/dv at the origin of the chart ``chart``.

    ``point`` is the base point, normalized so that its ``chart`` coordinate is 1.
    """

    Au: MPoly
    Bv: MPoly
    chart: str = "z"
    point: tuple = (mpq(0), mpq(0), mpq(1))

    @property
    def indices(self):
        return CHARTS[self.chart]

    def linear_part(self, symbolic: bool = False):
        """Jacobian matrix at the origin.

        With ``symbolic`` the entries may be polynomials in the parameters.
        """
        get = _param_poly if symbolic else _const
        rows = []
        for f in (self.Au, self.Bv):
            rows.append([get(f.coeff({"u": 1, "v": 0})), get(f.coeff({"u": 0, "v": 1}))])
        return rows

    def line(self, t) -> ProjLine:
        """Line through the base point with local direction (1, t); t=None is the direction (0, 1)."""
        i, j = self.indices
        k = XYZ.index(self.chart)
        s = self.point
        coeffs = [mpq(0)] * 3
        if t is None:
            coeffs[i] = mpq(1)
            coeffs[k] = -s[i]
        else:
            coeffs[i] = t
            coeffs[j] = mpq(-1)
            coeffs[k] = s[j] - t * s[i]
        return ProjLine(*coeffs)

    def local_equation(self, L: ProjLine):
        """(alpha, beta, gamma) with L = alpha*u + beta*v + gamma locally."""
        i, j = self.indices
        k = XYZ.index(self.chart)
        l = L.coeffs
        s = self.point
        return l[i], l[j], scalar(l[i] * s[i] + l[j] * s[j] + l[k])


def _const(f: MPoly):
    f = f.drop_unused()
    if not f.is_constant():
        raise ValueError("expected a constant coefficient")
    return f.constant_value()


def _param_poly(f: MPoly):
    f = f.drop_unused()
    if set(f.used_vars()) & set(UV):
        raise ValueError("linear part still depends on u, v")
    return f.constant_value() if f.is_constant() else f


def _choose_chart(s: ProjPoint):
    for chart in ("z", "x", "y"):
        if s[XYZ.index(chart)]:
            return chart
    raise ValueError("zero point")


def localize(F, s) -> LocalVectorField:
    """Local vector field at s in the first chart among z, x, y containing s."""
    H = as_homog(F)
    s = s if isinstance(s, ProjPoint) else ProjPoint(*s)
    chart = _choose_chart(s)
    k = XYZ.index(chart)
    pt = tuple(scalar(c / s[k]) if c else mpq(0) for c in s.coords)
    form = dehomogenize(H, chart)
    c1, c2 = form.coords
    i, j = CHARTS[chart]
    shift = {c1: MPoly.var("u") + pt[i], c2: MPoly.var("v") + pt[j]}
    A = substitute(form.A, shift)
    B = substitute(form.B, shift)
    Au, Bv = (-B)._align(A)
    Au, Bv = Au.with_vars(Au.vars + UV), Bv.with_vars(Bv.vars + UV)
    return LocalVectorField(Au, Bv, chart, pt)


def _as_field(X, s=None):
    if isinstance(X, LocalVectorField):
        return X
    return localize(X, s)


# ---------------------------------------------------------------- multiplicities
def alg_multiplicity(X, s=None) -> int:
    X = _as_field(X, s)
    vals = [valuation(f, UV) for f in (X.Au, X.Bv) if not f.is_zero()]
    return min(vals)


def _at_v0(f: MPoly) -> MPoly:
    return substitute(f, {"v": 0})


def _uord(f: MPoly) -> int:
    return f.min_degree("u")


def intersection_number(f: MPoly, g: MPoly, u: str = "u", v: str = "v") -> int:
    """Intersection multiplicity at the origin of two plane curves (Fulton's algorithm)."""
    if u != "u" or v != "v":
        f = substitute(f, {u: MPoly.var("u"), v: MPoly.var("v")})
        g = substitute(g, {u: MPoly.var("u"), v: MPoly.var("v")})
    total = 0
    stack = [(f, g)]
    vv = MPoly.var("v")
    while stack:
        f, g = stack.pop()
        if f.is_zero() or g.is_zero():
            raise NonIsolated("curves share a component through the origin")
        f, g = f._align(g)
        if f.terms.get(0) or g.terms.get(0):
            continue
        fr, gr = _at_v0(f), _at_v0(g)
        if fr.is_zero() and gr.is_zero():
            raise NonIsolated("both curves contain the line v = 0")
        if fr.is_zero() or gr.is_zero():
            if fr.is_zero():
                f, g, fr, gr = g, f, gr, fr
            # g = v * g1: I(f, g) = I(f, v) + I(f, g1)
            total += _uord(fr)
            stack.append((f, exact_div(g, vv.with_vars(g.vars))))
            continue
        r, s_ = fr.degree("u"), gr.degree("u")
        if r > s_:
            f, g, fr, gr, r, s_ = g, f, gr, fr, s_, r
        lf = fr.coeff({"u": r}).drop_unused().constant_value()
        lg = gr.coeff({"u": s_}).drop_unused().constant_value()
        uu = MPoly.var("u", f.vars)
        g2 = g.scale(lf) - (uu ** (s_ - r) * f).scale(lg)
        stack.append((f, g2))
    return total


def milnor(X, s=None) -> int:
    X = _as_field(X, s)
    return intersection_number(X.Au, X.Bv)


# ---------------------------------------------------------------- tangency
def tangency_polynomial(X: LocalVectorField) -> MPoly:
    """g_t(u) = (Bv - t*Au)(u, t*u) as a polynomial in (u, t)."""
    u = MPoly.var("u")
    t = MPoly.var("t")
    sub = {"u": u, "v": t * u}
    return substitute(X.Bv, sub) - t * substitute(X.Au, sub)


def _tangency_coeffs(X: LocalVectorField):
    g = tangency_polynomial(X)
    cs = g.coeff_list("u")
    return [c.drop_unused() for c in cs]


def _gcd_list(polys):
    out = MPoly.zero()
    for p in polys:
        if p.is_zero():
            continue
        out = p if out.is_zero() else gcd(out, p)
    return out


def _sqf_degree(f: MPoly) -> int:
    if f.is_zero():
        return -1
    if f.is_constant():
        return 0
    return squarefree_part(f.drop_unused(), "t").degree("t")


def invariant_directions(X: LocalVectorField):
    """(slopes in the field, vertical flag, complete flag) of invariant lines through the origin."""
    cs = _tangency_coeffs(X)
    inv = _gcd_list(cs)
    if inv.is_zero():
        raise Degenerate("every line through the point is invariant")
    slopes = []
    complete = True
    if inv.degree("t") > 0:
        slopes, residual = field_roots(inv.drop_unused(), "t")
        complete = residual.degree("t") <= 0
    vertical = substitute(X.Au, {"u": 0}).is_zero()
    return slopes, vertical, complete


def tangency_order(F, L, s):
    """Tangency order of the line L with F at s (INVARIANT for invariant lines)."""
    s = s if isinstance(s, ProjPoint) else ProjPoint(*s)
    L = L if isinstance(L, ProjLine) else ProjLine(*L)
    if not L.contains(s):
        return 0
    X = localize(F, s)
    alpha, beta, _ = X.local_equation(L)
    u = MPoly.var("u")
    Xf = X.Au.scale(alpha) + X.Bv.scale(beta) if alpha and beta else (
        X.Au.scale(alpha) if alpha else X.Bv.scale(beta))
    if beta:
        r = substitute(Xf, {"v": u.scale(-alpha / beta) if alpha else MPoly.zero()})
        var = "u"
    else:
        r = substitute(Xf, {"u": 0})
        var = "v"
    r = r.drop_unused()
    if r.is_zero():
        return INVARIANT
    return r.min_degree(var) if var in r.vars else 0


def tau_kappa(X, s=None):
    """(tau, kappa): minimal and maximal tangency orders over non-invariant lines."""
    X = _as_field(X, s)
    cs = _tangency_coeffs(X)
    tau = next(k for k, c in enumerate(cs) if not c.is_zero())
    inv = _gcd_list(cs)
    inv_deg = _sqf_degree(inv)
    kappa = tau
    for k in range(tau + 1, len(cs) + 1):
        gk = _gcd_list(cs[:k])
        if gk.is_zero() or _sqf_degree(gk) > inv_deg:
            kappa = k
    vert = substitute(X.Au, {"u": 0}).drop_unused()
    if not vert.is_zero():
        kappa = max(kappa, vert.min_degree("v") if "v" in vert.vars else 0)
    return tau, kappa


# ---------------------------------------------------------------- linear invariants
def baum_bott(X, s=None):
    """tr(J)^2 / det(J) at a nondegenerate point."""
    X = _as_field(X, s)
    (a, b), (c, d) = X.linear_part()
    det = scalar(a * d - b * c)
    if not det:
        raise Degenerate("linear part is degenerate")
    if milnor(X) != 1:
        raise Degenerate("singular point is not nondegenerate")
    tr = scalar(a + d)
    return scalar(tr * tr / det)


def camacho_sad(F, L, s):
    """Camacho-Sad index of the invariant line L at s, at linear level.

    With the linear part written in a basis (tangent to L, transverse), it is
    the transverse eigenvalue divided by the tangential one.  For a family the
    result is a RatFunc in the parameters.
    """
    s = s if isinstance(s, ProjPoint) else ProjPoint(*s)
    L = L if isinstance(L, ProjLine) else ProjLine(*L)
    if not L.contains(s):
        raise ValueError("point is not on the line")
    X = localize(F, s)
    alpha, beta, _ = X.local_equation(L)
    (a, b), (c, d) = X.linear_part(symbolic=True)
    # tangent vector to L and a transverse vector
    tx, ty = beta, -alpha
    nx, ny = (mpq(0), mpq(1)) if beta else (mpq(1), mpq(0))
    # J in the basis (tangent, normal); the change-of-basis determinant cancels
    jtx, jty = a * tx + b * ty, c * tx + d * ty
    jnx, jny = a * nx + b * ny, c * nx + d * ny
    lam_t = jtx * ny - jty * nx
    lam_n = tx * jny - ty * jnx
    if isinstance(lam_t, MPoly) or isinstance(lam_n, MPoly):
        vs = next(e.vars for e in (a, b, c, d) if isinstance(e, MPoly))
        lt, ln = _as_poly(lam_t, vs), _as_poly(lam_n, vs)
        if lt.is_zero():
            raise IndeterminateCS("tangential eigenvalue vanishes")
        r = RatFunc(ln, lt)
        if r.num.is_constant() and r.den.is_constant():
            return scalar(r.num.constant_value() / r.den.constant_value())
        return r
    if not scalar(lam_t):
        raise IndeterminateCS("tangential eigenvalue vanishes")
    return scalar(lam_n / lam_t)


def _as_poly(e, vs):
    return e.with_vars(vs) if isinstance(e, MPoly) else MPoly.const(e, vs)


def jet_saturated(F, s) -> bool:
    """For nu = d: is the degree-d jet of the local 1-form saturated?"""
    X = localize(F, s)
    d = as_homog(F).degree
    nu = alg_multiplicity(X)
    if nu != d:
        raise ValueError(f"algebraic multiplicity is {nu}, not {d}")
    A, B = homogeneous_part(X.Bv, UV, d), homogeneous_part(-X.Au, UV, d)
    if A.is_zero() or B.is_zero():
        return (A + B).is_constant()
    return gcd(A, B).is_constant()


@dataclass(frozen=True)
class LocalInvariants:
    nu: int
    mu: int
    tau: int
    kappa: int
    nondegenerate: bool
    bb: Optional[object] = None
    radial_order: Optional[int] = None

    def to_json(self):
        from .exactnum import render_scalar

        out = {"nu": self.nu, "mu": self.mu, "tau": self.tau, "kappa": self.kappa,
               "nondegenerate": self.nondegenerate}
        if self.bb is not None:
            out["bb"] = render_scalar(self.bb)
        if self.radial_order is not None:
            out["radial_order"] = self.radial_order
        return out


def local_invariants(F, s) -> LocalInvariants:
    X = localize(F, s)
    nu = alg_multiplicity(X)
    mu = milnor(X)
    tau, kappa = tau_kappa(X)
    nondeg = mu == 1
    bb = baum_bott(X) if nondeg else None
    radial = tau - 1 if nu == 1 else None
    return LocalInvariants(nu, mu, tau, kappa, nondeg, bb, radial)


__all__ = [
    "INVARIANT",
    "LocalVectorField",
    "LocalInvariants",
    "localize",
    "alg_multiplicity",
    "intersection_number",
    "milnor",
    "tangency_polynomial",
    "invariant_directions",
    "tangency_order",
    "tau_kappa",
    "baum_bott",
    "camacho_sad",
    "jet_saturated",
    "local_invariants",
]
