"""One-parameter families of projective maps and their limits.

A family is a 3x3 matrix M(eps) of polynomials in ``eps``; the map actually
applied is eps^(-shift) * M(eps), which lets affine maps such as
(x/eps, y/eps) be written with polynomial entries.  The pulled-back form is
multiplied by ``coeff * eps^scale``; the limit exists when the resulting
eps-valuation is exactly zero.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from gmpy2 import mpq

from .errors import (
    DegenerateLimit,
    HypothesisViolated,
    NotDoubleInflection,
    WebflatError,
    WrongScale,
)
from .exactnum import to_field
from .foliation import (
    XYZ,
    HomogForm,
    ProjLine,
    ProjPoint,
    _affine_common_zeros,
    as_homog,
    inflection_divisor,
    pullback,
    saturate_triple,
    singular_points,
    vector_field_rep,
)
from .mpoly import (MPoly, det_fraction_free, divides, exact_div, gcd, sort_vars, squarefree_part, substitute,
                    valuation)
from .parser import parse_poly
from .roots import binary_form_roots

EPS = "eps"


@dataclass
class ParamFamily:
    matrix: list  # 3x3 MPoly entries (polynomials in eps)
    scale: int = 0  # exponent k of eps^k
    coeff: object = 1
    shift: int = 0

    def __post_init__(self):
        self.matrix = [[e if isinstance(e, MPoly) else parse_poly(str(e)) for e in r] for r in self.matrix]
        if len(self.matrix) != 3 or any(len(r) != 3 for r in self.matrix):
            raise ValueError("a family needs a 3x3 matrix")
        bad = {v for r in self.matrix for e in r for v in e.used_vars()} - {EPS}
        if bad:
            raise ValueError(f"family entries may only involve eps, found {sorted(bad)}")
        if det_fraction_free(self.matrix).is_zero():
            raise ValueError("det of the family vanishes identically in eps")
        self.coeff = to_field(self.coeff)

    @classmethod
    def from_json(cls, data):
        """``{"matrix": [[...]], "scale": "-eps^4", "shift": 0}``; text or dict."""
        if isinstance(data, str):
            data = json.loads(data)
        coeff, k = parse_scale(str(data.get("scale", "1")))
        return cls(data["matrix"], k, coeff, int(data.get("shift", 0)))

    def to_json(self):
        from .mpoly import render

        return {"matrix": [[render(e) for e in r] for r in self.matrix],
                "scale": f"{self.coeff}*eps^{self.scale}", "shift": self.shift}


_SCALE = re.compile(r"^\s*(?:(?P<num>.*?)\s*\*?\s*)?eps\s*(?:\^\s*(?P<exp>[-+]?\d+)|\^\s*\(\s*(?P<pexp>[-+]?\d+)\s*\))?\s*$")


def parse_scale(text: str):
    """Parse ``c*eps^k`` (k may be negative), ``-eps^4``, ``1/(8*eps)`` or a constant."""
    t = text.strip().replace("ε", "eps")
    m = re.fullmatch(r"(?P<num>[^/]*)/\s*\((?P<den>.*)\)", t)
    if m and "eps" in m.group("den"):
        c1, k1 = parse_scale(m.group("num") or "1")
        c2, k2 = parse_scale(m.group("den"))
        return c1 / c2, k1 - k2
    if "eps" not in t:
        f = parse_poly(t)
        if not f.is_constant() or f.is_zero():
            raise ValueError(f"bad scale {text!r}")
        return f.constant_value(), 0
    m = _SCALE.match(t)
    if not m:
        raise ValueError(f"bad scale {text!r}; expected c*eps^k")
    num = (m.group("num") or "").strip()
    if num in ("", "+"):
        c = to_field(1)
    elif num == "-":
        c = to_field(-1)
    else:
        c = parse_poly(num).constant_value()
    k = int(m.group("exp") or m.group("pexp") or 1)
    return c, k


def _eps_valuation(polys):
    vals = [valuation(f, (EPS,)) for f in polys if not f.is_zero()]
    return min(vals)


def _shift_eps(f: MPoly, k: int) -> MPoly:
    """f * eps^k for k possibly negative (exact)."""
    if k >= 0:
        return f * MPoly.var(EPS, f.vars) ** k
    return exact_div(f, MPoly.var(EPS, f.vars) ** (-k))


def family_limit(F, fam: ParamFamily, target_degree=None) -> HomogForm:
    """Limit as eps -> 0 of coeff * eps^scale * (eps^-shift M(eps))^* F."""
    H = as_homog(F)
    d = H.degree
    G = pullback(H, fam.matrix, saturate=False)
    comps = [c for c in G.comps]
    if all(c.is_zero() for c in comps):
        raise DegenerateLimit("pullback vanishes")
    total = _eps_valuation(comps) - fam.shift * (d + 2) + fam.scale
    if total != 0:
        raise WrongScale(total)
    k = fam.scale - fam.shift * (d + 2)
    lim = [substitute(_shift_eps(c, k), {EPS: 0}).drop_unused().scale(fam.coeff) for c in comps]
    if all(c.is_zero() for c in lim):
        raise DegenerateLimit("limit form vanishes")
    vs = sort_vars(tuple(v for c in lim for v in c.vars) + XYZ)
    lim = [c.with_vars(vs) for c in lim]
    a, b, c = saturate_triple(*lim)
    out = HomogForm(a, b, c)
    target = d if target_degree is None else target_degree
    if out.degree < target:
        raise DegenerateLimit(f"limit has degree {out.degree} < {target}")
    return out


def valuation_of(F, fam: ParamFamily) -> int:
    """Total eps-valuation with the family's scale (0 means the scale is right)."""
    try:
        family_limit(F, fam)
    except WrongScale as exc:
        return exc.valuation
    return 0


# ---------------------------------------------------------------- contact order along the tangent line
def contact_polynomials(F, order: int = 3):
    """[Q1, ..., Q_order]: Q_k(m) is the coefficient of s^k in Omega(m + s Z(m))(Z(m)).

    Since Omega(P)(W) = det(P, Z(P), W), Q_k = det(m, D^k Z[Z, ..., Z] / k!, Z).
    Q1 is the inflection polynomial up to sign; a nonsingular point m is a
    double inflection point when Q1(m) = Q2(m) = 0 and Q3(m) != 0.
    """
    from math import factorial

    from .mpoly import det_cofactor

    H = as_homog(F)

    def compute():
        Z = [f.with_vars(H.vars) for f in vector_field_rep(H)]
        m = [MPoly.var(v, H.vars) for v in XYZ]
        out = []
        for k in range(1, order + 1):
            D = [_directional(Zi, Z, k) for Zi in Z]
            out.append(det_cofactor([m, D, Z]).scale(mpq(1, factorial(k))))
        return out

    return H.memo(("contact", order), compute)


def _directional(f: MPoly, Z, k: int) -> MPoly:
    """sum over |alpha| = k of k!/alpha! d^alpha f * Z^alpha, i.e. D^k f [Z,...,Z]."""
    from math import comb

    out = MPoly.zero(f.vars)
    for i in range(k + 1):
        for j in range(k - i + 1):
            l = k - i - j
            g = f
            for _ in range(i):
                g = g.diff("x")
            for _ in range(j):
                g = g.diff("y")
            for _ in range(l):
                g = g.diff("z")
            if g.is_zero():
                continue
            out = out + g * (Z[0] ** i) * (Z[1] ** j) * (Z[2] ** l) * (comb(k, i) * comb(k - i, j))
    return out


def tangent_line(F, m) -> ProjLine:
    """Tangent line of the foliation at a nonsingular point."""
    H = as_homog(F)
    m = m if isinstance(m, ProjPoint) else ProjPoint(*m)
    vals = [c.subs(dict(zip(XYZ, m))).constant_value() for c in H.comps]
    if not any(vals):
        raise HypothesisViolated(f"{m} is a singular point")
    return ProjLine(*vals)


def contact_data(F, m):
    """(coefficients of Omega(m + s q)(q) for s^0..s^(d+1), q) with q a second point of T_m F."""
    H = as_homog(F)
    m = m if isinstance(m, ProjPoint) else ProjPoint(*m)
    L = tangent_line(H, m)
    q = _other_point(L, m)
    s = MPoly.var("s")
    vs = sort_vars(H.vars + ("s",))
    P = {v: s.with_vars(vs).scale(q[i]) + MPoly.const(m[i]).with_vars(vs) for i, v in enumerate(XYZ)}
    expr = MPoly.zero(vs)
    for i, c in enumerate(H.comps):
        expr = expr + substitute(c.with_vars(vs), P).scale(q[i])
    coeffs = [c.constant_value() if not c.is_zero() else to_field(0) for c in expr.drop_unused().coeff_list("s")] \
        if not expr.is_zero() else []
    return coeffs, q


def _other_point(L: ProjLine, m: ProjPoint) -> ProjPoint:
    a = L.coeffs
    for cand in ((a[1], -a[0], 0), (a[2], 0, -a[0]), (0, a[2], -a[1])):
        if any(cand):
            p = ProjPoint(*cand)
            if p != m:
                return p
    raise WebflatError("degenerate tangent line")


def is_double_inflection(F, m) -> bool:
    """Nonsingular m whose tangent line has contact order exactly 3."""
    try:
        coeffs, _ = contact_data(F, m)
    except HypothesisViolated:
        return False
    coeffs = coeffs + [to_field(0)] * (4 - len(coeffs))
    return not coeffs[1] and not coeffs[2] and bool(coeffs[3])


@dataclass
class DoubleInflectionReport:
    points: list  # (ProjPoint, ProjLine)
    complete: bool
    curves: list  # components of the inflection curve made of double inflection points

    def __bool__(self):
        return bool(self.points) or bool(self.curves)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def sample(self, F):
        """A double inflection point: an isolated one, else one picked on a curve component."""
        if self.points:
            return self.points[0][0]
        from .roots import field_roots

        for g in self.curves:
            for fixed, free in (("x", "y"), ("y", "x")):
                for k in range(1, 6):
                    h = substitute(g, {fixed: k, "z": 1}).drop_unused()
                    if not h.used_vars():
                        continue
                    roots, _ = field_roots(h, free)
                    for r in roots:
                        coords = {fixed: to_field(k), free: r, "z": to_field(1)}
                        p = ProjPoint(*(coords[v] for v in XYZ))
                        if is_double_inflection(F, p):
                            return p
        return None


def double_inflection_points(F) -> DoubleInflectionReport:
    """Double inflection points with coordinates in Q(zeta12)."""
    H = as_homog(F)
    if H.degree != 3:
        raise ValueError("double inflection points are implemented for degree 3")
    return H.memo("double_inflection", lambda: _double_inflection(H))


def _double_inflection(H: HomogForm) -> DoubleInflectionReport:
    I = inflection_divisor(H).residual.with_vars(XYZ)
    if I.is_constant():
        return DoubleInflectionReport([], True, [])
    Q2 = contact_polynomials(H, 2)[1].with_vars(XYZ)
    sing = set(singular_points(H).points)
    curves = []
    g = gcd(I, Q2)
    if not g.is_constant():
        curves.append(g)
        I, Q2 = exact_div(I, g), exact_div(Q2, g)
    cands, complete = _projective_common_zeros(I, Q2)
    pts = []
    for p in cands:
        if p in sing or not is_double_inflection(H, p):
            continue
        pts.append((p, tangent_line(H, p)))
    # a component of V(I, Q2) made of double inflection points is reported as a curve;
    # one along which Q3 also vanishes has higher contact everywhere and is dropped
    kept = []
    if curves:
        Q3 = contact_polynomials(H, 3)[2].with_vars(XYZ)
        kept = [c for c in curves if not _vanishes_on(Q3, c)]
    return DoubleInflectionReport(pts, complete, kept)


def _vanishes_on(f: MPoly, g: MPoly) -> bool:
    """Does f vanish on the curve g = 0 (some power of f divisible by rad g)?"""
    h = g
    for v in XYZ:
        if h.degree(v) > 0:
            h = squarefree_part(h, v)
            break
    fk = f
    for _ in range(f.total_degree() + 1):
        if fk.is_zero() or divides(h, fk):
            return True
        fk = fk * f
    return False


def _projective_common_zeros(f: MPoly, g: MPoly):
    """Common zeros of two coprime ternary forms, split into z = 1 and z = 0."""
    A = substitute(f, {"z": 1}).with_vars(("x", "y"))
    B = substitute(g, {"z": 1}).with_vars(("x", "y"))
    pts = []
    complete = True
    if not A.is_constant() and not B.is_constant():
        aff, complete = _affine_common_zeros(A, B, "x", "y")
        pts.extend(ProjPoint(x0, y0, 1) for x0, y0 in aff)
    fa = substitute(f, {"z": 0}).with_vars(("x", "y"))
    ga = substitute(g, {"z": 0}).with_vars(("x", "y"))
    if fa.is_zero() and ga.is_zero():
        raise WebflatError("common component along the line at infinity")
    h = ga if fa.is_zero() else (fa if ga.is_zero() else gcd(fa, ga))
    if not h.is_constant():
        roots, ok = binary_form_roots(h, "x", "y")
        complete = complete and ok
        pts.extend(ProjPoint(r[0], r[1], 0) for r in roots)
    return pts, complete


# ---------------------------------------------------------------- adapted coordinates and suites
def _matrix_for(m: ProjPoint, L: ProjLine, offL=None):
    """Columns e1 -> point off L, e2 -> second point of L, e3 -> m."""
    q = _other_point(L, m)
    if offL is None:
        for cand in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            if not L.contains(ProjPoint(*cand)):
                offL = ProjPoint(*cand)
                break
    cols = [list(offL), list(q), list(m)]
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def _compose(M, D):
    """M(scalars) times D(eps-polynomials)."""
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            acc = MPoly.zero((EPS,))
            for k in range(3):
                acc = acc + D[k][j].with_vars((EPS,)).scale(to_field(M[i][k]))
            row.append(acc)
        out.append(row)
    return out


def _diag(e1, e2, e3):
    eps = MPoly.var(EPS, (EPS,))
    zero = MPoly.zero((EPS,))
    return [[eps ** e1, zero, zero], [zero, eps ** e2, zero], [zero, zero, eps ** e3]]


def kappa_line(F, s) -> ProjLine:
    """A non-invariant line through s realizing the maximal tangency order kappa."""
    from .localinv import _gcd_list, _tangency_coeffs, invariant_directions, localize, tau_kappa, tangency_order
    from .roots import field_roots

    H = as_homog(F)
    X = localize(H, s)
    _, kappa = tau_kappa(X)
    cands = []
    inv_slopes, _, _ = invariant_directions(X)
    gk = _gcd_list(_tangency_coeffs(X)[:kappa]).drop_unused()
    if gk.is_zero():
        # every direction reaches kappa (radial-type point): small integer slopes
        ts = [to_field(t) for t in range(-3, 4)]
    elif gk.used_vars():
        ts, _ = field_roots(gk, "t")
    else:
        ts = []
    cands = [X.line(t) for t in ts if t not in inv_slopes]
    cands.append(X.line(None))
    for L in cands:
        if tangency_order(H, L, s) == kappa:
            return L
    raise HypothesisViolated(f"no kappa-realizing line with coefficients in Q(zeta12) at {s}")


def degeneration_suite_F1(F, s):
    """Limit of F under the weighted family (eps^3 x, eps y) adapted to s."""
    from .localinv import local_invariants

    H = as_homog(F)
    s = s if isinstance(s, ProjPoint) else ProjPoint(*s)
    li = local_invariants(H, s)
    if li.mu != 1:
        raise HypothesisViolated(f"mu = {li.mu} at {s}: need a nondegenerate point")
    if li.bb != 4:
        raise HypothesisViolated(f"BB = {li.bb} at {s}: need 4")
    if li.kappa != 3:
        raise HypothesisViolated(f"kappa = {li.kappa} at {s}: need 3")
    L = kappa_line(H, s)
    M = _matrix_for(s, L)
    fam = ParamFamily(_compose(M, _diag(3, 1, 0)), scale=-4)
    lim = family_limit(H, fam)
    return lim, fam


def degeneration_suite_F2(F, m):
    """Limit of F under the weighted family (eps^4 x, eps y) adapted to a double inflection point."""
    H = as_homog(F)
    m = m if isinstance(m, ProjPoint) else ProjPoint(*m)
    try:
        coeffs, _ = contact_data(H, m)
    except HypothesisViolated as exc:
        raise NotDoubleInflection(str(exc), {"point": str(m)}) from None
    coeffs = coeffs + [to_field(0)] * (4 - len(coeffs))
    r, s_, beta = coeffs[1], coeffs[2], coeffs[3]
    if r or s_ or not beta:
        raise NotDoubleInflection(f"{m} is not a double inflection point",
                                  {"r": str(r), "s": str(s_), "beta": str(beta)})
    L = tangent_line(H, m)
    M = _matrix_for(m, L)
    fam = ParamFamily(_compose(M, _diag(4, 1, 0)), scale=-4)
    lim = family_limit(H, fam)
    return lim, fam


def F1_suite_points(F):
    """Singular points meeting the hypotheses of the F1 suite (mu = 1, BB = 4, kappa = 3)."""
    from .localinv import local_invariants

    out = []
    for p in singular_points(F).points:
        li = local_invariants(F, p)
        if li.mu == 1 and li.bb == 4 and li.kappa == 3:
            out.append(p)
    return out


def looks_like_F1(F) -> bool:
    """Convex with exactly two singular points."""
    from .foliation import is_convex

    H = as_homog(F)
    return H.degree == 3 and is_convex(H) and len(singular_points(H)) == 2


def looks_like_F2(F) -> bool:
    """One singular point, of algebraic multiplicity 3, and a flat dual web."""
    from .dualweb import is_flat
    from .localinv import alg_multiplicity, localize

    H = as_homog(F)
    if H.degree != 3:
        return False
    pts = singular_points(H).points
    return len(pts) == 1 and alg_multiplicity(localize(H, pts[0])) == 3 and is_flat(H)


__all__ = [
    "EPS",
    "ParamFamily",
    "parse_scale",
    "family_limit",
    "valuation_of",
    "contact_polynomials",
    "contact_data",
    "tangent_line",
    "is_double_inflection",
    "double_inflection_points",
    "DoubleInflectionReport",
    "kappa_line",
    "degeneration_suite_F1",
    "degeneration_suite_F2",
    "F1_suite_points",
    "looks_like_F1",
    "looks_like_F2",
]
