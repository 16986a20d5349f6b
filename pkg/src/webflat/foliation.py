"""Plane foliations given by polynomial 1-forms.

A foliation of degree d is stored homogeneously as a triple (a, b, c) of
forms of degree d+1 in x, y, z with xa + yb + zc = 0 and no common factor.
The affine form A dx + B dy lives in the chart z = 1.

Symbolic parameters are extra polynomial variables; operations that need
actual points (singular points, invariant lines, inflection divisor) require
all parameters to be specialized first.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from gmpy2 import mpq

from .errors import IncompleteSingularLocus, NotEuler, SingularMatrix, WebflatError
from .exactnum import render_scalar
from .mpoly import (
    MPoly,
    divides,
    exact_div,
    gcd,
    homogeneous_part,
    render,
    resultant,
    scalar,
    sort_vars,
    substitute,
)
from .roots import binary_form_roots, field_roots

XYZ = ("x", "y", "z")
CHARTS = {"z": (0, 1), "x": (1, 2), "y": (0, 2)}  # chart -> indices of its two affine coordinates
_CHART_INDEX = {"x": 0, "y": 1, "z": 2}


def _p(f):
    return f if isinstance(f, MPoly) else MPoly.const(f)


def _pure_params(f: MPoly, space=XYZ):
    return not any(v in space for v in f.used_vars())


def strip_param_content(g: MPoly, space=XYZ) -> MPoly:
    """Part of g that involves the variables in ``space`` (parameter content removed)."""
    if g.is_constant():
        return MPoly.const(1, g.vars)
    if _pure_params(g, space):
        return MPoly.const(1, g.vars)
    parts = list(g.coefficients([v for v in space]).values())
    cont = parts[0]
    for q in parts[1:]:
        if cont.is_constant():
            break
        cont = gcd(cont, q)
    if cont.is_constant():
        return g.monic()
    return exact_div(g, cont).monic()


# ---------------------------------------------------------------- forms
class PolyOneForm:
    """Affine 1-form A dx + B dy in the coordinates ``coords`` (default x, y)."""

    __slots__ = ("A", "B", "coords")

    def __init__(self, A, B, coords=("x", "y")):
        A, B = _p(A), _p(B)
        if A.is_zero() and B.is_zero():
            raise ValueError("the zero 1-form defines no foliation")
        A, B = A._align(B)
        self.A, self.B = A, B
        self.coords = tuple(coords)

    @property
    def params(self):
        return tuple(v for v in sort_vars(self.A.used_vars() + self.B.used_vars()) if v not in XYZ)

    def subs(self, mapping):
        return PolyOneForm(substitute(self.A, mapping), substitute(self.B, mapping), self.coords)

    def __eq__(self, other):
        return isinstance(other, PolyOneForm) and self.A == other.A and self.B == other.B and self.coords == other.coords

    def __hash__(self):
        return hash((self.A, self.B, self.coords))

    def __str__(self):
        u, v = self.coords
        parts = []
        for coef, d in ((self.A, "d" + u), (self.B, "d" + v)):
            if coef.is_zero():
                continue
            parts.append(f"({render(coef)})*{d}")
        return " + ".join(parts)

    __repr__ = __str__


class HomogForm:
    """Homogeneous 1-form a dx + b dy + c dz satisfying the Euler relation."""

    __slots__ = ("a", "b", "c", "_cache", "_lock")

    def __init__(self, a, b, c, check=True):
        a, b, c = _p(a), _p(b), _p(c)
        vs = sort_vars(a.vars + b.vars + c.vars + XYZ)
        a, b, c = a.with_vars(vs), b.with_vars(vs), c.with_vars(vs)
        if a.is_zero() and b.is_zero() and c.is_zero():
            raise ValueError("the zero form defines no foliation")
        if check:
            x, y, z = (MPoly.var(v, vs) for v in XYZ)
            if not (x * a + y * b + z * c).is_zero():
                raise NotEuler("x*a + y*b + z*c is not zero")
        self.a, self.b, self.c = a, b, c
        self._cache = {}
        self._lock = threading.Lock()

    @property
    def comps(self):
        return (self.a, self.b, self.c)

    @property
    def vars(self):
        return self.a.vars

    @property
    def params(self):
        used = set()
        for f in self.comps:
            used.update(f.used_vars())
        return tuple(v for v in sort_vars(used) if v not in XYZ)

    @property
    def degree(self) -> int:
        return max(_xyz_degree(f) for f in self.comps if not f.is_zero()) - 1

    def scale(self, s):
        return HomogForm(self.a.scale(s), self.b.scale(s), self.c.scale(s), check=False)

    def subs(self, mapping):
        return HomogForm(*(substitute(f, mapping) for f in self.comps))

    def normalized(self):
        """Scalar multiple whose first nonzero leading coefficient is 1."""
        for f in self.comps:
            if not f.is_zero():
                lc = f.leading_coeff()
                return self if lc == 1 else self.scale(1 / lc)
        return self

    def proportional(self, other) -> bool:
        """Exact test that ``other`` is a nonzero scalar multiple of self."""
        other = as_homog(other)
        ratio = None
        for f, g in zip(self.comps, other.comps):
            if f.is_zero() != g.is_zero():
                return False
            if f.is_zero():
                continue
            if ratio is None:
                ratio = scalar(g.leading_coeff() / f.leading_coeff())
            if g != f.scale(ratio):
                return False
        return True

    def memo(self, key, fn):
        """Per-form memo; values are immutable results of pure computations."""
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        val = fn()
        with self._lock:
            self._cache.setdefault(key, val)
            return self._cache[key]

    def __eq__(self, other):
        return isinstance(other, HomogForm) and self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def __str__(self):
        return ";".join(render(f) for f in self.comps)

    def __repr__(self):
        return f"HomogForm({str(self)!r})"


def _xyz_degree(f: MPoly) -> int:
    lay = f.layout
    shifts = [lay.shift[lay.index[v]] for v in XYZ if v in lay.index]
    from .mpoly import MASK

    return max(sum((k >> s) & MASK for s in shifts) for k in f.terms)


# ---------------------------------------------------------------- points and lines
def _normalize_triple(vals):
    vals = tuple(scalar(v) for v in vals)
    for v in vals:
        if v:
            return tuple(scalar(w / v) if w else mpq(0) for w in vals)
    raise ValueError("all coordinates are zero")


class ProjPoint:
    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1:
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise ValueError("a projective point has three coordinates")
        self.coords = _normalize_triple(coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        return "[" + ":".join(render_scalar(c) for c in self.coords) + "]"

    __repr__ = __str__

    def to_json(self):
        return [render_scalar(c) for c in self.coords]


class ProjLine:
    """Line a x + b y + c z = 0."""

    __slots__ = ("coeffs",)

    def __init__(self, *coeffs):
        if len(coeffs) == 1:
            coeffs = tuple(coeffs[0])
        self.coeffs = _normalize_triple(coeffs)

    @classmethod
    def from_poly(cls, f: MPoly):
        return cls(*linear_coeffs(f))

    def poly(self, vars=XYZ) -> MPoly:
        out = MPoly.zero(vars)
        for c, v in zip(self.coeffs, XYZ):
            if c:
                out = out + MPoly.var(v, vars).scale(c)
        return out

    def contains(self, pt: ProjPoint) -> bool:
        return not sum((a * b for a, b in zip(self.coeffs, pt.coords)), mpq(0))

    def __eq__(self, other):
        return isinstance(other, ProjLine) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("line",) + self.coeffs)

    def __str__(self):
        return render(self.poly()) + " = 0"

    __repr__ = __str__

    def to_json(self):
        return render(self.poly())


def linear_coeffs(L: MPoly):
    """Coefficients of x, y, z in a linear form."""
    out = []
    for v in XYZ:
        c = L.coeff({v: 1})
        out.append(c.constant_value() if c.is_constant() else None)
    if None in out or L.total_degree() != 1 or L.terms.get(0):
        raise ValueError(f"not a linear form in x, y, z: {render(L)}")
    return tuple(out)


def line_through(p: ProjPoint, q: ProjPoint) -> ProjLine:
    a, b = p.coords, q.coords
    return ProjLine(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


@dataclass
class Divisor:
    """components: [(invariant factor, multiplicity)], residual: the transverse rest.

    Factors are invariant lines when these are known individually; otherwise a
    factor is the product of the invariant lines of one multiplicity layer.
    """

    components: list
    residual: MPoly
    total: MPoly = field(repr=False, default=None)

    @property
    def degree(self) -> int:
        return self.total.total_degree() if self.total is not None else -1

    @property
    def invariant_part(self) -> MPoly:
        out = MPoly.const(1)
        for f, m in self.components:
            out = out * f**m
        return out

    @property
    def invariant_degree(self) -> int:
        return sum(m * f.total_degree() for f, m in self.components)

    def to_json(self):
        return {
            "invariant_part": [{"factor": render(f), "multiplicity": m} for f, m in self.components],
            "transverse_part": render(self.residual),
        }


# ---------------------------------------------------------------- conversions
def _homogenize_poly(f: MPoly, n: int, coords=("x", "y"), new="z") -> MPoly:
    out = MPoly.zero(sort_vars(f.vars + (new,)))
    zv = MPoly.var(new, out.vars)
    for k in range(n + 1):
        part = homogeneous_part(f, coords, k)
        if part.is_zero():
            continue
        out = out + part.with_vars(out.vars) * zv ** (n - k)
    return out


def saturate_triple(a: MPoly, b: MPoly, c: MPoly):
    """Divide a homogeneous triple by the (x,y,z)-part of its gcd."""
    g = gcd(gcd(a, b), c)
    if g.is_constant():
        return a, b, c
    g = strip_param_content(g)
    if g.is_constant():
        return a, b, c
    return exact_div(a, g), exact_div(b, g), exact_div(c, g)


def homogenize(form: PolyOneForm) -> HomogForm:
    """Saturated homogeneous triple of an affine form in the chart z = 1."""
    if form.coords != ("x", "y"):
        raise ValueError("homogenize expects a form in the chart coordinates (x, y)")
    A, B = form.A, form.B
    n = max(valuation_top(A), valuation_top(B))
    vs = sort_vars(A.vars + XYZ)
    x, y, z = (MPoly.var(v, vs) for v in XYZ)
    Ah = _homogenize_poly(A, n).with_vars(vs)
    Bh = _homogenize_poly(B, n).with_vars(vs)
    a, b, c = z * Ah, z * Bh, -(x * Ah + y * Bh)
    a, b, c = saturate_triple(a, b, c)
    return HomogForm(a, b, c)


def valuation_top(f: MPoly) -> int:
    """Total degree in x, y (-1 for zero)."""
    if f.is_zero():
        return -1
    lay = f.layout
    from .mpoly import MASK

    shifts = [lay.shift[lay.index[v]] for v in ("x", "y") if v in lay.index]
    return max(sum((k >> s) & MASK for s in shifts) for k in f.terms)


def dehomogenize(F, chart: str = "z") -> PolyOneForm:
    """Restriction to the affine chart ``chart`` = 1.

    chart z: coordinates (x, y), form a dx + b dy; chart x: (y, z), b dy + c dz;
    chart y: (x, z), a dx + c dz.
    """
    H = as_homog(F)
    if chart not in CHARTS:
        raise ValueError(f"unknown chart {chart!r}")
    i, j = CHARTS[chart]
    comps = H.comps
    one = {chart: 1}
    return PolyOneForm(substitute(comps[i], one), substitute(comps[j], one), (XYZ[i], XYZ[j]))


def as_homog(F) -> HomogForm:
    """Accept a HomogForm, a PolyOneForm or 1-form text."""
    if isinstance(F, HomogForm):
        return F
    if isinstance(F, PolyOneForm):
        return homogenize(F)
    if isinstance(F, str):
        from .parser import parse_oneform

        return homogenize(parse_oneform(F))
    if hasattr(F, "homog"):
        return F.homog
    raise TypeError(f"cannot interpret {F!r} as a foliation")


def as_affine(F) -> PolyOneForm:
    if isinstance(F, PolyOneForm):
        return F
    return dehomogenize(as_homog(F), "z")


def degree(F) -> int:
    return as_homog(F).degree


# ---------------------------------------------------------------- pullback
def _matrix(M):
    rows = [[_p(e) for e in row] for row in M]
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("expected a 3x3 matrix")
    return rows


def pullback(F, M, saturate: bool = True) -> HomogForm:
    """Pullback of the form by the linear map v -> M v.

    Entries of M may be scalars or polynomials (for instance in ``eps``).
    The new coefficient of dv_j is sum_i M[i][j] * a_i(M v).
    """
    H = as_homog(F)
    rows = _matrix(M)
    from .mpoly import det_fraction_free

    if det_fraction_free(rows).is_zero():
        raise SingularMatrix("pullback matrix is singular")
    vs = sort_vars(H.vars + tuple(v for r in rows for e in r for v in e.vars) + XYZ)
    xyz = [MPoly.var(v, vs) for v in XYZ]
    images = {}
    for i, v in enumerate(XYZ):
        img = MPoly.zero(vs)
        for j in range(3):
            if not rows[i][j].is_zero():
                img = img + rows[i][j].with_vars(vs) * xyz[j]
        images[v] = img
    comps = [substitute(f, images) for f in H.comps]
    new = []
    for j in range(3):
        acc = MPoly.zero(vs)
        for i in range(3):
            if not rows[i][j].is_zero() and not comps[i].is_zero():
                acc = acc + rows[i][j].with_vars(vs) * comps[i].with_vars(vs)
        new.append(acc)
    if saturate:
        scalar_matrix = all(e.is_constant() for r in rows for e in r)
        if not scalar_matrix:
            new = list(saturate_triple(*new))
    return HomogForm(*new, check=False)


# ---------------------------------------------------------------- singular points
@dataclass
class SingularLocus:
    """Singular points found in Q(zeta12) with Milnor numbers and a certificate."""

    points: list
    milnor: dict
    degree: int
    complete: bool
    n_points: object = None  # number of distinct singular points, when known
    unresolved_milnor: object = 0  # Milnor mass of points outside the field, when known

    @property
    def count(self):
        """Number of distinct singular points (None if some could not be counted)."""
        return len(self.points) if self.complete else self.n_points

    @property
    def expected_total(self) -> int:
        d = self.degree
        return d * d + d + 1

    @property
    def total_milnor(self) -> int:
        return sum(self.milnor.values())

    @property
    def certified(self) -> bool:
        return self.complete and self.total_milnor == self.expected_total

    @property
    def accounted_milnor(self):
        """Milnor sum including points whose coordinates lie outside Q(zeta12)."""
        if self.unresolved_milnor is None:
            return None
        return self.total_milnor + self.unresolved_milnor

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return p in self.points


def _require_numeric(H: HomogForm, what: str):
    if H.params:
        raise ValueError(f"{what} needs numeric coefficients; specialize parameters {H.params}")


def _affine_common_zeros(A: MPoly, B: MPoly, u: str, v: str):
    """Common zeros of two polynomials in (u, v); returns (points, complete)."""
    A, B = A._align(B)
    if A.is_zero() or B.is_zero():
        raise WebflatError("non-isolated common zeros")
    complete = True
    if A.degree(v) <= 0 and B.degree(v) <= 0:
        g = gcd(A, B)
        if not g.is_constant():
            raise WebflatError("non-isolated common zeros")
        return [], True
    R = resultant(A, B, v).drop_unused()
    if R.is_zero():
        raise WebflatError("non-isolated common zeros")
    if R.is_constant():
        return [], True
    xs, residual = field_roots(R, u)
    if residual.degree(u) > 0:
        complete = False
    pts = []
    for x0 in xs:
        Ay = substitute(A, {u: x0}).drop_unused()
        By = substitute(B, {u: x0}).drop_unused()
        g = gcd(Ay, By)
        if g.is_zero():
            raise WebflatError("non-isolated common zeros")
        if g.is_constant():
            continue
        ys, res = field_roots(g, v)
        if res.degree(v) > 0:
            complete = False
        pts.extend((x0, y0) for y0 in ys)
    return pts, complete


def singular_points(F, strict: bool = False) -> SingularLocus:
    """Singular points with coordinates in Q(zeta12).

    The certificate compares the sum of Milnor numbers with d^2 + d + 1.
    With ``strict`` an uncertified locus raises IncompleteSingularLocus.
    """
    H = as_homog(F)
    _require_numeric(H, "singular_points")
    loc = H.memo("singular_points", lambda: _singular_points(H))
    if strict and not loc.certified:
        raise IncompleteSingularLocus(
            f"found Milnor sum {loc.total_milnor}, expected {loc.expected_total}", loc.points)
    return loc


def _singular_points(H: HomogForm) -> SingularLocus:
    from .localinv import localize, milnor

    a, b, c = H.comps
    A = substitute(a, {"z": 1}).drop_unused()
    B = substitute(b, {"z": 1}).drop_unused()
    A, B = A.with_vars(("x", "y")), B.with_vars(("x", "y"))
    pts, complete = _affine_common_zeros(A, B, "x", "y")
    n_points = len(pts) if complete else None
    points = [ProjPoint(x0, y0, 1) for x0, y0 in pts]
    at_inf = [substitute(f, {"z": 0}).with_vars(("x", "y")) for f in (a, b, c)]
    g = gcd(gcd(at_inf[0], at_inf[1]), at_inf[2])
    if g.is_zero():
        raise WebflatError("line at infinity is pointwise singular: form not saturated")
    unresolved = 0 if complete else None
    if not g.is_constant():
        roots, ok = binary_form_roots(g, "x", "y")
        points.extend(ProjPoint(r[0], r[1], 0) for r in roots)
        if n_points is not None:
            n_points += _radical(g).total_degree()
        if not ok and unresolved is not None:
            unresolved = _milnor_mass_at_infinity(H, _radical(g), roots)
        complete = complete and ok
    mus = {}
    for p in points:
        mus[p] = milnor(localize(H, p))
    return SingularLocus(points, mus, H.degree, complete, n_points, unresolved)


def _milnor_mass_at_infinity(H: HomogForm, g: MPoly, roots):
    """Sum of Milnor numbers at the zeros of the binary form g not listed in ``roots``.

    In the chart y = 1 with coordinates (x, z), the order of a root x0 of
    Res_z(a, c) equals the sum of intersection numbers above x0 as long as
    the leading z-coefficients do not vanish together there.  Points above
    roots outside the field cannot share x0 with field points, so the mass
    is the degree of the part of the resultant supported on those roots.
    """
    a, _, c = H.comps
    gx = substitute(g, {"y": 1}).drop_unused()
    for r in roots:
        if r[1]:
            t = r[0] / r[1]
            gx = exact_div(gx, MPoly.var("x", gx.vars) - t)
    if gx.is_constant():
        return 0
    A = substitute(a, {"y": 1}).with_vars(("x", "z"))
    C = substitute(c, {"y": 1}).with_vars(("x", "z"))
    lead = gcd(A.coeff_list("z")[-1], C.coeff_list("z")[-1]).with_vars(("x", "z"))
    if not gcd(lead, gx.with_vars(("x", "z"))).is_constant():
        return None
    R = resultant(A, C, "z").with_vars(("x",))
    gx = gx.with_vars(("x",))
    mass = 0
    while True:
        h = gcd(R, gx)
        if h.is_constant():
            return mass
        mass += h.degree("x")
        R = exact_div(R, h)


# ---------------------------------------------------------------- invariant lines
def _wedge_components(H: HomogForm, L: MPoly):
    a, b, c = H.comps
    al, be, ga = linear_coeffs(L)
    return (a.scale(be) - b.scale(al) if (be or al) else MPoly.zero(a.vars),
            a.scale(ga) - c.scale(al) if (ga or al) else MPoly.zero(a.vars),
            b.scale(ga) - c.scale(be) if (ga or be) else MPoly.zero(a.vars))


def is_invariant_line(F, L) -> bool:
    """Omega wedge dL divisible by L."""
    H = as_homog(F)
    L = L if isinstance(L, ProjLine) else ProjLine(*L)
    Lp = L.poly(H.vars)
    return all(f.is_zero() or divides(Lp, f) for f in _wedge_components(H, Lp))


def invariant_lines(F, strict: bool = True):
    """All invariant lines with coefficients in Q(zeta12).

    With ``strict`` an incomplete singular locus raises; otherwise only the
    lines through the singular points that were found are returned.

    Each invariant line passes through a singular point s; through s the
    invariant directions are the roots of the gcd of the tangency
    coefficients c_k(t) (plus possibly the vertical direction).
    """
    H = as_homog(F)
    if H.degree < 1:
        raise ValueError("invariant lines are only finite in number for degree >= 1")
    return H.memo(("invariant_lines", strict), lambda: _invariant_lines(H, strict))


def _invariant_lines(H: HomogForm, strict: bool):
    from .localinv import invariant_directions, localize

    loc = singular_points(H, strict=strict)
    found = []
    for s in loc.points:
        X = localize(H, s)
        slopes, vertical, complete = invariant_directions(X)
        if not complete and strict:
            raise IncompleteSingularLocus(f"invariant directions at {s} lie outside Q(zeta12)", loc.points)
        cands = [X.line(t) for t in slopes]
        if vertical:
            cands.append(X.line(None))
        for L in cands:
            if L not in found and is_invariant_line(H, L):
                found.append(L)
    return found


# ---------------------------------------------------------------- vector field and inflection
def vector_field_rep(F):
    """Homogeneous field Z = (E, Fc, G) of degree d with Omega = i_R i_Z (dx^dy^dz).

    Componentwise: a = z Fc - y G, b = x G - z E, c = y E - x Fc.
    """
    H = as_homog(F)
    a, b, c = H.comps
    vs = H.vars
    x, y, z = (MPoly.var(v, vs) for v in XYZ)
    if not (x * a + y * b + z * c).is_zero():
        raise NotEuler("Euler relation fails")
    a0 = substitute(a, {"z": 0}).with_vars(vs)
    b0 = substitute(b, {"z": 0}).with_vars(vs)
    if not a0.is_zero():
        h = exact_div(a0, y)
    elif not b0.is_zero():
        h = exact_div(-b0, x)
    else:
        h = MPoly.zero(vs)
    G = -h
    Fc = exact_div(a - y * h, z)
    E = exact_div(-b - x * h, z)
    return E, Fc, G


def inflection_polynomial(F, Z=None) -> MPoly:
    """Determinant |x E Z(E); y Fc Z(Fc); z G Z(G)| of degree 3d."""
    H = as_homog(F)
    E, Fc, G = Z if Z is not None else vector_field_rep(H)
    vs = sort_vars(E.vars + Fc.vars + G.vars + H.vars)
    E, Fc, G = (f.with_vars(vs) for f in (E, Fc, G))
    x, y, z = (MPoly.var(v, vs) for v in XYZ)

    def along(f):
        return E * f.diff("x") + Fc * f.diff("y") + G * f.diff("z")

    from .mpoly import det_cofactor

    return det_cofactor([[x, E, along(E)], [y, Fc, along(Fc)], [z, G, along(G)]])


def inflection_divisor(F) -> Divisor:
    H = as_homog(F)
    _require_numeric(H, "inflection_divisor")
    return H.memo("inflection_divisor", lambda: _inflection_divisor(H))


def _radical(f: MPoly) -> MPoly:
    """Product of the distinct irreducible factors (characteristic zero)."""
    g = f
    for v in f.used_vars():
        g = gcd(g, f.diff(v))
        if g.is_constant():
            return f
    return exact_div(f, g)


def squarefree_layers(f: MPoly):
    """[(S_k, k)] with f = const * prod S_k^k and the S_k squarefree, pairwise coprime."""
    layers = []
    k = 1
    D = f
    P = _radical(D)
    while not D.is_constant():
        D = exact_div(D, P)
        P_next = gcd(P, D) if not D.is_constant() else MPoly.const(1)
        S = exact_div(P, P_next) if not P_next.is_constant() else P
        if not S.is_constant():
            layers.append((S, k))
        P = P_next
        k += 1
    return layers


def _invariant_factor(H: HomogForm, S: MPoly) -> MPoly:
    """Product of the invariant irreducible factors of a squarefree S: gcd(S, Omega ^ dS)."""
    a, b, c = H.comps
    S = S.with_vars(H.vars)
    sx, sy, sz = (S.diff(v) for v in XYZ)
    g = S
    for w in (a * sy - b * sx, a * sz - c * sx, b * sz - c * sy):
        if not w.is_zero():
            g = gcd(g, w)
    return g


def _inflection_divisor(H):
    if H.degree < 1:
        raise ValueError("inflection divisor needs degree >= 1")
    total = inflection_polynomial(H)
    lines = invariant_lines(H, strict=False)
    comps = []
    rest = total
    for S, k in squarefree_layers(total):
        inv = _invariant_factor(H, S)
        if inv.is_constant():
            continue
        inv = strip_param_content(inv)
        for _ in range(k):
            rest = exact_div(rest, inv.with_vars(rest.vars))
        for L in lines:
            Lp = L.poly(inv.vars)
            if not inv.is_constant() and divides(Lp, inv):
                inv = exact_div(inv, Lp)
                comps.append((L.poly(), k))
        if not inv.is_constant():
            comps.append((inv.monic(), k))
    comps.sort(key=lambda fm: render(fm[0]))
    rest = rest.monic() if not rest.is_constant() else MPoly.const(1)
    return Divisor(comps, rest, total)


def is_convex(F) -> bool:
    return inflection_divisor(F).residual.is_constant()


__all__ = [
    "PolyOneForm",
    "HomogForm",
    "ProjPoint",
    "ProjLine",
    "Divisor",
    "SingularLocus",
    "homogenize",
    "dehomogenize",
    "as_homog",
    "as_affine",
    "degree",
    "pullback",
    "singular_points",
    "is_invariant_line",
    "invariant_lines",
    "vector_field_rep",
    "inflection_polynomial",
    "inflection_divisor",
    "is_convex",
    "line_through",
]
