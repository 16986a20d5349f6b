"""Legendre transform of a foliation and curvature of the resulting 3-web.

The dual web is an implicit differential equation F(p, q, w) = 0 with
w = dq/dp on an affine chart (p, q) of the dual plane.  Three charts are
available:

``SLOPE_INTERCEPT``
    lines y = p x - q; the contact point has x = w, y = p w - q, and the
    tangency condition is A + p B = 0.
``UNIT_A``
    lines p x - q y = 1; x = w / (p w - q), y = 1 / (p w - q); condition q A + p B = 0.
``UNIT_B``
    lines p y - q x = 1; x = 1 / (p w - q), y = w / (p w - q); condition p A + q B = 0.

For a 3-web F = a0 w^3 + a1 w^2 + a2 w + a3 the curvature is computed from
three 5x5 determinants R, alpha1, alpha2 as
K = d/dq(alpha1 / R) - d/dp(alpha2 / R).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import DegenerateDual, NotAThreeWeb, ZeroResultant
from .foliation import as_affine, as_homog, strip_param_content, _homogenize_poly, valuation_top
from .mpoly import MPoly, RatFunc, det_fraction_free, divides, exact_div, gcd, render, resultant, substitute

PQW = ("p", "q", "w")


class DualChart(Enum):
    SLOPE_INTERCEPT = "slope"
    UNIT_A = "unitA"
    UNIT_B = "unitB"

    @classmethod
    def parse(cls, text):
        if isinstance(text, DualChart):
            return text
        key = str(text).strip().lower().replace("-", "_")
        for c in cls:
            if key in (c.value.lower(), c.name.lower()):
                return c
        if key in ("slope_intercept", "si"):
            return cls.SLOPE_INTERCEPT
        raise ValueError(f"unknown dual chart {text!r}; use slope, unitA or unitB")


CHART_ORDER = (DualChart.UNIT_A, DualChart.UNIT_B, DualChart.SLOPE_INTERCEPT)


@dataclass
class ImplicitWebEq:
    """Reduced equation F(p, q, w) = 0 of a web, w = dq/dp."""

    F: MPoly
    chart: DualChart = DualChart.SLOPE_INTERCEPT
    removed: list = field(default_factory=list)  # (factor text, multiplicity)

    @property
    def degree(self) -> int:
        return self.F.degree("w")

    def coeffs(self):
        """[a0, ..., ad] with a0 the coefficient of w^d."""
        return self.F.coeff_list("w")[::-1]

    def __str__(self):
        return render(self.F)


def _pencil_factor(vars):
    p, q, w = (MPoly.var(v, vars) for v in PQW)
    return p * w - q


def _raw_legendre(A: MPoly, B: MPoly, chart: DualChart) -> MPoly:
    vs = tuple(A.vars) + PQW
    A, B = A.with_vars(vs), B.with_vars(vs)
    p, q, w = (MPoly.var(v, vs) for v in PQW)
    if chart is DualChart.SLOPE_INTERCEPT:
        sub = {"x": w, "y": p * w - q}
        return substitute(A, sub) + p * substitute(B, sub)
    if chart is DualChart.UNIT_A:
        P = q * A + p * B
        img = {"x": w, "y": MPoly.const(1), "z": p * w - q}
    else:
        P = p * A + q * B
        img = {"x": MPoly.const(1), "y": w, "z": p * w - q}
    D = valuation_top(P)
    return substitute(_homogenize_poly(P, D), img)


def _reduce(F: MPoly, chart: DualChart):
    removed = []
    if chart is not DualChart.SLOPE_INTERCEPT:
        L = _pencil_factor(F.vars)
        m = 0
        while not F.is_zero() and divides(L, F):
            F = exact_div(F, L)
            m += 1
        if m:
            removed.append((render(L), m))
    # content in (p, q)
    parts = list(F.coeffs_in("w").values())
    cont = parts[0]
    for c in parts[1:]:
        if cont.is_constant():
            break
        cont = gcd(cont, c)
    cont = strip_param_content(cont, ("p", "q")) if not cont.is_constant() else cont
    if not cont.is_constant():
        F = exact_div(F, cont)
        removed.append((render(cont), 1))
    # repeated factors in w
    g = gcd(F, F.diff("w"))
    if g.degree("w") > 0:
        g = strip_param_content(g, PQW)
        F = exact_div(F, g)
        removed.append((render(g), "repeated"))
    return F, removed


def legendre(F, chart=DualChart.UNIT_A) -> ImplicitWebEq:
    """Dual web of a foliation in the given chart (reduced)."""
    chart = DualChart.parse(chart)
    H = as_homog(F)
    d = H.degree
    if d < 1:
        raise ValueError("the Legendre transform needs degree >= 1")
    form = as_affine(H)
    raw = _raw_legendre(form.A, form.B, chart)
    Fw, removed = _reduce(raw, chart)
    if Fw.degree("w") != d:
        raise DegenerateDual(f"w-degree {Fw.degree('w')} < {d} in chart {chart.value}")
    return ImplicitWebEq(Fw, chart, removed)


def discriminant_w(W) -> MPoly:
    """(-1)^(d(d-1)/2) Res_w(F, dF/dw) / a0."""
    F = W.F if isinstance(W, ImplicitWebEq) else W
    d = F.degree("w")
    a0 = F.coeff_list("w")[d]
    res = resultant(F, F.diff("w"), "w")
    disc = exact_div(res, a0)
    return -disc if (d * (d - 1) // 2) % 2 else disc


def henaut_parts(W):
    """(R, alpha1, alpha2) for a 3-web, with the base coordinates (p, q)."""
    F = W.F if isinstance(W, ImplicitWebEq) else W
    if F.degree("w") != 3:
        raise NotAThreeWeb(f"w-degree is {F.degree('w')}, expected 3")
    cl = F.coeff_list("w")
    a0, a1, a2, a3 = cl[3], cl[2], cl[1], cl[0]
    Z = MPoly.zero(F.vars)

    def dx(f):
        return f.diff("p")

    def dy(f):
        return f.diff("q")

    R = det_fraction_free([
        [a0, a1, a2, a3, Z],
        [Z, a0, a1, a2, a3],
        [3 * a0, 2 * a1, a2, Z, Z],
        [Z, 3 * a0, 2 * a1, a2, Z],
        [Z, Z, 3 * a0, 2 * a1, a2],
    ])
    if R.is_zero():
        raise ZeroResultant("R vanishes identically: the web equation is not reduced")
    deriv_col = [dy(a0), dx(a0) + dy(a1), dx(a1) + dy(a2), dx(a2) + dy(a3), dx(a3)]
    tail = [
        [-a0, Z, Z],
        [Z, -2 * a0, Z],
        [a2, -a1, -3 * a0],
        [2 * a3, Z, -2 * a1],
        [Z, a3, -a2],
    ]
    coef_col = [a0, a1, a2, a3, Z]
    alpha1 = det_fraction_free([[deriv_col[i], coef_col[i]] + tail[i] for i in range(5)])
    coef_col2 = [Z, a0, a1, a2, a3]
    alpha2 = det_fraction_free([[coef_col2[i], deriv_col[i]] + tail[i] for i in range(5)])
    return R, alpha1, alpha2


def curvature_numerator(W):
    """(N, R) with K = N / R^2."""
    R, al1, al2 = henaut_parts(W)
    N = (al1.diff("q") - al2.diff("p")) * R - (al1 * R.diff("q") - al2 * R.diff("p"))
    return N, R


def curvature(W) -> RatFunc:
    """Curvature K as a reduced rational function (coefficient of dp^dq)."""
    N, R = curvature_numerator(W)
    return RatFunc(N, R * R)


def rho(W) -> MPoly:
    """K * Delta^2 as a polynomial: N / a0^2."""
    F = W.F if isinstance(W, ImplicitWebEq) else W
    N, _ = curvature_numerator(F)
    a0 = F.coeff_list("w")[3]
    return exact_div(N, a0 * a0)


def curvature_numerator_coeff(F, chart, monomial) -> MPoly:
    """Coefficient of p^i q^j in K * Delta^2 (a polynomial in the parameters)."""
    i, j = monomial
    W = legendre(F, chart)
    r = rho(W)
    return r.coeff({"p": i, "q": j}).drop_unused()


def flatness_by_chart(F):
    """{chart: verdict or None if degenerate} over the three dual charts."""
    out = {}
    for chart in CHART_ORDER:
        try:
            W = legendre(F, chart)
        except DegenerateDual:
            out[chart] = None
            continue
        N, _ = curvature_numerator(W)
        out[chart] = N.is_zero()
    return out


def is_flat(F, cross_check: bool = False) -> bool:
    """Flatness of the dual web of a degree-3 foliation.

    Uses the first non-degenerate chart; with ``cross_check`` every
    non-degenerate chart is evaluated and the verdicts must agree.
    """
    H = as_homog(F)
    if H.degree != 3:
        raise ValueError(f"flatness is implemented for degree 3, got {H.degree}")
    if cross_check:
        verdicts = {k: v for k, v in flatness_by_chart(H).items() if v is not None}
        if not verdicts:
            raise DegenerateDual("all three dual charts are degenerate")
        vals = set(verdicts.values())
        if len(vals) != 1:
            raise AssertionError(f"chart-dependent flatness verdicts: {verdicts}")
        return vals.pop()
    for chart in CHART_ORDER:
        try:
            W = legendre(H, chart)
        except DegenerateDual:
            continue
        N, _ = curvature_numerator(W)
        return N.is_zero()
    raise DegenerateDual("all three dual charts are degenerate")


__all__ = [
    "DualChart",
    "ImplicitWebEq",
    "legendre",
    "discriminant_w",
    "henaut_parts",
    "curvature_numerator",
    "curvature",
    "rho",
    "curvature_numerator_coeff",
    "flatness_by_chart",
    "is_flat",
]
