"""Projective symmetries of a foliation.

A projective map is a 3x3 matrix M acting by v -> M v; the text form
``[y:x:2*z]`` lists the three image coordinates.  The identity component of
the isotropy group is measured through its Lie algebra: linear vector
fields X with L_X(Omega) wedge Omega = 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import SingularMatrix
from .exactnum import to_field
from .foliation import XYZ, as_homog, pullback
from .mpoly import MPoly, scalar_det, scalar_rank
from .parser import parse_poly


@dataclass(frozen=True)
class ProjMap:
    """Invertible 3x3 scalar matrix modulo scalars (first nonzero entry 1)."""

    M: tuple

    def __init__(self, rows):
        rows = [[to_field(e) for e in r] for r in rows]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a projective map needs a 3x3 matrix")
        if not scalar_det(rows):
            raise SingularMatrix("projective map must be invertible")
        lead = next(e for r in rows for e in r if e)
        object.__setattr__(self, "M", tuple(tuple(e / lead for e in r) for r in rows))

    @classmethod
    def parse(cls, text: str) -> "ProjMap":
        """``[l1:l2:l3]`` with linear forms in x, y, z."""
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        parts = body.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected three ':'-separated linear forms, got {text!r}")
        rows = []
        for part in parts:
            f = parse_poly(part)
            extra = set(f.used_vars()) - set(XYZ)
            if extra or any(sum(m) != 1 for m, _ in f.items()):
                raise ValueError(f"{part!r} is not a linear form in x, y, z")
            rows.append([f.coeff({v: 1}).constant_value() if v in f.vars else to_field(0) for v in XYZ])
        return cls(rows)

    @classmethod
    def identity(cls) -> "ProjMap":
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def rows(self):
        return [list(r) for r in self.M]

    def __str__(self):
        from .mpoly import render

        xyz = [MPoly.var(v, XYZ) for v in XYZ]
        comps = []
        for r in self.M:
            f = MPoly.zero(XYZ)
            for c, v in zip(r, xyz):
                f = f + v.scale(c)
            comps.append(render(f))
        return "[" + ":".join(comps) + "]"


def preserves(phi, F) -> bool:
    """True when the pullback of F by phi is a nonzero multiple of F."""
    phi = phi if isinstance(phi, ProjMap) else ProjMap(phi)
    H = as_homog(F)
    return pullback(H, phi.rows()).proportional(H)


def conjugacy_witness_check(F, G, phi) -> bool:
    """True when phi^* G defines the same foliation as F."""
    phi = phi if isinstance(phi, ProjMap) else ProjMap(phi)
    return pullback(as_homog(G), phi.rows()).proportional(as_homog(F))


def _lie_rows(H):
    """Coefficient rows of the linear system L_X Omega ^ Omega = 0 in the 9 entries of X."""
    vs = H.vars
    a = list(H.comps)
    xyz = [MPoly.var(v, vs) for v in XYZ]
    columns = []
    for i in range(3):
        for j in range(3):
            # X = x_j d/dx_i
            L = []
            for k in range(3):
                term = xyz[j] * a[k].diff(XYZ[i])
                if k == j:
                    term = term + a[i]
                L.append(term)
            wedge = [L[0] * a[1] - L[1] * a[0], L[0] * a[2] - L[2] * a[0], L[1] * a[2] - L[2] * a[1]]
            columns.append(wedge)
    rows = {}
    for col, wedge in enumerate(columns):
        for comp, poly in enumerate(wedge):
            for mono, c in poly.items():
                rows.setdefault((comp, mono), [0] * 9)[col] = c
    return list(rows.values())


def isotropy_lie_dimension(F) -> int:
    """Dimension of the isotropy group of F in PGL(3)."""
    H = as_homog(F)
    if H.params:
        raise ValueError("isotropy needs a form without parameters")

    def compute():
        return 9 - scalar_rank(_lie_rows(H)) - 1

    return H.memo("lie_dim", compute)


def orbit_dimension(F) -> int:
    return 8 - isotropy_lie_dimension(F)


def random_proj_map(rng: random.Random, bound: int = 5) -> ProjMap:
    """A random invertible integer matrix with entries in [-bound, bound]."""
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
        try:
            return ProjMap(rows)
        except SingularMatrix:
            continue


@dataclass
class IsotropyReport:
    lie_dim: int
    orbit_dim: int
    verified_elements: list

    def to_json(self):
        return {
            "lie_dim": self.lie_dim,
            "orbit_dim": self.orbit_dim,
            "verified_generators": len(self.verified_elements),
        }


def isotropy_report(F, generators=()) -> IsotropyReport:
    """Lie dimension plus the subset of ``generators`` that preserve F."""
    ok = [g for g in generators if preserves(g, F)]
    d = isotropy_lie_dimension(F)
    return IsotropyReport(d, 8 - d, ok)


__all__ = [
    "ProjMap",
    "preserves",
    "conjugacy_witness_check",
    "isotropy_lie_dimension",
    "orbit_dimension",
    "random_proj_map",
    "IsotropyReport",
    "isotropy_report",
]
