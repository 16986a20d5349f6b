"""Flatness and curvature of dual webs for a few forms.

Run with ``python demos/flatness_tour.py``.
"""

from webflat.catalog import CLASSIFIED, get
from webflat.dualweb import curvature, is_flat, legendre
from webflat.foliation import is_convex, singular_points
from webflat.mpoly import render
from webflat.symmetry import orbit_dimension


def main():
    print(f"{'entry':6} {'flat':5} {'convex':6} {'#sing':5} {'orbit':5}  form")
    for name in CLASSIFIED:
        e = get(name)
        h = e.homog
        print(f"{name:6} {str(is_flat(h)):5} {str(is_convex(h)):6} {singular_points(h).count!s:5} "
              f"{orbit_dimension(h):5}  {e.form}")

    # a one-parameter family that is flat only at c = 0
    W = legendre(get("NF1").homog, "unitA")
    K = curvature(W)
    print()
    print("dual web:", render(W.F))
    print("K numerator:", render(K.num))
    print("K denominator:", render(K.den))
    for c in (0, 1, 2):
        print(f"c = {c}: flat = {is_flat(get('NF1').specialize(c=c))}")


if __name__ == "__main__":
    main()
