"""Limits of one-parameter families and the two adapted-coordinate suites.

Run with ``python demos/degenerations.py``.
"""

from webflat.catalog import get
from webflat.degeneration import (ParamFamily, degeneration_suite_F1, degeneration_suite_F2,
                                  double_inflection_points, family_limit, looks_like_F1, looks_like_F2)
from webflat.foliation import ProjPoint, as_affine
from webflat.symmetry import orbit_dimension

FAMILIES = [
    ("H1", {"matrix": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "eps"]], "scale": "-eps^4", "shift": 1}),
    ("H3", {"matrix": [["1", "-1", "0"], ["-1", "-1", "2*eps"], ["1", "1", "0"]], "scale": "1/(8*eps)"}),
    ("F1", {"matrix": [["eps", "0", "0"], ["0", "1", "0"], ["2*eps", "0", "6*eps^3"]], "scale": "-1/6*eps",
            "shift": 1}),
]


def main():
    f3 = get("F3").homog
    for name, data in FAMILIES:
        lim = family_limit(f3, ParamFamily.from_json(data))
        print(f"F3 -> {as_affine(lim)}   same as {name}: {lim.proportional(get(name).homog)}")

    print()
    for name, pt in [("H1", (1, 0, 0)), ("H5", (1, 0, 0)), ("F4", (0, 1, 0))]:
        h = get(name).homog
        lim, fam = degeneration_suite_F1(h, ProjPoint(*pt))
        print(f"{name} at {ProjPoint(*pt)}: limit {as_affine(lim)}  F1-like: {looks_like_F1(lim)}  "
              f"orbit {orbit_dimension(h)} -> {orbit_dimension(lim)}")
    for name in ("H2", "H8", "F4"):
        h = get(name).homog
        m = double_inflection_points(h).sample(h)
        lim, fam = degeneration_suite_F2(h, m)
        print(f"{name} at {m}: limit {as_affine(lim)}  F2-like: {looks_like_F2(lim)}")


if __name__ == "__main__":
    main()
