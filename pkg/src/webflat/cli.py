"""Command line front end: ``webflat <command> [input] [options]``.

Input is one of ``--form "A*dx+B*dy"``, ``--homogeneous "a;b;c"``,
``--entry NAME`` (catalog) or, when none is given, a form read from stdin
(a text containing ``;`` is taken as homogeneous).

Exit codes: 0 on success, 1 on a mathematical contract error or a
verification mismatch (a JSON payload describes it), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ParseError, WebflatError

COMMANDS = ("flatness", "curvature", "legendre", "inflection", "singular", "isotropy", "degenerate",
            "catalog-verify")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- input
def _parse_params(items):
    from .parser import parse_poly

    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--param expects name=value, got {item!r}")
        v = parse_poly(value)
        if not v.is_constant():
            raise UsageError(f"--param value for {name.strip()} must be a constant")
        out[name.strip()] = v.constant_value()
    return out


def _read_input(args, required=True):
    from .catalog import get
    from .foliation import as_homog
    from .parser import parse_homogeneous, parse_oneform

    given = [x for x in (args.form, args.homogeneous, args.entry) if x is not None]
    if len(given) > 1:
        raise UsageError("give only one of --form, --homogeneous, --entry")
    if args.entry is not None:
        H = get(args.entry).homog
    elif args.homogeneous is not None:
        H = parse_homogeneous(args.homogeneous)
    elif args.form is not None:
        H = as_homog(parse_oneform(args.form))
    elif not required:
        return None
    else:
        text = sys.stdin.read().strip()
        if not text:
            raise UsageError("no input: use --form, --homogeneous, --entry or stdin")
        H = parse_homogeneous(text) if ";" in text else as_homog(parse_oneform(text))
    params = _parse_params(args.param)
    if params:
        H = H.subs(params)
    return H


def _point(text):
    from .foliation import ProjPoint
    from .parser import parse_poly

    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    parts = body.split(":")
    if len(parts) != 3:
        raise UsageError(f"a point is written [a:b:c], got {text!r}")
    vals = []
    for part in parts:
        f = parse_poly(part)
        if not f.is_constant():
            raise UsageError(f"point coordinates must be constants, got {part!r}")
        vals.append(f.constant_value())
    return ProjPoint(*vals)


# ---------------------------------------------------------------- commands
def cmd_flatness(H, args):
    from .dualweb import flatness_by_chart, is_flat

    if args.cross_check:
        flat = is_flat(H, cross_check=True)
        charts = {c.value: v for c, v in flatness_by_chart(H).items()}
        return {"flat": flat, "charts": charts}, 0
    return {"flat": is_flat(H)}, 0


def cmd_curvature(H, args):
    from .dualweb import curvature, discriminant_w, legendre
    from .mpoly import render

    W = legendre(H, args.chart)
    K = curvature(W)
    return {
        "chart": W.chart.value,
        "web_eq": render(W.F),
        "discriminant": render(discriminant_w(W)),
        "K_num": render(K.num),
        "K_den": render(K.den),
        "flat": K.is_zero(),
    }, 0


def cmd_legendre(H, args):
    from .dualweb import legendre
    from .mpoly import render

    W = legendre(H, args.chart)
    return {
        "chart": W.chart.value,
        "web_eq": render(W.F),
        "degree": W.degree,
        "removed": [{"factor": f, "multiplicity": m} for f, m in W.removed],
    }, 0


def _inflection_json(H):
    from .foliation import inflection_divisor, is_convex

    D = inflection_divisor(H)
    out = {"degree": D.degree, **D.to_json(), "invariant_degree": D.invariant_degree}
    return out, is_convex(H)


def cmd_inflection(H, args):
    from .degeneration import double_inflection_points
    from .mpoly import render

    infl, convex = _inflection_json(H)
    out = {"degree": H.degree, "inflection": infl, "convex": convex}
    if H.degree == 3 and not H.params:
        rep = double_inflection_points(H)
        out["double_inflection"] = {
            "points": [str(p) for p, _ in rep.points],
            "curves": [render(g) for g in rep.curves],
            "complete": rep.complete,
        }
    return out, 0


def cmd_singular(H, args):
    from .foliation import invariant_lines, singular_points
    from .localinv import local_invariants

    sl = singular_points(H)
    pts = []
    for s in sl:
        li = local_invariants(H, s)
        entry = {"coords": str(s), "mu": li.mu, "nu": li.nu, "kappa": li.kappa}
        if li.bb is not None:
            entry["bb"] = li.to_json()["bb"]
        pts.append(entry)
    infl, convex = _inflection_json(H)
    try:
        lines = [str(L) for L in invariant_lines(H)]
    except WebflatError:
        lines = [str(L) for L in invariant_lines(H, strict=False)]
    return {
        "degree": H.degree,
        "singular_points": pts,
        "n_points": sl.count,
        "milnor_total": sl.accounted_milnor,
        "certified": sl.certified,
        "invariant_lines": lines,
        "inflection": infl,
        "convex": convex,
    }, 0


def cmd_isotropy(H, args):
    from .catalog import expand_generator, get
    from .symmetry import isotropy_report

    templates = list(args.generator or ())
    if args.entry is not None:
        templates = list(get(args.entry).generators) + templates
    passed, failed = [], []
    for t in templates:
        members = expand_generator(t)
        rep = isotropy_report(H, members)
        (passed if len(rep.verified_elements) == len(members) else failed).append(t)
    rep = isotropy_report(H)
    out = rep.to_json()
    out["verified_generators"] = len(passed)
    if failed:
        out["failed_generators"] = failed
    return out, 1 if failed else 0


def cmd_degenerate(H, args):
    from .degeneration import (ParamFamily, degeneration_suite_F1, degeneration_suite_F2, family_limit,
                               looks_like_F1, looks_like_F2)
    from .dualweb import is_flat
    from .foliation import as_affine, inflection_divisor
    from .mpoly import render
    from .symmetry import orbit_dimension

    if (args.family is None) == (args.suite is None):
        raise UsageError("degenerate needs exactly one of --family JSON or --suite F1|F2")
    if args.family is not None:
        text = args.family
        if text.startswith("@"):
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        try:
            fam = ParamFamily.from_json(text)
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise UsageError(f"bad --family: {exc}") from None
        lim = family_limit(H, fam)
    else:
        if args.point is None:
            raise UsageError("--suite needs --point [a:b:c]")
        pt = _point(args.point)
        suite = degeneration_suite_F1 if args.suite == "F1" else degeneration_suite_F2
        lim, fam = suite(H, pt)
    out = {
        "family": fam.to_json(),
        "limit": "; ".join(render(c) for c in lim.comps),
        "limit_affine": str(as_affine(lim)),
    }
    if lim.degree == 3 and H.degree == 3 and not H.params:
        out["checks"] = {
            "flat_before": is_flat(H),
            "flat_after": is_flat(lim),
            "invariant_degree_before": inflection_divisor(H).invariant_degree,
            "invariant_degree_after": inflection_divisor(lim).invariant_degree,
            "orbit_dim_before": orbit_dimension(H),
            "orbit_dim_after": orbit_dimension(lim),
        }
        if args.suite == "F1":
            out["checks"]["limit_like_F1"] = looks_like_F1(lim)
        elif args.suite == "F2":
            out["checks"]["limit_like_F2"] = looks_like_F2(lim)
    return out, 0


def cmd_catalog_verify(args):
    from .catalog import verify_all

    entries = [args.entry] if args.entry else None
    rep = verify_all(entries, workers=args.workers)
    bad = rep["unexplained_mismatches"] if args.accept_errata else rep["mismatches"]
    if rep.get("separation", {}).get("unexpected"):
        bad += 1
    return rep, 1 if bad else 0


# ---------------------------------------------------------------- output
def _text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v):
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return str(v)


def _catalog_summary(rep):
    lines = []
    for r in rep["entries"]:
        status = "ok" if not r["mismatches"] else f"{len(r['mismatches'])} mismatch(es)"
        lines.append(f"{r['name']}: {status}")
        for m in r["mismatches"]:
            extra = f" (erratum: {m['erratum']}, verified: {m.get('erratum_verified')})" if m.get("erratum") else ""
            lines.append(f"  {m['key']}: expected {m['expected']}, got {m['got']} [{m['source']}]{extra}")
    sep = rep.get("separation")
    if sep:
        lines.append(f"pairs not separated by the computed invariants: {sep['not_separated_here']}")
        if sep["unexpected"]:
            lines.append(f"unexpected coincidences: {sep['unexpected']}")
    lines.append(f"mismatches: {rep['mismatches']} (unexplained: {rep['unexplained_mismatches']})")
    return lines


def _emit(obj, args, command):
    if args.json:
        text = json.dumps(obj, sort_keys=False) + "\n"
    elif command == "catalog-verify":
        text = "\n".join(_catalog_summary(obj)) + "\n"
    else:
        text = "\n".join(_text(obj)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="webflat", description="Dual 3-webs of plane foliations.")
    sub = ap.add_subparsers(dest="command", metavar="command")
    sub.required = True

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", metavar="FILE", help="write output to FILE")

    inp = argparse.ArgumentParser(add_help=False, parents=[common])
    inp.add_argument("--form", help='affine 1-form, e.g. "y^3*dx+x^3*(x*dy-y*dx)"')
    inp.add_argument("--homogeneous", metavar="A;B;C", help="homogeneous coefficients of a dx+b dy+c dz")
    inp.add_argument("--entry", metavar="NAME", help="catalog entry")
    inp.add_argument("--param", action="append", metavar="NAME=VALUE", help="specialize a parameter")

    p = sub.add_parser("flatness", parents=[inp], help="is the dual web flat")
    p.add_argument("--cross-check", action="store_true", help="compare all non-degenerate dual charts")
    for name, hlp in (("curvature", "curvature of the dual web"), ("legendre", "dual web equation")):
        p = sub.add_parser(name, parents=[inp], help=hlp)
        p.add_argument("--chart", default="unitA", help="slope, unitA or unitB (default unitA)")
    sub.add_parser("inflection", parents=[inp], help="inflection divisor and double inflection points")
    sub.add_parser("singular", parents=[inp], help="singular points with local invariants")
    p = sub.add_parser("isotropy", parents=[inp], help="isotropy dimension and generator checks")
    p.add_argument("--generator", action="append", metavar="[l1:l2:l3]", help="projective map to check")
    p = sub.add_parser("degenerate", parents=[inp], help="limit of a one-parameter family")
    p.add_argument("--family", metavar="JSON", help='{"matrix": [[...]], "scale": "eps^k"} or @file')
    p.add_argument("--suite", choices=("F1", "F2"), help="adapted-coordinate family at --point")
    p.add_argument("--point", metavar="[a:b:c]")
    p = sub.add_parser("catalog-verify", parents=[common], help="check every catalog expectation")
    p.add_argument("--entry", metavar="NAME", help="restrict to one entry")
    p.add_argument("--workers", type=int, default=None, help="process pool size (default WEBFLAT_WORKERS)")
    p.add_argument("--accept-errata", action="store_true",
                   help="do not fail on published values with a verified correction")
    return ap


_HANDLERS = {
    "flatness": cmd_flatness,
    "curvature": cmd_curvature,
    "legendre": cmd_legendre,
    "inflection": cmd_inflection,
    "singular": cmd_singular,
    "isotropy": cmd_isotropy,
    "degenerate": cmd_degenerate,
}


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "catalog-verify":
            obj, code = cmd_catalog_verify(args)
        else:
            H = _read_input(args)
            obj, code = _HANDLERS[args.command](H, args)
    except ParseError as exc:
        print(json.dumps(exc.payload()), file=sys.stderr)
        return 2
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"webflat: error: {exc}", file=sys.stderr)
        return 2
    except WebflatError as exc:
        payload = json.dumps(exc.payload())
        print(payload, file=sys.stdout if args.json else sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"webflat: error: {exc}", file=sys.stderr)
        return 2
    _emit(obj, args, args.command)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
