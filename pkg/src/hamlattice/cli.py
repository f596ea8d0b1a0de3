"""Command line interface: ``hamlattice <command> [options]``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or resource error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .lattice import ParseError, format_class, format_shorthand, parse_class


class UsageError(Exception):
    pass


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        print(text)


def _write_svg(args, svg: str) -> None:
    if args.svg:
        Path(args.svg).write_text(svg)


def _report_out(args, rep) -> int:
    if args.json:
        sys.stdout.write(rep.dumps())
    else:
        print(rep.text())
    return rep.exit_code()


# -- commands --------------------------------------------------------------------

def cmd_verify_all(args) -> int:
    from . import golden
    from .report import SUITES, verify_all

    if args.bless:
        for p in golden.bless():
            print(f"wrote {p}", file=sys.stderr)
    if args.suite:
        if args.suite not in SUITES:
            raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}")
        rep = SUITES[args.suite]()
    else:
        rep = verify_all()
    return _report_out(args, rep)


def cmd_enumerate_exceptional(args) -> int:
    from .weyl import enumerate_exceptional, exceptional_box_bounds

    box = exceptional_box_bounds(args.k) if args.rigorous else None
    cls = enumerate_exceptional(args.k, box)
    data = {"k": args.k, "count": len(cls), "classes": [format_shorthand(c) for c in cls]}
    _emit(args, data, "\n".join(format_class(c) for c in cls) + f"\n{len(cls)} classes")
    return 0


def _infer_k(*texts: str, given: int | None) -> int:
    if given:
        return given
    k = 1
    for t in texts:
        c = parse_class(t)
        k = max(k, c.k)
    return k


def cmd_find_word(args) -> int:
    from .weyl import find_word, format_word

    k = _infer_k(args.source, args.target, given=args.k)
    a, b = parse_class(args.source, k), parse_class(args.target, k)
    depth = args.max if args.max is not None else args.max_depth
    w = find_word(k, a, b, depth)
    data = {"k": k, "from": format_class(a), "to": format_class(b), "max_len": depth,
            "word": None if w is None else [str(g) for g in w]}
    _emit(args, data, "no word found" if w is None else format_word(w))
    return 0 if w is not None else 1


def cmd_verify_dictionary(args) -> int:
    from .weyl import DICTIONARIES, verify_dictionary

    if args.name not in DICTIONARIES:
        raise UsageError(f"unknown dictionary {args.name!r}; choose from {', '.join(sorted(DICTIONARIES))}")
    r = verify_dictionary(args.name)
    lines = [f"{r.name} on X_{r.k}: valid={r.valid} canonical={r.preserves_canonical}",
             f"epsilon -> {format_class(r.epsilon_image)} (anti-fixed: {r.anti_fixes_epsilon})",
             f"H0 preserved: {r.h0_preserved}"] + [f"flag: {f}" for f in r.flags]
    _emit(args, r.to_json(), "\n".join(lines))
    return 0 if r.valid else 1


def cmd_resolve_polytope(args) -> int:
    from .toric import (Polytope2, delta_lambda, fan_json, hj_resolve, to_svg)

    if args.vertices:
        pts = []
        for chunk in args.vertices.split(";"):
            x, y = chunk.split(",")
            pts.append((Fraction(x), Fraction(y)))
        poly = Polytope2(tuple(pts))
    else:
        poly = delta_lambda(args.l, args.lam)
    fan = hj_resolve(poly)
    start = (0, 1) if (0, 1) in fan.rays else fan.rays[0]
    data = fan_json(poly, fan, fan.clockwise_from(start))
    data["orders"] = [o for _, o in poly.vertex_orders()]
    _write_svg(args, to_svg(poly, fan))
    text = "\n".join(f"{tuple(u)}  {s}" for u, s in zip(data["conormals"], data["self_intersections"]))
    _emit(args, data, text)
    return 0


def cmd_reduced_class(args) -> int:
    from .reduced import euler_class, omega_class

    om = omega_class(args.l)
    data = {"omega": om.to_json(args.kappa), "euler": euler_class(args.l).to_json()}
    v1, v2 = om.at(args.kappa)
    _emit(args, data, f"[omega] at kappa={args.kappa}: D1 -> {v1}, D2 -> {v2}")
    return 0


def cmd_min_area(args) -> int:
    from .reduced import min_area_exceptional

    m = min_area_exceptional(args.k, args.lam, args.eps)
    text = f"minimum {m.minimum} on " + ", ".join(format_class(c) for c in m.argmin)
    _emit(args, m.to_json(), text)
    return 0


def cmd_snf(args) -> int:
    from .snf import cokernel, parse_matrix, smith_normal_form

    a = parse_matrix(args.matrix)
    d, u, v = smith_normal_form(a)
    cok = cokernel(a)
    data = {"D": d, "U": u, "V": v, "invariant_factors": list(cok.invariant_factors),
            "cokernel": cok.describe()}
    _emit(args, data, f"invariant factors {list(cok.invariant_factors)}; cokernel {cok.describe()}")
    return 0


def cmd_decompose(args) -> int:
    from .decompose import PROFILES, enumerate_decompositions, profile

    if args.profile not in PROFILES:
        raise UsageError(f"unknown profile {args.profile!r}; choose from {', '.join(PROFILES)}")
    prof = profile(args.profile)
    target = parse_class(args.target, prof.k)
    res = enumerate_decompositions(target, prof, args.max_parts, args.budget)
    data = {"target": format_shorthand(target), "profile": prof.to_json(), "count": len(res),
            "decompositions": [d.to_json() for d in res]}
    _emit(args, data, "\n".join(str(d) for d in res) + f"\n{len(res)} decompositions")
    return 0


def cmd_cubic(args) -> int:
    from .cubic import ProjPoint, is_flex, is_node, is_singular, mukai_checklist, on_curve, parse_poly, tangent_line

    if args.action == "verify":
        if args.preset != "mukai":
            raise UsageError("the only preset is 'mukai'")
        checks = mukai_checklist()
        data = {"preset": "mukai", "checks": [c.to_json() for c in checks]}
        _emit(args, data, "\n".join(f"{'PASS' if c.passed else 'FAIL'} {c.id}" for c in checks))
        return 0 if all(c.passed for c in checks) else 1
    if not args.poly or not args.at:
        raise UsageError("cubic point needs --poly and --at")
    f = parse_poly(args.poly)
    p = ProjPoint([Fraction(x) for x in args.at.split(",")])
    info = {"point": str(p), "on_curve": on_curve(f, p)}
    if info["on_curve"]:
        info["singular"] = is_singular(f, p)
        if info["singular"]:
            info["node"] = is_node(f, p)
        else:
            info["tangent"] = str(tangent_line(f, p))
            if f.degree == 3:
                info["flex"] = is_flex(f, p)
    _emit(args, info, "\n".join(f"{k}: {v}" for k, v in info.items()))
    return 0


def cmd_fixed_points(args) -> int:
    from .hamiltonian import isotropy_spheres, tolman_data

    t = tolman_data(args.l)
    data = t.to_json()
    data["isotropy_spheres"] = [[a, b, m] for (a, b), m in isotropy_spheres(args.l)]
    lines = [f"{p.name}: level {p.level}, index {p.index}, weights {p.weights}" for p in t.points]
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_slice(args) -> int:
    from .hamiltonian import slice_at
    from .toric import to_svg

    s = slice_at(args.l, args.x3)
    _write_svg(args, to_svg(s.polygon))
    text = (f"{len(s.polygon)} facets at x3={s.x3} (kappa={s.kappa}); D1 length {s.d1_length()}"
            + (f", cut length {s.d2_length()}" if s.cut else ""))
    _emit(args, s.to_json(), text)
    return 0


def cmd_report(args) -> int:
    from .hamiltonian import tolman_data
    from .report import hamiltonian_suite

    rep = hamiltonian_suite(args.l)
    if args.json:
        data = rep.to_json()
        data["fixed_points"] = tolman_data(args.l).to_json()
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        print(rep.text())
    return rep.exit_code()


# -- parser ----------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    # SUPPRESS keeps a subcommand from overwriting a flag given before it
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    p.add_argument("--svg", metavar="PATH", default=argparse.SUPPRESS, help="write an SVG picture")
    p.add_argument("--max-depth", type=int, metavar="N", default=argparse.SUPPRESS,
                   help="default word length for searches")
    p.add_argument("--bless", action="store_true", default=argparse.SUPPRESS,
                   help="regenerate golden files (verify-all)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hamlattice", description="Exact lattice, toric and polynomial checks.")
    _add_common(ap)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        _add_common(p)
        p.set_defaults(func=fn)
        return p

    p = add("verify-all", cmd_verify_all, "run every verification suite")
    p.add_argument("--suite", help="run a single suite")

    p = add("enumerate-exceptional", cmd_enumerate_exceptional, "list exceptional classes on X_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rigorous", action="store_true", help="scan the provable bounding box")

    p = add("find-word", cmd_find_word, "shortest Cremona/permutation word between two classes")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--max", type=int)

    p = add("verify-dictionary", cmd_verify_dictionary, "check a basis-change dictionary")
    p.add_argument("--name", required=True)

    p = add("resolve-polytope", cmd_resolve_polytope, "resolve the fan of a polygon")
    p.add_argument("--l", type=int, default=4)
    p.add_argument("--lambda", dest="lam", type=_frac, default=Fraction(1, 2))
    p.add_argument("--vertices", help='counterclockwise "x,y;x,y;..."')

    p = add("reduced-class", cmd_reduced_class, "[omega_kappa] on the reduced space")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--kappa", type=_frac, required=True)

    p = add("min-area", cmd_min_area, "minimal tau area over exceptional classes")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_frac, required=True)
    p.add_argument("--eps", type=_frac, required=True)

    p = add("snf", cmd_snf, "Smith normal form of an integer matrix")
    p.add_argument("--matrix", required=True, help='rows separated by ";", e.g. "6,0;0,4"')

    p = add("decompose", cmd_decompose, "admissible decompositions of a class on X_8")
    p.add_argument("--target", required=True)
    p.add_argument("--profile", default="step2")
    p.add_argument("--max-parts", type=int)
    p.add_argument("--budget", type=int, default=5_000_000)

    p = add("cubic", cmd_cubic, "plane curve checks")
    p.add_argument("action", choices=("verify", "point"))
    p.add_argument("--preset", default="mukai")
    p.add_argument("--poly")
    p.add_argument("--at", help='"z1,z2,z3"')

    p = add("fixed-points", cmd_fixed_points, "fixed point data for the circle action")
    p.add_argument("--l", type=int, required=True)

    p = add("slice", cmd_slice, "slice of the moment polytope at height x3")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--x3", type=_frac, required=True)

    p = add("report", cmd_report, "fixed point, slice and reduced-space checks for one l")
    p.add_argument("--l", type=int, required=True)
    return ap


def main(argv=None) -> int:
    from .decompose import BudgetExceeded

    ap = build_parser()
    args = ap.parse_args(argv)
    for key, value in (("json", False), ("svg", None), ("max_depth", 4), ("bless", False)):
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
