"""Command-line interface.

Exit status: 0 when the computation finished (whatever the mathematical
answer), 1 when a premise or certificate failed, 2 on bad input.
"""

import argparse
import json
import sys
from pathlib import Path

from . import blowup, certify, curves, lattice, sections
from .errors import CertificateError, InputError, NotAWps, PremiseFailed
from .fields import FieldSpec, primes_upto
from .laurent import LaurentPoly
from .linalg import smith_normal_form
from .rational import as_fraction, fmt


def _maybe_file(text: str) -> str:
    if text.startswith("@"):
        try:
            return Path(text[1:]).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {text[1:]}: {exc}") from exc
    return text


def _triangle(text):
    return lattice.RationalTriangle.parse(_maybe_file(text))


def _poly(text, field):
    return LaurentPoly.parse(_maybe_file(text), field)


def _point(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"expected 'x,y', got {text!r}")
    return lattice.rpoint(*parts)


def _rational_list(text):
    return [as_fraction(t) for t in text.split(",") if t.strip()]


def _primes(args):
    if args.primes:
        return [int(t) for t in args.primes.split(",") if t.strip()]
    return primes_upto(args.max_prime)


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _params(args):
    if args.alpha is None and args.beta is None:
        return certify.example_params(args.m)
    if args.alpha is None or args.beta is None:
        raise InputError("give both --alpha and --beta (or neither for the example family)")
    return certify.Main2Params(args.m, as_fraction(args.alpha), as_fraction(args.beta))


def cmd_xi(args):
    poly = curves.xi(args.m, FieldSpec.parse(args.field))
    _emit(args, poly.to_dict(), poly.to_text())
    return 0


def cmd_triangle_info(args):
    tri = _triangle(args.triangle)
    rays = lattice.normal_fan_rays(tri, outward=args.outward)
    payload = {"triangle": tri.to_dict(), "area": fmt(lattice.area(tri)),
               "lattice_points": [list(p) for p in lattice.lattice_points(tri)],
               "rays": [list(r) for r in rays]}
    try:
        payload["weights"] = list(lattice.wps_weights(rays))
    except NotAWps as exc:
        payload["weights"] = None
        payload["relation"] = list(exc.weights)
    lines = [f"vertices: {tri.to_text()}", f"area: {payload['area']}",
             f"lattice points: {len(payload['lattice_points'])}",
             f"rays: {payload['rays']}",
             f"weights: {payload['weights'] if payload['weights'] else 'not a weighted projective plane'}"]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_weights(args):
    if args.rays:
        rays = [tuple(int(c) for c in r.split(",")) for r in args.rays.split()]
    elif args.triangle:
        rays = lattice.normal_fan_rays(_triangle(args.triangle))
    else:
        raise InputError("give --triangle or --rays")
    try:
        w = lattice.wps_weights(rays)
    except NotAWps as exc:
        _emit(args, {"weights": None, "relation": list(exc.weights)},
              f"not a weighted projective plane (relation {exc.weights})")
        return 1
    _emit(args, {"weights": list(w)}, "P({}, {}, {})".format(*w))
    return 0


def cmd_class(args):
    field = FieldSpec.parse(args.field)
    c = blowup.class_of(_poly(args.poly, field), _triangle(args.triangle))
    _emit(args, c.to_dict(), f"{fmt(c.h)} * pi^*H - {fmt(c.e)} * E")
    return 0


def cmd_intersect(args):
    c1 = blowup.NumericClass.parse(args.c1)
    c2 = blowup.NumericClass.parse(args.c2)
    value = blowup.intersect(c1, c2, _triangle(args.triangle))
    _emit(args, {"intersection": fmt(value)}, fmt(value))
    return 0


def cmd_degree_interval(args):
    field = FieldSpec.parse(args.field)
    d = blowup.degree_interval(_poly(args.poly, field), _triangle(args.triangle))
    _emit(args, d.to_dict(), f"[{fmt(d.a)}, {fmt(d.b)}]")
    return 0


def cmd_negativity(args):
    field = FieldSpec.parse(args.field)
    rep = blowup.is_negative_curve(_poly(args.poly, field), _triangle(args.triangle))
    _emit(args, rep.to_dict(),
          f"C.C = {fmt(rep.self_intersection)} ({'negative' if rep.negative else 'not negative'})")
    return 0


def cmd_sections(args):
    field = FieldSpec.parse(args.field)
    problem = sections.SectionProblem(_triangle(args.triangle), args.order, _point(args.vertex))
    M = sections.constraint_matrix(problem)
    if args.csv:
        Path(args.csv).write_text(M.to_csv())
    snf = smith_normal_form(M)
    basis = sections.section_space(problem, field)
    bad = sorted({q for d in snf.divisors if d for q in primes_upto(min(d, 10 ** 4)) if d % q == 0})
    payload = {"points": [list(p) for p in problem.points()], "rows": M.nrows,
               "snf": snf.to_dict(), "field": str(field), "dimension": len(basis),
               "basis": [b.to_dict() for b in basis], "bad_primes_below_1e4": bad}
    text = [f"lattice points: {len(problem.points())}, conditions: {M.nrows}",
            f"elementary divisors: {list(snf.divisors)}",
            f"dimension over {field}: {len(basis)}"]
    text += [f"  {b.to_text()}" for b in basis]
    _emit(args, payload, "\n".join(text))
    return 0


def cmd_hc(args):
    field = FieldSpec.parse(args.field)
    if args.triangle:
        if args.n is None or args.vertex is None:
            raise InputError("--triangle needs --n and --vertex")
        tri, n, vertex = _triangle(args.triangle), args.n, _point(args.vertex)
    else:
        if args.m is None:
            raise InputError("give --triangle/--n/--vertex or --m [--alpha --beta]")
        params = _params(args)
        tri = lattice.parallel_triangle(params.triangle(), 0, params.m)
        n, vertex = params.m + 1, (0, 0)
    report = sections.hc_member(args.l, tri, n, vertex, field)
    text = f"l = {args.l}: member = {str(report.member).lower()} ({report.reason.value})"
    if report.kernel_dim is not None:
        text += f", section space dimension {report.kernel_dim}"
    if report.witness is not None:
        text += f"\nwitness: {report.witness.to_text()}"
    _emit(args, report.to_dict(), text)
    return 0


def cmd_zeta_p(args):
    params = _params(args)
    try:
        res = sections.build_zeta_p(params.m, args.p, params.alpha, params.beta)
    except sections.NoValidJ as exc:
        _emit(args, {"m": params.m, "p": args.p, "error": "NoValidJ", "detail": str(exc)},
              f"NoValidJ: {exc}")
        return 1
    payload = res.to_dict(include_poly=args.show_poly)
    text = (f"p = {res.p} = {params.m + 1}*{res.k} + {res.l}, j = {res.j}, "
            f"{len(res.poly)} terms, degree [{fmt(res.degree.a)}, {fmt(res.degree.b)}], "
            f"multiplicity {res.multiplicity}, constant term {res.constant_term}")
    _emit(args, payload, text)
    return 0


def _print_cert(args, cert):
    if args.json:
        print(json.dumps(cert.to_dict(), indent=2))
        return
    print(f"verdict: {cert.verdict}")
    for p in cert.premises:
        mark = "PASS" if p.passed else "FAIL"
        print(f"  [{mark}] {p.premise}: expected {p.expected}, actual {p.actual}")
    for c in cert.caveats:
        print(f"  caveat: {c}")


def cmd_certify_main1(args):
    try:
        cert = certify.certify_main1(args.m, as_fraction(args.alpha), as_fraction(args.beta))
    except PremiseFailed as exc:
        _print_cert(args, exc.certificate)
        return 1
    _print_cert(args, cert)
    return 0


def cmd_certify_main2(args):
    params = _params(args)
    try:
        cert = certify.certify_main2(params, _primes(args), args.l_check)
    except PremiseFailed as exc:
        _print_cert(args, exc.certificate)
        return 1
    _print_cert(args, cert)
    return 0


def cmd_example_family(args):
    fam = certify.example_family(args.m)
    _emit(args, fam.to_dict(),
          f"alpha = {fmt(fam.alpha)}, beta = {fmt(fam.beta)}\nrays: {fam.rays}\n"
          "P({}, {}, {})".format(*fam.weights))
    return 0


def cmd_scan(args):
    rows = certify.scan(args.m, _rational_list(args.alpha_grid), _rational_list(args.beta_grid),
                        shape=args.shape, primes=_primes(args), l_check=args.l_check,
                        workers=args.workers)
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        sys.stdout.write(certify.scan_tsv(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdsblowup",
        description="Negative curves and Mori dream space certificates for blowups "
                    "of toric surfaces of rational triangles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    def add_field(p):
        p.add_argument("--field", default="Q", help="'Q' or 'Fp:<prime>'")

    def add_params(p, m_required=True):
        p.add_argument("--m", type=int, required=m_required)
        p.add_argument("--alpha", help="rational, e.g. 1/9 (default: example family)")
        p.add_argument("--beta", help="rational, e.g. 5/14 (default: example family)")

    def add_primes(p):
        p.add_argument("--primes", help="comma-separated primes to test")
        p.add_argument("--max-prime", type=int, default=97,
                       help="test all primes up to this bound (default 97)")
        p.add_argument("--l-check", type=int, default=None,
                       help="check l = 1..L for HC membership over Q (default 2m)")

    p = add("xi", cmd_xi, "print the polynomial xi_m")
    p.add_argument("--m", type=int, required=True)
    add_field(p)

    tri = sub.add_parser("triangle", help="triangle utilities")
    tri_sub = tri.add_subparsers(dest="triangle_command", required=True)
    p = tri_sub.add_parser("info", help="area, lattice points, fan rays, weights")
    p.add_argument("--json", action="store_true")
    p.add_argument("--triangle", required=True, help="'x,y x,y x,y', JSON, or @file")
    p.add_argument("--outward", action="store_true", help="report outward normals")
    p.set_defaults(func=cmd_triangle_info)

    p = add("weights", cmd_weights, "weights of the weighted projective plane")
    p.add_argument("--triangle")
    p.add_argument("--rays", help="'a,b c,d e,f'")

    for name, func, help_text in (("class", cmd_class, "numerical class of V(f)"),
                                  ("degree-interval", cmd_degree_interval,
                                   "degree interval of f relative to a triangle"),
                                  ("negativity", cmd_negativity, "self-intersection of V(f)")):
        p = add(name, func, help_text)
        p.add_argument("--poly", required=True, help="polynomial text, JSON, or @file")
        p.add_argument("--triangle", required=True)
        add_field(p)

    p = add("intersect", cmd_intersect, "intersection number of two classes")
    p.add_argument("--c1", required=True, help="'h,e' for h*pi^*H - e*E")
    p.add_argument("--c2", required=True)
    p.add_argument("--triangle", required=True)

    p = add("sections", cmd_sections, "section space of a triangle with a vanishing order")
    p.add_argument("--triangle", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--vertex", required=True, help="'x,y', a vertex of the triangle")
    p.add_argument("--csv", help="write the constraint matrix to this CSV file")
    add_field(p)

    p = add("hc", cmd_hc, "membership of l in the Huneke-condition semigroup")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--triangle", help="triangle of D")
    p.add_argument("--n", type=int, help="multiplicity of D at t0")
    p.add_argument("--vertex", help="vertex of the triangle of D")
    add_params(p, m_required=False)
    add_field(p)

    p = add("zeta-p", cmd_zeta_p, "build and verify zeta_p over F_p")
    add_params(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--show-poly", action="store_true", help="include zeta_p in JSON output")

    p = add("certify-main1", cmd_certify_main1, "MDS certificate, triangle (0,0),(m-1+a,-b),(m,m+1)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)

    p = add("certify-main2", cmd_certify_main2,
            "non-MDS certificate, triangle (-a,0),(m-1+b,0),(m,m+1)")
    add_params(p)
    add_primes(p)

    p = add("example-family", cmd_example_family, "explicit non-MDS family at m")
    p.add_argument("--m", type=int, required=True)

    p = add("scan", cmd_scan, "certify every cell of a rational (alpha, beta) grid")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha-grid", required=True, help="comma-separated rationals")
    p.add_argument("--beta-grid", required=True, help="comma-separated rationals")
    p.add_argument("--shape", choices=("main1", "main2"), default="main2")
    p.add_argument("--workers", type=int, default=1)
    add_primes(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CertificateError as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return 1


run = main

if __name__ == "__main__":
    sys.exit(main())
