"""Command line interface: ``toricq <group> <command> [options]``."""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from toricq.codes import code_from_polytope, dual_polytope_claim, format_code, predicted_params
from toricq.css import NestingError, build_family_code, format_stabilizers
from toricq.distance import DEFAULT_BUDGET, DEFAULT_SEED, min_weight
from toricq.field import field_new
from toricq.geometry import (
    ParameterError,
    ParameterWarning,
    box_polytope,
    divisor_coefficients,
    format_polytope,
    intersection_number,
    lattice_points,
    normal_fan,
    predicted_lattice_count,
    refine,
    refined_normal_fan,
    self_intersection,
)
from toricq.verify import default_instances, format_table, parse_config, run_suite, to_csv, to_json


def _fmt_distance(d) -> str:
    kind = "exact" if d.exact else "upper bound"
    return f"{d.value} ({kind}, {d.method}, {d.enumerated} codewords)"


def cmd_code_params(args) -> int:
    pred = predicted_params(args.q, args.r, args.b)
    print(f"polytope: {box_polytope(args.q, args.r, args.b)}")
    print(f"predicted: n={pred.n} k={pred.k} d={pred.d}")
    if args.measure:
        C = code_from_polytope(args.q, args.r, args.b)
        d = min_weight(C, args.budget, seed=args.seed)
        print(f"measured:  n={C.n} k={C.k} d={_fmt_distance(d)}")
    if args.export:
        Path(args.export).write_text(format_code(code_from_polytope(args.q, args.r, args.b)))
    return 0


def cmd_code_dual(args) -> int:
    claim = dual_polytope_claim(args.q, args.r, args.b)
    n = claim.exact_dual.n
    print(f"b = {args.b}, dual shift b' = {claim.b_dual}")
    print(f"claimed dual: box at b' with {len(claim.claimed)} lattice points")
    print(f"exact dual:   dimension {claim.exact_dual.k} = {n} - {n - claim.exact_dual.k}")
    print(f"agrees: {'yes' if claim.agrees else 'no'} (dimension gap {claim.gap})")
    return 0


def cmd_css_build(args) -> int:
    res = build_family_code(args.q, args.r, args.b1, args.b2, args.budget, args.seed)
    p = res.params
    print(f"predicted: [[{p.predicted_n},{p.predicted_k},{p.predicted_dz}/{p.predicted_dx}]]_{args.q}"
          f" pure={'yes' if p.purity_predicted else 'not claimed'}")
    print(f"nesting:   {res.nesting.describe()}")
    if res.code is None:
        print("no code built: the classical codes are not nested", file=sys.stderr)
        return 0
    c = res.code
    print(f"measured:  [[{c.n},{c.k},{c.d_z.value}/{c.d_x.value}]]_{args.q}")
    print(f"  d_z = {_fmt_distance(c.d_z)}")
    print(f"  d_x = {_fmt_distance(c.d_x)}")
    print(f"  pure_x={c.pure_x} pure_z={c.pure_z}")
    if args.export:
        Path(args.export).write_text(format_stabilizers(c, args.q, args.r, args.b1, args.b2))
    return 0


def cmd_verify_suite(args) -> int:
    if args.config:
        instances = parse_config(Path(args.config).read_text())
    else:
        instances = default_instances()
    report = run_suite(instances, args.budget, args.seed, args.workers)
    if args.csv:
        Path(args.csv).write_text(to_csv(report))
    if args.json:
        Path(args.json).write_text(to_json(report))
    if not args.quiet:
        sys.stdout.write(format_table(report))
    return 0


def cmd_lattice_info(args) -> int:
    q, r, b = args.q, args.r, args.b
    P = box_polytope(q, r, b)
    pts = lattice_points(P)
    print(format_polytope(P, q, r, b), end="")
    print(f"lattice points ({len(pts)}, closed form {predicted_lattice_count(q, r, b)}):")
    print("  " + " ".join(f"({x},{y})" for x, y in pts))
    fan0 = refined_normal_fan(q, r)
    P0 = box_polytope(q, r, 0)
    print("refined fan of the b=0 triangle:")
    for i, rho in enumerate(fan0.rays):
        cone = fan0.cones[i]
        print(f"  {rho.label}: n={tuple(rho.generator)}  cone({rho.label},{fan0.rays[cone.rays[1]].label}) l={tuple(cone.functional)}")
    coeffs = divisor_coefficients(fan0, P0)
    print("divisor of h0: " + " + ".join(f"{c} V({lab})" for lab, c in coeffs.items()))
    for rho in fan0.rays:
        print(f"  ({rho.label}) D.V = {intersection_number(fan0, P0, rho)}  V.V = {self_intersection(fan0, rho)}")
    if b > 0:
        fan = refine(P, normal_fan(P))
        print(f"refined fan of the b={b} polytope:")
        print("  rays: " + " ".join(str(tuple(rho.generator)) for rho in fan.rays))
        coeffs = divisor_coefficients(fan, P)
        print("  divisor: " + " + ".join(f"{c} V({lab})" for lab, c in coeffs.items()))
    return 0


def cmd_gf_table(args) -> int:
    F = field_new(args.p, args.m)
    print(f"GF({F.q}) p={F.p} m={F.m} modulus={','.join(map(str, F.modulus))} g={F.generator}")
    print("i  g^i")
    for i in range(F.q - 1):
        print(f"{i} {F.exp(i)}")
    if F.q <= 16:
        print("multiplication:")
        for a in range(F.q):
            print(" ".join(str(F.mul(a, b)) for b in range(F.q)))
    return 0


def _qrb(p: argparse.ArgumentParser, two: bool = False) -> None:
    p.add_argument("--q", type=int, required=True, help="field size")
    p.add_argument("--r", type=int, required=True, help="slope parameter, must divide q-2")
    if two:
        p.add_argument("--b1", type=int, required=True)
        p.add_argument("--b2", type=int, required=True)
    else:
        p.add_argument("--b", type=int, required=True)


def _budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max codewords enumerated")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricq", description=__doc__)
    groups = parser.add_subparsers(dest="group", required=True)

    code = groups.add_parser("code", help="toric codes C_b").add_subparsers(dest="command", required=True)
    p = code.add_parser("params", help="predicted (and optionally measured) parameters")
    _qrb(p)
    _budget(p)
    p.add_argument("--measure", action="store_true")
    p.add_argument("--export", metavar="PATH")
    p.set_defaults(func=cmd_code_params)
    p = code.add_parser("dual", help="claimed versus exact dual")
    _qrb(p)
    p.set_defaults(func=cmd_code_dual)

    css = groups.add_parser("css", help="asymmetric CSS codes").add_subparsers(dest="command", required=True)
    p = css.add_parser("build")
    _qrb(p, two=True)
    _budget(p)
    p.add_argument("--export", metavar="PATH")
    p.set_defaults(func=cmd_css_build)

    verify = groups.add_parser("verify", help="claim verification").add_subparsers(dest="command", required=True)
    p = verify.add_parser("suite")
    p.add_argument("--config", metavar="PATH", help="instance list: 'q r b' or 'q r b1 b2' per line")
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--quiet", action="store_true")
    _budget(p)
    p.set_defaults(func=cmd_verify_suite)

    lattice = groups.add_parser("lattice", help="polytope and fan data").add_subparsers(dest="command", required=True)
    p = lattice.add_parser("info")
    _qrb(p)
    p.set_defaults(func=cmd_lattice_info)

    gf = groups.add_parser("gf", help="finite field tables").add_subparsers(dest="command", required=True)
    p = gf.add_parser("table")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(func=cmd_gf_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ParameterWarning)
        try:
            rc = args.func(args)
        except (ParameterError, NestingError, ValueError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            rc = 2
    for msg in dict.fromkeys(str(w.message) for w in caught):
        print(f"warning: {msg}", file=sys.stderr)
    return rc
