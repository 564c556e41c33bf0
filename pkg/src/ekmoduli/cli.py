"""Command-line interface.

Exit codes: 0 success / positive verdict, 1 negative verdict, 2 usage or
domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .arith import DomainError, format_rat, rat
from .bundles import ek_sphere, normalize
from .classify import (
    enumerate_quotient_types,
    enumerate_types,
    is_diffeomorphic,
    is_diffeomorphic_any_orientation,
    separation_certificate,
)
from .genera import SERIES_NAMES, evaluate_genus, multiplicative_sequence, parse_monomial
from .quotients import QuotientId, count_distinct, ek_quotient
from .report import build_report, render_report

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


def _decimal(r: Fraction, digits: int = 12) -> str:
    return "≈" + f"{float(r):.{digits}f}"


def _emit(obj: dict, fmt: str, header: list[str], rows: list[list], out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n")
    else:
        out.write("\t".join(header) + "\n")
        for row in rows:
            out.write("\t".join(_tsv_cell(c) for c in row) + "\n")


def _tsv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return str(value)


def cmd_mu(args, out) -> int:
    if args.quotient:
        pair = ek_quotient(QuotientId(args.n, args.k))
        obj = {"n": args.n, "k": args.k, **pair.to_dict()}
        if args.decimal:
            obj["pair_decimal"] = [_decimal(v.rep) for v in pair.values()]
        _emit(obj, args.format, ["n", "k", "mu_a", "mu_b"], [[args.n, args.k, str(pair.plus), str(pair.minus)]], out)
        return EXIT_OK
    b = normalize(args.n, args.k, args.l)
    value = ek_sphere(b)
    obj = {"n": b.n, "k": b.k, "l": b.l, "mu": str(value.value)}
    if args.decimal:
        obj["mu_decimal"] = _decimal(value.value.rep)
    _emit(obj, args.format, ["n", "k", "l", "mu"], [[b.n, b.k, b.l, str(value.value)]], out)
    return EXIT_OK


def cmd_classify(args, out) -> int:
    b1, b2 = normalize(args.n, args.k1, args.l), normalize(args.n, args.k2, args.l)
    if args.any_orientation:
        verdict = is_diffeomorphic_any_orientation(b1, b2)
        obj = {"left": b1.to_dict(), "right": b2.to_dict(), **verdict.to_dict()}
        rows = []
        for branch in ("preserving", "reversing"):
            d = getattr(verdict, branch).to_dict()
            rows.append([branch, d["diffeomorphic"], d["mu_left"], d["mu_right"], d["gamma_witness"], d["reason"]])
    else:
        verdict = is_diffeomorphic(b1, b2)
        obj = {"left": b1.to_dict(), "right": b2.to_dict(), **verdict.to_dict()}
        d = verdict.to_dict()
        rows = [["preserving", d["diffeomorphic"], d["mu_left"], d["mu_right"], d["gamma_witness"], d["reason"]]]
    _emit(obj, args.format, ["branch", "diffeomorphic", "mu_left", "mu_right", "gamma_witness", "reason"], rows, out)
    return EXIT_OK if verdict.diffeomorphic else EXIT_NEGATIVE


def cmd_enumerate(args, out) -> int:
    if args.quotient:
        obj = enumerate_quotient_types(args.n)
        _emit(obj, args.format, ["n", "count", "kind"], [[obj["n"], obj["count"], obj["kind"]]], out)
        return EXIT_OK
    if args.l < 1:
        raise DomainError("l must be >= 1")
    obj = enumerate_types(args.n, args.l)
    _emit(obj, args.format, ["n", "l", "count", "representatives"], [[obj["n"], obj["l"], obj["count"], obj["representatives"]]], out)
    return EXIT_OK


def cmd_count(args, out) -> int:
    obj = count_distinct(args.n, replica=args.replica)
    header = ["n", "sphere_values", "quotient_pairs", "replica_loop_bound", "replica_countermu", "replica_countermuquo"]
    _emit(obj, args.format, header, [[obj.get(h) for h in header]], out)
    return EXIT_OK


def cmd_certify(args, out) -> int:
    if args.l < 1:
        raise DomainError("l must be >= 1")
    cert = separation_certificate(args.n, args.l, args.k0, args.k1)
    obj = cert.to_dict()
    _emit(
        obj,
        args.format,
        ["n", "l", "k0", "k1", "delta", "separated"],
        [[cert.n, cert.l, cert.k0, cert.k1, obj["delta"], cert.separated]],
        out,
    )
    return EXIT_OK if cert.separated else EXIT_NEGATIVE


def _parse_eval(items: list[str]) -> dict:
    numbers = {}
    for item in items:
        if "=" not in item:
            raise DomainError(f"--eval expects MONOMIAL=VALUE, got {item!r}")
        mono, value = item.split("=", 1)
        numbers[parse_monomial(mono)] = rat(value)
    return numbers


def cmd_genus(args, out) -> int:
    name = args.name.upper()
    if name not in SERIES_NAMES:
        raise DomainError(f"unknown genus {args.name!r}; choose from {', '.join(n.lower() for n in SERIES_NAMES)}")
    if args.degree < 1:
        raise DomainError("degree must be >= 1")
    poly = multiplicative_sequence(name, args.degree)
    obj = {"name": name, "degree": args.degree, "polynomial": str(poly)}
    if args.eval:
        numbers = _parse_eval(args.eval)
        for part in numbers:
            if sum(part) != args.degree:
                raise DomainError(f"monomial of weight {sum(part)} does not match degree {args.degree}")
        obj["value"] = format_rat(evaluate_genus(poly, numbers))
    header = ["name", "degree", "polynomial"] + (["value"] if "value" in obj else [])
    _emit(obj, args.format, header, [[obj[h] for h in header]], out)
    return EXIT_OK


def cmd_report(args, out) -> int:
    report = build_report(timings=args.timings)
    if args.format == "json":
        text = render_report(report)
    else:
        lines = ["claim_id\tmatch\texpected\tcomputed"]
        for rec in report["claims"]:
            lines.append(
                "\t".join(
                    [rec["claim_id"], _tsv_cell(rec["match"]), json.dumps(rec["expected"]), json.dumps(rec["computed"])]
                )
            )
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK if report["all_match"] else EXIT_NEGATIVE


def _n_arg(p):
    p.add_argument("--n", type=int, required=True, choices=(1, 2), help="1: S^3 over S^4, 2: S^7 over S^8")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ekmoduli", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "tsv"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu", parents=[fmt], help="Eells-Kuiper invariant of M_{k,l} or of Q_k")
    _n_arg(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--quotient", action="store_true", help="invariant pair of the quotient by the involution (l = 1)")
    p.add_argument("--decimal", action="store_true", help="also print an approximate decimal value")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("classify", parents=[fmt], help="decide orientation-preserving diffeomorphism")
    _n_arg(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--any-orientation", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", parents=[fmt], help="count diffeomorphism types")
    _n_arg(p)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--quotient", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", parents=[fmt], help="distinct invariant values over one period")
    _n_arg(p)
    p.add_argument("--replica", action="store_true", help="also run the quadratic counting loop")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("certify", parents=[fmt], help="moduli separation certificate for k0, k1")
    _n_arg(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--k0", type=int, required=True)
    p.add_argument("--k1", type=int, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("genus", parents=[fmt], help="multiplicative sequence polynomial")
    p.add_argument("--name", required=True, help="one of: ahat, l, ahat_pi")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--eval", nargs="*", metavar="MONOMIAL=VALUE", help="e.g. p1^2=5760/7 p2=0")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("report", parents=[fmt], help="run every acceptance claim")
    p.add_argument("--out", help="write to FILE instead of stdout")
    p.add_argument("--timings", action="store_true", help="include wall time per claim (not byte-stable)")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args, out)
    except DomainError as exc:
        sys.stderr.write(f"ekmoduli: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
