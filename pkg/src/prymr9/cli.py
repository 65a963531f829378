"""Command-line entry point.

Exit status: 0 everything verified, 1 a verification failed, 2 bad invocation.
``PRYMR9_OUTPUT_DIR``, when set, receives a copy of every JSON document printed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import certifier, divisor, pencils, taut
from .errors import InputError
from .lp import ExactLP
from .rational import Q, fmt
from .verify import MODULES, cmd_verify_all, select

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
OUTPUT_ENV = "PRYMR9_OUTPUT_DIR"


def _perturb(values: list[str] | None) -> dict:
    out = {}
    for item in values or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--perturb expects key=value, got {item!r}")
        key = key.strip()
        if key.startswith("R."):
            key = key[2:]
        if key not in ("lambda", "delta0p", "delta0pp", "delta0ram"):
            raise InputError(f"unknown perturbation target {item!r}")
        out[key] = Q(value.strip())
    return out


def _emit_json(doc, name: str, out):
    text = json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=False)
    print(text, file=out)
    target = os.environ.get(OUTPUT_ENV)
    if target:
        path = Path(target)
        path.mkdir(parents=True, exist_ok=True)
        (path / f"{name}.json").write_text(text + "\n", encoding="utf-8")


def run_verify(args, out) -> int:
    if args.genus != 9:
        raise InputError("verification is only defined for genus 9")
    if args.only and not select(args.only):
        raise InputError(f"--only {args.only!r} matches no module or claim")
    report = cmd_verify_all(args.only, _perturb(args.perturb), args.parallel)
    timing = not args.no_timing
    if args.json:
        _emit_json(report.to_json(timing), "verify", out)
    else:
        print(report.to_text(timing), file=out)
    return EXIT_OK if report.overall == "pass" else EXIT_FAIL


def run_class(args, out) -> int:
    if args.name == "canonical":
        obj = divisor.canonical_class(args.genus)
    elif args.name == "d9":
        if args.genus != 9:
            raise InputError("the Brill-Noether class is only defined for genus 9")
        obj = divisor.d9_class(Q(args.alpha))
    else:
        obj = taut.degeneracy_class()
    if args.json:
        doc = obj.to_json() if isinstance(obj, divisor.DivisorClass) else {"base_class": obj.to_json()}
        _emit_json(doc, f"class_{args.name}", out)
    else:
        print(obj, file=out)
    return EXIT_OK


def run_certify(args, out) -> int:
    perturb = _perturb(args.perturb)
    report = certifier.certify_not_pseudoeffective(perturb)
    if args.emit_lp:
        lp = certifier.build_constraints(9, certifier._perturbed_R(perturb))
        Path(args.emit_lp).write_text(lp.to_text(), encoding="utf-8")
    if args.json:
        _emit_json(report.to_json(), "certify", out)
    else:
        for step in report.steps:
            mark = "ok " if step["holds"] else "FAILED"
            print(f"  [{mark}] {step['statement']}: {step['value']}", file=out)
        print("axioms:", file=out)
        for name, text in report.axioms.items():
            print(f"  [{name}] {text}", file=out)
        bound = report.sweeping_bound
        print(
            f"sweeping bound a/b0p <= {fmt(bound['exact'])} "
            f"(rounded intermediate {fmt(bound['printed'])}; the argument needs <= {fmt(bound['needed'])})",
            file=out,
        )
        print(f"certificate digest: {report.certificate.digest()}", file=out)
        print(report.conclusion, file=out)
    return EXIT_OK if report.established else EXIT_FAIL


def run_curves(args, out) -> int:
    rows = pencils.curve_table(args.genus)
    header = ("name", "lambda", "delta0'", "delta0''", "delta0ram")
    if args.json:
        _emit_json([dict(zip(header, (r[0],) + tuple(fmt(x) for x in r[1:]))) for r in rows], "curves", out)
    else:
        print("\t".join(header), file=out)
        for r in rows:
            print("\t".join([r[0]] + [fmt(x) for x in r[1:]]), file=out)
    return EXIT_OK


def run_rules(args, out) -> int:
    print(taut.rules_to_json(), file=out)
    return EXIT_OK


def run_check_lp(args, out) -> int:
    """Solve an LP file and print its certificate."""
    from .lp import minimize, verify_certificate

    lp = ExactLP.from_text(Path(args.path).read_text(encoding="utf-8"))
    cert = minimize(lp)
    ok = verify_certificate(lp, cert)
    _emit_json({"certificate": cert.to_json(), "verified": bool(ok)}, "lp", out)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prymr9", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--genus", type=int, default=9)

    v = sub.add_parser("verify", parents=[common], help="run every check (default)")
    v.add_argument("--only", metavar="MODULE|CLAIM", help=f"restrict to one of {', '.join(MODULES)} or a claim id")
    v.add_argument("--perturb", action="append", metavar="KEY=VALUE", help="override a pairing of R, e.g. R.lambda=10")
    v.add_argument("--no-timing", action="store_true")
    v.add_argument("--parallel", action="store_true")
    v.set_defaults(func=run_verify)

    c = sub.add_parser("class", parents=[common], help="print a divisor class")
    c.add_argument("name", choices=("canonical", "d9", "degeneracy"))
    c.add_argument("--alpha", default="0", help="extra delta0'' multiple for d9, as p/q")
    c.set_defaults(func=run_class)

    k = sub.add_parser("certify", parents=[common], help="run the certificate chain")
    k.add_argument("--emit-lp", metavar="PATH")
    k.add_argument("--perturb", action="append", metavar="KEY=VALUE")
    k.set_defaults(func=run_certify)

    t = sub.add_parser("curves", parents=[common], help="intersection table of the test curves")
    t.set_defaults(func=run_curves)

    r = sub.add_parser("rules", help="dump the pushforward rule table")
    r.set_defaults(func=run_rules)

    s = sub.add_parser("solve", help="solve an LP file in the text format")
    s.add_argument("path")
    s.set_defaults(func=run_check_lp)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0].startswith("-") and argv[0] not in ("-h", "--help"):
        argv = ["verify"] + argv
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (InputError, ValueError, ZeroDivisionError) as exc:
        print(f"prymr9: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
