"""Command line interface.

Usage::

    hyposign classify "S{1,3,1,1,1}" [--decide] [--json]
    hyposign construct "S{2,2}" --mode pair [--no-store]
    hyposign explore "S{1,2,1}" --budget 50 --seed 7 [--jobs 4]
    hyposign verify lemma1 --lmax 300

Exit codes: 0 success, 1 usage or parse error, 2 verification failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Sequence

from . import __version__
from .catalog import Catalog
from .construct import NotApplicable, SeedUnavailable, build_canonical, build_noncanonical_pair
from .realize import decide_canonicity, explore
from .signpattern import (
    canonical_order,
    classify_static,
    counts,
    cpp_of,
    is_type1,
    is_type2,
    orbit,
    parse,
)
from .suites import run_suite
from .witness import Witness, verify_witness

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2
COEFF_WIDTH = 40

log = logging.getLogger("hyposign")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=dflt(False), help="machine-readable output")
    p.add_argument("--catalog", default=dflt(None), metavar="PATH",
                   help="catalog file (default: $HYPOSIGN_CATALOG or ./catalog.jsonl)")
    p.add_argument("--seed", type=int, default=dflt(0))
    p.add_argument("--budget", type=int, default=dflt(200), help="random restarts per order word")
    p.add_argument("--jobs", type=int, default=dflt(1))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyposign", description="Sign patterns of hyperbolic polynomials.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="representations, types and static verdict")
    p.add_argument("sp")
    p.add_argument("--decide", action="store_true", help="also materialize witnesses / run refutation search")

    p = sub.add_parser("construct", parents=[common], help="build verified witnesses")
    p.add_argument("sp")
    p.add_argument("--mode", choices=["canonical", "pair"], default="canonical")
    p.add_argument("--no-store", action="store_true")

    p = sub.add_parser("explore", parents=[common], help="try every order of moduli")
    p.add_argument("sp")
    p.add_argument("--no-store", action="store_true")
    p.add_argument("--search-only", action="store_true", help="skip the two-sign-change deformation route")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=["lemma1", "theorem3", "involutions", "canonical-builder"])
    p.add_argument("--lmax", type=int, default=300)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--delta", type=int, default=7)
    p.add_argument("--tau1", type=int, default=0)
    p.add_argument("--tau2", type=int, default=0)
    p.add_argument("--side", choices=["left", "right", "none"], default=None)
    p.add_argument("--maxlen", type=int, default=12)
    p.add_argument("--maxdeg", type=int, default=8)
    return parser


def _emit(args, payload: dict[str, Any], lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _short(text: str) -> str:
    return text if len(text) <= COEFF_WIDTH else text[: COEFF_WIDTH - 3] + "..."


def _witness_lines(w: Witness) -> list[str]:
    lines = [f"  pattern {w.pattern}  word {w.word}  method {w.meta.get('method', '?')}"]
    lines.append("  roots:  " + ", ".join(_short(str(r)) for r in w.roots))
    coeffs = [_short(str(c)) for c in reversed(w.poly.coeffs)]
    lines.append("  coeffs (x^d .. x^0): " + ", ".join(coeffs))
    return lines


def _sp(text: str):
    try:
        return parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _catalog(args) -> Catalog:
    return Catalog(args.catalog)


def cmd_classify(args) -> int:
    sp = _sp(args.sp)
    c, p = counts(sp)
    verdict = classify_static(sp)
    payload = {
        "first": sp.render("first"),
        "second": sp.render("second"),
        "third": sp.render("third"),
        "degree": sp.degree,
        "cpp": cpp_of(sp).word,
        "canonical_order": canonical_order(sp).letters,
        "c": c,
        "p": p,
        "type1": is_type1(sp),
        "type2": is_type2(sp),
        "orbit": sorted(o.render("first") for o in orbit(sp)),
        "verdict": {"status": verdict.status.value, "justification": verdict.justification},
    }
    lines = [
        f"pattern          {payload['first']}",
        f"second / third   {payload['second']}  {payload['third']}",
        f"CPP              {payload['cpp']}",
        f"canonical order  {payload['canonical_order']}",
        f"(c, p)           ({c}, {p})",
        f"type1 / type2    {payload['type1']} / {payload['type2']}",
        f"orbit            {', '.join(payload['orbit'])}",
        f"static verdict   {verdict.status.value} ({verdict.justification})",
    ]
    if args.decide:
        decided = decide_canonicity(sp, budget=args.budget, seed=args.seed)
        payload["decision"] = {
            "status": decided.status.value,
            "justification": decided.justification,
            "witnesses": [w.to_json() for w in decided.witnesses],
            "budget": decided.budget,
        }
        lines.append(f"decision         {decided.status.value} ({decided.justification})")
        for w in decided.witnesses:
            lines.extend(_witness_lines(w))
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_construct(args) -> int:
    sp = _sp(args.sp)
    catalog = None if args.no_store else _catalog(args)
    try:
        if args.mode == "canonical":
            witnesses = [build_canonical(sp)]
        else:
            witnesses = list(build_noncanonical_pair(sp, budget=args.budget, seed=args.seed, catalog=catalog))
    except (NotApplicable, SeedUnavailable) as exc:
        raise UsageError(str(exc)) from None
    for w in witnesses:
        rep = verify_witness(w)
        if not rep.ok or w.pattern != sp:
            print(f"internal error: witness failed verification: {rep.violations}", file=sys.stderr)
            return EXIT_VERIFY
    if catalog is not None:
        for w in witnesses:
            catalog.put(w)
    lines = [f"{sp.render('second')}: {len(witnesses)} verified witness(es)"]
    for w in witnesses:
        lines.extend(_witness_lines(w))
    _emit(args, {"sp": sp.render("first"), "mode": args.mode, "witnesses": [w.to_json() for w in witnesses]}, lines)
    return EXIT_OK


def cmd_explore(args) -> int:
    sp = _sp(args.sp)
    report = explore(sp, budget=args.budget, seed=args.seed, jobs=args.jobs,
                     use_constructions=not args.search_only)
    if not args.no_store:
        catalog = _catalog(args)
        for w in report.found.values():
            catalog.put(w)
    total = len(report.attempted)
    lines = [f"{sp.render('second')}: {len(report.found)}/{total} order words found "
             f"(budget {args.budget}, seed {args.seed})"]
    canon = canonical_order(sp)
    for a in report.attempted:
        mark = "*" if a.word == canon else " "
        lines.append(f" {mark} {a.word.letters}  {a.outcome:<12} {a.method:<15} restarts={a.restarts_used}")
    _emit(args, report.to_json(), lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    kwargs: dict[str, Any]
    if args.suite == "lemma1":
        if not 2 <= args.lmax <= 2000:
            raise UsageError("--lmax must be in [2, 2000]")
        kwargs = {"lmax": args.lmax}
    elif args.suite == "theorem3":
        kwargs = {"r": args.r, "delta": args.delta, "tau1": args.tau1, "tau2": args.tau2, "side": args.side}
    elif args.suite == "involutions":
        if not 2 <= args.maxlen <= 16:
            raise UsageError("--maxlen must be in [2, 16]")
        kwargs = {"maxlen": args.maxlen}
    else:
        if not 1 <= args.maxdeg <= 12:
            raise UsageError("--maxdeg must be in [1, 12]")
        kwargs = {"maxdeg": args.maxdeg}
    try:
        checks = run_suite(args.suite, **kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    passed = sum(c.ok for c in checks)
    ok = passed == len(checks)
    lines = [f"{args.suite}: {passed}/{len(checks)} checks passed"]
    lines += [f"  FAIL {c.check}: {c.detail}" for c in checks if not c.ok]
    _emit(args, {"suite": args.suite, "params": kwargs, "passed": passed, "total": len(checks),
                 "ok": ok, "checks": [c.to_json() for c in checks]}, lines)
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {"classify": cmd_classify, "construct": cmd_construct, "explore": cmd_explore, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"hyposign: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
