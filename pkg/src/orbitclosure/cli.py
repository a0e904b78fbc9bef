"""Command-line interface.

Exit status: 0 when a verdict was computed (negative verdicts included),
2 for BudgetExceeded or Inconclusive, 1 for usage and parse errors.
Reports follow the schema ``orbitclosure.report/1`` (see README).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import List, Optional

from . import catalog
from .degeneration import ZeroFamily, limit_term, proportionality
from .groebner import BudgetExceeded, ComputeBudget
from .invariants import singular_invariants, singular_locus, stabilizer_orbit_dimension, tangent_orbit_dimension
from .orbit import (
    ClosureCache,
    DimensionMismatch,
    EliminationPlan,
    Form,
    Outcome,
    PlanMismatch,
    Verdict,
    in_orbit,
    in_orbit_closure,
    sub_elim_sub,
)
from .ring import PolyRing, RingError, format_poly, xvars

SCHEMA = "orbitclosure.report/1"
EXIT_OK, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2
DEFAULT_CACHE = ".orbitclosure-cache"


class UsageError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _exit_for(verdict: Verdict) -> int:
    if verdict.outcome in (Outcome.BUDGET_EXCEEDED, Outcome.INCONCLUSIVE):
        return EXIT_UNDECIDED
    return EXIT_OK


def _budget(args) -> ComputeBudget:
    seconds = args.budget if args.budget and args.budget > 0 else None
    return ComputeBudget(max_pairs=args.max_pairs, max_total_degree=None, max_wall_seconds=seconds)


def _form(text: str, args, role: str) -> Form:
    """A catalog label or inline text in the declared variables (renamed to x1..xn)."""
    text = text.strip()
    if args.vars is None:
        try:
            return catalog.lookup(text).form
        except catalog.UnknownLabel:
            pass
    names = args.vars.split(",") if args.vars else None
    try:
        if names is None:
            raise UsageError("missing_vars", f"{role}: {text!r} is not a catalog label; pass --vars")
        names = [v.strip() for v in names if v.strip()]
        poly = PolyRing(names).parse(text)
        renamed = PolyRing(xvars(len(names)))
        form = Form(type(poly)(renamed, poly.coeffs))
    except (RingError, ValueError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError("parse_error", f"{role}: {exc}") from None
    if args.degree is not None and form.d != args.degree:
        raise UsageError("degree_mismatch", f"{role} has degree {form.d}, expected {args.degree}")
    return form


def _verdict_report(verdict: Verdict) -> dict:
    return {"verdicts": [verdict.to_json()]}


# ---------------------------------------------------------------- commands


def cmd_in_orbit(args) -> tuple:
    v, w = _form(args.source, args, "source"), _form(args.target, args, "target")
    verdict = in_orbit(v, w, args.mode, _budget(args))
    return _verdict_report(verdict), _exit_for(verdict)


def cmd_in_closure(args) -> tuple:
    v, w = _form(args.source, args, "source"), _form(args.target, args, "target")
    cache = ClosureCache(args.cache) if args.cache else None
    verdict = in_orbit_closure(v, w, _budget(args), cache)
    return _verdict_report(verdict), _exit_for(verdict)


def cmd_sub_elim_sub(args) -> tuple:
    v, w = _form(args.source, args, "source"), _form(args.target, args, "target")
    try:
        plan = EliminationPlan.load(args.plan)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError("bad_plan", f"cannot read plan: {exc}") from None
    verdict = sub_elim_sub(v, w, plan, _budget(args))
    return _verdict_report(verdict), _exit_for(verdict)


def cmd_verify_limit(args) -> tuple:
    path = args.fixture
    if not os.path.exists(path):
        packaged = os.path.join(catalog.DATA_DIR, path)
        path = packaged if os.path.exists(packaged) else os.path.join(catalog.DATA_DIR, "fixtures", path)
    try:
        fx = catalog.load_fixture(path)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError("bad_fixture", f"cannot read fixture: {exc}") from None
    v = _form(args.source, args, "source") if args.source else fx.source
    w = _form(args.target, args, "target") if args.target else fx.target
    order, lead = limit_term(fx.family, v)
    lam = proportionality(lead, w)
    result = {"fixture": fx.name, "verified": lam is not None, "order": order, "limit": format_poly(lead),
              "target": str(w)}
    return {"result": result}, EXIT_OK


def cmd_orbit_dim(args) -> tuple:
    f = _form(args.form, args, "form")
    if args.method == "tangent":
        dim = tangent_orbit_dimension(f)
    else:
        dim = stabilizer_orbit_dimension(f, _budget(args))
    return {"result": {"form": str(f), "orbit_dim": dim, "method": args.method}}, EXIT_OK


def cmd_singular(args) -> tuple:
    f = _form(args.form, args, "form")
    inv = singular_invariants(f, args.hilbert, _budget(args))
    result = {"form": str(f), "jacobian": singular_locus(f).text_lines()}
    result.update(inv.to_json())
    return {"result": result}, EXIT_OK


def cmd_reproduce(args) -> tuple:
    from .pipeline import reproduce_table

    if args.table != 2:
        raise UsageError("bad_table", "only the containment table (--table 2) can be reproduced")

    def log(msg):
        if not args.quiet:
            print(msg, file=sys.stderr)

    report = reproduce_table(_budget(args), include_hard=args.include_hard, jobs=args.jobs,
                             cache_dir=args.cache, log=log)
    body = report.to_json()
    if not args.quiet:
        print(report.matrix_text(), file=sys.stderr)
    complete = report.comparison.complete
    code = EXIT_OK if complete else (EXIT_USAGE if report.comparison.mismatches else EXIT_UNDECIDED)
    return {"result": body}, code


def cmd_cache(args) -> tuple:
    directory = args.cache or DEFAULT_CACHE
    cache = ClosureCache(directory)
    if args.action == "list":
        return {"result": {"directory": directory, "entries": cache.entries()}}, EXIT_OK
    if args.action == "purge":
        return {"result": {"directory": directory, "removed": cache.purge()}}, EXIT_OK
    if not args.key:
        raise UsageError("missing_key", "cache show needs a key")
    path = os.path.join(directory, args.key + ClosureCache.SUFFIX)
    if not os.path.exists(path):
        raise UsageError("unknown_key", f"no cache entry {args.key}")
    with open(path) as fh:
        return {"result": {"key": args.key, "text": fh.read()}}, EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", help="comma-separated variable names for inline forms")
    common.add_argument("--degree", type=int, help="required degree of inline forms")
    common.add_argument("--budget", type=float, default=300.0, help="wall-clock seconds per Groebner computation (0 = none)")
    common.add_argument("--max-pairs", type=int, default=None, help="critical-pair budget")
    common.add_argument("--cache", help="closure-ideal cache directory")
    common.add_argument("--json", dest="json_path", help="write the report to this file ('-' for stdout)")
    common.add_argument("--quiet", action="store_true", help="no progress output")

    p = argparse.ArgumentParser(prog="orbitclosure", description="Orbit and orbit-closure containment for forms")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("in-orbit", parents=[common], help="is the target in the orbit of the source?")
    s.add_argument("--source", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--mode", choices=["strict", "projective"], default="strict")
    s.set_defaults(func=cmd_in_orbit)

    s = sub.add_parser("in-closure", parents=[common], help="is the target in the orbit closure of the source?")
    s.add_argument("--source", required=True)
    s.add_argument("--target", required=True)
    s.set_defaults(func=cmd_in_closure)

    s = sub.add_parser("sub-elim-sub", parents=[common], help="one-sided closure certificate from a plan file")
    s.add_argument("--source", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--plan", required=True)
    s.set_defaults(func=cmd_sub_elim_sub)

    s = sub.add_parser("verify-limit", parents=[common], help="check a one-parameter family fixture")
    s.add_argument("--fixture", required=True)
    s.add_argument("--source")
    s.add_argument("--target")
    s.set_defaults(func=cmd_verify_limit)

    s = sub.add_parser("orbit-dim", parents=[common], help="orbit dimension of a form")
    s.add_argument("--form", required=True)
    s.add_argument("--method", choices=["stabilizer", "tangent"], default="stabilizer")
    s.set_defaults(func=cmd_orbit_dim)

    s = sub.add_parser("singular", parents=[common], help="singular-locus invariants of a form")
    s.add_argument("--form", required=True)
    s.add_argument("--hilbert", type=int, default=4, help="Hilbert values up to this degree")
    s.set_defaults(func=cmd_singular)

    s = sub.add_parser("reproduce", parents=[common], help="reproduce the containment table")
    s.add_argument("--table", type=int, default=2)
    s.add_argument("--include-hard", action="store_true", help="also attempt the undecided cells")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_reproduce)

    s = sub.add_parser("cache", parents=[common], help="inspect or purge the closure-ideal cache")
    s.add_argument("action", choices=["list", "purge", "show"])
    s.add_argument("key", nargs="?")
    s.set_defaults(func=cmd_cache)
    return p


def _emit(report: dict, path: Optional[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=False)
    if path in (None, "-"):
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.monotonic()
    report = {"schema": SCHEMA, "command": args.command,
              "arguments": {k: v for k, v in vars(args).items() if k not in ("func", "command")}}
    try:
        body, code = args.func(args)
        report.update(body)
    except UsageError as exc:
        report["error"] = {"code": exc.code, "message": str(exc)}
        code = EXIT_USAGE
    except DimensionMismatch as exc:
        report["error"] = {"code": "dimension_mismatch", "message": str(exc)}
        code = EXIT_USAGE
    except PlanMismatch as exc:
        report["error"] = {"code": "plan_mismatch", "message": str(exc)}
        code = EXIT_USAGE
    except ZeroFamily as exc:
        report["error"] = {"code": "zero_family", "message": str(exc)}
        code = EXIT_USAGE
    except BudgetExceeded as exc:
        report["error"] = {"code": "budget_exceeded", "message": exc.reason, "stats": exc.stats}
        code = EXIT_UNDECIDED
    report["exit_code"] = code
    report["seconds"] = round(time.monotonic() - start, 3)
    _emit(report, args.json_path)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
