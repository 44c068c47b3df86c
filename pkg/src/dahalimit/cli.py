"""Command-line front end: ``dahalimit <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on a usage
error (bad parameters, unparsable expressions).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dsl
from .hecke import eval_opexpr
from .macdonald import compute_E
from .polyring import Poly
from .stable import (
    BelowThresholdError, PhiIndex, SymmetryError, almost_sym_expand, check_convergence,
    tilde_E_level,
)
from .suites import SUITES, run_suite, weight_family_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def parse_levels(text):
    """``"a..b"`` (inclusive) or a comma list."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad level range {text!r}; expected a..b") from None


def parse_ints(text):
    """A comma-separated integer tuple; empty text gives ``()``."""
    try:
        return tuple(int(p) for p in text.replace(" ", "").split(",") if p)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _read_poly(text, n):
    """A literal like ``x1^2 + t*x2`` or ``@file.json`` holding Poly JSON."""
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            f = Poly.from_json(path.read_text())
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"--poly: cannot read {path}: {exc}") from None
        if n is not None and f.nvars != n:
            f = f.embed(n) if f.nvars < n else None
            if f is None:
                raise UsageError(f"--poly: file has more than {n} variables")
        return f
    if n is None:
        raise UsageError("--n is required for literal polynomials")
    try:
        return dsl.parse_poly(text, n)
    except (dsl.DslSyntaxError, dsl.DslTypeError, ZeroDivisionError) as exc:
        raise UsageError(f"--poly: {exc}") from None


def _index(args):
    try:
        return PhiIndex(args.mu, args.lam)
    except ValueError as exc:
        raise UsageError(f"--mu/--lambda: {exc}") from None


# ---------------------------------------------------------------------------
# output


def _emit(args, text, payload):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _report_text(name, results):
    lines = []
    for r in results:
        line = f"{r.status.upper():4}  {r.relation}  [{r.level_or_exact}]"
        lines.append(line)
    passed = sum(r.ok for r in results)
    lines.append(f"{name}: {passed}/{len(results)} passed")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def cmd_compute_e(args):
    n = args.n or len(args.mu)
    if n < len(args.mu):
        raise UsageError(f"--n {n} is shorter than mu")
    E = compute_E(args.mu, n)
    text = f"E_{E.mu} = {E.poly}\nspectrum: {', '.join(map(str, E.spectrum))}"
    _emit(args, text, E.to_json())
    return EXIT_OK


def cmd_tilde_e(args):
    idx = _index(args)
    n = args.n or idx.length + 1
    if n < idx.length + 1:
        raise UsageError(f"--n must be at least {idx.length + 1} for {idx}")
    f = tilde_E_level(idx, n)
    out = f.to_json()
    out["index"] = idx.to_json()
    _emit(args, f"E~{idx} at level {n} = {f}", out)
    return EXIT_OK


def _delta_mode(args):
    if args.psi and args.restricted is not None:
        raise UsageError("--psi and --restricted are mutually exclusive")
    if args.psi:
        return "psi"
    if args.restricted is not None:
        if args.at_level is None:
            raise UsageError("--restricted needs --at-level")
        return ("restricted", args.restricted, args.at_level)
    return None


def cmd_apply(args):
    n = args.at_level if args.n is None else args.n
    if n is None:
        raise UsageError("--n is required")
    if args.at_level is not None and args.at_level != n:
        raise UsageError("--n and --at-level disagree")
    try:
        expr = dsl.parse_opexpr(args.expr, _delta_mode(args))
    except (dsl.DslSyntaxError, dsl.DslTypeError) as exc:
        raise UsageError(f"expression: {exc}") from None
    f = _read_poly(args.poly, n)
    try:
        g = eval_opexpr(expr, n, f)
    except (IndexError, ValueError) as exc:
        raise UsageError(f"expression: {exc}") from None
    _emit(args, str(g), g.to_json())
    return EXIT_OK


def cmd_expand(args):
    f = _read_poly(args.poly, args.n)
    try:
        ex = almost_sym_expand(f, args.k)
    except (SymmetryError, BelowThresholdError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    lines = [f"{idx}: {c}" for idx, c in sorted(ex.coeffs.items())]
    _emit(args, "\n".join(lines) or "0", ex.to_json())
    return EXIT_OK


LIMIT_FAMILIES = ("tilde-e", "weight", "delta-pm-unit", "delta-pm-eigen")


def cmd_limit(args):
    levels = args.levels or list(range(2, 7))
    order = args.order
    fam = args.family
    if fam == "tilde-e":
        idx = _index(args)
        usable = [n for n in levels if n >= idx.length + 1]
        rep = check_convergence(lambda n: tilde_E_level(idx, n), len(idx.mu), usable, order)
        rep.skipped = sorted(set(rep.skipped) | (set(levels) - set(usable)))
    elif fam == "weight":
        idx = _index(args)
        rep = weight_family_report(idx, args.i, levels)
    elif fam == "delta-pm-unit":
        from .delta import delta_pm_unit_family

        rep = delta_pm_unit_family(args.m, levels)
    else:
        from .delta import delta_pm_eigen_family

        idx = _index(args)
        rep, target = delta_pm_eigen_family(args.m, idx.composition(), levels, order)
        payload = rep.to_json()
        payload["target"] = str(target)
        _emit(args, f"verdict: {rep.verdict}\nlimit: {rep.limit().get('scalar')}\n"
                    f"target: {target}", payload)
        return EXIT_OK
    payload = rep.to_json()
    if args.json:
        _emit(args, "", payload)
        return EXIT_OK
    lines = [f"verdict: {rep.verdict}"]
    if hasattr(rep, "tracks"):
        if rep.skipped:
            lines.append(f"skipped levels: {rep.skipped}")
        for key, tr in sorted(rep.tracks.items(), key=lambda kv: str(kv[0])):
            diffs = ", ".join("inf" if v == float("inf") else str(v) for v in tr.diff_valuations)
            lines.append(f"{key}: {tr.verdict}; diff valuations [{diffs}]; limit {tr.limit}")
    else:
        vals = ", ".join("inf" if v == float("inf") else str(v) for v in rep.valuations)
        lines.append(f"levels {rep.levels}; valuations [{vals}]")
    print("\n".join(lines))
    return EXIT_OK


def _suite_params(args):
    params = {}
    for name in ("n", "k", "r", "m", "degree", "levels"):
        v = getattr(args, name, None)
        if v is not None:
            params[name] = v
    if args.order_given:
        params["order"] = args.order
    if getattr(args, "F", None):
        params["F"] = args.F
    if getattr(args, "nu", None):
        params["nu"] = args.nu
    return params


def _run_report(args, name, params):
    rep = run_suite(name, **params)
    if args.json:
        print(json.dumps(rep.to_json(), indent=2, sort_keys=True))
    else:
        print(_report_text(name, rep.results))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(args):
    if args.list:
        for s in SUITES.values():
            print(f"{s.name:18} {s.summary}")
        return EXIT_OK
    if not args.suite:
        raise UsageError("name a suite or pass --list")
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; see verify --list")
    return _run_report(args, args.suite, _suite_params(args))


def cmd_relations(args):
    return _run_report(args, "relations", {"n": args.n, "degree": args.degree})


# ---------------------------------------------------------------------------
# parser


def _common(suppress):
    """Global flags; subcommand copies default to SUPPRESS so they never clobber."""
    p = argparse.ArgumentParser(add_help=False)
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    p.add_argument("--json", action="store_true", help="emit JSON", **kw)
    p.add_argument("--order", type=_positive, help="TSeries truncation (default 12)", **kw)
    p.add_argument("--levels", type=parse_levels, help="level sweep a..b", **kw)
    return p


def build_parser():
    parser = argparse.ArgumentParser(prog="dahalimit", parents=[_common(False)],
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common(True)]

    def index_args(p):
        p.add_argument("--mu", type=parse_ints, default=(), help="composition, e.g. 1,0,2")
        p.add_argument("--lambda", dest="lam", type=parse_ints, default=(), help="partition")

    p = sub.add_parser("compute-e", parents=common, help="non-symmetric Macdonald E_mu")
    p.add_argument("--mu", type=parse_ints, required=True)
    p.add_argument("--n", type=_positive)
    p.set_defaults(func=cmd_compute_e)

    p = sub.add_parser("tilde-e", parents=common, help="level-n term of E~(mu|lambda)")
    index_args(p)
    p.add_argument("--n", type=_positive)
    p.set_defaults(func=cmd_tilde_e)

    p = sub.add_parser("apply", parents=common, help="apply an operator expression")
    p.add_argument("expr")
    p.add_argument("--n", type=_positive)
    p.add_argument("--poly", required=True, help="literal or @file.json")
    p.add_argument("--psi", action="store_true", help="e_r[Delta] means Psi_{e_r} at level n")
    p.add_argument("--at-level", type=_positive, help="level for the closed-form restriction")
    p.add_argument("--restricted", type=int, help="k for the restriction to x1...xk P(k)")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("expand", parents=common, help="almost-symmetric expansion")
    p.add_argument("--poly", required=True)
    p.add_argument("--n", type=_positive)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("limit", parents=common, help="convergence report for a level family")
    p.add_argument("family", choices=LIMIT_FAMILIES)
    index_args(p)
    p.add_argument("--i", type=_positive, default=1)
    p.add_argument("--m", type=_positive, default=1)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("verify", parents=common, help="run a verification suite")
    p.add_argument("suite", nargs="?")
    p.add_argument("--list", action="store_true")
    for name in ("n", "k", "r", "m", "degree"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--F", help="symmetric function such as e2 or p3")
    p.add_argument("--nu", type=parse_ints)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("relations", parents=common, help="check the defining relations")
    p.add_argument("--n", type=_positive, default=3)
    p.add_argument("--degree", type=int, default=3)
    p.set_defaults(func=cmd_relations)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.order_given = args.order is not None
    if args.order is None:
        args.order = 12
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"dahalimit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
