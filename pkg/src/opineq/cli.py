"""
Command-line front end.

Subcommands: ``verify`` (run a suite), ``constants`` (print one constant),
``limit`` (the limit study) and ``scan`` (tightness scan). Exit status is 0
when nothing failed, 1 when some result failed and 2 on usage or
configuration errors.
"""
import argparse
import json
import sys

from . import __version__
from .constants import (
    FourPointBounds,
    K_mond_pecaric,
    L_constant,
    RatioBounds,
    SandwichBounds,
    gamma_p,
    kantorovich_K,
    ratio_C,
    xi_psi,
)
from .errors import OpIneqError
from .hermitian import TolerancePolicy
from .inequalities.functions import parse_function
from .inequalities.registry import CHECK_IDS
from .inequalities.scan import tightness_scan
from .suite import SUITES, SuitePlan, emit_report, run_verify

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _strs(text):
    return [x.strip() for x in text.split(",") if x.strip()]


def _seed(text):
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _add_plan_flags(p, with_checks=True):
    if with_checks:
        p.add_argument("--suite", choices=sorted(SUITES), help="named preset (checks, dims, trials)")
        p.add_argument("--checks", type=_strs, help="comma separated check ids")
    p.add_argument("--dims", type=_ints, help="comma separated dimensions")
    p.add_argument("--trials", type=int, help="trials per (check, dimension)")
    p.add_argument("--seed", type=_seed, help="64-bit master seed")
    p.add_argument("--v", type=_floats, help="weights, e.g. 0.25,0.5")
    p.add_argument("--p", type=_floats, help="exponents")
    p.add_argument("--norm", type=_strs, dest="norms", help="e.g. schatten:inf,kyfan:2")
    p.add_argument("--mean", type=_strs, dest="means", help="e.g. geometric,power:r=0.5")
    p.add_argument("--tol-abs", type=float, dest="abs_tol")
    p.add_argument("--tol-rel", type=float, dest="rel_tol")
    p.add_argument("--plan", help="JSON plan file; flags override its values")
    p.add_argument("--out", help="report path (default: standard output)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--workers", type=int, default=1, help="worker processes")


def build_parser():
    parser = _Parser(prog="opineq", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"opineq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    verify = sub.add_parser("verify", help="run a verification suite")
    _add_plan_flags(verify)
    verify.add_argument("--functions", type=_strs, help="e.g. pow:0.5,invpow:1")

    const = sub.add_parser("constants", help="print a constant as JSON")
    const.add_argument("name", choices=sorted(_CONSTANTS))
    const.add_argument("params", nargs="*", metavar="key=value")

    limit = sub.add_parser("limit", help="limit study for the exponential means")
    _add_plan_flags(limit, with_checks=False)
    limit.add_argument("--p-list", type=_floats, dest="limit_p", help="descending exponents")

    scan = sub.add_parser("scan", help="largest lhs/rhs ratio per parameter cell")
    scan.add_argument("--check", required=True)
    scan.add_argument("--v", type=_floats)
    scan.add_argument("--p", type=_floats)
    scan.add_argument("--norm", type=_strs, dest="norms")
    scan.add_argument("--trials", type=int, default=50, help="trials per cell and dimension")
    scan.add_argument("--dims", type=_ints, default=[1, 2, 3])
    scan.add_argument("--seed", type=_seed, default=0)
    scan.add_argument("--out")
    return parser


def _kv(params):
    out = {}
    for item in params:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {item!r}")
        out[key] = value
    return out


def _need(kv, *names):
    missing = [n for n in names if n not in kv]
    if missing:
        raise ValueError(f"missing parameters: {', '.join(missing)}")
    extra = set(kv) - set(names)
    if extra:
        raise ValueError(f"unexpected parameters: {', '.join(sorted(extra))}")
    return [float(kv[n]) for n in names]


def _const_K(kv):
    h, v = _need(kv, "h", "v")
    return {"h": h, "v": v}, kantorovich_K(h, v)


def _const_C(kv):
    m, M, v = _need(kv, "m", "M", "v")
    return {"m": m, "M": M, "v": v}, ratio_C(m, M, v)


def _const_xi_psi(kv):
    s, t, v = _need(kv, "s", "t", "v")
    return {"s": s, "t": t, "v": v}, list(xi_psi(RatioBounds(s, t), v))


def _const_L(kv):
    m, M, v = _need(kv, "m", "M", "v")
    return {"m": m, "M": M, "v": v}, L_constant(SandwichBounds(m, M), v)


def _const_gamma(kv):
    m2, m1, M1, M2, p, v = _need(kv, "m2", "m1", "M1", "M2", "p", "v")
    params = {"m2": m2, "m1": m1, "M1": M1, "M2": M2, "p": p, "v": v}
    return params, gamma_p(FourPointBounds(m2, m1, M1, M2), p, v)


def _const_K_mp(kv):
    f = parse_function(kv.pop("f", "invpow:1"))
    m, M = _need(kv, "m", "M")
    return {"f": str(f), "m": m, "M": M}, K_mond_pecaric(f, SandwichBounds(m, M))


_CONSTANTS = {
    "K": _const_K,
    "C": _const_C,
    "xi-psi": _const_xi_psi,
    "L": _const_L,
    "gamma": _const_gamma,
    "K-mp": _const_K_mp,
}


def _load_plan(args, base):
    data = dict(base)
    if args.plan:
        with open(args.plan, encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ValueError("plan file must hold a JSON object")
        data.update(loaded)
    suite = getattr(args, "suite", None)
    if suite:
        data.update(SUITES[suite])
    for key in ("checks", "dims", "trials", "seed", "v", "p", "norms", "means", "functions", "limit_p", "abs_tol", "rel_tol"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    return SuitePlan.from_dict(data)


def _write(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_verify(args):
    plan = _load_plan(args, {})
    report, code = run_verify(plan, workers=args.workers)
    _write(emit_report(report, args.format), args.out)
    return code


def _cmd_limit(args):
    plan = _load_plan(args, {"checks": ["limit36"], "dims": [2, 3], "trials": 20})
    if plan.checks != ["limit36"]:
        raise ValueError("the limit study runs check limit36 only")
    report, code = run_verify(plan, workers=args.workers)
    _write(emit_report(report, args.format), args.out)
    return code


def _cmd_constants(args):
    params, value = _CONSTANTS[args.name](_kv(args.params))
    print(json.dumps({"name": args.name, "params": params, "value": value}))
    return EXIT_OK


def _cmd_scan(args):
    grid = {}
    for axis, values in (("v", args.v), ("p", args.p), ("norm", args.norms)):
        if values is not None:
            grid[axis] = values
    if not grid:
        raise ValueError("give at least one of --v, --p, --norm")
    rows = tightness_scan(args.check, grid, args.trials, args.seed, dims=tuple(args.dims), tol=TolerancePolicy())
    _write(json.dumps(rows, indent=1, sort_keys=True) + "\n", args.out)
    return EXIT_FAIL if any(r["violation"] for r in rows) else EXIT_OK


_COMMANDS = {"verify": _cmd_verify, "limit": _cmd_limit, "constants": _cmd_constants, "scan": _cmd_scan}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (OpIneqError, ValueError, TypeError, KeyError, OSError, json.JSONDecodeError) as exc:
        # configuration and usage problems; failing checks never raise
        print(f"opineq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
