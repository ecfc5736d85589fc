"""Command-line verification harness.

    laguerre-su11 verify <suite|all> [--grid name=v1,v2 ...] [--tol T] [--seed N]
                         [--jobs J] [--out PATH] [--format json|csv] [--config FILE]
    laguerre-su11 list

Reports go to --out, else to $LAGUERRE_SU11_OUT/<suite>.<format> when that
variable names a directory, else to stdout. A one-line summary per report
is written to stderr. The exit status is 1 iff some report failed.
"""
import argparse
import ast
import json
import os
import sys

from .errors import SpecError, UnknownSuiteError
from .report import emit, to_rows
from .suites import SUITES, SweepSpec, run_suite, suite_names

OUT_ENV = "LAGUERRE_SU11_OUT"


def _value(text):
    """int, float, complex or a bare string."""
    text = text.strip()
    for conv in (int, float, complex):
        try:
            return conv(text)
        except ValueError:
            pass
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        return text


def parse_grid(items):
    """["k1=0.6,0.7", "n1=1"] -> {"k1": [0.6, 0.7], "n1": [1]}."""
    grid = {}
    for item in items or []:
        name, sep, vals = item.partition("=")
        if not sep or not name or not vals:
            raise SpecError(f"grid entries look like name=v1,v2; got {item!r}")
        grid[name.strip()] = [_value(v) for v in vals.split(",")]
    return grid


def _load_config(path):
    if path is None:
        return {}
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise SpecError("config file must hold a JSON object")
    return cfg


def build_parser():
    p = argparse.ArgumentParser(prog="laguerre-su11",
                                description="Numerical verification of Laguerre-function "
                                            "and su(1,1) coupling identities.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help="suite name or 'all'")
    v.add_argument("--grid", action="append", metavar="NAME=V1,V2",
                   help="override a parameter grid (repeatable)")
    v.add_argument("--tol", type=float, help="tolerance for every report")
    v.add_argument("--seed", type=int, help="seed for sampled suites (default 0)")
    v.add_argument("--jobs", type=int, help="worker processes (default 1)")
    v.add_argument("--out", help="output file")
    v.add_argument("--format", choices=["json", "csv"], help="output format (default json)")
    v.add_argument("--config", help="JSON file with grid/tol/seed/jobs/out/format; flags win")
    sub.add_parser("list", help="list the registered suites")
    return p


def _pick(flag, cfg, key, default):
    return flag if flag is not None else cfg.get(key, default)


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "list":
        for name in suite_names():
            print(f"{name:20s} {SUITES[name].doc}")
        return 0
    try:
        cfg = _load_config(args.config)
        grid = {k: list(v) if isinstance(v, (list, tuple)) else [v]
                for k, v in cfg.get("grid", {}).items()}
        grid.update(parse_grid(args.grid))
        spec = SweepSpec(grid=grid, tol=_pick(args.tol, cfg, "tol", None),
                         seed=_pick(args.seed, cfg, "seed", 0),
                         jobs=_pick(args.jobs, cfg, "jobs", 1))
        fmt = _pick(args.format, cfg, "format", "json")
        reports = run_suite(args.suite, spec)
    except (SpecError, UnknownSuiteError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return 2
    for r in reports:
        print(r, file=sys.stderr)
    out = _pick(args.out, cfg, "out", None)
    if out is None and os.environ.get(OUT_ENV):
        os.makedirs(os.environ[OUT_ENV], exist_ok=True)
        out = os.path.join(os.environ[OUT_ENV], f"{args.suite}.{fmt}")
    if out is None:
        if fmt == "json":
            json.dump(to_rows(reports), sys.stdout, indent=1)
            sys.stdout.write("\n")
        else:
            emit(reports, "csv", "/dev/stdout")
    else:
        emit(reports, fmt, out)
    failed = sum(r.failed for r in reports)
    print(f"{len(reports)} reports, {failed} failed", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
