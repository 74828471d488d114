"""Command line entry point: ``ozfft run | sweep | alpha-table``.

Exit codes: 0 success, 2 invalid arguments, 3 guard violation.
"""
from __future__ import annotations

import argparse
import csv
import sys

from .harness import (
    CSV_COLUMNS,
    METHODS,
    ExperimentSpec,
    GuardError,
    alpha_table,
    run_experiment,
    sweep,
    write_csv,
)

EXIT_USAGE = 2
EXIT_GUARD = 3


def _k_value(s: str):
    if s.strip().lower() in ("inf", "infinity", "0"):
        return None
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("K must be a positive integer or 'inf'")
    return v


def _list(conv):
    def parse(s: str):
        try:
            return [conv(t) for t in s.split(",") if t.strip()]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    return parse


def _method(s: str) -> str:
    if s not in METHODS:
        raise argparse.ArgumentTypeError(f"unknown method {s!r}; choose from {', '.join(METHODS)}")
    return s


def _pos_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ozfft", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("run", help="run one experiment cell")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--phi", type=float, default=0.0)
    r.add_argument("--seed", type=int, default=1)
    r.add_argument("--K", type=_k_value, default=None, help="split cap, integer or 'inf'")
    r.add_argument("--L", type=_pos_int, default=1)
    r.add_argument("--method", type=_method, default="proposed")
    r.add_argument("--repeats", type=_pos_int, default=1)
    r.add_argument("--csv", default=None)

    s = sub.add_parser("sweep", help="run a grid of cells")
    s.add_argument("--n-min", type=int, required=True, help="log2 of the smallest n")
    s.add_argument("--n-max", type=int, required=True, help="log2 of the largest n")
    s.add_argument("--phi", type=_list(float), default=[0.0])
    s.add_argument("--methods", type=_list(_method), default=list(METHODS))
    s.add_argument("--K", type=_list(_k_value), default=[None])
    s.add_argument("--L", type=_list(_pos_int), default=[1])
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--repeats", type=_pos_int, default=1)
    s.add_argument("--csv", required=True)

    a = sub.add_parser("alpha-table", help="split widths of the four strategies")
    a.add_argument("--n-min", type=int, required=True)
    a.add_argument("--n-max", type=int, required=True)
    a.add_argument("--csv", default=None)
    return ap


def _emit(rows, fields, path):
    if path:
        write_csv(rows, path, fields)
        return
    w = csv.DictWriter(sys.stdout, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        if args.cmd == "run":
            spec = ExperimentSpec(args.n, args.phi, args.seed, args.K, args.L, args.method, args.repeats)
            _emit([run_experiment(spec)], CSV_COLUMNS, args.csv)
        elif args.cmd == "sweep":
            if args.n_min > args.n_max:
                raise ValueError("--n-min must not exceed --n-max")
            for e in (args.n_min, args.n_max):
                if e < 1:
                    raise ValueError("n must be at least 2^1")
                if e > 16:
                    raise GuardError(f"2^{e} exceeds the desk-scale limit 2^16")
            kls = [(K, L) for K in args.K for L in args.L]
            ns = [2**e for e in range(args.n_min, args.n_max + 1)]
            sweep(ns, args.phi, args.methods, kls, args.seed, args.csv, args.repeats)
        else:
            rows = alpha_table(args.n_min, args.n_max)
            _emit(rows, list(rows[0]), args.csv)
    except GuardError as exc:
        print(f"ozfft: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, OSError) as exc:
        print(f"ozfft: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
