"""``qchiral`` command line: run suites, write a report, exit 0/1/2.

Every flag can also come from the environment as ``QCHIRAL_<FLAG>``
(``QCHIRAL_SUITE=plucker,coaction``, ``QCHIRAL_Q=1``, ...); explicit flags win.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .properties import Samples
from .suites import SUITE_NAMES, RunConfig, parse_q, run

ENV_PREFIX = "QCHIRAL_"
EXIT_OK, EXIT_DISCREPANCY, EXIT_USAGE = 0, 1, 2


def _suites(values: list[str]) -> tuple:
    names: list[str] = []
    for v in values:
        names.extend(p.strip() for p in v.split(",") if p.strip())
    if not names or "all" in names:
        return SUITE_NAMES
    unknown = [n for n in names if n not in SUITE_NAMES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)} (choose from {', '.join(SUITE_NAMES)}, all)")
    return tuple(dict.fromkeys(names))


def build_parser() -> argparse.ArgumentParser:
    env = os.environ.get
    p = argparse.ArgumentParser(prog="qchiral", description="Verify quantum super Grassmannian and Minkowski identities by exact rewriting.")
    p.add_argument("--suite", action="append", default=None,
                   help="suite name, comma list, or 'all' (repeatable; default all)")
    p.add_argument("--q", default=env(ENV_PREFIX + "Q", "symbolic"), help="'symbolic' or a nonzero rational such as 1 or 2/3")
    p.add_argument("--jobs", type=int, default=int(env(ENV_PREFIX + "JOBS", "1")), help="worker processes (suite level)")
    p.add_argument("--seed", type=int, default=int(env(ENV_PREFIX + "SEED", "0")), help="seed for sampled checks")
    p.add_argument("--report", default=env(ENV_PREFIX + "REPORT"), help="write the report here ('-' for stdout)")
    p.add_argument("--format", choices=("json", "markdown"), default=env(ENV_PREFIX + "FORMAT", "json"))
    p.add_argument("--samples", default=env(ENV_PREFIX + "SAMPLES"),
                   help="sample sizes, e.g. 'confluence=500,associativity=200,morphism=100' or one integer for all")
    p.add_argument("--version", action="version", version=f"qchiral {__version__}")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    suites = args.suite if args.suite is not None else [os.environ.get(ENV_PREFIX + "SUITE", "all")]
    if args.jobs < 1:
        raise ValueError("--jobs must be at least 1")
    return RunConfig(
        suites=_suites(suites),
        q=parse_q(args.q),
        jobs=args.jobs,
        seed=args.seed,
        samples=Samples.parse(args.samples) if args.samples else Samples(),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help/--version
        return int(exc.code or 0)
    try:
        config = config_from_args(args)
    except ValueError as exc:
        print(f"qchiral: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    result = run(config)
    for r in result.reports:
        mark = "ok  " if r.ok else "FAIL"
        print(f"{mark} {r.suite:<24} {r.passed:>5}/{len(r.records):<5}", file=sys.stderr)
    print(f"{'all ok' if result.ok else 'discrepancies found'} in {result.elapsed:.2f}s (q = {config.q_text})", file=sys.stderr)

    text = result.dumps() if args.format == "json" else result.markdown()
    if args.report == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    elif args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK if result.ok else EXIT_DISCREPANCY


if __name__ == "__main__":
    raise SystemExit(main())
