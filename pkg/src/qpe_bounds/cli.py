"""Command-line front end.

Subcommands: bounds, diag, gi, bench, sample.  Each takes a JSON config
mirroring CampaignConfig plus optional seed/output overrides.  Exit codes:
0 on success, 1 on configuration errors, 2 when some grid points failed
(their rows carry the error text).
"""

import argparse
import json
import sys

from . import bench
from ._version import __version__


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="qpe-bounds",
        description="Cost bounds and estimator benchmarks for phase estimation",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("bounds", "tabulate gamma/g0 over the spectrum sweep"),
        ("diag", "tabulate the diagonal-approximation quality factor"),
        ("gi", "tabulate normalized information g0"),
        ("bench", "run the sampling benchmark and score R"),
        ("sample", "emit raw sample CSVs"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to a JSON campaign config")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--out", default=None, help="output CSV path")
        p.add_argument("--threads", type=int, default=1, help="trial-level parallelism")
    return parser


def _load_config(args):
    with open(args.config) as fh:
        config = bench.CampaignConfig.from_dict(json.load(fh))
    if args.seed is not None:
        config.seed = args.seed
    return config


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    out = args.out or f"{args.command}.csv"
    try:
        if args.command == "bench":
            rows = bench.run_campaign(config, threads=args.threads)
        elif args.command == "bounds":
            rows, crossover = bench.sweep_bounds(config)
            if crossover is not None:
                print(f"crossover c0 = {crossover!r}")
        elif args.command == "diag":
            rows = bench.check_diag(config)
        elif args.command == "gi":
            rows = bench.gi_sweep(config)
        elif args.command == "sample":
            for path in bench.emit_samples(config, out, threads=args.threads):
                print(path)
            return 0
        else:  # pragma: no cover - argparse enforces the choices
            return 1
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    bench.write_rows_csv(rows, out, config.seed)
    print(out)
    return 2 if any(row.error for row in rows) else 0


if __name__ == "__main__":
    sys.exit(main())
