"""Command-line entry point.

Subcommands: semiconv, coeff-flow, region-map, decay, sum, check.  Each
reads an optional JSON config, runs the experiment, and writes CSV or JSON.
Exit codes: 0 success, 2 config validation error, 3 numeric domain error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import lab
from .specfun import DomainError, PoleError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3

_RUNNERS = {
    "semiconv": lambda cfg: lab.semiconvergence_rows(lab.run_semiconvergence(cfg)),
    "coeff-flow": lab.run_coefficient_flow,
    "region-map": lab.run_region_map,
    "decay": lab.run_decay_report,
    "sum": lab.run_sum,
    "check": lab.run_check,
}


def _format_cell(x):
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_csv(header, rows, stream):
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(_format_cell(x) for x in row) + "\n")


def write_json(header, rows, stream):
    payload = [dict(zip(header, row)) for row in rows]
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="laglab",
        description="Experiments on Laguerre-series rearrangement, "
                    "sequence-transform summation, and two-range addition "
                    "theorems.",
    )
    sub = parser.add_subparsers(dest="experiment", required=True)
    help_text = {
        "semiconv": "error-vs-truncation-order curve of the rearranged "
                    "one-center Slater expansion (defaults: N from config, "
                    "orders 1..60, radial grid 0.05*j for j=1..200)",
        "coeff-flow": "power-series coefficients of truncated expansions as "
                      "the truncation order grows",
        "region-map": "convergence verdicts of the small-argument Gegenbauer "
                      "expansion over a (ratio, angle) grid",
        "decay": "large-index decay classification of coefficient streams",
        "sum": "sequence-transform a list of terms or partial sums",
        "check": "run the built-in identity suite",
    }
    for name in _RUNNERS:
        p = sub.add_parser(name, help=help_text[name])
        p.add_argument("--config", metavar="PATH.json",
                       help="JSON object with experiment parameters")
        p.add_argument("--out", metavar="PATH",
                       help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--quiet", action="store_true",
                       help="suppress the summary line on stderr")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        data = {}
        if args.config:
            try:
                with open(args.config, encoding="utf-8") as fh:
                    data = json.load(fh)
            except OSError as exc:
                raise lab.ConfigError(f"cannot read config: {exc}") from exc
            except json.JSONDecodeError as exc:
                raise lab.ConfigError(f"config is not valid JSON: {exc}") from exc
        cfg = lab.RunConfig.from_dict(data, experiment=args.experiment)
        header, rows = _RUNNERS[args.experiment](cfg)
    except lab.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, PoleError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    writer = write_csv if args.format == "csv" else write_json
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            writer(header, rows, fh)
    else:
        writer(header, rows, sys.stdout)
    if not args.quiet:
        print(f"{args.experiment}: {len(rows)} rows", file=sys.stderr)
    if args.experiment == "check" and any(row[-1] != "pass" for row in rows):
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
