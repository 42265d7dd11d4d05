"""``ruleminer`` command line: ingest, mine, stats, verify.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .apriori import LIFT_MODES
from .errors import InvalidConfig, RuleMinerError
from .pipeline import (
    FORMATS,
    make_run_config,
    parse_year_range,
    read_config_file,
    run_ingest,
    run_mine,
    run_stats,
    run_verify,
)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _fields(text: str) -> tuple[str, ...]:
    return tuple(v.strip() for v in text.split(",") if v.strip())


def _years(text: str):
    try:
        return parse_year_range(text) or "all"
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("run options")
    g.add_argument("--config", help="INI file with [run] and [mining] sections; flags override it")
    g.add_argument("--input", dest="input_path", help="GTD-schema CSV file")
    g.add_argument("--country", help='country_txt to keep (default Nigeria; "*" keeps all)')
    g.add_argument("--years", dest="year_range", type=_years, help='inclusive year window, e.g. 1970-2019, or "all"')
    g.add_argument("--fields", type=_fields, help="comma-separated observation fields")
    g.add_argument("--labels", choices=("codebook", "text"),
                   help="attack/target labels from the built-in codebook or from the *_txt columns")
    g.add_argument("--out", dest="output_dir", help="output directory")
    g.add_argument("--format", choices=FORMATS, help="rule file format")
    g.add_argument("--seed", type=int, help="seed for generated test databases")
    m = common.add_argument_group("mining thresholds")
    m.add_argument("--min-support", type=float)
    m.add_argument("--min-confidence", type=float)
    m.add_argument("--min-lift", type=float)
    m.add_argument("--min-length", type=int)
    m.add_argument("--max-size", dest="max_itemset_size", type=int)
    m.add_argument("--lift-mode", choices=LIFT_MODES)

    parser = argparse.ArgumentParser(prog="ruleminer", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("ingest", parents=[common], help="itemize incidents into a transaction file")
    sub.add_parser("mine", parents=[common], help="mine frequent itemsets and strong rules")
    p = sub.add_parser("stats", parents=[common], help="descriptive frequency tables")
    p.add_argument("--plot-data", action=argparse.BooleanOptionalAction, default=True,
                   help="write one CSV per figure table (default on)")
    p = sub.add_parser("verify", parents=[common], help="brute-force checks and published-claims report")
    p.add_argument("--rules", help="existing rules.csv/rules.json to compare against a recomputation")
    p.add_argument("--random-dbs", type=int, default=200, help="random databases for the miner/oracle check")
    p.add_argument("--no-claims", action="store_true", help="skip the published-claims table")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    out = read_config_file(args.config) if args.config else {}
    for key in ("input_path", "country", "year_range", "fields", "labels", "output_dir", "format", "seed",
                "min_support", "min_confidence", "min_lift", "min_length", "max_itemset_size", "lift_mode"):
        value = getattr(args, key, None)
        if value is not None:
            out[key] = value
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        cfg = make_run_config(_overrides(args))
    except (InvalidConfig, ValueError, TypeError) as e:
        print(f"ruleminer: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"ruleminer: cannot read config: {e}", file=sys.stderr)
        return EXIT_IO
    if not cfg.input_path:
        print("ruleminer: usage error: --input is required", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "ingest":
            s = run_ingest(cfg)
            print(f"{s.transactions} transactions, {s.item_count} items "
                  f"({s.rows_read} rows read, {s.rows_skipped} skipped) -> {cfg.output_dir}")
        elif args.command == "mine":
            report = run_mine(cfg)
            print(f"{len(report)} rules from {report.n} transactions -> {cfg.output_dir}")
        elif args.command == "stats":
            report = run_stats(cfg, plot_data=args.plot_data)
            print(f"{len(report['tables'])} tables over {report['records']} records -> {cfg.output_dir}")
        elif args.command == "verify":
            result = run_verify(cfg, args.rules, args.random_dbs, claims=not args.no_claims)
            sys.stdout.write(result.render())
            return EXIT_OK if result.ok else EXIT_VERIFY
    except (OSError, RuleMinerError) as e:
        print(f"ruleminer: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
