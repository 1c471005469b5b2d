"""Command-line entry point.

Subcommands::

    cfafusion predict   --market prices.csv --out DIR
    cfafusion fuse      --predictions predictions.csv --actuals actuals.csv --out DIR
    cfafusion diversity --predictions predictions.csv --actuals actuals.csv --out DIR
    cfafusion eval      --predictions predictions.csv --actuals actuals.csv --out DIR

Exit status is 0 on success, 1 for bad input or configuration and 2 when an
internal consistency check fails.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .runner import RunConfig, run_diversity, run_eval, run_pipeline, run_predict

logger = logging.getLogger("cfafusion")

COMMANDS = {
    "predict": run_predict,
    "fuse": run_pipeline,
    "diversity": run_diversity,
    "eval": run_eval,
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value settings file")
    p.add_argument("--out", help="output directory (default: cfa_out)")
    p.add_argument("--date-column", help="name of the date column (default: date)")
    p.add_argument("--price-column", help="price column in market/actuals tables (default: price)")
    p.add_argument("--train-fraction", type=float, help="chronological train share (default: 0.8)")
    p.add_argument("--grid-points", type=int, help="price grid resolution (default: 2001)")
    p.add_argument("--strategies", help="comma list of sc-ac,rc-ac,sc-wcds,rc-wcds,sc-wcp,rc-wcp")
    p.add_argument("--wcds-scope", choices=["group", "full"], help="diversity strengths within each group or over all models")
    p.add_argument("--normalization", choices=["train", "global"], help="scaling statistics for predict")
    p.add_argument("--performance-weights", help="label=value,... weights for the WCP strategies")
    p.add_argument("--seed", type=int, help="reserved; runs are deterministic")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfafusion", description="Rank/score fusion of price forecasts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="forecast the test period with the built-in baselines")
    p.add_argument("--market", help="CSV with date and price columns")
    _add_common(p)

    for name, text in [
        ("fuse", "fuse forecasts per day and evaluate every strategy"),
        ("diversity", "write per-day cognitive diversity matrices"),
        ("eval", "RMSE and MAPE of each forecast column"),
    ]:
        p = sub.add_parser(name, help=text)
        p.add_argument("--predictions", help="CSV: date,<model>,...")
        p.add_argument("--actuals", help="CSV: date,price")
        _add_common(p)
        if name == "fuse":
            p.add_argument("--emit-diversity", action="store_true", default=None, help="also write per-day diversity matrices")
            p.add_argument("--emit-diagnostics", action="store_true", default=None, help="also write per-day distances and RSC curves")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    overrides = {k: v for k, v in vars(args).items() if k not in ("command", "config", "verbose")}
    try:
        config = RunConfig.resolve(args.config, **overrides)
        result = COMMANDS[args.command](config)
    except (ValueError, OSError) as exc:
        print(f"cfafusion {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # invariant violations and bugs
        logger.debug("internal failure", exc_info=True)
        print(f"cfafusion {args.command}: internal error: {exc!r}", file=sys.stderr)
        return 2
    if args.command in ("fuse", "eval"):
        print(result.to_text(), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
