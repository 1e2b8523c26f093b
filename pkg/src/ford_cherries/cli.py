"""Command-line front end: ``ford-cherries <subcommand> [flags]``.

Primary output (CSV or JSON) goes to stdout or ``--out``; diagnostics go to stderr. Exit status is
0 on success, 1 on a usage error and 2 when an internal cross-check or the validation report fails.
"""

import argparse
import sys
from typing import IO, Any, Callable, NoReturn, Optional, Sequence

from loguru import logger
from pydantic import ValidationError

from ford_cherries import __version__
from ford_cherries.errors import FordCherriesError, InvalidParameterError
from ford_cherries.exact import (
    joint_pmf,
    limit_curve_extrema,
    mean_closed_form,
    moment_trace,
    parse_grid,
    second_moment_asymptotics,
    sweep_rows,
)
from ford_cherries.exact.curves import SWEEP_COLUMNS
from ford_cherries.io import dump_json, write_csv
from ford_cherries.montecarlo import Engine, TrialConfig, ValidationHarness, run_campaign
from ford_cherries.trees.alpha import Alpha
from ford_cherries.urn import limit_summary

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2

PMF_COLUMNS = ("n", "alpha", "a", "c", "prob")
SIMULATE_COLUMNS = ("n", "alpha", "a", "c", "count")
MOMENT_COLUMNS = ("n", "alpha", "ec", "ea", "ec2", "eac", "ea2", "var_c", "cov_ac", "var_a", "corr")
LIMIT_COLUMNS = ("alpha", "nu", "mu", "tau2", "rho", "sigma2")
EXTREMA_COLUMNS = ("a0", "a1", "sigma2_max", "cov_max")


class UsageError(Exception):
    """Raised instead of exiting when argparse rejects the command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _alpha(text: str) -> float:
    try:
        return float(Alpha(text))
    except InvalidParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ford-cherries", description="Cherries and pitchforks of Ford alpha-model trees.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None, help="Output format.")
    common.add_argument("--out", default=None, help="Write primary output to this path instead of stdout.")
    common.add_argument("--verbose", action="store_true", help="Log debug diagnostics to stderr.")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    simulate = subparsers.add_parser("simulate", parents=[common], help="Monte-Carlo campaign of (A_n, C_n).")
    simulate.add_argument("--n", type=int, required=True, help="Leaf count (>= 2).")
    simulate.add_argument("--alpha", type=_alpha, required=True, help="Model parameter, decimal or p/q.")
    simulate.add_argument("--trials", type=int, default=10_000, help="Number of independent trials.")
    simulate.add_argument("--seed", type=int, default=0, help="Campaign seed.")
    simulate.add_argument("--engine", choices=[e.value for e in Engine], default=Engine.TREE.value)
    simulate.add_argument("--workers", type=int, default=1, help="Worker processes.")
    simulate.add_argument("--raw-out", default=None, help="Stream per-trial (trial, a, c) rows to this CSV.")

    pmf = subparsers.add_parser("pmf", parents=[common], help="Exact joint law of (A_n, C_n).")
    pmf.add_argument("--n", type=int, required=True, help="Leaf count (>= 3).")
    pmf.add_argument("--alpha", type=_alpha, required=True, help="Model parameter, decimal or p/q.")

    moments = subparsers.add_parser("moments", parents=[common], help="Exact moments for n = 3..N.")
    moments.add_argument("--n", type=int, required=True, help="Largest leaf count (>= 3).")
    moments.add_argument("--alpha", type=_alpha, required=True, help="Model parameter, decimal or p/q.")

    limits = subparsers.add_parser("limits", parents=[common], help="Limiting proportions and covariances.")
    limits.add_argument("--alpha", type=_alpha, required=True, help="Model parameter, decimal or p/q.")

    sweep = subparsers.add_parser("sweep", parents=[common], help="Limit curves over a grid of alpha.")
    sweep.add_argument("--grid", default="0:1:0.05", help="Alpha grid lo:hi:step (inclusive).")
    sweep.add_argument(
        "--quantity", default="all", help=f"Comma-separated columns among {', '.join(SWEEP_COLUMNS[1:])}, or all."
    )

    validate = subparsers.add_parser("validate", parents=[common], help="Run the cross-validation harness.")
    validate.add_argument("--n", type=int, default=None, help="Leaf count of the engine/CLT campaigns.")
    validate.add_argument("--alpha", type=_alpha, default=None, help="Single alpha for the engine/CLT campaigns.")
    validate.add_argument("--trials", type=int, default=None, help="Trials per engine campaign.")
    validate.add_argument("--seed", type=int, default=None, help="Campaign seed.")
    validate.add_argument("--workers", type=int, default=1, help="Worker processes.")
    validate.add_argument("--only", default=None, help="Comma-separated subset of check names.")

    subparsers.add_parser("extrema", parents=[common], help="Maximizers of the limiting variance and covariance.")
    return parser


def _emit(args: argparse.Namespace, default_format: str, columns: Sequence[str], rows: list, payload: Any) -> None:
    fmt = args.format or default_format
    target: Any = args.out if args.out else sys.stdout
    if fmt == "csv":
        write_csv(target, columns, rows)
    else:
        dump_json(payload, target)
    if args.out:
        logger.info(f"wrote {fmt} output to {args.out}")


def _simulate(args: argparse.Namespace) -> int:
    cfg = TrialConfig(
        n=args.n, alpha=args.alpha, trials=args.trials, seed=args.seed, engine=args.engine, workers=args.workers
    )
    summary = run_campaign(cfg, raw_csv=args.raw_out, progress=args.verbose)
    rows = [(cfg.n, cfg.alpha, a, c, count) for a, c, count in summary.model_dump(mode="json")["counts"]]
    _emit(args, "json", SIMULATE_COLUMNS, rows, summary)
    return EXIT_OK


def _pmf(args: argparse.Namespace) -> int:
    table = joint_pmf(args.n, args.alpha)
    cells = table.as_dict()
    rows = [(table.n, table.alpha, a, c, p) for (a, c), p in cells.items()]
    payload = {"n": table.n, "alpha": table.alpha, "table": [[a, c, p] for (a, c), p in cells.items()]}
    _emit(args, "csv", PMF_COLUMNS, rows, payload)
    return EXIT_OK


def _moments(args: argparse.Namespace) -> int:
    traces = moment_trace(args.n, args.alpha)
    rows = [tuple(getattr(trace, column) for column in MOMENT_COLUMNS) for trace in traces]
    var_c, cov, var_a = second_moment_asymptotics(args.n, args.alpha)
    payload = {
        "trace": traces[-1],
        "closed_form": mean_closed_form(args.n, args.alpha, verify=True),
        "second_moment_asymptotics": {"var_c": var_c, "cov_ac": cov, "var_a": var_a},
    }
    _emit(args, "csv", MOMENT_COLUMNS, rows, payload)
    return EXIT_OK


def _limits(args: argparse.Namespace) -> int:
    summary = limit_summary(args.alpha)
    row = (summary.alpha, summary.nu, summary.mu, summary.tau2, summary.rho, summary.sigma2)
    _emit(args, "json", LIMIT_COLUMNS, [row], summary.to_record())
    return EXIT_OK


def _sweep(args: argparse.Namespace) -> int:
    if args.quantity == "all":
        wanted = list(SWEEP_COLUMNS[1:])
    else:
        wanted = [name.strip() for name in args.quantity.split(",") if name.strip()]
        unknown = sorted(set(wanted) - set(SWEEP_COLUMNS[1:]))
        if unknown or not wanted:
            raise InvalidParameterError(f"unknown sweep quantities {unknown}; choose from {SWEEP_COLUMNS[1:]}")
    columns = ["alpha", *wanted]
    records = [row._asdict() for row in sweep_rows(parse_grid(args.grid))]
    rows = [tuple(record[column] for column in columns) for record in records]
    _emit(args, "csv", columns, rows, [{column: record[column] for column in columns} for record in records])
    return EXIT_OK


def _validate(args: argparse.Namespace) -> int:
    overrides: dict[str, Any] = {"workers": args.workers}
    if args.n is not None:
        overrides["engine_n"] = args.n
    if args.alpha is not None:
        overrides["engine_alphas"] = [args.alpha]
    if args.trials is not None:
        overrides["engine_trials"] = args.trials
    if args.seed is not None:
        overrides["seed"] = args.seed
    only = [name.strip() for name in args.only.split(",")] if args.only else None
    harness = ValidationHarness(**overrides)
    if only is not None:
        unknown = sorted(set(only) - set(harness.checks()))
        if unknown:
            raise InvalidParameterError(f"unknown checks {unknown}; choose from {sorted(harness.checks())}")
    report = harness.run(only)
    rows = [(check.name, check.passed, check.seconds) for check in report.checks]
    _emit(args, "json", ("check", "passed", "seconds"), rows, report)
    if not report.passed:
        logger.error(f"validation failed: {', '.join(report.failures())}")
        return EXIT_VALIDATION
    return EXIT_OK


def _extrema(args: argparse.Namespace) -> int:
    extrema = limit_curve_extrema()
    row = tuple(getattr(extrema, column) for column in EXTREMA_COLUMNS)
    _emit(args, "json", EXTREMA_COLUMNS, [row], extrema)
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "simulate": _simulate,
    "pmf": _pmf,
    "moments": _moments,
    "limits": _limits,
    "sweep": _sweep,
    "validate": _validate,
    "extrema": _extrema,
}


def _configure_logging(verbose: bool, sink: IO[str]) -> None:
    logger.remove()
    logger.add(sink, level="DEBUG" if verbose else "WARNING")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, dispatch to the subcommand and return the exit status."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    _configure_logging(args.verbose, sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except (InvalidParameterError, ValidationError) as exc:
        logger.error(str(exc))
        return EXIT_USAGE
    except FordCherriesError as exc:
        logger.error(f"internal check failed: {exc}")
        return EXIT_VALIDATION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
