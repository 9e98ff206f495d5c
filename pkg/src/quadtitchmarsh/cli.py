"""
Command-line entry point.

    quad-titchmarsh [--seed S] [--format csv|json] [--out PATH] [--sieve-limit L] COMMAND ...

Artifacts go to stdout (or --out) and status lines to stderr. Exit codes: 0 success, 1 a checked
invariant failed, 2 usage or domain error, 3 I/O error.
"""
import argparse
from dataclasses import dataclass
import json
from pathlib import Path
import re
import sys
from typing import Any, Callable, TextIO

import pandas as pd

from . import exp_sums, solution_counts, titchmarsh
from .arith import PrimeSieve, build_sieve
from .errors import InvariantViolation, QuadTitchmarshError

MAX_SEED = 2**64 - 1

_INTEGER = re.compile(r"^([+-]?\d+)(?:[eE]\+?(\d+))?$")

S_TABLE_COLUMNS = ["d", "s_brute", "s_mult", "phi", "ratio_term"]
EXPSUM_COLUMNS = [
    "e1", "e2", "h1", "h2", "d", "omega", "re", "im", "magnitude", "normalizer", "ratio", "implied_C"
]
SUM_COLUMNS = [
    "n", "pair_count", "sum_tau", "z", "m1", "m2", "q", "main_term", "ratio", "error_budget",
    "constant_p_limit", "constant_value"
]
SUM_CONVENTION = "ordered pairs over all primes including p = q; C0 from odd d only"


def expsum_row(report: exp_sums.BoundReport) -> dict[str, Any]:
    """
    One EXPSUM_COLUMNS row for a bound report.
    """
    p = report.params
    return {
        "e1": p.e1,
        "e2": p.e2,
        "h1": p.h1,
        "h2": p.h2,
        "d": p.d,
        "omega": report.omega_d,
        "re": report.value.re,
        "im": report.value.im,
        "magnitude": report.magnitude,
        "normalizer": report.normalizer,
        "ratio": report.ratio,
        "implied_C": report.implied_c
    }


def log(message: str):
    print(message, file=sys.stderr, flush=True)


def parse_int(text: str) -> int:
    """
    Parse an integer flag, accepting exact scientific notation such as 1e8 or 25E+2.
    """
    match = _INTEGER.match(text.strip())
    if match is None:
        raise argparse.ArgumentTypeError(f"expected an integer (e.g. 100000000 or 1e8), got {text!r}")
    mantissa, exponent = match.groups()
    return int(mantissa) * 10**int(exponent or 0)


def parse_seed(text: str) -> int:
    seed = parse_int(text)
    if not (0 <= seed <= MAX_SEED):
        raise argparse.ArgumentTypeError(f"the seed must be a 64-bit unsigned integer, got {seed}")
    return seed


@dataclass(frozen=True)
class RunConfig:
    seed: int
    sieve_limit: int|None
    p_limit: int
    output_path: Path|None
    format: str

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            seed=args.seed,
            sieve_limit=args.sieve_limit,
            p_limit=getattr(args, "p_limit", solution_counts.DEFAULT_P_LIMIT),
            output_path=args.out,
            format=args.format)

    def sieve(self) -> PrimeSieve|None:
        if self.sieve_limit is None:
            return None
        return build_sieve(self.sieve_limit)


# Output -------------------------------------------------------------------------------------------

def _write_csv(stream: TextIO, config: RunConfig, command: str, rows: list[dict], columns: list[str]):
    stream.write(f"# seed={config.seed} command={command}\n")
    frame = pd.DataFrame(rows, columns=columns)
    for column in columns:
        if frame[column].dtype == object and frame[column].isna().any():
            frame[column] = frame[column].astype("Int64")
    frame.to_csv(stream, index=False, float_format="%.17g", lineterminator="\n")


def emit(
    config: RunConfig,
    command: str,
    rows: list[dict],
    columns: list[str],
    summary: dict[str, Any]|None = None
):
    """
    Write rows as CSV (seed comment line, then the exact header) or as one sorted-key JSON document.
    Single-row reports are flattened into the top level of the JSON document.
    """
    def write(stream: TextIO):
        if config.format == "csv":
            _write_csv(stream, config, command, rows, columns)
            return
        document: dict[str, Any] = {"command": command, "seed": config.seed}
        if summary is None and len(rows) == 1:
            document.update(rows[0])
        else:
            document["rows"] = rows
            document.update(summary or {})
        stream.write(json.dumps(document, sort_keys=True, indent=2) + "\n")

    if config.output_path is None:
        write(sys.stdout)
    else:
        with open(config.output_path, "w", newline="") as f:
            write(f)
        log(f"Wrote {config.output_path}")


# Commands -----------------------------------------------------------------------------------------

def cmd_constant(config: RunConfig, args: argparse.Namespace) -> int:
    c = solution_counts.singular_constant(config.p_limit)
    lower, upper = c.interval()
    row = {
        "p_limit": c.p_limit,
        "value": c.value,
        "tail_bound": c.tail_bound,
        "lower": lower,
        "upper": upper,
        "leading_constant": solution_counts.leading_constant(c)
    }
    emit(config, "constant", [row], list(row))
    return 0


def cmd_s_table(config: RunConfig, args: argparse.Namespace) -> int:
    rows = [
        {
            "d": row.d,
            "s_brute": row.s_brute,
            "s_mult": row.s_mult,
            "phi": row.phi,
            "ratio_term": row.ratio_term
        }
        for row in solution_counts.s_table(args.max, brute=not args.skip_brute)
    ]
    log(f"{len(rows):,} odd moduli tabulated.")
    emit(config, "s-table", rows, S_TABLE_COLUMNS, summary={"max_d": args.max})
    return 0


def cmd_expsum_verify(config: RunConfig, args: argparse.Namespace) -> int:
    result = exp_sums.e_bound_sweep(
        args.d_max,
        args.samples,
        config.seed,
        composite_only=args.composite_only,
        check_crt=not args.skip_crt,
        workers=args.workers,
        progress=args.progress)
    rows = [expsum_row(r) for r in result.reports]
    log(f"C_est = {result.c_est:.6f}, max CRT deviation = {result.max_deviation:.3e}")
    emit(config, "expsum verify", rows, EXPSUM_COLUMNS, summary={
        "c_est": result.c_est,
        "max_deviation": result.max_deviation,
        "crt_failures": result.crt_failures,
        "passed": result.passed
    })
    exp_sums.check_sweep(result)
    return 0


def cmd_expsum_kloosterman(config: RunConfig, args: argparse.Namespace) -> int:
    checks = exp_sums.kloosterman_sweep(
        args.samples, args.m_max, config.seed, strict=False, progress=args.progress)
    failures = [c for c in checks if not c.passed]
    worst = max((c.magnitude / c.bound for c in checks), default=0.0)
    row = {"samples": len(checks), "m_max": args.m_max, "failures": len(failures), "max_ratio": worst}
    emit(config, "expsum kloosterman", [row], list(row))
    if failures:
        raise InvariantViolation(f"{len(failures)} Kloosterman sums exceed the Weil bound.")
    return 0


def cmd_expsum_salie(config: RunConfig, args: argparse.Namespace) -> int:
    result = exp_sums.salie_sweep(args.samples, args.d_max, config.seed, progress=args.progress)
    row = {"samples": result.samples, "d_max": args.d_max, "max_deviation": result.max_deviation}
    emit(config, "expsum salie", [row], list(row))
    if result.max_deviation > exp_sums.values.TOLERANCE_SCALE:
        raise InvariantViolation(
            f"Salie closed form deviates by {result.max_deviation:.3e} * sqrt(d) from the direct sum.")
    return 0


def _resolve_z(args: argparse.Namespace) -> int:
    titchmarsh.validate_n(args.n)
    if args.z is not None:
        return args.z
    if args.a is not None:
        return titchmarsh.z_from_a(args.n, args.a)
    return titchmarsh.default_z(args.n)


def cmd_sum(config: RunConfig, args: argparse.Namespace) -> int:
    sieve = config.sieve()
    z = _resolve_z(args)
    decomposition = titchmarsh.decompose(args.n, z, sieve)
    pair_count = titchmarsh.enumerate_pairs(args.n, z, sieve).pair_count
    c = solution_counts.singular_constant(config.p_limit)
    report = titchmarsh.main_term(args.n, decomposition.s, c)
    within = titchmarsh.main_term_check(report)
    if not within:
        log(f"Note: ratio {report.ratio:.6f} lies outside 1 +/- {titchmarsh.MAIN_TERM_K:g} * "
            f"{report.error_budget:.6f} (ordered pairs over all primes).")
    row = {
        "n": args.n,
        "pair_count": pair_count,
        "sum_tau": decomposition.s,
        "z": decomposition.z,
        "m1": decomposition.m1,
        "m2": decomposition.m2,
        "q": decomposition.q,
        "main_term": report.main_term,
        "ratio": report.ratio,
        "error_budget": report.error_budget,
        "constant_p_limit": c.p_limit,
        "constant_value": c.value,
        "within_envelope": within,
        "convention": SUM_CONVENTION
    }
    # CSV keeps the fixed SUM_COLUMNS schema; the two flags only appear in JSON.
    emit(config, "sum", [row], SUM_COLUMNS)
    return 0


def cmd_decompose(config: RunConfig, args: argparse.Namespace) -> int:
    report = titchmarsh.decompose(args.n, _resolve_z(args), config.sieve())
    row = {"n": report.n, "z": report.z, "m1": report.m1, "m2": report.m2, "q": report.q, "s": report.s}
    emit(config, "decompose", [row], list(row))
    return 0


def cmd_pairs(config: RunConfig, args: argparse.Namespace) -> int:
    report = titchmarsh.pair_count_check(args.n, args.k, config.sieve(), strict=False)
    row = {
        "n": report.n,
        "pair_count": report.pair_count,
        "predicted": report.predicted,
        "ratio": report.ratio,
        "budget": report.budget,
        "k": report.k,
        "passed": report.passed
    }
    emit(config, "pairs", [row], list(row))
    if not report.passed:
        raise InvariantViolation(f"Pair count ratio {report.ratio:.6f} is outside its budget.")
    return 0


def cmd_classic(config: RunConfig, args: argparse.Namespace) -> int:
    sieve = config.sieve()
    report = titchmarsh.classical_titchmarsh(args.x, sieve)
    row = {
        "x": report.x,
        "prime_count": report.prime_count,
        "sum_tau": report.sum_tau,
        "main_term": report.main_term,
        "ratio": report.ratio,
        "error_budget": report.error_budget
    }
    emit(config, "classic", [row], list(row))
    return 0


# Parser -------------------------------------------------------------------------------------------

def _add_global_arguments(parser: argparse.ArgumentParser, suppress: bool):
    def default(value):
        return argparse.SUPPRESS if suppress else value
    group = parser.add_argument_group("Run Settings")
    group.add_argument("--seed", type=parse_seed, default=default(0),
                       help="The 64-bit seed recorded in every artifact.")
    group.add_argument("--format", choices=["csv", "json"], default=default("csv"))
    group.add_argument("--out", type=Path, default=default(None),
                       help="Write the artifact to this path instead of stdout.")
    group.add_argument("--sieve-limit", type=parse_int, default=default(None),
                       help="Prime sieve limit (defaults to the smallest sufficient limit).")


def _add_subcommand(
    subparsers,
    name: str,
    handler: Callable[[RunConfig, argparse.Namespace], int],
    help: str
) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(name, help=help)
    _add_global_arguments(parser, suppress=True)
    parser.set_defaults(handler=handler)
    return parser


def _add_z_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--n", type=parse_int, required=True, help="Upper bound N on p^2 + q^2.")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--z", type=parse_int, default=None, help="Divisor split point Z.")
    group.add_argument("--a", type=float, default=None,
                       help="Choose Z = sqrt(N+1) (log N)^-A, floored at 1.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quad-titchmarsh",
        description="Divisor sums over prime pairs p^2 + q^2 + 1 and the exponential sums behind them.")
    _add_global_arguments(parser, suppress=False)
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = _add_subcommand(subparsers, "constant", cmd_constant, "Singular series constant C0.")
    sub.add_argument("--p-limit", type=parse_int, default=solution_counts.DEFAULT_P_LIMIT)

    sub = _add_subcommand(subparsers, "s-table", cmd_s_table, "Tabulate s(d) for odd d.")
    sub.add_argument("--max", type=parse_int, required=True)
    sub.add_argument("--skip-brute", default=False, action="store_true",
                     help="Only evaluate the multiplicative formula.")

    expsum = subparsers.add_parser("expsum", help="Exponential sum verification sweeps.")
    expsum_commands = expsum.add_subparsers(dest="expsum_command", required=True)

    sub = _add_subcommand(expsum_commands, "verify", cmd_expsum_verify,
                          "Direct vs CRT evaluation of E and the implied bound constant.")
    sub.add_argument("--d-max", type=parse_int, default=3000)
    sub.add_argument("--samples", type=parse_int, default=10000)
    sub.add_argument("--composite-only", default=False, action="store_true")
    sub.add_argument("--skip-crt", default=False, action="store_true")
    sub.add_argument("--workers", type=int, default=1)
    sub.add_argument("--progress", default=False, action="store_true")

    sub = _add_subcommand(expsum_commands, "kloosterman", cmd_expsum_kloosterman,
                          "Weil bound sweep over Kloosterman sums.")
    sub.add_argument("--m-max", type=parse_int, default=3000)
    sub.add_argument("--samples", type=parse_int, default=10000)
    sub.add_argument("--progress", default=False, action="store_true")

    sub = _add_subcommand(expsum_commands, "salie", cmd_expsum_salie,
                          "Closed vs direct evaluation of Salie sums.")
    sub.add_argument("--d-max", type=parse_int, default=1500)
    sub.add_argument("--samples", type=parse_int, default=1000)
    sub.add_argument("--progress", default=False, action="store_true")

    sub = _add_subcommand(subparsers, "sum", cmd_sum, "S(N), its decomposition and main term.")
    _add_z_arguments(sub)
    sub.add_argument("--p-limit", type=parse_int, default=solution_counts.DEFAULT_P_LIMIT)

    sub = _add_subcommand(subparsers, "decompose", cmd_decompose, "S(N) = M1 + M2 - Q at Z.")
    _add_z_arguments(sub)

    sub = _add_subcommand(subparsers, "pairs", cmd_pairs, "Prime pair count against pi N/log^2 N.")
    sub.add_argument("--n", type=parse_int, required=True)
    sub.add_argument("--k", type=float, default=titchmarsh.PAIR_COUNT_K)

    sub = _add_subcommand(subparsers, "classic", cmd_classic, "sum_{p <= x} tau(p - 1).")
    sub.add_argument("--x", type=parse_int, required=True)

    return parser


def main(argv: list[str]|None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    config = RunConfig.from_args(args)
    try:
        return args.handler(config, args)
    except InvariantViolation as e:
        log(f"Invariant violation: {e}")
        return 1
    except (QuadTitchmarshError, ValueError) as e:
        log(f"Error: {e}")
        return 2
    except OSError as e:
        log(f"I/O error: {e}")
        return 3


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
