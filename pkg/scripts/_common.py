import argparse
from pathlib import Path

from quadtitchmarsh.cli import RunConfig, emit, parse_int
from quadtitchmarsh.solution_counts import DEFAULT_P_LIMIT


def define_output_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--output-path", type=Path, required=True, help="The directory for CSV reports.")


def define_constant_arguments(parser: argparse.ArgumentParser|argparse._ArgumentGroup):
    parser.add_argument("--p-limit", type=parse_int, default=DEFAULT_P_LIMIT,
                        help="Truncation bound of the Euler product.")


def define_sweep_arguments(parser: argparse.ArgumentParser|argparse._ArgumentGroup):
    parser.add_argument("--seed", type=parse_int, default=42)
    parser.add_argument("--workers", type=int, default=1)


def write_table(
    config: argparse.Namespace,
    name: str,
    command: str,
    rows: list[dict],
    columns: list[str],
    seed: int = 0
) -> Path:
    config.output_path.mkdir(exist_ok=True, parents=True)
    path = config.output_path / f"{name}.csv"
    run_config = RunConfig(
        seed=seed,
        sieve_limit=None,
        p_limit=getattr(config, "p_limit", DEFAULT_P_LIMIT),
        output_path=path,
        format="csv")
    emit(run_config, command, rows, columns)
    return path
