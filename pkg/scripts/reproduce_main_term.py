"""
Reproduce the prime-pair divisor sum against its main term over several decades of N.

For each N the script enumerates all ordered prime pairs once, verifies S = M1 + M2 - Q at the
default split point, compares the pair count with pi N / log^2 N and reports S / main term. Each row
is logged to Weights & Biases and the table is written as CSV.
"""
import deepctx.scripting as dcs
from tqdm import tqdm

from quadtitchmarsh import solution_counts, titchmarsh
from quadtitchmarsh.cli import SUM_COLUMNS, parse_int

import _common


def define_arguments(context: dcs.Context):
    parser = context.argument_parser
    _common.define_output_arguments(parser)

    group = parser.add_argument_group("Experiment Settings")
    group.add_argument("--n-values", type=parse_int, nargs="+", default=[10**5, 10**6, 10**7, 10**8])
    group.add_argument("--pair-count-k", type=float, default=titchmarsh.PAIR_COUNT_K)
    group.add_argument("--main-term-k", type=float, default=titchmarsh.MAIN_TERM_K)
    _common.define_constant_arguments(group)


def main(context: dcs.Context):
    config = context.config

    print("Computing the singular series constant...")
    c = solution_counts.singular_constant(config.p_limit)
    print(f"C0 = {c.value:.12f} (tail bound {c.tail_bound:.3e})")

    run = context.get(dcs.module.Wandb).run
    rows = []
    for n in tqdm(sorted(config.n_values)):
        if not context.is_running:
            break
        z = titchmarsh.default_z(n)
        decomposition = titchmarsh.decompose(n, z)
        pairs = titchmarsh.pair_count_check(n, config.pair_count_k, strict=False)
        report = titchmarsh.main_term(n, decomposition.s, c)
        row = {
            "n": n,
            "pair_count": pairs.pair_count,
            "sum_tau": decomposition.s,
            "z": z,
            "m1": decomposition.m1,
            "m2": decomposition.m2,
            "q": decomposition.q,
            "main_term": report.main_term,
            "ratio": report.ratio,
            "error_budget": report.error_budget,
            "constant_p_limit": c.p_limit,
            "constant_value": c.value,
            "pair_ratio": pairs.ratio,
            "pair_budget": pairs.k * pairs.budget,
            "within_envelope": report.within(config.main_term_k)
        }
        rows.append(row)
        run.log(row)
        print(f"N={n:,}: ratio={report.ratio:.6f}, |ratio - 1|={abs(report.ratio - 1):.6f}, "
              f"pair ratio={pairs.ratio:.6f}")

    path = _common.write_table(config, "main_term", "reproduce_main_term", rows,
                               SUM_COLUMNS + ["pair_ratio", "pair_budget", "within_envelope"])
    print(f"Wrote {path}")


if __name__ == "__main__":
    context = dcs.Context(main)
    context.use(dcs.module.Wandb) \
        .defaults(project="quad-titchmarsh")
    define_arguments(context)
    context.execute()
