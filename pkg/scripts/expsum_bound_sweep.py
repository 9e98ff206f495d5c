"""
Seeded verification sweeps over the complete exponential sums: the Weil bound for Kloosterman sums,
the closed form of Salie sums, and direct vs CRT evaluation of the conic sum E together with its
empirical bound constant.
"""
import deepctx.scripting as dcs

from quadtitchmarsh import exp_sums
from quadtitchmarsh.cli import EXPSUM_COLUMNS, expsum_row, parse_int

import _common


def define_arguments(context: dcs.Context):
    parser = context.argument_parser
    _common.define_output_arguments(parser)

    group = parser.add_argument_group("Sweep Settings")
    _common.define_sweep_arguments(group)
    group.add_argument("--kloosterman-samples", type=parse_int, default=10000)
    group.add_argument("--kloosterman-m-max", type=parse_int, default=3000)
    group.add_argument("--salie-samples", type=parse_int, default=1000)
    group.add_argument("--salie-d-max", type=parse_int, default=1500)
    group.add_argument("--e-samples", type=parse_int, default=1000)
    group.add_argument("--e-d-max", type=parse_int, default=3000)


def main(context: dcs.Context):
    config = context.config
    run = context.get(dcs.module.Wandb).run

    print("Kloosterman sums...")
    checks = exp_sums.kloosterman_sweep(
        config.kloosterman_samples, config.kloosterman_m_max, config.seed, strict=False, progress=True)
    kloosterman_failures = sum(not c.passed for c in checks)
    print(f"{kloosterman_failures} of {len(checks):,} sums exceed the Weil bound.")

    print("Salie sums...")
    salie = exp_sums.salie_sweep(config.salie_samples, config.salie_d_max, config.seed, progress=True)
    print(f"Max closed-form deviation: {salie.max_deviation:.3e} * sqrt(d)")

    print("Conic sums...")
    result = exp_sums.e_bound_sweep(
        config.e_d_max,
        config.e_samples,
        config.seed,
        composite_only=True,
        workers=config.workers,
        progress=True)
    print(f"C_est = {result.c_est:.6f}; {result.crt_failures} CRT mismatches "
          f"(max deviation {result.max_deviation:.3e})")

    run.summary.update({
        "kloosterman_failures": kloosterman_failures,
        "salie_max_deviation": salie.max_deviation,
        "e_crt_failures": result.crt_failures,
        "e_max_deviation": result.max_deviation,
        "c_est": result.c_est
    })

    rows = [expsum_row(r) for r in result.reports]
    path = _common.write_table(config, "expsum", "expsum_bound_sweep", rows, EXPSUM_COLUMNS,
                               seed=config.seed)
    print(f"Wrote {path}")
    exp_sums.check_sweep(result)


if __name__ == "__main__":
    context = dcs.Context(main)
    context.use(dcs.module.Wandb) \
        .defaults(project="quad-titchmarsh")
    define_arguments(context)
    context.execute()
