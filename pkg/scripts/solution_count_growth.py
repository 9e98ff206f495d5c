"""
Check the explicit formula for s(d) at primes and prime powers, then compare the weighted partial
sums of s(d) / phi(d)^2 with their predicted logarithmic growth.
"""
import deepctx.scripting as dcs
from tqdm import tqdm

from quadtitchmarsh import solution_counts
from quadtitchmarsh.arith import build_sieve
from quadtitchmarsh.cli import parse_int

import _common


def define_arguments(context: dcs.Context):
    parser = context.argument_parser
    _common.define_output_arguments(parser)

    group = parser.add_argument_group("Experiment Settings")
    group.add_argument("--prime-limit", type=parse_int, default=5000)
    group.add_argument("--power-limit", type=parse_int, default=10**5)
    group.add_argument("--z-values", type=parse_int, nargs="+", default=[10**4, 10**5, 10**6])
    _common.define_constant_arguments(group)


def main(context: dcs.Context):
    config = context.config
    run = context.get(dcs.module.Wandb).run

    print("Checking s at odd primes...")
    mismatches = 0
    for p in tqdm(build_sieve(config.prime_limit).primes[1:]):
        p = int(p)
        mismatches += solution_counts.s_brute(p) != solution_counts.s_local(p)
    print(f"{mismatches} mismatches below {config.prime_limit:,}.")

    print("Checking s at prime powers...")
    for p in (3, 5, 7, 11, 13):
        base = solution_counts.s_brute(p)
        k = 1
        while p**(k + 1) <= config.power_limit:
            mismatches += solution_counts.s_brute(p**(k + 1)) != p**k * base
            k += 1

    c = solution_counts.singular_constant(config.p_limit)
    rows = []
    for z in sorted(config.z_values):
        value = solution_counts.partial_sum_s_phi2(z)
        row = {
            "z": z,
            "partial_sum": value,
            "prediction": solution_counts.partial_sum_prediction(z, c),
            "growth": solution_counts.partial_sum_growth(z, c),
            "constant_value": c.value
        }
        rows.append(row)
        run.log(row)
        print(f"Z={z:,}: sum={value:.8f}, predicted={row['prediction']:.8f}, "
              f"sum / (C0 log Z)={row['growth']:.6f}")
    run.summary["formula_mismatches"] = mismatches

    path = _common.write_table(config, "partial_sums", "solution_count_growth", rows,
                               ["z", "partial_sum", "prediction", "growth", "constant_value"])
    print(f"Wrote {path}")
    if mismatches:
        raise AssertionError(f"{mismatches} values of s(d) disagree with the explicit formula.")


if __name__ == "__main__":
    context = dcs.Context(main)
    context.use(dcs.module.Wandb) \
        .defaults(project="quad-titchmarsh")
    define_arguments(context)
    context.execute()
