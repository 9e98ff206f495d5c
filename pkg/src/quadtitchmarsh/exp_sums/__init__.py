from .values import BoundReport, ComplexValue, ExpSumParams, bound_report, phase_sum
from .gauss import gauss_closed, gauss_direct, gauss_split_check, gauss_sum
from .kloosterman import BoundCheck, kloosterman, kloosterman_bound_check, kloosterman_sweep, unit_sum
from .salie import SalieSweepResult, salie_closed, salie_direct, salie_sweep
from .conic import (
    C_CEILING,
    DIRECT_MODULUS_GUARD,
    SweepResult,
    check_sweep,
    conic_points,
    e_bound_sweep,
    e_crt_sweep,
    e_sum_crt,
    e_sum_direct,
    e_sum_orthogonal
)
