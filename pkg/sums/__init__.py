"""
Analytic experiments: character sums, sieve remainders, the sums of the
Siegel-zero argument, and counts of p-th powers mod p^2.
"""
from .charsums import (
    BurgessReport,
    BurgessRow,
    angle_counts,
    char_sum,
    burgess_envelope,
    burgess_envelope_report,
    polya_vinogradov_ceiling,
)
from .siegel import (
    SiegelExperiment,
    residue_primes_in_middle_range,
    H_sum,
    heathbrown_sum,
    T_relaxed,
    T_double_sum,
    sifted_members,
    sifted_count,
    prime_primitive_root_count,
    run_siegel_experiment,
)
from .remainder import (
    DEFAULT_ETA,
    RemainderRecord,
    WeightedRemainderReport,
    default_epsilon,
    default_y,
    default_y_H,
    remainder_Rd,
    remainder_Rd_H,
    weighted_remainder_report,
    weighted_remainder_report_H,
    weighted_remainder_sum,
    weighted_remainder_sum_H,
)
from .kruswijk import PthPowerRow, kruswijk_B, pth_power_table, fitted_constant
