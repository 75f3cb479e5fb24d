"""
Dirichlet characters mod q, the subgroup G, and the exact coefficients c_chi
of the lambda-root indicator.
"""
from .roots import RootOfUnity, unit_roots
from .basis import UnitGroupBasis, build_basis, LOG_TABLE_LIMIT
from .character import DirichletCharacter
from .subgroup import (
    CharSubgroupG,
    Coefficient,
    InducedPeriodicityReport,
    all_characters,
    enumerate_G,
    coefficient,
    cyclic_coefficient,
    order_census_expected,
    gamma_by_characters,
    gamma_values_by_characters,
    coefficient_sum_check,
    induced_periodicity_check,
    coefficient_table,
    ROUNDING_TOLERANCE,
)
