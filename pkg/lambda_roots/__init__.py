"""
The lambda-root predicate and the searches built on it.
"""
from .predicate import gamma_direct, count_lambda_roots, exponent_primes
from .search import (
    LambdaSearchResult,
    search_limit,
    least_lambda_roots,
    least_lambda_roots_for,
    least_Pr_lambda_root,
    DEFAULT_LIMIT_EXPONENT,
)
from .structure import (
    TwoPrimeReport,
    LiftReport,
    two_prime_qr_split,
    lift_check,
    require_odd_prime,
)
