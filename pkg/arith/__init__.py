"""
Integer and modular arithmetic foundation for lamroot.
"""
from .errors import (
    LamrootError,
    NotCoprimeError,
    NoPrimitiveRootError,
    DomainError,
    ConsistencyError,
)
from .factorization import (
    Factorization,
    factorize,
    recompose,
    classify_Pr,
    euler_phi,
    omega,
    big_omega,
    mobius,
    radical,
)
from .modulus import (
    Modulus,
    ModulusLike,
    make_modulus,
    as_modulus,
    carmichael_E,
    radical_S,
    cubefree_parts,
    component_orders,
    has_primitive_root,
    lambda_root_density,
    mult_order,
    odd_prime_of,
    quadratic_character,
)
from .primes import (
    primes_between,
    primes_up_to,
    smallest_prime_factor_table,
    exact,
    exceeds_root,
    below_root,
    floor_real,
    primes_in_open_root_range,
)
