# lambda_roots/predicate.py
from functools import lru_cache
from math import gcd
from typing import Tuple

from arith import ModulusLike, as_modulus, factorize


@lru_cache(maxsize=4096)
def exponent_primes(q: int) -> Tuple[int, ...]:
    """Primes dividing E(q)."""
    return factorize(as_modulus(q).bigE).primes


def gamma_direct(n: int, q: ModulusLike) -> int:
    """
    1 when n is a lambda-root mod q, else 0: n must be coprime to q and
    n^(E/p) must differ from 1 mod q for every prime p | E(q).
    """
    mod = as_modulus(q)
    if gcd(n, mod.q) != 1:
        return 0
    n %= mod.q
    for p in exponent_primes(mod.q):
        if pow(n, mod.bigE // p, mod.q) == 1:
            return 0
    return 1


def count_lambda_roots(q: ModulusLike) -> int:
    """Number of n in [1, q] that are lambda-roots mod q."""
    mod = as_modulus(q)
    return sum(gamma_direct(n, mod) for n in range(1, mod.q + 1))
