"""
Brute-force oracles for lamroot tests. Everything here is deliberately
naive: no sieve, no discrete logs, no characters.
"""
import os
import tempfile
import contextlib
from math import gcd, lcm
from typing import Dict, List

import yaml


def brute_order(n: int, q: int) -> int:
    """Multiplicative order of n mod q by repeated multiplication."""
    assert gcd(n, q) == 1
    k, x = 1, n % q
    while x != 1 % q:
        x = x * n % q
        k += 1
    return k


def brute_units(q: int) -> List[int]:
    return [n for n in range(1, q) if gcd(n, q) == 1] or [0]


def brute_exponent(q: int) -> int:
    """lcm of all unit orders."""
    return lcm(1, *(brute_order(n, q) for n in brute_units(q)))


def brute_lambda_roots(q: int) -> List[int]:
    E = brute_exponent(q)
    return [n for n in brute_units(q) if brute_order(n, q) == E]


def brute_is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def brute_big_omega(n: int) -> int:
    count, d = 0, 2
    while d * d <= n:
        while n % d == 0:
            n //= d
            count += 1
        d += 1
    return count + (1 if n > 1 else 0)


def brute_least_Pr_root(q: int, r: int, limit: int):
    roots = set(brute_lambda_roots(q))
    for n in range(2, limit + 1):
        if gcd(n, q) == 1 and n % q in roots and brute_big_omega(n) <= r:
            return n
    return None


def brute_legendre(n: int, p: int) -> int:
    if n % p == 0:
        return 0
    return 1 if any(x * x % p == n % p for x in range(1, p)) else -1


def brute_component_census(q: int) -> Dict[int, int]:
    """Number of units of each order."""
    census: Dict[int, int] = {}
    for n in brute_units(q):
        d = brute_order(n, q)
        census[d] = census.get(d, 0) + 1
    return census


@contextlib.contextmanager
def temp_config_file(config_data: dict):
    """
    Create a temporary YAML config file for testing.

    Yields:
        str: Path to the temporary file
    """
    with tempfile.NamedTemporaryFile(mode='w+', suffix='.yaml', delete=False) as f:
        yaml.dump(config_data, f)
        temp_path = f.name
    try:
        yield temp_path
    finally:
        if os.path.exists(temp_path):
            os.remove(temp_path)
