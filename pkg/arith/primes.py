# arith/primes.py
import logging
from fractions import Fraction
from math import floor, isqrt
from typing import List, Union

import numpy as np

logger = logging.getLogger("lamroot.arith")

Real = Union[int, float, Fraction]

SEGMENT_SIZE = 1 << 18


def _base_primes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p : limit + 1 : p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def primes_between(lo: int, hi: int) -> List[int]:
    """
    All primes p with lo <= p < hi, by a segmented sieve of Eratosthenes.
    """
    lo = max(lo, 2)
    if hi <= lo:
        return []
    base = _base_primes(isqrt(hi - 1))
    found: List[int] = []
    for start in range(lo, hi, SEGMENT_SIZE):
        end = min(start + SEGMENT_SIZE, hi)
        mask = np.ones(end - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= end:
                break
            first = max(p * p, ((start + p - 1) // p) * p)
            mask[first - start :: p] = False
        found.extend((np.flatnonzero(mask) + start).tolist())
    if hi - lo > SEGMENT_SIZE:
        logger.debug(f"Sieved [{lo}, {hi}): {len(found)} primes")
    return found


def primes_up_to(n: int) -> List[int]:
    """All primes p <= n."""
    return primes_between(2, n + 1)


def smallest_prime_factor_table(n: int) -> np.ndarray:
    """spf[k] = least prime factor of k for 2 <= k <= n; spf[0] = 0, spf[1] = 1."""
    spf = np.zeros(n + 1, dtype=np.int64)
    if n >= 1:
        spf[1] = 1
    for p in range(2, isqrt(n) + 1):
        if spf[p] == 0:
            block = spf[p : n + 1 : p]
            block[block == 0] = p
    # whatever is left unmarked is prime
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def exact(x: Real) -> Fraction:
    """Exact rational value of a real argument (floats keep their binary value)."""
    return x if isinstance(x, Fraction) else Fraction(x)


def exceeds_root(n: int, x: Real, k: int, j: int = 1) -> bool:
    """n > x^(j/k), decided exactly as n^k > x^j."""
    return Fraction(n) ** k > exact(x) ** j


def below_root(n: int, x: Real, k: int, j: int = 1) -> bool:
    """n < x^(j/k), decided exactly as n^k < x^j."""
    return Fraction(n) ** k < exact(x) ** j


def floor_real(x: Real) -> int:
    return floor(exact(x))


def primes_in_open_root_range(x: Real, lo: tuple = (1, 3), hi: tuple = (2, 3)) -> List[int]:
    """
    Primes p with x^(lo) < p < x^(hi), both ends open; lo and hi are
    (numerator, denominator) exponent pairs.
    """
    top = int(float(exact(x)) ** (hi[0] / hi[1])) + 2
    return [p for p in primes_up_to(top) if exceeds_root(p, x, lo[1], lo[0]) and below_root(p, x, hi[1], hi[0])]
