# arith/factorization.py
from functools import lru_cache
from math import prod
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import factorint, isprime


class Factorization(BaseModel):
    """Prime factorization of a positive integer as (prime, exponent) pairs, primes ascending."""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="The factored integer")
    factors: Tuple[Tuple[int, int], ...] = Field(default=(), description="(prime, exponent) pairs")

    @model_validator(mode="after")
    def _check_product(self):
        primes = [p for p, _ in self.factors]
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise ValueError(f"primes must be strictly increasing, got {primes}")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be positive")
        if recompose(self.factors) != self.n:
            raise ValueError(f"factors {self.factors} do not multiply to {self.n}")
        return self

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def omega(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)

    @property
    def big_omega(self) -> int:
        """Number of prime factors counted with multiplicity."""
        return sum(e for _, e in self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    @property
    def mobius(self) -> int:
        if not self.is_squarefree:
            return 0
        return -1 if self.omega % 2 else 1

    @property
    def euler_phi(self) -> int:
        return prod((p - 1) * p ** (e - 1) for p, e in self.factors)

    @property
    def smallest_prime(self) -> int:
        """Least prime factor; 1 for n = 1."""
        return self.factors[0][0] if self.factors else 1


def recompose(factors) -> int:
    """Multiply (prime, exponent) pairs back together."""
    return prod(p ** e for p, e in factors)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    """
    Factor n exactly.

    Trial division and Pollard rho with a fixed seed (sympy's factorint),
    backed by a deterministic primality test below 2^64, so the same input
    always yields the same output.

    Args:
        n: Integer to factor, n >= 1

    Returns:
        Factorization: sorted (prime, exponent) pairs; empty for n = 1
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    raw = factorint(n)
    factors = tuple(sorted((int(p), int(e)) for p, e in raw.items()))
    for p, _ in factors:
        if not isprime(p):
            raise ArithmeticError(f"factorint returned composite factor {p} of {n}")
    return Factorization(n=n, factors=factors)


def classify_Pr(n: int) -> Tuple[int, bool]:
    """Return (Omega(n), is_squarefree); n is a P_r exactly when Omega(n) <= r."""
    f = factorize(n)
    return f.big_omega, f.is_squarefree


def euler_phi(n: int) -> int:
    return factorize(n).euler_phi


def omega(n: int) -> int:
    return factorize(n).omega


def big_omega(n: int) -> int:
    return factorize(n).big_omega


def mobius(n: int) -> int:
    return factorize(n).mobius


def radical(n: int) -> int:
    """Largest squarefree divisor of n."""
    return prod(factorize(n).primes)
