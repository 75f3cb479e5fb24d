# lambda_roots/structure.py
import logging
from typing import List, Tuple

from pydantic import BaseModel, Field
from sympy import isprime

from arith import (
    ConsistencyError,
    DomainError,
    ModulusLike,
    as_modulus,
    primes_in_open_root_range,
    quadratic_character,
)
from .predicate import gamma_direct

logger = logging.getLogger("lamroot.lambda")


def require_odd_prime(q: ModulusLike):
    mod = as_modulus(q)
    if mod.q % 2 == 0 or not isprime(mod.q):
        raise DomainError(f"{mod.q} is not an odd prime")
    return mod


class TwoPrimeReport(BaseModel):
    """Two-prime primitive roots p1*p2 < x with p1, p2 > x^(1/3)."""
    q: int
    x: float
    T: int = Field(..., description="Number of such products that are primitive roots")
    products: List[Tuple[int, int]] = Field(default=[], description="(p1, p2) with p1 the residue factor")


def two_prime_qr_split(q: ModulusLike, x) -> TwoPrimeReport:
    """
    Enumerate products p1*p2 < x of primes above x^(1/3) that are primitive
    roots mod the odd prime q, checking that exactly one factor is a
    quadratic residue.

    Raises:
        ConsistencyError: if a primitive root shows zero or two residue factors
    """
    mod = require_odd_prime(q)
    primes = primes_in_open_root_range(x, (1, 3), (2, 3))
    products = []
    for i, p1 in enumerate(primes):
        for p2 in primes[i:]:
            if p1 * p2 >= x:
                break
            if not gamma_direct(p1 * p2, mod):
                continue
            residues = [p for p in (p1, p2) if quadratic_character(p, mod) == 1]
            if len(residues) != 1:
                raise ConsistencyError(f"{p1}*{p2} is a primitive root mod {mod.q} with residue factors {residues}")
            qr = residues[0]
            products.append((qr, p2 if qr == p1 else p1))
    logger.info(f"Two-prime split mod {mod.q}, x={x}: T={len(products)}")
    return TwoPrimeReport(q=mod.q, x=float(x), T=len(products), products=products)


class LiftReport(BaseModel):
    """Which primitive roots mod p up to a limit stay primitive roots mod p^2."""
    p: int
    limit: int
    lifting: List[int] = Field(default=[], description="Primitive roots mod p that are primitive mod p^2")
    exceptional: List[int] = Field(default=[], description="Primitive roots g mod p with g^(p-1) = 1 mod p^2")


def lift_check(p: int, limit: int) -> LiftReport:
    """Split the primitive roots g <= limit mod p into those that lift to p^2 and the exceptions."""
    require_odd_prime(p)
    lifting, exceptional = [], []
    for g in range(2, limit + 1):
        if not gamma_direct(g, p):
            continue
        if pow(g, p - 1, p * p) == 1:
            exceptional.append(g)
        else:
            lifting.append(g)
    if exceptional:
        logger.info(f"Primitive roots mod {p} failing to lift to {p * p}: {exceptional}")
    return LiftReport(p=p, limit=limit, lifting=lifting, exceptional=exceptional)
