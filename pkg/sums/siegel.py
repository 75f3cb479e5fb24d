# sums/siegel.py
import logging
from math import ceil, fsum, log
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field

from arith import (
    DomainError,
    ModulusLike,
    big_omega,
    euler_phi,
    exact,
    exceeds_root,
    floor_real,
    mult_order,
    primes_between,
    primes_in_open_root_range,
    quadratic_character,
    smallest_prime_factor_table,
)
from chargroup import enumerate_G
from lambda_roots import gamma_direct, require_odd_prime, two_prime_qr_split

logger = logging.getLogger("lamroot.sums")


def residue_primes_in_middle_range(q: ModulusLike, x) -> List[int]:
    """Primes x^(1/3) < p < x^(2/3) (open at both ends) with chi_1(p) = +1."""
    mod = require_odd_prime(q)
    return [p for p in primes_in_open_root_range(x, (1, 3), (2, 3)) if quadratic_character(p, mod) == 1]


def H_sum(q: ModulusLike, x, descending: bool = False) -> float:
    """H = sum of 1/p over the residue primes in (x^(1/3), x^(2/3)); correctly rounded."""
    if exact(x) <= 1:
        raise DomainError(f"H needs x > 1, got {x}")
    primes = residue_primes_in_middle_range(q, x)
    if descending:
        primes = primes[::-1]
    return fsum(1 / p for p in primes)


def heathbrown_sum(q: ModulusLike, x, descending: bool = False) -> float:
    """sum of log p / p over primes p < x with chi_1(p) = +1."""
    mod = require_odd_prime(q)
    primes = [p for p in primes_between(2, ceil(exact(x))) if quadratic_character(p, mod) == 1]
    if descending:
        primes = primes[::-1]
    return fsum(log(p) / p for p in primes)


def _rough_mask(limit: int, x, z) -> np.ndarray:
    """
    rough[n] for 0 <= n <= limit: n = 1 or every prime factor of n exceeds z.
    z = None means z = x^(1/3), decided exactly as spf^3 > x.
    """
    spf = smallest_prime_factor_table(limit)
    if z is None:
        rough = (spf.astype(object) ** 3 > floor_real(x)).astype(bool)
    else:
        rough = spf > floor_real(z)
    rough[0] = False
    if limit >= 1:
        rough[1] = True
    return rough


def _check_sieve_level(x, z, upper_root: int):
    if z is None:
        return
    zf = exact(z)
    if zf < 2:
        raise DomainError(f"z must be at least 2, got {z}")
    if zf ** upper_root > exact(x):
        bound = "x^(1/3)" if upper_root == 3 else "x"
        raise DomainError(f"z must not exceed {bound}, got z={z}, x={x}")


def T_relaxed(q: ModulusLike, x, z=None) -> int:
    """
    T(z): pairs (p, n) with p a residue prime in (x^(1/3), x^(2/3)), n < x/p
    free of prime factors <= z, and pn a primitive root mod q.
    z = None stands for z = x^(1/3) exactly.
    """
    mod = require_odd_prime(q)
    _check_sieve_level(x, z, 3)
    primes = residue_primes_in_middle_range(mod, x)
    if not primes:
        return 0
    xf = exact(x)
    limit = ceil(xf / primes[0]) - 1
    rough = _rough_mask(limit, x, z)
    count = 0
    for p in primes:
        for n in range(1, ceil(xf / p)):
            if rough[n] and gamma_direct(p * n, mod):
                count += 1
    return count


def T_double_sum(q: ModulusLike, x) -> int:
    """
    T as the double sum over residue primes p1 in (x^(1/3), x^(2/3)) and
    nonresidue primes p2 in (x^(1/3), x/p1) of the primitive-root indicator
    of p1*p2, with the order tested through mult_order.
    """
    mod = require_odd_prime(q)
    xf = exact(x)
    count = 0
    for p1 in residue_primes_in_middle_range(mod, x):
        for p2 in primes_between(2, ceil(xf / p1)):
            if not exceeds_root(p2, x, 3) or quadratic_character(p2, mod) != -1:
                continue
            if mult_order(p1 * p2, mod) == mod.q - 1:
                count += 1
    return count


def sifted_members(q: ModulusLike, x, z=None) -> List[int]:
    """n < x that are lambda-roots mod q with least prime factor above z (z = None: x^(1/3))."""
    _check_sieve_level(x, z, 1)
    top = ceil(exact(x)) - 1
    if top < 1:
        return []
    rough = _rough_mask(top, x, z)
    return [n for n in range(1, top + 1) if rough[n] and gamma_direct(n, q)]


def sifted_count(q: ModulusLike, x, z=None) -> int:
    """Number of lambda-roots n < x mod q whose least prime factor exceeds z."""
    return len(sifted_members(q, x, z))


def prime_primitive_root_count(q: ModulusLike, x) -> int:
    """Number of primes p < x that are lambda-roots mod q."""
    return sum(gamma_direct(p, q) for p in primes_between(2, ceil(exact(x))))


class SiegelExperiment(BaseModel):
    """The quantities of the Siegel-zero argument evaluated for one prime modulus."""
    q: int
    x: float
    z: Optional[float] = Field(None, description="Sieve level for T(z); None means x^(1/3)")
    H: float
    heathbrown_sum: float
    T_exact: int
    T_double_sum: int
    T_relaxed: int
    prime_primitive_root_count: int
    sifted_count: int
    sifted_max_omega: int = Field(..., description="Largest Omega(n) among the sifted lambda-roots")
    density_identity: bool = Field(..., description="c_0 phi(q) = phi(q - 1)")

    @property
    def checks(self) -> dict:
        return {
            "T_exact <= T_relaxed": self.T_exact <= self.T_relaxed,
            "T_exact == double sum": self.T_exact == self.T_double_sum,
            "sifted roots are P_2": self.sifted_max_omega <= 2,
            "c0*phi(q) == phi(q-1)": self.density_identity,
            "H >= 0": self.H >= 0,
        }

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def run_siegel_experiment(q: ModulusLike, x, z=None) -> SiegelExperiment:
    """Evaluate H, the Heath-Brown sum, T and T(z), and the sifted counts for the odd prime q."""
    mod = require_odd_prime(q)
    if exact(x) <= 1:
        raise DomainError(f"x must exceed 1, got {x}")
    members = sifted_members(mod, x)
    c0 = enumerate_G(mod).c0
    experiment = SiegelExperiment(
        q=mod.q,
        x=float(x),
        z=None if z is None else float(z),
        H=H_sum(mod, x),
        heathbrown_sum=heathbrown_sum(mod, x),
        T_exact=two_prime_qr_split(mod, x).T,
        T_double_sum=T_double_sum(mod, x),
        T_relaxed=T_relaxed(mod, x, z),
        prime_primitive_root_count=prime_primitive_root_count(mod, x),
        sifted_count=len(members),
        sifted_max_omega=max((big_omega(n) for n in members), default=0),
        density_identity=c0 * mod.phi == euler_phi(mod.q - 1),
    )
    logger.info(f"Siegel experiment mod {mod.q}, x={x}: passed={experiment.passed}")
    return experiment
