# arith/modulus.py
import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm, prod
from typing import List, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import legendre_symbol

from .errors import NoPrimitiveRootError, NotCoprimeError
from .factorization import Factorization, factorize

logger = logging.getLogger("lamroot.arith")


def _prime_power_exponent(p: int, k: int) -> int:
    """Exponent of the unit group mod p^k."""
    if p == 2:
        if k == 1:
            return 1
        if k == 2:
            return 2
        return 2 ** (k - 2)
    return (p - 1) * p ** (k - 1)


def carmichael_E(q: int) -> int:
    """Exponent E(q) of the unit group mod q; 1 for q in {1, 2}."""
    if q < 1:
        raise ValueError(f"carmichael_E needs q >= 1, got {q}")
    return lcm(1, *(_prime_power_exponent(p, k) for p, k in factorize(q).factors))


def radical_S(q: int) -> int:
    """S(q): the largest squarefree divisor of E(q)."""
    return prod(factorize(carmichael_E(q)).primes)


def cubefree_parts(q: int) -> Tuple[int, int]:
    """
    Return (q_c, q~_c) for q >= 3.

    q_c is the largest odd cubefree divisor of q, and q~_c = 2^alpha * q_c
    with alpha = max(3, ord_2 q).
    """
    if q < 3:
        raise ValueError(f"cubefree_parts needs q >= 3, got {q}")
    qc = 1
    alpha = 3
    for p, k in factorize(q).factors:
        if p == 2:
            alpha = max(3, k)
        else:
            qc *= p ** min(k, 2)
    return qc, 2 ** alpha * qc


def component_orders(q: int) -> List[int]:
    """
    Orders of the cyclic factors of the unit group mod q, one list entry
    per factor, in the order build_basis lays them out: the 2-part first
    (as -1 and then the 2^(k-2) factor), then odd prime powers ascending.
    """
    orders = []
    for p, k in factorize(q).factors:
        if p == 2:
            if k == 2:
                orders.append(2)
            elif k >= 3:
                orders.extend([2, 2 ** (k - 2)])
        else:
            orders.append((p - 1) * p ** (k - 1))
    return orders


def has_primitive_root(q: int) -> bool:
    """True for 1, 2, 4, p^k and 2p^k with p an odd prime."""
    if q in (1, 2, 4):
        return True
    f = factorize(q)
    odd = [(p, k) for p, k in f.factors if p != 2]
    two = q // prod(p ** k for p, k in odd)
    return len(odd) == 1 and two in (1, 2)


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class Modulus(BaseModel):
    """An integer modulus with its arithmetic profile cached."""
    model_config = ConfigDict(frozen=True)

    q: int = Field(..., ge=1, description="The modulus")
    factorization: Factorization = Field(..., description="Factorization of q")
    phi: int = Field(..., description="Euler phi(q)")
    bigE: int = Field(..., description="E(q), exponent of the unit group")
    bigS: int = Field(..., description="S(q), largest squarefree divisor of E(q)")
    qc: int = Field(..., description="Largest odd cubefree divisor of q")
    qtilde: int = Field(..., description="2^max(3, ord_2 q) * q_c")

    @model_validator(mode="after")
    def _check_profile(self):
        if self.bigE % self.bigS or self.phi % self.bigE:
            raise ValueError(f"S | E | phi fails for q={self.q}")
        return self

    @property
    def m_structural(self) -> dict:
        """
        p -> m(p) read off the cyclic component orders: the number of
        components whose p-adic valuation reaches that of E(q).
        """
        orders = component_orders(self.q)
        result = {}
        for p in factorize(self.bigS).primes:
            top = _valuation(self.bigE, p)
            result[p] = sum(1 for d in orders if _valuation(d, p) == top)
        return result

    @property
    def is_cyclic(self) -> bool:
        return self.bigE == self.phi


@lru_cache(maxsize=4096)
def make_modulus(q: int) -> Modulus:
    """Build (and cache) the profile of q."""
    f = factorize(q)
    bigE = carmichael_E(q)
    bigS = prod(factorize(bigE).primes)
    if q >= 3:
        qc, qtilde = cubefree_parts(q)
    else:
        qc, qtilde = 1, 8
    logger.debug(f"Profile of {q}: phi={f.euler_phi} E={bigE} S={bigS} q_c={qc}")
    return Modulus(q=q, factorization=f, phi=f.euler_phi, bigE=bigE, bigS=bigS, qc=qc, qtilde=qtilde)


ModulusLike = Union[Modulus, int]


def as_modulus(q: ModulusLike) -> Modulus:
    return q if isinstance(q, Modulus) else make_modulus(int(q))


def lambda_root_density(q: ModulusLike) -> Fraction:
    """
    c_0, the share of the unit group made of lambda-roots, computed from the
    group structure: prod over p | E(q) of (1 - p^(-m(p))).
    """
    mod = as_modulus(q)
    return prod((1 - Fraction(1, p ** m) for p, m in mod.m_structural.items()), start=Fraction(1))


def mult_order(n: int, q: ModulusLike) -> int:
    """
    Multiplicative order of n mod q, found by stripping primes off E(q).

    Raises:
        NotCoprimeError: if gcd(n, q) > 1
    """
    mod = as_modulus(q)
    if mod.q < 2:
        raise ValueError(f"mult_order needs q >= 2, got {mod.q}")
    if gcd(n, mod.q) != 1:
        raise NotCoprimeError(n, mod.q)
    n %= mod.q
    order = mod.bigE
    for p in factorize(mod.bigE).primes:
        while order % p == 0 and pow(n, order // p, mod.q) == 1:
            order //= p
    return order


def odd_prime_of(q: ModulusLike) -> int:
    """The odd prime p when q is p^k or 2p^k; raises otherwise."""
    mod = as_modulus(q)
    if mod.q in (1, 2, 4) or not has_primitive_root(mod.q):
        raise NoPrimitiveRootError(f"{mod.q} has no nonprincipal quadratic character of the cyclic kind")
    return next(p for p in mod.factorization.primes if p != 2)


def quadratic_character(n: int, q: ModulusLike) -> int:
    """
    The nonprincipal quadratic character chi_1 mod q, for q an odd prime
    power or twice one: 0 on residues sharing a factor with q, otherwise the
    Legendre symbol at the underlying odd prime.
    """
    mod = as_modulus(q)
    p = odd_prime_of(mod)
    if gcd(n, mod.q) != 1:
        return 0
    return int(legendre_symbol(n % p, p))
