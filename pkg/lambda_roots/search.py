# lambda_roots/search.py
import logging
from functools import lru_cache
from math import ceil, gcd, log
from typing import Dict, Iterable, Optional, Tuple

from pydantic import BaseModel, Field

from arith import ConsistencyError, ModulusLike, as_modulus, factorize, mult_order
from .predicate import gamma_direct

logger = logging.getLogger("lamroot.lambda")

DEFAULT_LIMIT_EXPONENT = 0.6


class LambdaSearchResult(BaseModel):
    """Least P_r lambda-root mod q found below a limit, or the fact that none was."""
    q: int
    r: int = Field(..., ge=1)
    limit: int = Field(..., description="Search bound, inclusive")
    found: bool
    value: Optional[int] = Field(None, description="g*_r(q) when found")
    factors: Tuple[Tuple[int, int], ...] = ()
    big_omega: Optional[int] = None
    is_prime: Optional[bool] = None
    is_squarefree: Optional[bool] = None
    smallest_prime_factor: Optional[int] = None
    ratio: Optional[float] = Field(None, description="log g*_r(q) / log q_c; None when q_c = 1")


@lru_cache(maxsize=1 << 16)
def _small_factors(n: int):
    return factorize(n)


def search_limit(q: ModulusLike, r: int, policy: str = "auto") -> int:
    """
    Search bound for g*_r(q).

    Policies:
        auto[:e]  r >= 2: max(ceil(q_c^e), 8) with e = 0.6 by default;
                  r = 1: 2 * q~_c (gamma has period q~_c)
        fixed:N   N for every r
    """
    mod = as_modulus(q)
    name, _, arg = policy.partition(":")
    if name == "fixed":
        limit = int(arg)
    elif name == "auto":
        exponent = float(arg) if arg else DEFAULT_LIMIT_EXPONENT
        limit = 2 * mod.qtilde if r == 1 else max(ceil(mod.qc ** exponent), 8)
    else:
        raise ValueError(f"Unknown limit policy: {policy}")
    if limit < 2:
        raise ValueError(f"search limit must be at least 2, got {limit}")
    return limit


def _result(mod, r: int, limit: int, value: Optional[int]) -> LambdaSearchResult:
    if value is None:
        return LambdaSearchResult(q=mod.q, r=r, limit=limit, found=False)
    f = _small_factors(value)
    ratio = log(value) / log(mod.qc) if mod.qc > 1 else None
    return LambdaSearchResult(
        q=mod.q,
        r=r,
        limit=limit,
        found=True,
        value=value,
        factors=f.factors,
        big_omega=f.big_omega,
        is_prime=f.big_omega == 1,
        is_squarefree=f.is_squarefree,
        smallest_prime_factor=f.smallest_prime,
        ratio=ratio,
    )


def least_lambda_roots(q: ModulusLike, limits: Dict[int, int]) -> Dict[int, LambdaSearchResult]:
    """
    g*_r(q) for several r in one increasing pass over n.

    Each candidate goes through a gcd filter, then the Omega filter, then the
    order test; every value found is re-verified through mult_order.

    Args:
        q: The modulus
        limits: r -> inclusive search bound

    Returns:
        dict: r -> LambdaSearchResult
    """
    mod = as_modulus(q)
    pending = dict(limits)
    found: Dict[int, int] = {}
    top = max(pending.values(), default=1)
    n = 1
    while pending and n < top:
        n += 1
        if gcd(n, mod.q) != 1:
            continue
        omega_n = _small_factors(n).big_omega
        wanted = [r for r, lim in pending.items() if omega_n <= r and n <= lim]
        if not wanted:
            continue
        if not gamma_direct(n, mod):
            continue
        if mult_order(n, mod) != mod.bigE:
            raise ConsistencyError(f"{n} passed the lambda-root test mod {mod.q} but has order {mult_order(n, mod)}")
        for r in wanted:
            found[r] = n
            del pending[r]
        pending = {r: lim for r, lim in pending.items() if lim > n}
    results = {r: _result(mod, r, lim, found.get(r)) for r, lim in sorted(limits.items())}
    logger.debug(f"Least lambda-roots mod {mod.q}: {found}")
    return results


def least_Pr_lambda_root(q: ModulusLike, r: int, limit: Optional[int] = None) -> LambdaSearchResult:
    """Least lambda-root mod q with at most r prime factors, searched up to limit."""
    if r < 1:
        raise ValueError(f"r must be at least 1, got {r}")
    if limit is None:
        limit = search_limit(q, r)
    if limit < 2:
        raise ValueError(f"limit must be at least 2, got {limit}")
    return least_lambda_roots(q, {r: limit})[r]


def least_lambda_roots_for(q: ModulusLike, rs: Iterable[int], policy: str = "auto") -> Dict[int, LambdaSearchResult]:
    """g*_r(q) for each r in rs with limits taken from a policy."""
    return least_lambda_roots(q, {r: search_limit(q, r, policy) for r in rs})
