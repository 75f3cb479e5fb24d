# sums/kruswijk.py
import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from math import log
from typing import Iterable, List

from pydantic import BaseModel, Field
from sympy import integer_nthroot, isprime

from arith import DomainError, exact, floor_real

logger = logging.getLogger("lamroot.sums")

CHUNK_SIZE = 16


def kruswijk_B(p: int, x) -> int:
    """
    Number of b <= x prime to p that are p-th powers mod p^2, i.e. with
    b^(p-1) = 1 mod p^2.

    Raises:
        DomainError: unless p is an odd prime and 1 < x <= p^2
    """
    if p < 3 or not isprime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    xf = exact(x)
    if not 1 < xf <= p * p:
        raise DomainError(f"x must lie in (1, p^2], got {x}")
    square = p * p
    return sum(1 for b in range(1, floor_real(xf) + 1) if b % p and pow(b, p - 1, square) == 1)


class PthPowerRow(BaseModel):
    m: int
    bound: int = Field(..., description="floor(p^(1/m))")
    B: int
    envelope: float = Field(..., description="p^(1/(2m))")
    log_ratio: float = Field(..., description="log(B / p^(1/(2m))) / (log p / log log p)")


def _log_ratio(p: int, B: int, m: int) -> float:
    return (log(B) - log(p) / (2 * m)) / (log(p) / log(log(p)))


def pth_power_table(p: int, m_list: Iterable[int]) -> List[PthPowerRow]:
    """B(p^(1/m)) for each m, with the constant it implies in p^(1/(2m)) exp(C log p / log log p)."""
    rows = []
    for m in m_list:
        if m < 1:
            raise DomainError(f"m must be at least 1, got {m}")
        bound = int(integer_nthroot(p, m)[0])
        # p^(1/m) < 2 leaves only b = 1
        B = kruswijk_B(p, bound) if bound >= 2 else 1
        rows.append(PthPowerRow(m=m, bound=bound, B=B, envelope=p ** (1 / (2 * m)), log_ratio=_log_ratio(p, B, m)))
    return rows


def _max_log_ratio(p: int, m_list: List[int]) -> float:
    return max((row.log_ratio for row in pth_power_table(p, m_list)), default=float("-inf"))


def fitted_constant(primes: Iterable[int], m_list: Iterable[int] = (1, 2, 3), jobs: int = 1) -> float:
    """
    Smallest C with B(p^(1/m)) <= p^(1/(2m)) exp(C log p / log log p) across the
    sample. Worker processes are used when jobs > 1.
    """
    primes = list(primes)
    worker = partial(_max_log_ratio, m_list=list(m_list))
    if jobs == 1 or len(primes) < 2:
        ratios = list(map(worker, primes))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            ratios = list(pool.map(worker, primes, chunksize=CHUNK_SIZE))
    C = max(ratios, default=float("-inf"))
    logger.info(f"Fitted p-th power constant over {len(primes)} primes: {C:.4f}")
    return C
