# sums/remainder.py
import logging
from fractions import Fraction
from math import ceil, fsum, gcd
from typing import Dict, Iterable, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from arith import (
    DomainError,
    ModulusLike,
    as_modulus,
    below_root,
    euler_phi,
    exact,
    factorize,
    floor_real,
)
from chargroup import CharSubgroupG, enumerate_G, unit_roots
from lambda_roots import gamma_direct, require_odd_prime
from .siegel import H_sum, residue_primes_in_middle_range

logger = logging.getLogger("lamroot.sums")

# just under the 1/52 ceiling on eta in the Siegel-zero regime
DEFAULT_ETA = 0.0192

# residues per block when summing characters over a partial period
PREFIX_CHUNK = 1 << 10


def default_epsilon(eta: float) -> float:
    return eta ** 2


def default_y(q: ModulusLike, x, eta: float = DEFAULT_ETA) -> float:
    """y = x^(1 - eta) / q_c^(1/4 + 3 eta)."""
    mod = as_modulus(q)
    return float(x) ** (1 - eta) / mod.qc ** (0.25 + 3 * eta)


def default_y_H(q: ModulusLike, x, eta: float = DEFAULT_ETA) -> float:
    """y = x^(1/3 - eta) / q^(1/4 + 3 eta)."""
    mod = as_modulus(q)
    return float(x) ** (1 / 3 - eta) / mod.q ** (0.25 + 3 * eta)


class RemainderRecord(BaseModel):
    """One sieve remainder R_d, computed directly and through characters."""
    q: int
    x: float
    d: int
    direct_value: float
    char_value: float
    main_term: float
    bound_envelope: float

    @property
    def discrepancy(self) -> float:
        return abs(self.direct_value - self.char_value)

    @property
    def agrees(self) -> bool:
        return self.discrepancy <= 1e-6 * (1 + abs(self.direct_value))


def _density(G: CharSubgroupG) -> Fraction:
    """c_0 phi(q) / q."""
    return G.c0 * G.modulus.phi / G.modulus.q


def _gamma_table(q: ModulusLike, top: int) -> np.ndarray:
    """gamma(n) for 0 <= n <= top."""
    mod = as_modulus(q)
    return np.array([gamma_direct(n, mod) for n in range(top + 1)], dtype=np.int64)


def _count_lambda_multiples(residue_gamma: np.ndarray, k: int, top: int) -> int:
    """
    #{1 <= m <= top : gamma(k m) = 1}, with gamma given on the residues
    0..q-1; whole periods of m are counted once and scaled.
    """
    q = len(residue_gamma)
    period = residue_gamma[((k % q) * np.arange(1, q + 1, dtype=np.int64)) % q]
    whole, rest = divmod(top, q)
    return whole * int(period.sum()) + int(period[:rest].sum())


def _partial_period_sums(G: CharSubgroupG, ends: Iterable[int]) -> Dict[int, np.ndarray]:
    """r -> (sum over 1 <= m <= r of chi_i(m))_i for each 0 <= r < q, walking m in chunks."""
    wanted = sorted(set(ends))
    sums = {}
    running = np.zeros(len(G), dtype=np.complex128)
    roots = unit_roots(G.basis.exponent)
    pending = 0
    while pending < len(wanted) and wanted[pending] == 0:
        sums[0] = running.copy()
        pending += 1
    top = wanted[-1] if wanted else 0
    for start in range(1, top + 1, PREFIX_CHUNK):
        m = np.arange(start, min(start + PREFIX_CHUNK, top + 1), dtype=np.int64)
        logs = G.basis.log_array(m)
        coprime = logs[:, 0] >= 0
        angles = (logs @ G.angle_matrix.T) % G.basis.exponent
        block = np.cumsum(roots[angles] * coprime[:, None], axis=0) + running
        while pending < len(wanted) and wanted[pending] <= m[-1]:
            sums[wanted[pending]] = block[wanted[pending] - start]
            pending += 1
        running = block[-1]
    return sums


def _prefix_character_sums(G: CharSubgroupG, tops: Iterable[int]) -> Dict[int, np.ndarray]:
    """
    top -> (sum over 1 <= m <= top of chi_i(m))_i. A full period of q adds
    phi(q) to the principal character and 0 to the rest, so only the
    partial period top mod q is summed.
    """
    q = G.modulus.q
    tops = set(tops)
    period = np.array([G.modulus.phi if chi.is_principal else 0 for chi in G], dtype=np.complex128)
    partial = _partial_period_sums(G, (t % q for t in tops))
    return {t: (t // q) * period + partial[t % q] for t in tops}


def _character_values(G: CharSubgroupG, n: int) -> np.ndarray:
    """chi_i(n) for every chi_i in G (zeros when gcd(n, q) > 1)."""
    v = G.basis.log(n)
    if v is None:
        return np.zeros(len(G), dtype=np.complex128)
    angles = (G.angle_matrix @ np.array(v, dtype=np.int64)) % G.basis.exponent
    return unit_roots(G.basis.exponent)[angles]


def _coefficient_array(G: CharSubgroupG) -> np.ndarray:
    return np.array([float(c) for c in G.coefficients])


def remainder_Rd(q: ModulusLike, x, d: int, eta: float = DEFAULT_ETA, epsilon: Optional[float] = None) -> RemainderRecord:
    """
    R_d = #{n < x : d | n, gamma(n) = 1} - (c_0 phi(q)/q)(x/d) for d coprime
    to q (0 otherwise), with an independent evaluation through the
    character expansion sum over chi in G of c_chi chi(d) sum_{m < x/d} chi(m).

    Raises:
        DomainError: unless 1 <= d < x
    """
    mod = as_modulus(q)
    xf = exact(x)
    if not 1 <= d < xf:
        raise DomainError(f"remainder needs 1 <= d < x, got d={d}, x={x}")
    eps = default_epsilon(eta) if epsilon is None else epsilon
    G = enumerate_G(mod)
    main = _density(G) * xf / d
    envelope = float(main) * mod.qc ** (2 * eps) * ((d / float(xf)) * mod.qc ** (0.25 + eta)) ** eta
    if gcd(d, mod.q) != 1:
        direct = char = 0.0
    else:
        top = ceil(xf / d) - 1
        count = _count_lambda_multiples(_gamma_table(mod, mod.q - 1), d, top)
        direct = float(count - main)
        inner = _prefix_character_sums(G, [top])[top]
        total = np.sum(_coefficient_array(G) * _character_values(G, d) * inner)
        char = float(total.real) - float(main)
    return RemainderRecord(
        q=mod.q,
        x=float(xf),
        d=d,
        direct_value=direct,
        char_value=char,
        main_term=float(main),
        bound_envelope=envelope,
    )


class WeightedRemainderReport(BaseModel):
    """sum over d <= y of mu^2(d) 3^omega(d) R_d next to its envelope."""
    q: int
    x: float
    y: float
    eta: float
    value: float
    value_reversed: float
    envelope: float
    terms: int = Field(..., description="Squarefree d <= y coprime to q that contributed")


def _sieve_weights(y, q: int) -> List[tuple]:
    """(d, 3^omega(d)) for squarefree d <= y coprime to q; other d contribute 0."""
    weights = []
    for d in range(1, floor_real(y) + 1):
        if gcd(d, q) != 1:
            continue
        f = factorize(d)
        if f.is_squarefree:
            weights.append((d, 3 ** f.omega))
    return weights


def weighted_remainder_report(q: ModulusLike, x, y, eta: float = DEFAULT_ETA) -> WeightedRemainderReport:
    """
    Accumulate mu^2(d) 3^omega(d) R_d over d <= y exactly (rationals), in
    both summation orders, and report the envelope (c_0 phi(q)/q) x^(1 - eta^2/2).
    """
    mod = as_modulus(q)
    xf = exact(x)
    if exact(y) >= xf:
        raise DomainError(f"y must be below x, got y={y}, x={x}")
    G = enumerate_G(mod)
    density = _density(G)
    weights = _sieve_weights(y, mod.q) if exact(y) >= 1 else []
    residue_gamma = _gamma_table(mod, mod.q - 1)
    terms = [w * (_count_lambda_multiples(residue_gamma, d, ceil(xf / d) - 1) - density * xf / d) for d, w in weights]
    forward = sum(terms, Fraction(0))
    backward = sum(reversed(terms), Fraction(0))
    logger.debug(f"Weighted remainder mod {mod.q}, x={x}, y={y}: {len(terms)} terms, value {float(forward):.6g}")
    return WeightedRemainderReport(
        q=mod.q,
        x=float(xf),
        y=float(y),
        eta=eta,
        value=float(forward),
        value_reversed=float(backward),
        envelope=float(density) * float(xf) ** (1 - eta ** 2 / 2),
        terms=len(terms),
    )


def weighted_remainder_sum(q: ModulusLike, x, y, eta: float = DEFAULT_ETA) -> float:
    """sum over d <= y of mu^2(d) 3^omega(d) R_d."""
    return weighted_remainder_report(q, x, y, eta).value


def remainder_Rd_H(q: ModulusLike, x, d: int, eta: float = DEFAULT_ETA, epsilon: Optional[float] = None) -> RemainderRecord:
    """
    The remainder of the upper-bound sieve in the Siegel-zero argument:
    sum over residue primes p in (x^(1/3), x^(2/3)) of #{n < x/p : d | n,
    gamma(pn) = 1}, minus (c_0 phi(q)/q)(x/d) H. For prime q the subtracted
    density c_0 phi(q)/q equals phi(q - 1)/q.

    Raises:
        DomainError: unless q is an odd prime and 1 <= d < x^(1/3)
    """
    mod = require_odd_prime(q)
    xf = exact(x)
    if d < 1 or not below_root(d, x, 3):
        raise DomainError(f"remainder needs 1 <= d < x^(1/3), got d={d}, x={x}")
    eps = default_epsilon(eta) if epsilon is None else epsilon
    G = enumerate_G(mod)
    H = H_sum(mod, x)
    main = float(_density(G) * xf / d) * H
    envelope = (
        euler_phi(mod.q - 1) / mod.q * float(xf) / d * H * mod.q ** (2 * eps)
        * ((d / float(xf) ** (1 / 3)) * mod.q ** (0.25 + eta)) ** eta
    )
    if gcd(d, mod.q) != 1:
        direct = char = 0.0
    else:
        tops = {p: ceil(xf / (p * d)) - 1 for p in residue_primes_in_middle_range(mod, x)}
        residue_gamma = _gamma_table(mod, mod.q - 1)
        count = sum(_count_lambda_multiples(residue_gamma, p * d, top) for p, top in tops.items())
        direct = count - main
        prefix = _prefix_character_sums(G, tops.values())
        inner = np.zeros(len(G), dtype=np.complex128)
        for p, top in tops.items():
            inner += _character_values(G, p) * prefix[top]
        total = np.sum(_coefficient_array(G) * _character_values(G, d) * inner)
        char = float(total.real) - main
    return RemainderRecord(
        q=mod.q,
        x=float(xf),
        d=d,
        direct_value=float(direct),
        char_value=float(char),
        main_term=main,
        bound_envelope=envelope,
    )


def weighted_remainder_report_H(q: ModulusLike, x, y, eta: float = DEFAULT_ETA) -> WeightedRemainderReport:
    """
    sum over d <= y of mu^2(d) 3^omega(d) R_d^H next to the envelope
    (phi(q - 1)/q) x^(1 - eta^2/2) H. Terms are accumulated with fsum, so both
    orders round identically.
    """
    mod = require_odd_prime(q)
    if exact(y) >= 1 and not below_root(floor_real(y), x, 3):
        raise DomainError(f"y must be below x^(1/3), got y={y}, x={x}")
    weights = _sieve_weights(y, mod.q) if exact(y) >= 1 else []
    terms = [w * remainder_Rd_H(mod, x, d, eta).direct_value for d, w in weights]
    H = H_sum(mod, x)
    return WeightedRemainderReport(
        q=mod.q,
        x=float(x),
        y=float(y),
        eta=eta,
        value=fsum(terms),
        value_reversed=fsum(reversed(terms)),
        envelope=euler_phi(mod.q - 1) / mod.q * float(x) ** (1 - eta ** 2 / 2) * H,
        terms=len(terms),
    )


def weighted_remainder_sum_H(q: ModulusLike, x, y, eta: float = DEFAULT_ETA) -> float:
    """sum over d <= y of mu^2(d) 3^omega(d) R_d^H."""
    return weighted_remainder_report_H(q, x, y, eta).value
