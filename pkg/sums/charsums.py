# sums/charsums.py
import logging
from math import log, sqrt
from typing import List

import numpy as np
from pydantic import BaseModel, Field

from arith import DomainError, ModulusLike, as_modulus
from chargroup import DirichletCharacter, enumerate_G, unit_roots

logger = logging.getLogger("lamroot.sums")


def angle_counts(chi: DirichletCharacter, N: int) -> np.ndarray:
    """How often chi(n) = e^(2 pi i a/E) for n <= N, indexed by a; an exact integer tally."""
    E = chi.basis.exponent
    if N < 1:
        return np.zeros(E, dtype=np.int64)
    logs = chi.basis.log_array(np.arange(1, N + 1))
    coprime = logs[:, 0] >= 0
    weights = np.array(chi.exponents, dtype=np.int64) * chi.basis.weights
    angles = (logs[coprime] @ weights) % E
    return np.bincount(angles, minlength=E)


def char_sum(chi: DirichletCharacter, N: int) -> complex:
    """sum over n <= N of chi(n), accumulated exactly by angle and rendered once."""
    if N < 1:
        raise DomainError(f"char_sum needs N >= 1, got {N}")
    counts = angle_counts(chi, N)
    return complex(counts @ unit_roots(chi.basis.exponent))


def polya_vinogradov_ceiling(q: int) -> float:
    """sqrt(q) log q, the classical bound on incomplete sums of a nonprincipal character."""
    return sqrt(q) * log(q)


def burgess_envelope(N: int, qc: int, eta: float) -> float:
    """N (N^-1 q_c^(1/4 + eta))^eta."""
    return N * (qc ** (0.25 + eta) / N) ** eta


class BurgessRow(BaseModel):
    exponents: tuple
    order: int
    N: int
    abs_sum: float
    envelope: float
    ratio: float = Field(..., description="|sum| / envelope")
    pv_ceiling: float
    pv_ratio: float = Field(..., description="|sum| / (sqrt(q) log q)")


class BurgessReport(BaseModel):
    q: int
    qc: int
    eta: float
    rows: List[BurgessRow] = []

    @property
    def max_ratio(self) -> float:
        return max((row.ratio for row in self.rows), default=0.0)


def burgess_envelope_report(q: ModulusLike, eta: float, N_grid: List[int]) -> BurgessReport:
    """
    Compare |sum_{n<=N} chi(n)| with the cubefree-modulus envelope for every
    nonprincipal chi in G and every N in the grid.
    """
    if not 0 < eta < 1:
        raise DomainError(f"eta must lie in (0, 1), got {eta}")
    mod = as_modulus(q)
    G = enumerate_G(mod)
    ceiling = polya_vinogradov_ceiling(mod.q)
    rows = []
    for chi in G:
        if chi.is_principal:
            continue
        for N in N_grid:
            s = abs(char_sum(chi, N))
            env = burgess_envelope(N, mod.qc, eta)
            rows.append(
                BurgessRow(
                    exponents=chi.exponents,
                    order=chi.order,
                    N=N,
                    abs_sum=s,
                    envelope=env,
                    ratio=s / env,
                    pv_ceiling=ceiling,
                    pv_ratio=s / ceiling,
                )
            )
    report = BurgessReport(q=mod.q, qc=mod.qc, eta=eta, rows=rows)
    logger.info(f"Character-sum envelope mod {mod.q}: {len(rows)} rows, max ratio {report.max_ratio:.4g}")
    return report
