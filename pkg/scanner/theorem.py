# scanner/theorem.py
"""
Reference exponents the scan ratios are read against.
"""
from typing import Dict, Optional

from arith import DomainError, ModulusLike, as_modulus

# delta_r for the least P_r lambda-root; every r >= 5 uses the last value
DELTA = {2: 0.0044560, 3: 0.074267, 4: 0.103974}
DELTA_TAIL = 0.1249

# g*_r(p) << p^(exponent) for prime moduli
PRIME_EXPONENTS: Dict[int, float] = {
    2: 1 / 2 + 1 / 873,
    3: 3 / 8 + 1 / 207,
    4: 1 / 3 + 1 / 334,
}

# g*(q) under a Siegel zero
SIEGEL_EXPONENT = 3 / 4


def delta(r: int) -> float:
    if r < 2:
        raise DomainError(f"delta_r is defined for r >= 2, got {r}")
    return DELTA.get(r, DELTA_TAIL)


def main_exponent(r: int) -> float:
    """1/4 + 1/(4(r - 1 - delta_r)), the exponent of q_c bounding g*_r(q)."""
    return 0.25 + 1 / (4 * (r - 1 - delta(r)))


def reference_exponent(r: int) -> Optional[float]:
    """main_exponent(r) where one exists; r = 1 has none."""
    return main_exponent(r) if r >= 2 else None


def x_threshold(q: ModulusLike, r: int, eta: float) -> float:
    """q_c^(main_exponent(r) + 15 eta), above which P_r lambda-roots below x are guaranteed."""
    mod = as_modulus(q)
    return mod.qc ** (main_exponent(r) + 15 * eta)
