# chargroup/roots.py
import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np


class RootOfUnity:
    """
    The exact root of unity e^(2 pi i k/d), kept as a reduced angle k/d with 0 <= k < d.
    """
    __slots__ = ("k", "d")

    def __init__(self, k: int, d: int):
        if d < 1:
            raise ValueError(f"denominator must be positive, got {d}")
        k %= d
        g = gcd(k, d)
        self.k = k // g
        self.d = d // g

    @property
    def angle(self) -> Fraction:
        return Fraction(self.k, self.d)

    @property
    def order(self) -> int:
        return self.d

    def is_one(self) -> bool:
        return self.k == 0

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        a = self.angle + other.angle
        return RootOfUnity(a.numerator, a.denominator)

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity(self.k * e, self.d)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootOfUnity) and (self.k, self.d) == (other.k, other.d)

    def __hash__(self) -> int:
        return hash((self.k, self.d))

    def __repr__(self) -> str:
        return f"RootOfUnity({self.k}/{self.d})"

    def to_complex(self) -> complex:
        return complex(unit_roots(self.d)[self.k])

    def __complex__(self) -> complex:
        return self.to_complex()


@lru_cache(maxsize=512)
def unit_roots(d: int) -> np.ndarray:
    """Complex renderings of e^(2 pi i k/d) for 0 <= k < d."""
    roots = np.array([cmath.exp(2j * cmath.pi * k / d) for k in range(d)], dtype=np.complex128)
    # exact values where the angle is a multiple of a quarter turn
    for k in range(d):
        if (4 * k) % d == 0:
            roots[k] = (1, 1j, -1, -1j)[(4 * k) // d]
    roots.setflags(write=False)
    return roots
