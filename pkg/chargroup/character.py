# chargroup/character.py
from math import gcd, lcm
from typing import Optional, Tuple

from .basis import UnitGroupBasis
from .roots import RootOfUnity


class DirichletCharacter:
    """
    A Dirichlet character mod q, given by an exponent vector over a fixed
    basis: chi(g_i) = e^(2 pi i k_i / d_i) for the i-th generator of order d_i.
    """
    __slots__ = ("basis", "exponents", "order")

    def __init__(self, basis: UnitGroupBasis, exponents):
        exponents = tuple(exponents)
        if len(exponents) != basis.rank:
            raise ValueError(f"expected {basis.rank} exponents, got {len(exponents)}")
        exponents = tuple(int(k) % d for k, d in zip(exponents, basis.orders))
        self.basis = basis
        self.exponents: Tuple[int, ...] = exponents
        self.order = lcm(1, *(d // gcd(d, k) for k, d in zip(exponents, basis.orders)))

    @classmethod
    def principal(cls, basis: UnitGroupBasis) -> "DirichletCharacter":
        return cls(basis, (0,) * basis.rank)

    @property
    def q(self) -> int:
        return self.basis.modulus.q

    @property
    def is_principal(self) -> bool:
        return self.order == 1

    def angle_units(self, n: int) -> Optional[int]:
        """chi(n) as an integer a with chi(n) = e^(2 pi i a / exponent); None off the unit group."""
        v = self.basis.log(n)
        if v is None:
            return None
        e = self.basis.exponent
        return sum(k * x * (e // d) for k, x, d in zip(self.exponents, v, self.basis.orders)) % e

    def value(self, n: int) -> Optional[RootOfUnity]:
        """Exact value chi(n), or None when gcd(n, q) > 1 (where chi vanishes)."""
        a = self.angle_units(n)
        if a is None:
            return None
        return RootOfUnity(a, self.basis.exponent)

    def __call__(self, n: int) -> complex:
        r = self.value(n)
        return 0j if r is None else r.to_complex()

    def __pow__(self, t: int) -> "DirichletCharacter":
        return DirichletCharacter(self.basis, tuple(t * k for k in self.exponents))

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.basis is not self.basis:
            raise ValueError("characters over different bases")
        return DirichletCharacter(self.basis, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __eq__(self, other) -> bool:
        return isinstance(other, DirichletCharacter) and self.q == other.q and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash((self.q, self.exponents))

    def __repr__(self) -> str:
        return f"DirichletCharacter(q={self.q}, exponents={self.exponents}, order={self.order})"
