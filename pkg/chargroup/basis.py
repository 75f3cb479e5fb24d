# chargroup/basis.py
import logging
from functools import lru_cache
from math import gcd, lcm
from typing import List, Optional, Tuple

import numpy as np
from sympy import discrete_log, primitive_root

from arith import ModulusLike, as_modulus
from arith.modulus import Modulus

logger = logging.getLogger("lamroot.chargroup")

# residues up to this modulus get a precomputed discrete-log table
LOG_TABLE_LIMIT = 10 ** 6

TWO_POWER_GENERATORS = (5, 3)


class _Component:
    """One cyclic factor: a generator mod q lifted from a prime-power part."""
    __slots__ = ("generator", "order", "part", "local_generator", "kind")

    def __init__(self, generator: int, order: int, part: int, local_generator: int, kind: str):
        self.generator = generator
        self.order = order
        self.part = part
        self.local_generator = local_generator
        self.kind = kind


def _lift(residue: int, part: int, q: int) -> int:
    """The residue mod q that is `residue` mod part and 1 mod q/part."""
    other = q // part
    if other == 1:
        return residue % q
    t = ((1 - residue) * pow(part, -1, other)) % other
    return (residue + part * t) % q


class UnitGroupBasis:
    """
    Internal direct-product decomposition of (Z/qZ)^x into cyclic factors,
    with a discrete-log map onto exponent vectors.
    """

    def __init__(self, modulus: Modulus, two_power_generator: int = 5):
        if two_power_generator not in TWO_POWER_GENERATORS:
            raise ValueError(f"two_power_generator must be one of {TWO_POWER_GENERATORS}")
        self.modulus = modulus
        self.two_power_generator = two_power_generator
        q = modulus.q
        components: List[_Component] = []
        for p, k in modulus.factorization.factors:
            part = p ** k
            if p == 2:
                if k >= 2:
                    components.append(_Component(_lift(part - 1, part, q), 2, part, part - 1, "sign"))
                if k >= 3:
                    g = two_power_generator
                    components.append(_Component(_lift(g, part, q), 2 ** (k - 2), part, g, "two"))
            else:
                g = int(primitive_root(part))
                components.append(_Component(_lift(g, part, q), (p - 1) * p ** (k - 1), part, g, "odd"))
        self._components = components
        self.orders: Tuple[int, ...] = tuple(c.order for c in components)
        self.generators: Tuple[int, ...] = tuple(c.generator for c in components)
        self.exponent = lcm(1, *self.orders)
        # weights turn an exponent vector into an angle in units of 1/exponent
        self.weights = np.array([self.exponent // d for d in self.orders], dtype=np.int64)
        self._table: Optional[np.ndarray] = None
        if q <= LOG_TABLE_LIMIT:
            self._table = self._build_table()
        logger.debug(f"Basis mod {q}: generators {self.generators} orders {self.orders}")

    @property
    def rank(self) -> int:
        return len(self._components)

    def _build_table(self) -> np.ndarray:
        q = self.modulus.q
        residues = np.array([1 % q], dtype=np.int64)
        vectors = np.zeros((1, 0), dtype=np.int64)
        for c in self._components:
            powers = np.array([pow(c.generator, j, q) for j in range(c.order)], dtype=np.int64)
            residues = ((residues[:, None] * powers[None, :]) % q).ravel()
            vectors = np.concatenate(
                [np.repeat(vectors, c.order, axis=0), np.tile(np.arange(c.order), len(vectors))[:, None]],
                axis=1,
            )
        table = np.full((q, self.rank), -1, dtype=np.int64)
        table[residues] = vectors
        table.setflags(write=False)
        return table

    def _local_log(self, c: _Component, n: int) -> int:
        a = n % c.part
        if c.kind == "sign":
            if c.part == 4:
                return 0 if a % 4 == 1 else 1
            return 0 if a % 8 in (1, self.two_power_generator % 8) else 1
        if c.kind == "two":
            if a % 8 not in (1, c.local_generator % 8):
                a = (-a) % c.part
            return int(discrete_log(c.part, a, c.local_generator))
        return int(discrete_log(c.part, a, c.local_generator))

    def log(self, n: int) -> Optional[Tuple[int, ...]]:
        """Exponent vector of n, or None when gcd(n, q) > 1."""
        q = self.modulus.q
        if gcd(n, q) != 1:
            return None
        if self._table is not None:
            return tuple(int(v) for v in self._table[n % q])
        return tuple(self._local_log(c, n) for c in self._components)

    def log_array(self, residues) -> np.ndarray:
        """Exponent vectors for many residues at once; rows of -1 mark non-coprime residues."""
        residues = np.asarray(residues, dtype=np.int64) % self.modulus.q
        if self._table is not None:
            return self._table[residues]
        rows = []
        for n in residues.tolist():
            v = self.log(n)
            rows.append(v if v is not None else (-1,) * self.rank)
        return np.array(rows, dtype=np.int64).reshape(len(rows), self.rank)

    def element(self, vector) -> int:
        """The residue with the given exponent vector."""
        q = self.modulus.q
        n = 1 % q
        for g, e in zip(self.generators, vector):
            n = n * pow(g, int(e), q) % q
        return n


@lru_cache(maxsize=1024)
def _cached_basis(q: int, two_power_generator: int) -> UnitGroupBasis:
    return UnitGroupBasis(as_modulus(q), two_power_generator)


def build_basis(q: ModulusLike, two_power_generator: int = 5) -> UnitGroupBasis:
    """
    Decompose the unit group mod q.

    Odd prime powers contribute one cyclic factor generated by their least
    primitive root; 4 contributes -1; 2^k with k >= 3 contributes -1 and
    `two_power_generator` (5 or 3). Generators are lifted to mod q by CRT.
    """
    mod = as_modulus(q)
    if mod.q < 3:
        raise ValueError(f"build_basis needs q >= 3, got {mod.q}")
    return _cached_basis(mod.q, two_power_generator)
