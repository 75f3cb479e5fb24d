# chargroup/subgroup.py
import logging
import random
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, lcm
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from sympy import divisors

from arith import ConsistencyError, ModulusLike, as_modulus, factorize
from .basis import UnitGroupBasis, build_basis
from .character import DirichletCharacter
from .roots import unit_roots

logger = logging.getLogger("lamroot.chargroup")

ROUNDING_TOLERANCE = 1e-9


def all_characters(basis: UnitGroupBasis) -> Iterator[DirichletCharacter]:
    """Every character mod q, exponent vectors in lexicographic order."""
    for exps in product(*(range(d) for d in basis.orders)):
        yield DirichletCharacter(basis, exps)


class CharSubgroupG:
    """
    The subgroup G = {chi^(E(q)/S(q))} of characters mod q, together with
    the ranks m(p) and the census of character orders.
    """

    def __init__(self, basis: UnitGroupBasis, characters: List[DirichletCharacter], m: Dict[int, int]):
        self.basis = basis
        self.modulus = basis.modulus
        self.characters: Tuple[DirichletCharacter, ...] = tuple(sorted(characters, key=lambda c: c.exponents))
        self.m = dict(sorted(m.items()))
        self.census: Dict[int, int] = dict(sorted(Counter(c.order for c in self.characters).items()))
        self._index = {c.exponents: c for c in self.characters}
        self._angle_matrix = None
        self._coefficients = None

    def __len__(self) -> int:
        return len(self.characters)

    def __iter__(self) -> Iterator[DirichletCharacter]:
        return iter(self.characters)

    def __contains__(self, chi: DirichletCharacter) -> bool:
        return chi.q == self.modulus.q and chi.exponents in self._index

    @property
    def principal(self) -> DirichletCharacter:
        return self._index[(0,) * self.basis.rank]

    @property
    def exponent(self) -> int:
        return lcm(1, *self.census)

    @property
    def expected_order(self) -> int:
        """prod over p of p^m(p), the order |G| must have."""
        size = 1
        for p, m in self.m.items():
            size *= p ** m
        return size

    @property
    def angle_matrix(self) -> np.ndarray:
        """Row i holds chi_i's exponents scaled so that (row . log-vector) mod E is the angle of chi_i(n)."""
        if self._angle_matrix is None:
            k = np.array([c.exponents for c in self.characters], dtype=np.int64).reshape(len(self), self.basis.rank)
            self._angle_matrix = k * self.basis.weights[None, :]
        return self._angle_matrix

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        """c_chi for each character of G, aligned with self.characters."""
        if self._coefficients is None:
            self._coefficients = tuple(_coefficient_value(c, self) for c in self.characters)
        return self._coefficients

    @property
    def c0(self) -> Fraction:
        return _coefficient_value(self.principal, self)


@lru_cache(maxsize=256)
def _cached_subgroup(q: int, two_power_generator: int) -> CharSubgroupG:
    basis = build_basis(q, two_power_generator)
    mod = basis.modulus
    t = mod.bigE // mod.bigS
    image = {}
    for chi in all_characters(basis):
        power = chi ** t
        image.setdefault(power.exponents, power)
    characters = list(image.values())
    m = {}
    for p in factorize(mod.phi).primes:
        torsion = sum(1 for c in characters if all((p * k) % d == 0 for k, d in zip(c.exponents, basis.orders)))
        rank = 0
        while torsion % p == 0:
            torsion //= p
            rank += 1
        if torsion != 1:
            raise ConsistencyError(f"{p}-torsion of G mod {q} is not a power of {p}")
        m[p] = rank
    group = CharSubgroupG(basis, characters, m)
    logger.debug(f"G mod {q}: |G|={len(group)} m={group.m} census={group.census}")
    return group


def enumerate_G(q: ModulusLike, two_power_generator: int = 5) -> CharSubgroupG:
    """
    Build G as the image of the (E/S)-power map on all phi(q) characters,
    deduplicated by exponent vector; m(p) counts the p-torsion of G.
    """
    return _cached_subgroup(as_modulus(q).q, two_power_generator)


class Coefficient(BaseModel):
    """The exact coefficient c_chi of a character in the expansion of gamma."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    character: Any = Field(..., description="The DirichletCharacter")
    value: Fraction = Field(..., description="Exact rational c_chi")


def _coefficient_value(chi: DirichletCharacter, G: CharSubgroupG) -> Fraction:
    if chi not in G:
        return Fraction(0)
    c = Fraction(1)
    for p, m in G.m.items():
        if chi.order % p == 0:
            c *= Fraction(-1, p ** m)
        else:
            c *= 1 - Fraction(1, p ** m)
    return c


def coefficient(chi: DirichletCharacter, G: CharSubgroupG) -> Coefficient:
    """
    c_chi: the product over p | sigma(chi) of -p^(-m(p)) times the product
    over p | phi(q), p not dividing sigma(chi), of (1 - p^(-m(p))); zero off G.
    """
    return Coefficient(character=chi, value=_coefficient_value(chi, G))


def cyclic_coefficient(chi: DirichletCharacter, G: CharSubgroupG) -> Fraction:
    """phi(phi(q))/phi(q) * mu(sigma)/phi(sigma); only meaningful for cyclic unit groups."""
    mod = G.modulus
    if not mod.is_cyclic:
        raise ValueError(f"unit group mod {mod.q} is not cyclic")
    sigma = factorize(chi.order)
    return Fraction(factorize(mod.phi).euler_phi, mod.phi) * Fraction(sigma.mobius, sigma.euler_phi)


def order_census_expected(G: CharSubgroupG) -> Dict[int, int]:
    """Number of characters of each exact order d | S(q): prod over p | d of (p^m(p) - 1)."""
    expected = {}
    for d in divisors(G.modulus.bigS):
        count = 1
        for p in factorize(d).primes:
            count *= p ** G.m[p] - 1
        expected[int(d)] = count
    return expected


def gamma_values_by_characters(
    q: ModulusLike,
    residues,
    two_power_generator: int = 5,
    coefficients: Optional[Sequence[Fraction]] = None,
) -> np.ndarray:
    """
    Render sum over chi in G of c_chi chi(n) for each residue and round to {0, 1}.
    coefficients, aligned with G.characters, replaces the computed c_chi.

    Raises:
        ConsistencyError: if any rendered value is not within the rounding
            tolerance of 0 or 1
    """
    G = enumerate_G(q, two_power_generator)
    E = G.basis.exponent
    residues = np.asarray(residues, dtype=np.int64)
    logs = G.basis.log_array(residues)
    coprime = logs[:, 0] >= 0
    angles = (logs @ G.angle_matrix.T) % E
    weights = np.array([float(c) for c in (G.coefficients if coefficients is None else coefficients)])
    totals = unit_roots(E)[angles] @ weights
    totals = np.where(coprime, totals, 0)
    bits = np.rint(totals.real)
    bad = (np.abs(totals.imag) >= ROUNDING_TOLERANCE) | (np.abs(totals.real - bits) >= ROUNDING_TOLERANCE)
    bad |= (bits != 0) & (bits != 1)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise ConsistencyError(f"character sum at n={int(residues[i])} mod {G.modulus.q} rendered as {totals[i]}")
    return bits.astype(np.int64)


def gamma_by_characters(n: int, q: ModulusLike, two_power_generator: int = 5) -> int:
    """gamma(n) evaluated as sum over chi in G of c_chi chi(n)."""
    mod = as_modulus(q)
    if gcd(n, mod.q) != 1:
        return 0
    return int(gamma_values_by_characters(mod, [n], two_power_generator)[0])


def coefficient_sum_check(q: ModulusLike) -> Tuple[Fraction, Fraction]:
    """Return (sum of |c_chi|, 2^omega(phi(q)) * c_0); the two must agree."""
    G = enumerate_G(q)
    total = sum((abs(c) for c in G.coefficients), Fraction(0))
    target = 2 ** factorize(G.modulus.phi).omega * G.c0
    return total, target


class InducedPeriodicityReport(BaseModel):
    """Outcome of checking chi(m) = chi(n) for m = n mod q~_c over G."""
    q: int
    qtilde: int
    characters: int = Field(..., description="Characters of G checked")
    pairs: int = Field(..., description="Congruent pairs sampled (shared by every character)")
    violation_count: int = 0
    violations: List[Tuple[Tuple[int, ...], int, int]] = Field(default=[], description="(exponents, m, n) witnesses")


def induced_periodicity_check(q: ModulusLike, sample_size: int = 100, seed: int = 0) -> InducedPeriodicityReport:
    """
    Sample coprime pairs m = n mod q~_c and check every chi in G takes the
    same value on both.
    """
    G = enumerate_G(q)
    mod = G.modulus
    rng = random.Random(seed * 1_000_003 + mod.q)
    firsts, seconds = [], []
    while len(firsts) < sample_size:
        m = rng.randrange(1, mod.qtilde * mod.q)
        if gcd(m, mod.q) != 1:
            continue
        firsts.append(m)
        seconds.append(m + rng.randrange(1, 8) * mod.qtilde)
    E = G.basis.exponent
    left = (G.basis.log_array(firsts) @ G.angle_matrix.T) % E
    right = (G.basis.log_array(seconds) @ G.angle_matrix.T) % E
    pair_idx, char_idx = np.nonzero(left != right)
    violations = [
        (G.characters[j].exponents, firsts[i], seconds[i])
        for i, j in zip(pair_idx.tolist()[:20], char_idx.tolist()[:20])
    ]
    if len(pair_idx):
        logger.warning(f"Induced periodicity mod {mod.q}: {len(pair_idx)} violations")
    return InducedPeriodicityReport(
        q=mod.q,
        qtilde=mod.qtilde,
        characters=len(G),
        pairs=sample_size,
        violation_count=int(len(pair_idx)),
        violations=violations,
    )


def coefficient_table(q: ModulusLike) -> List[Dict[str, Any]]:
    """Rows (exponents, order, c_chi) for every character of G."""
    G = enumerate_G(q)
    return [
        {"exponents": chi.exponents, "order": chi.order, "coefficient": c}
        for chi, c in zip(G.characters, G.coefficients)
    ]
