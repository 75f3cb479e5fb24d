"""
Unit tests for the arith package.
"""
from fractions import Fraction
from math import gcd

import pytest
from pydantic import ValidationError

from arith import (
    Factorization,
    NotCoprimeError,
    NoPrimitiveRootError,
    below_root,
    carmichael_E,
    classify_Pr,
    component_orders,
    cubefree_parts,
    euler_phi,
    exceeds_root,
    factorize,
    has_primitive_root,
    lambda_root_density,
    make_modulus,
    mobius,
    mult_order,
    primes_between,
    primes_in_open_root_range,
    primes_up_to,
    quadratic_character,
    radical_S,
    recompose,
    smallest_prime_factor_table,
)
from tests.utils.test_helpers import (
    brute_exponent,
    brute_is_prime,
    brute_lambda_roots,
    brute_legendre,
    brute_order,
    brute_units,
)


@pytest.mark.parametrize("n, factors", [
    (1, ()),
    (12, ((2, 2), (3, 1))),
    (54, ((2, 1), (3, 3))),
    (97, ((97, 1),)),
])
def test_factorize_examples(n, factors):
    assert factorize(n).factors == factors


def test_factorize_recomposes():
    for n in range(1, 3000):
        f = factorize(n)
        assert recompose(f.factors) == n
        assert all(brute_is_prime(p) for p in f.primes)


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)


def test_factorization_validates_product():
    with pytest.raises(ValidationError):
        Factorization(n=12, factors=((2, 1), (3, 1)))
    with pytest.raises(ValidationError):
        Factorization(n=6, factors=((3, 1), (2, 1)))


@pytest.mark.parametrize("q, E, S", [(7, 6, 6), (8, 2, 2), (15, 4, 2), (1, 1, 1), (2, 1, 1), (16, 4, 2)])
def test_carmichael_and_radical(q, E, S):
    assert carmichael_E(q) == E
    assert radical_S(q) == S


def test_carmichael_matches_brute_force():
    for q in range(3, 300):
        assert carmichael_E(q) == brute_exponent(q), q


def test_phi_E_S_share_prime_support():
    for q in range(3, 2001):
        mod = make_modulus(q)
        supports = {factorize(n).primes for n in (mod.phi, mod.bigE, mod.bigS)}
        assert len(supports) == 1, q


@pytest.mark.performance
def test_carmichael_is_the_unit_group_exponent():
    # E kills every unit, and for each p | E some unit survives E/p
    for q in range(3, 2001):
        E = carmichael_E(q)
        units = brute_units(q)
        assert all(pow(n, E, q) == 1 for n in units), q
        for p in factorize(E).primes:
            assert any(pow(n, E // p, q) != 1 for n in units), (q, p)


@pytest.mark.parametrize("q, expected", [(7, (7, 56)), (54, (9, 72)), (8, (1, 8)), (32, (1, 32)), (125, (25, 200))])
def test_cubefree_parts(q, expected):
    assert cubefree_parts(q) == expected


def test_cubefree_parts_needs_q_at_least_3():
    with pytest.raises(ValueError):
        cubefree_parts(2)


@pytest.mark.parametrize("n, q, order", [(3, 7, 6), (1, 7, 1), (1, 100, 1), (2, 7, 3), (5, 8, 2)])
def test_mult_order_examples(n, q, order):
    assert mult_order(n, q) == order


def test_mult_order_matches_brute_force():
    for q in (9, 15, 16, 21, 40, 77):
        for n in range(1, 2 * q):
            if gcd(n, q) == 1:
                assert mult_order(n, q) == brute_order(n, q)
            else:
                with pytest.raises(NotCoprimeError):
                    mult_order(n, q)


def test_mult_order_not_coprime():
    with pytest.raises(NotCoprimeError) as exc:
        mult_order(6, 9)
    assert exc.value.n == 6 and exc.value.q == 9
    assert isinstance(exc.value, ValueError)


@pytest.mark.parametrize("n, expected", [(15, (2, True)), (12, (3, False)), (101, (1, True)), (1, (0, True))])
def test_classify_Pr(n, expected):
    assert classify_Pr(n) == expected


@pytest.mark.parametrize("n, q, value", [(2, 7, 1), (3, 7, -1), (7, 7, 0), (2, 49, 1), (3, 14, -1)])
def test_quadratic_character_examples(n, q, value):
    assert quadratic_character(n, q) == value


def test_quadratic_character_matches_legendre():
    for p in (5, 11, 13, 29):
        for n in range(0, 3 * p):
            assert quadratic_character(n, p) == brute_legendre(n, p)


@pytest.mark.parametrize("q", [9, 18, 25, 27, 49, 50, 54, 98, 121])
def test_quadratic_character_on_prime_powers(q):
    values = [quadratic_character(n, q) for n in range(3 * q)]
    assert values[:q] == values[q : 2 * q] == values[2 * q :]
    for m in range(1, q):
        for n in range(1, q):
            assert quadratic_character(m * n, q) == values[m] * values[n], (m, n)
    squares = {u * u % q for u in brute_units(q)}
    for n in range(q):
        expected = 0 if gcd(n, q) != 1 else (1 if n in squares else -1)
        assert values[n] == expected, n


@pytest.mark.parametrize("q", [8, 15, 4])
def test_quadratic_character_needs_cyclic_odd_modulus(q):
    with pytest.raises(NoPrimitiveRootError):
        quadratic_character(1, q)


def test_derived_functions():
    assert euler_phi(36) == 12
    assert mobius(30) == -1
    assert mobius(12) == 0
    assert mobius(1) == 1


def test_component_orders_and_cyclicity():
    assert component_orders(7) == [6]
    assert component_orders(8) == [2, 2]
    assert component_orders(15) == [2, 4]
    assert component_orders(4) == [2]
    assert component_orders(32) == [2, 8]
    for q in range(3, 200):
        cyclic = any(brute_order(n, q) == euler_phi(q) for n in brute_units(q))
        assert has_primitive_root(q) == cyclic, q


def test_modulus_profile():
    mod = make_modulus(54)
    assert (mod.phi, mod.bigE, mod.bigS, mod.qc, mod.qtilde) == (18, 18, 6, 9, 72)
    assert mod.is_cyclic
    assert not make_modulus(15).is_cyclic


def test_lambda_root_density_matches_brute_force():
    for q in range(3, 250):
        assert lambda_root_density(q) * euler_phi(q) == len(brute_lambda_roots(q)), q


def test_lambda_root_density_examples():
    assert lambda_root_density(7) == Fraction(1, 3)
    assert lambda_root_density(8) == Fraction(3, 4)
    assert lambda_root_density(16) == Fraction(1, 2)


class TestPrimes:
    def test_primes_up_to_matches_brute_force(self):
        assert primes_up_to(1000) == [n for n in range(1001) if brute_is_prime(n)]

    def test_primes_between_is_half_open(self):
        assert primes_between(11, 29) == [11, 13, 17, 19, 23]
        assert primes_between(10, 10) == []
        assert primes_between(0, 3) == [2]

    def test_primes_between_across_segments(self):
        lo, hi = (1 << 18) - 100, (1 << 18) + 100
        assert primes_between(lo, hi) == [n for n in range(lo, hi) if brute_is_prime(n)]

    def test_smallest_prime_factor_table(self):
        spf = smallest_prime_factor_table(100)
        assert spf[1] == 1
        assert spf[2] == 2 and spf[91] == 7 and spf[97] == 97 and spf[100] == 2

    def test_exact_root_comparisons(self):
        assert exceeds_root(11, 1000, 3)
        assert not exceeds_root(10, 1000, 3)
        assert below_root(99, 1000, 3, 2)
        assert not below_root(100, 1000, 3, 2)

    def test_open_root_range_excludes_boundaries(self):
        # x^(1/3) = 10 and x^(2/3) = 100 exactly
        primes = primes_in_open_root_range(1000)
        assert primes[0] == 11 and primes[-1] == 97
        assert primes_in_open_root_range(8) == [3]
        assert primes_in_open_root_range(2) == []
