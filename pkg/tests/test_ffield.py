"""GF(p) and GF(2^k) arithmetic against brute-force oracles."""

import pytest
from hypothesis import given, strategies as st

from realgraph.ffield import (
    FieldError, GF2kField, GF2kElem, PrimeField, frobenius, gf_add, gf_inv, gf_mul,
    is_irreducible, is_prime, make_gf2k, poly_mulmod, prime_factors,
    primitive_prime_divisor, trace,
)


def clmul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def reducible_sieve(k):
    """Degree-k polynomials that factor, from all products of lower degrees."""
    out = set()
    for d in range(1, k // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            for g in range(1 << (k - d), 1 << (k - d + 1)):
                out.add(clmul(f, g))
    return out


# frozen from reducible_sieve: the first degree-k polynomial not in the sieve
SMALLEST_MODULUS = {2: 0b111, 4: 0b10011, 8: 0x11B}


@pytest.mark.parametrize("k", [2, 4, 8])
def test_smallest_modulus_matches_sieve(k):
    red = reducible_sieve(k)
    first = next(f for f in range(1 << k, 1 << (k + 1)) if f not in red)
    assert first == SMALLEST_MODULUS[k]
    assert make_gf2k(k).modulus == first


@pytest.mark.parametrize("k", range(1, 9))
def test_rabin_agrees_with_sieve(k):
    red = reducible_sieve(k)
    for f in range(1 << k, 1 << (k + 1)):
        assert is_irreducible(f) == (f not in red), bin(f)


def test_primes_and_factors():
    sieve = [n for n in range(200) if all(n % d for d in range(2, n)) and n > 1]
    assert [n for n in range(200) if is_prime(n)] == sieve
    assert prime_factors(1) == []
    assert prime_factors(199650) == [2, 3, 5, 11]
    assert prime_factors(2 ** 16 - 1) == [3, 5, 17, 257]


def test_prime_field():
    F = PrimeField(7)
    assert int(F(3) * F(5)) == 1
    assert int(F(3).inverse()) == 5
    assert int(-F(2)) == 5
    with pytest.raises(FieldError):
        PrimeField(9)
    with pytest.raises(ZeroDivisionError):
        F(0).inverse()
    with pytest.raises(FieldError):
        F(1) + PrimeField(5)(1)


@given(st.integers(0, 1000), st.integers(0, 1000), st.sampled_from([2, 3, 5, 11, 13]))
def test_prime_field_matches_integers(a, b, p):
    F = PrimeField(p)
    assert int(F(a) + F(b)) == (a + b) % p
    assert int(F(a) - F(b)) == (a - b) % p
    assert int(F(a) * F(b)) == a * b % p


def elems(k):
    return st.integers(0, (1 << k) - 1).map(lambda b: GF2kElem(b, make_gf2k(k)))


@pytest.mark.parametrize("k", [2, 4, 8])
def test_field_axioms(k):
    @given(elems(k), elems(k), elems(k))
    def check(a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + a == make_gf2k(k)(0)
        if a:
            assert a * gf_inv(a) == make_gf2k(k)(1)
        assert gf_add(a, b) == a + b and gf_mul(a, b) == a * b
    check()


def test_table_matches_polynomial_product():
    F = make_gf2k(4)
    for a in range(16):
        for b in range(16):
            assert F.mul_int(a, b) == poly_mulmod(a, b, 0b10011)


@pytest.mark.parametrize("k", [2, 4, 8])
def test_multiplicative_group_cyclic(k):
    F = make_gf2k(k)
    orders = [F.mult_order(a) for a in range(1, F.size)]
    assert max(orders) == F.size - 1
    assert all((F.size - 1) % n == 0 for n in orders)


@pytest.mark.parametrize("k", [2, 4, 8])
def test_frobenius_and_trace(k):
    F = make_gf2k(k)
    traces = [trace(a) for a in F.elements()]
    assert {t.bits for t in traces} == {0, 1}
    assert sum(t.bits == 0 for t in traces) == F.size // 2
    for a in F.elements():
        assert frobenius(a, k) == a
        assert frobenius(a, 1) == a * a

    @given(elems(k), elems(k), st.integers(0, 2 * k))
    def automorphism(a, b, u):
        assert frobenius(a * b, u) == frobenius(a, u) * frobenius(b, u)
        assert frobenius(a + b, u) == frobenius(a, u) + frobenius(b, u)
        assert trace(a + b) == trace(a) + trace(b)
    automorphism()


def test_ppd_against_brute_force():
    def oracle(k):
        return min(p for p in range(3, 1 << k) if is_prime(p) and pow(2, k, p) == 1
                   and all(pow(2, i, p) != 1 for i in range(1, k)))
    for k, p in ((2, 3), (4, 5), (8, 17)):
        assert primitive_prime_divisor(k) == p == oracle(k)
    for k in (4, 8):
        assert ((1 << (k // 2)) + 1) % primitive_prime_divisor(k) == 0
    assert primitive_prime_divisor(12) == 13
    with pytest.raises(LookupError):
        primitive_prime_divisor(6)  # 2^6 - 1 = 63 = 3^2 * 7


def test_errors():
    with pytest.raises(FieldError):
        make_gf2k(1)
    with pytest.raises(MemoryError):
        make_gf2k(65)
    with pytest.raises(FieldError):
        GF2kField(4, 0b10001)  # (x+1)^4
    with pytest.raises(FieldError):
        GF2kField(4, 0b111)
    with pytest.raises(FieldError):
        GF2kElem(16, make_gf2k(4))
    with pytest.raises(ZeroDivisionError):
        gf_inv(make_gf2k(4)(0))
    with pytest.raises(FieldError):
        make_gf2k(2)(1) + make_gf2k(4)(1)


def test_large_degree_without_tables():
    F = make_gf2k(16)
    a = F(0x1234)
    assert a * gf_inv(a) == F(1)
    assert frobenius(a, 16) == a
