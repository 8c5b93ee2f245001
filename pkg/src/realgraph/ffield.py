"""Finite field arithmetic: GF(p) for small primes and GF(2^k) in polynomial basis.

GF(2^k) elements are k-bit integers; bit i is the coefficient of x^i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending (trial division)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# -- GF(p) ------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"modulus {self.p} is not prime")

    def __call__(self, value: int) -> ZpElem:
        return ZpElem(value % self.p, self)

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return pow(a, -1, self.p)


@dataclass(frozen=True)
class ZpElem:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise FieldError(f"{self.value} out of range for GF({self.field.p})")

    def _check(self, other: ZpElem):
        if other.field != self.field:
            raise FieldError("mixed-field operation")

    def __add__(self, other: ZpElem) -> ZpElem:
        self._check(other)
        return self.field(self.value + other.value)

    def __sub__(self, other: ZpElem) -> ZpElem:
        self._check(other)
        return self.field(self.value - other.value)

    def __neg__(self) -> ZpElem:
        return self.field(-self.value)

    def __mul__(self, other: ZpElem) -> ZpElem:
        self._check(other)
        return self.field(self.value * other.value)

    def inverse(self) -> ZpElem:
        return self.field(self.field.inv(self.value))

    def __int__(self):
        return self.value


# -- GF(2)[x] polynomials as ints ---------------------------------------------


def poly_mulmod(a: int, b: int, mod: int) -> int:
    """Carry-less product of a and b reduced modulo mod."""
    deg = mod.bit_length() - 1
    top = 1 << deg
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= mod
    return r


def poly_mod(a: int, mod: int) -> int:
    dm = mod.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= mod << (a.bit_length() - 1 - dm)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _x_pow_2n(n: int, mod: int) -> int:
    """x^(2^n) mod `mod`, by repeated squaring."""
    r = poly_mod(0b10, mod)
    for _ in range(n):
        r = poly_mulmod(r, r, mod)
    return r


def is_irreducible(f: int) -> bool:
    """Rabin's irreducibility test for f in GF(2)[x]."""
    k = f.bit_length() - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if not f & 1:
        return False
    if _x_pow_2n(k, f) != poly_mod(0b10, f):
        return False
    for q in prime_factors(k):
        h = _x_pow_2n(k // q, f) ^ 0b10
        if poly_gcd(f, h) != 1:
            return False
    return True


# -- GF(2^k) ------------------------------------------------------------------

# Full product tables are built only up to this degree (256 x 256 entries).
_TABLE_MAX_K = 8


@dataclass(frozen=True, eq=False)
class GF2kField:
    k: int
    modulus: int
    _mul: tuple | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.modulus.bit_length() - 1 != self.k:
            raise FieldError(f"modulus {self.modulus:#b} is not of degree {self.k}")
        if not is_irreducible(self.modulus):
            raise FieldError(f"modulus {self.modulus:#b} is reducible")
        if self.k <= _TABLE_MAX_K:
            q = 1 << self.k
            table = tuple(
                tuple(poly_mulmod(a, b, self.modulus) for b in range(q)) for a in range(q)
            )
            object.__setattr__(self, "_mul", table)

    def __eq__(self, other):
        return isinstance(other, GF2kField) and (self.k, self.modulus) == (other.k, other.modulus)

    def __hash__(self):
        return hash((self.k, self.modulus))

    @property
    def size(self) -> int:
        return 1 << self.k

    def __call__(self, bits: int) -> GF2kElem:
        return GF2kElem(bits, self)

    def elements(self):
        return [GF2kElem(b, self) for b in range(self.size)]

    # Raw-int operations, used by the hot loops of the constructions.

    def mul_int(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        return poly_mulmod(a, b, self.modulus)

    def pow_int(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul_int(r, a)
            a = self.mul_int(a, a)
            e >>= 1
        return r

    def inv_int(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^%d)" % self.k)
        return self.pow_int(a, self.size - 2)

    def frob_int(self, a: int, u: int) -> int:
        for _ in range(u % self.k):
            a = self.mul_int(a, a)
        return a

    def trace_int(self, a: int) -> int:
        t = 0
        for _ in range(self.k):
            t ^= a
            a = self.mul_int(a, a)
        return t

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.size - 1
        order = n
        for q in prime_factors(n):
            while order % q == 0 and self.pow_int(a, order // q) == 1:
                order //= q
        return order


@dataclass(frozen=True)
class GF2kElem:
    bits: int
    field: GF2kField

    def __post_init__(self):
        if not 0 <= self.bits < self.field.size:
            raise FieldError(f"{self.bits} does not fit in GF(2^{self.field.k})")

    def _check(self, other: GF2kElem):
        if other.field != self.field:
            raise FieldError("mixed-field operation")

    def __add__(self, other: GF2kElem) -> GF2kElem:
        self._check(other)
        return GF2kElem(self.bits ^ other.bits, self.field)

    __sub__ = __add__

    def __neg__(self) -> GF2kElem:
        return self

    def __mul__(self, other: GF2kElem) -> GF2kElem:
        self._check(other)
        return GF2kElem(self.field.mul_int(self.bits, other.bits), self.field)

    def __pow__(self, e: int) -> GF2kElem:
        if e < 0:
            return gf_inv(self) ** (-e)
        return GF2kElem(self.field.pow_int(self.bits, e), self.field)

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return f"GF2k({self.bits:#x})"


@lru_cache(maxsize=None)
def make_gf2k(k: int) -> GF2kField:
    """GF(2^k) with the smallest irreducible modulus of degree k."""
    if k < 2:
        raise FieldError("k must be at least 2")
    if k > 64:
        raise MemoryError(f"GF(2^{k}) is beyond the supported range (k <= 64)")
    for f in range(1 << k, 1 << (k + 1)):
        if is_irreducible(f):
            return GF2kField(k, f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def gf_add(a: GF2kElem, b: GF2kElem) -> GF2kElem:
    return a + b


def gf_mul(a: GF2kElem, b: GF2kElem) -> GF2kElem:
    return a * b


def gf_inv(a: GF2kElem) -> GF2kElem:
    return GF2kElem(a.field.inv_int(a.bits), a.field)


def frobenius(a: GF2kElem, u: int) -> GF2kElem:
    """a^(2^u)."""
    return GF2kElem(a.field.frob_int(a.bits, u), a.field)


def trace(a: GF2kElem) -> GF2kElem:
    """Absolute trace to GF(2): sum of all Galois conjugates."""
    t = a.field.trace_int(a.bits)
    assert t in (0, 1)
    return GF2kElem(t, a.field)


def primitive_prime_divisor(k: int) -> int:
    """Smallest prime dividing 2^k - 1 but no 2^i - 1 with i < k."""
    if k < 2:
        raise ValueError("k must be at least 2")
    for p in prime_factors((1 << k) - 1):
        # the multiplicative order of 2 mod p must be exactly k
        if all(((1 << i) - 1) % p for i in range(1, k)):
            return p
    raise LookupError(f"2^{k}-1 has no primitive prime divisor")
