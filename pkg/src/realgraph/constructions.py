"""Concrete groups: permutations, matrices over GF(p), affine semidirect
products V x| M, the order-150 and order-199650 examples, and the groups
built from the twisted polynomial ring GF(2^k){X}/(X^k).
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .ffield import GF2kElem, GF2kField, is_prime, make_gf2k, primitive_prime_divisor
from .groupkit import (DEFAULT_CAP, FiniteGroup, ResourceError, Subgroup, close, element_order,
                       enumerate_elements, generate)


class ConstructionError(ValueError):
    pass


# -- permutations -------------------------------------------------------------


class PermElem:
    """Permutation of {0..n-1}; ``a * b`` applies a first, then b."""

    __slots__ = ("images", "_h")

    def __init__(self, images: Sequence[int]):
        self.images = tuple(images)
        self._h = hash(self.images)

    @classmethod
    def checked(cls, images: Sequence[int]) -> PermElem:
        if sorted(images) != list(range(len(images))):
            raise ConstructionError(f"{list(images)} is not a permutation")
        return cls(images)

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> PermElem:
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls.checked(img)

    def __mul__(self, other: PermElem) -> PermElem:
        b = other.images
        return PermElem([b[i] for i in self.images])

    def inverse(self) -> PermElem:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return PermElem(inv)

    def encode(self) -> bytes:
        return bytes(self.images)

    def __eq__(self, other):
        return isinstance(other, PermElem) and self.images == other.images

    def __hash__(self):
        return self._h

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __repr__(self):
        return "".join(str(c) for c in self.cycles()) or "()"


# -- matrices over GF(p) ----------------------------------------------------------


def _mat_mul(n: int, p: int, a: tuple, b: tuple) -> tuple:
    return tuple(
        sum(a[i * n + t] * b[t * n + j] for t in range(n)) % p
        for i in range(n)
        for j in range(n)
    )


def _mat_inv(n: int, p: int, a: tuple) -> tuple | None:
    """Gauss-Jordan inverse mod p; None if singular."""
    m = [list(a[i * n:(i + 1) * n]) + [int(i == j) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] % p), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        f = pow(m[col][col], -1, p)
        m[col] = [x * f % p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                c = m[r][col]
                m[r] = [(x - c * y) % p for x, y in zip(m[r], m[col])]
    return tuple(m[i][n + j] for i in range(n) for j in range(n))


class MatrixElem:
    """Invertible n x n matrix over GF(p), entries row-major."""

    __slots__ = ("n", "p", "entries", "_h")

    def __init__(self, n: int, p: int, entries: Sequence[int]):
        self.n = n
        self.p = p
        self.entries = tuple(entries)
        self._h = hash(self.entries)

    @classmethod
    def checked(cls, p: int, rows: Sequence[Sequence[int]]) -> MatrixElem:
        if not is_prime(p):
            raise ConstructionError(f"modulus {p} is not prime")
        if p > 255:
            raise ConstructionError("only primes below 256 are supported")
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ConstructionError("matrix is not square")
        entries = tuple(x % p for r in rows for x in r)
        if _mat_inv(n, p, entries) is None:
            raise ConstructionError(f"singular matrix over GF({p}): {rows}")
        return cls(n, p, entries)

    @classmethod
    def identity(cls, n: int, p: int) -> MatrixElem:
        return cls(n, p, [int(i == j) for i in range(n) for j in range(n)])

    def __mul__(self, other: MatrixElem) -> MatrixElem:
        return MatrixElem(self.n, self.p, _mat_mul(self.n, self.p, self.entries, other.entries))

    def inverse(self) -> MatrixElem:
        return MatrixElem(self.n, self.p, _mat_inv(self.n, self.p, self.entries))

    def apply(self, v: tuple) -> tuple:
        n, p, a = self.n, self.p, self.entries
        return tuple(sum(a[i * n + j] * v[j] for j in range(n)) % p for i in range(n))

    def rows(self) -> list[list[int]]:
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def encode(self) -> bytes:
        return bytes(self.entries)

    def __eq__(self, other):
        return isinstance(other, MatrixElem) and self.entries == other.entries and self.p == other.p

    def __hash__(self):
        return self._h

    def __repr__(self):
        return f"Mat(p={self.p}, {self.rows()})"


class AffineContext:
    """Lookup tables for GF(p)^n x| M once the acting matrix group M is enumerated.

    Vectors are coded as integers (base-p digits, first coordinate most
    significant) and matrices by their index in M.
    """

    # above these sizes the tables are skipped and arithmetic is done directly
    _ADD_TABLE_MAX = 2048
    _ACT_TABLE_MAX = 1 << 22

    def __init__(self, p: int, n: int, M: FiniteGroup):
        self.p, self.n, self.M = p, n, M
        size = p ** n
        self.vecs = [self._digits(c) for c in range(size)]
        self.venc = [bytes(v) for v in self.vecs]
        self.menc = [m.encode() for m in M.elements]
        self.mmul = [[M.mul(a, b) for b in range(M.order)] for a in range(M.order)]
        self.minv = [M.inv(a) for a in range(M.order)]
        self.add = None
        if size <= self._ADD_TABLE_MAX:
            self.add = [[self.code(tuple((x + y) % p for x, y in zip(a, b))) for b in self.vecs]
                        for a in self.vecs]
        self.act = None
        if size * M.order <= self._ACT_TABLE_MAX:
            self.act = [[self.code(m.apply(v)) for v in self.vecs] for m in M.elements]

    def _digits(self, c: int) -> tuple:
        out = []
        for _ in range(self.n):
            c, r = divmod(c, self.p)
            out.append(r)
        return tuple(reversed(out))

    def code(self, v: Sequence[int]) -> int:
        c = 0
        for x in v:
            c = c * self.p + x
        return c

    def vadd(self, a: int, b: int) -> int:
        if self.add is not None:
            return self.add[a][b]
        return self.code(tuple((x + y) % self.p for x, y in zip(self.vecs[a], self.vecs[b])))

    def vact(self, m: int, v: int) -> int:
        if self.act is not None:
            return self.act[m][v]
        return self.code(self.M.elements[m].apply(self.vecs[v]))

    def vneg(self, a: int) -> int:
        return self.code(tuple(-x % self.p for x in self.vecs[a]))

    def pair(self, v: Sequence[int], m: MatrixElem) -> AffinePairElem:
        return AffinePairElem(self, self.code(tuple(x % self.p for x in v)), self.M.index[m])


class AffinePairElem:
    """(v, m) in GF(p)^n x| M with (v1, m1)(v2, m2) = (v1 + m1 v2, m1 m2)."""

    __slots__ = ("ctx", "v", "m", "_h")

    def __init__(self, ctx: AffineContext, v: int, m: int):
        self.ctx = ctx
        self.v = v
        self.m = m
        self._h = v * ctx.M.order + m

    def __mul__(self, other: AffinePairElem) -> AffinePairElem:
        c = self.ctx
        if c.add is not None and c.act is not None:
            return AffinePairElem(c, c.add[self.v][c.act[self.m][other.v]], c.mmul[self.m][other.m])
        return AffinePairElem(c, c.vadd(self.v, c.vact(self.m, other.v)), c.mmul[self.m][other.m])

    def inverse(self) -> AffinePairElem:
        c = self.ctx
        mi = c.minv[self.m]
        return AffinePairElem(c, c.vneg(c.vact(mi, self.v)), mi)

    @property
    def vector(self) -> tuple:
        return self.ctx.vecs[self.v]

    @property
    def matrix(self) -> MatrixElem:
        return self.ctx.M.elements[self.m]

    def encode(self) -> bytes:
        return self.ctx.venc[self.v] + self.ctx.menc[self.m]

    def __eq__(self, other):
        return (
            isinstance(other, AffinePairElem)
            and self.v == other.v
            and self.m == other.m
            and self.ctx is other.ctx
        )

    def __hash__(self):
        return self._h

    def as_matrix(self) -> list[list[int]]:
        """Faithful (n+1)-dimensional affine matrix [[m, v], [0, 1]]."""
        rows = [r + [x] for r, x in zip(self.matrix.rows(), self.vector)]
        rows.append([0] * self.ctx.n + [1])
        return rows

    def __repr__(self):
        return f"Aff(v={list(self.vector)}, m={self.matrix.rows()})"


# -- named groups -----------------------------------------------------------------


NAMED = ("cyclic", "dihedral", "symmetric", "alternating", "quaternion8")


def _named_generators(name: str, n: int) -> list:
    if name == "cyclic":
        if not 1 <= n <= 1 << 16:
            raise ConstructionError("cyclic parameter must be in [1, 65536]")
        if n > 255:
            raise ConstructionError("cyclic groups above 255 points are not encodable")
        return [PermElem(list(range(1, n)) + [0])]
    if name == "dihedral":
        if not 3 <= n <= 255:
            raise ConstructionError("dihedral parameter must be in [3, 255]")
        rot = PermElem(list(range(1, n)) + [0])
        ref = PermElem([(-i) % n for i in range(n)])
        return [rot, ref]
    if name == "symmetric":
        if not 1 <= n <= 6:
            raise ConstructionError("symmetric parameter must be in [1, 6]")
        if n == 1:
            return [PermElem([0])]
        return [PermElem.from_cycles(n, [0, 1]), PermElem(list(range(1, n)) + [0])]
    if name == "alternating":
        if not 3 <= n <= 6:
            raise ConstructionError("alternating parameter must be in [3, 6]")
        return [PermElem.from_cycles(n, [0, 1, i]) for i in range(2, n)]
    if name in ("quaternion8", "quaternion"):
        if n != 8:
            raise ConstructionError("only the quaternion group of order 8 is provided")
        # i, j in SL(2, 3)
        return [MatrixElem.checked(3, [[0, 2], [1, 0]]), MatrixElem.checked(3, [[1, 1], [1, 2]])]
    raise ConstructionError(f"unknown group name {name!r}")


def make_named(name: str, parameter: int = 0, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if name == "quaternion8" and parameter == 0:
        parameter = 8
    return close(_named_generators(name, parameter), cap=cap, name=f"{name}({parameter})")


# -- matrix groups and semidirect products --------------------------------------------


def make_matrix_group(p: int, gens: Sequence[Sequence[Sequence[int]]], cap: int = DEFAULT_CAP) -> FiniteGroup:
    return close([MatrixElem.checked(p, g) for g in gens], cap=cap, name=f"matrix(p={p})")


def make_semidirect(p: int, n: int, action_gens: Sequence[MatrixElem], cap: int = DEFAULT_CAP,
                    name: str = "") -> FiniteGroup:
    """GF(p)^n x| <action_gens>, acting factor on the left."""
    if not action_gens:
        action_gens = [MatrixElem.identity(n, p)]
    for m in action_gens:
        if m.n != n or m.p != p:
            raise ConstructionError("action generator has the wrong shape or field")
        if _mat_inv(n, p, m.entries) is None:
            raise ConstructionError("singular action generator")
    M = close(list(action_gens), cap=cap)
    if p ** n * M.order > cap:
        raise ResourceError(f"semidirect product has {p ** n * M.order} elements, above the cap {cap}")
    ctx = AffineContext(p, n, M)
    one = MatrixElem.identity(n, p)
    gens = [ctx.pair([int(i == j) for j in range(n)], one) for i in range(n)]
    gens += [ctx.pair([0] * n, m) for m in action_gens]
    return close(gens, cap=cap, name=name or f"semidirect(p={p}, n={n})")


G150_MATRICES = (
    ((0, 1), (1, 0)),  # transposition
    ((0, 4), (1, 4)),  # 3-cycle: companion matrix of x^2 + x + 1 over GF(5)
)

H199650_MATRICES = (
    ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
    ((0, 0, 1), (1, 0, 0), (0, 1, 0)),
    ((9, 0, 0), (0, 3, 0), (0, 0, 9)),
    ((5, 0, 0), (0, 9, 0), (0, 0, 1)),
)


def g150_action() -> list[MatrixElem]:
    return [MatrixElem.checked(5, m) for m in G150_MATRICES]


def h199650_action() -> list[MatrixElem]:
    return [MatrixElem.checked(11, m) for m in H199650_MATRICES]


@lru_cache(maxsize=None)
def make_g150() -> FiniteGroup:
    """GF(5)^2 x| S3 with S3 acting through its 2-dimensional irreducible."""
    acting = close(g150_action())
    assert acting.order == 6
    return make_semidirect(5, 2, g150_action(), name="g150")


@lru_cache(maxsize=None)
def make_h199650() -> FiniteGroup:
    """GF(11)^3 x| M, M the order-150 group generated by the four printed matrices."""
    M = close(h199650_action())
    if M.order != 150:
        raise AssertionError(f"generator matrices give a group of order {M.order}, expected 150")
    return make_semidirect(11, 3, h199650_action(), name="h199650")


# -- twisted polynomial ring R = GF(2^k){X}/(X^k) -----------------------------------------


class TwistedRing:
    """Arithmetic of R = F{X}/(X^k), with x a = a^2 x, on coefficient tuples of ints."""

    # products a * sigma^i(b) are tabulated for fields up to this size
    _TABLE_MAX_Q = 16

    def __init__(self, k: int):
        if k < 2 or k & (k - 1):
            raise ConstructionError("k must be a power of 2, at least 2")
        self.k = k
        self.F: GF2kField = make_gf2k(k)
        F = self.F
        q = F.size
        self._mul = F._mul
        self._frob = None
        self._mf = None
        self._gpow = None
        if self._mul is not None:
            # frob[u][a] = a^(2^u); gpow[u][g] = g^(1 - 2^u)
            self._frob = [[F.frob_int(a, u) for a in range(q)] for u in range(k)]
            self._gpow = [[F.pow_int(g, self._act_exponent(u)) for g in range(q)] for u in range(k)]
        if q <= self._TABLE_MAX_Q:
            self._mf = [[self._mul[a][self._frob[i][b]] for a in range(q) for b in range(q)]
                        for i in range(k)]

    def fmul(self, a: int, b: int) -> int:
        return self._mul[a][b] if self._mul is not None else self.F.mul_int(a, b)

    def frob(self, a: int, u: int) -> int:
        if self._frob is not None:
            return self._frob[u % self.k][a]
        return self.F.frob_int(a, u)

    def mul(self, a: tuple, b: tuple) -> tuple:
        """sum_{i+j<k} a_i * sigma^i(b_j) x^(i+j)."""
        k = self.k
        out = [0] * k
        mf = self._mf
        if mf is not None:
            q = self.F.size
            for i in range(k):
                ai = a[i]
                if ai:
                    row = mf[i]
                    base = ai * q
                    for j in range(k - i):
                        out[i + j] ^= row[base + b[j]]
            return tuple(out)
        for i in range(k):
            ai = a[i]
            if not ai:
                continue
            for j in range(k - i):
                bj = b[j]
                if bj:
                    out[i + j] ^= self.fmul(ai, self.frob(bj, i))
        return tuple(out)

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple(x ^ y for x, y in zip(a, b))

    def one(self) -> tuple:
        return (1,) + (0,) * (self.k - 1)

    def zero(self) -> tuple:
        return (0,) * self.k

    def unit_inverse(self, s: tuple) -> tuple:
        """Inverse of 1 + n, n nilpotent: sum of n^i (characteristic 2)."""
        if s[0] != 1:
            raise ConstructionError("only elements with constant term 1 are inverted here")
        n = (0,) + tuple(s[1:])
        acc = self.one()
        term = self.one()
        for _ in range(self.k - 1):
            term = self.mul(term, n)
            acc = self.add(acc, term)
        return acc

    def _act_exponent(self, u: int) -> int:
        return (1 - (1 << u)) % (self.F.size - 1)

    def act(self, s: tuple, gamma: int, j: int) -> tuple:
        """gamma sigma^j(s) gamma^-1: coefficient u becomes sigma^j(a_u) * gamma^(1 - 2^u).

        This is the left action of (gamma, j); conjugating s by the group
        element (1, gamma, 0) is therefore gamma^-1 s gamma, which multiplies
        coefficient u by gamma^(2^u - 1).
        """
        if gamma == 1 and j == 0:
            return s
        F = self.F
        gp = self._gpow
        out = []
        for u, a in enumerate(s):
            if a:
                a = self.frob(a, j)
                if gamma != 1:
                    a = self.fmul(a, gp[u][gamma] if gp is not None else F.pow_int(gamma, self._act_exponent(u)))
            out.append(a)
        return tuple(out)

    def x_power(self, u: int, alpha: int = 1) -> tuple:
        c = [0] * self.k
        if u < self.k:
            c[u] = alpha
        return tuple(c)


@lru_cache(maxsize=None)
def twisted_ring(k: int) -> TwistedRing:
    return TwistedRing(k)


class ArrayRing:
    """Vectorized multiplication in R on (N, k) uint16 coefficient arrays."""

    def __init__(self, R: TwistedRing):
        F = R.F
        q = F.size
        assert q <= 256
        self.R = R
        self.k = R.k
        self.q = q
        mul = np.array([[F.mul_int(a, b) for b in range(q)] for a in range(q)], dtype=np.uint16)
        frob = np.array([[F.frob_int(a, i) for a in range(q)] for i in range(R.k)], dtype=np.intp)
        # mf[i][a, b] = a * sigma^i(b)
        self.mf = [mul[:, frob[i]] for i in range(R.k)]
        self.frob = frob

    def mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Row-wise products; a single row on either side broadcasts."""
        A, B = np.broadcast_arrays(np.atleast_2d(A), np.atleast_2d(B))
        out = np.zeros(A.shape, dtype=np.uint16)
        k = self.k
        for i in range(k):
            ai = A[:, i]
            t = self.mf[i]
            for j in range(k - i):
                out[:, i + j] ^= t[ai, B[:, j]]
        return out


def unit_array(R: TwistedRing, u: int) -> np.ndarray:
    """All elements of S_u = 1 + J^u as rows, in lexicographic coefficient order."""
    k, q = R.k, R.F.size
    if u >= k:
        return np.array([R.one()], dtype=np.uint16)
    tails = np.array(list(product(range(q), repeat=k - u)), dtype=np.uint16).reshape(-1, k - u)
    head = np.zeros((len(tails), u), dtype=np.uint16)
    head[:, 0] = 1
    return np.hstack([head, tails])


def s_product_table(k: int) -> array:
    """Flattened multiplication table of S = S_1: entry a * |S| + b is the
    position of s_a s_b, positions taken in lexicographic coefficient order."""
    R = twisted_ring(k)
    AR = ArrayRing(R)
    rows = unit_array(R, 1)
    q = R.F.size
    weights = np.array([q ** (k - 1 - i) for i in range(1, k)], dtype=np.int64)
    out = np.empty((len(rows), len(rows)), dtype=np.uint16)
    for a, s in enumerate(rows):
        prod = AR.mul(s, rows)
        assert (prod[:, 0] == 1).all()
        out[a] = prod[:, 1:].astype(np.int64) @ weights
    return array("H", out.ravel().tobytes())


class TwistedRingElem:
    """Element a_0 + a_1 x + ... + a_{k-1} x^{k-1} of R."""

    __slots__ = ("ring", "c", "_h")

    def __init__(self, ring: TwistedRing, coeffs: Sequence[int]):
        if len(coeffs) != ring.k:
            raise ConstructionError(f"expected {ring.k} coefficients")
        self.ring = ring
        self.c = tuple(int(x) for x in coeffs)
        self._h = hash(self.c)

    @property
    def coeffs(self) -> list[GF2kElem]:
        return [GF2kElem(a, self.ring.F) for a in self.c]

    def __mul__(self, other: TwistedRingElem) -> TwistedRingElem:
        return TwistedRingElem(self.ring, self.ring.mul(self.c, other.c))

    def __add__(self, other: TwistedRingElem) -> TwistedRingElem:
        return TwistedRingElem(self.ring, self.ring.add(self.c, other.c))

    def inverse(self) -> TwistedRingElem:
        return TwistedRingElem(self.ring, self.ring.unit_inverse(self.c))

    def encode(self) -> bytes:
        return bytes(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __eq__(self, other):
        return isinstance(other, TwistedRingElem) and self.c == other.c

    def __hash__(self):
        return self._h

    def __repr__(self):
        return "R" + repr(list(self.c))


def twisted_mul(a: TwistedRingElem, b: TwistedRingElem) -> TwistedRingElem:
    if a.ring is not b.ring:
        raise ConstructionError("ring elements from different rings")
    return a * b


def level(s: TwistedRingElem) -> int:
    """Largest u with s in S_u (k for the identity)."""
    for u in range(1, s.ring.k):
        if s.c[u]:
            return u
    return s.ring.k


def psi_u(s: TwistedRingElem, u: int) -> GF2kElem:
    """Coefficient of x^u of s in S_u = 1 + J^u."""
    if s.c[0] != 1 or any(s.c[1:u]):
        raise ValueError(f"element is not in S_{u}")
    a = s.c[u] if u < s.ring.k else 0
    return GF2kElem(a, s.ring.F)


def _enumeration_guard(k: int):
    if k not in (2, 4):
        raise ResourceError(
            f"full enumeration for k={k} is refused (|S| = 2^{k * (k - 1)}); "
            "use the ring-level operations instead"
        )


def s_generators(k: int) -> list[TwistedRingElem]:
    """1 + b x for b running over the polynomial basis of GF(2^k)."""
    R = twisted_ring(k)
    one = R.one()
    return [TwistedRingElem(R, R.add(one, R.x_power(1, 1 << i))) for i in range(k)]


@lru_cache(maxsize=None)
def make_S(k: int) -> FiniteGroup:
    """The unit group S = 1 + J."""
    _enumeration_guard(k)
    S = close(s_generators(k), name=f"S(k={k})")
    assert S.order == (1 << k) ** (k - 1)
    return S


def make_Su(k: int, u: int) -> Subgroup:
    """S_u = 1 + J^u as a subgroup of make_S(k)."""
    if not 1 <= u <= k:
        raise ValueError("u must be in [1, k]")
    S = make_S(k)
    members = [i for i, s in enumerate(S.elements) if not any(s.c[1:u])]
    return generate(S, members)


def sylow_p_of_units(F: GF2kField, p: int) -> tuple[int, list[int]]:
    """(smallest generator, elements) of the Sylow p-subgroup of F^x."""
    n = F.size - 1
    pa = 1
    while n % (pa * p) == 0:
        pa *= p
    elems = sorted({F.pow_int(a, n // pa) for a in range(1, F.size)})
    gen = min(a for a in elems if F.mult_order(a) == pa)
    return gen, elems


class TwistedGroupElem:
    """(s, gamma, j) in S x| (P x| Gal), with (s1,h1)(s2,h2) = (s1 h1(s2), h1 h2)."""

    __slots__ = ("ring", "s", "gamma", "j", "_h")

    def __init__(self, ring: TwistedRing, s: tuple, gamma: int, j: int):
        self.ring = ring
        self.s = s
        self.gamma = gamma
        self.j = j
        self._h = hash((s, gamma, j))

    def __mul__(self, other: TwistedGroupElem) -> TwistedGroupElem:
        R = self.ring
        s = R.mul(self.s, R.act(other.s, self.gamma, self.j))
        g = R.fmul(self.gamma, R.frob(other.gamma, self.j))
        return TwistedGroupElem(R, s, g, (self.j + other.j) % R.k)

    def inverse(self) -> TwistedGroupElem:
        R = self.ring
        jinv = (-self.j) % R.k
        ginv = R.frob(R.F.inv_int(self.gamma), jinv)
        return TwistedGroupElem(R, R.act(R.unit_inverse(self.s), ginv, jinv), ginv, jinv)

    def encode(self) -> bytes:
        return bytes(self.s) + bytes((self.gamma, self.j))

    def __eq__(self, other):
        return (
            isinstance(other, TwistedGroupElem)
            and self.s == other.s
            and self.gamma == other.gamma
            and self.j == other.j
        )

    def __hash__(self):
        return self._h

    def __repr__(self):
        return f"Tw(s={list(self.s)}, gamma={self.gamma}, j={self.j})"


@dataclass(frozen=True)
class TwistedData:
    k: int
    p: int
    gamma0: int
    P: tuple


def twisted_data(k: int) -> TwistedData:
    R = twisted_ring(k)
    p = primitive_prime_divisor(k)
    gamma0, P = sylow_p_of_units(R.F, p)
    return TwistedData(k, p, gamma0, tuple(P))


def twisted_generators(k: int) -> list[TwistedGroupElem]:
    R = twisted_ring(k)
    d = twisted_data(k)
    one = R.one()
    return [
        TwistedGroupElem(R, R.add(one, R.x_power(1, 1)), 1, 0),
        TwistedGroupElem(R, one, d.gamma0, 0),
        TwistedGroupElem(R, one, 1, 1),
    ]


class TwistedGroup(FiniteGroup):
    """The enumerated group S x| (P x| Gal) with table-driven index arithmetic.

    Elements sort by (s, gamma, j) bytes, so element i is the pair
    (S position i // |H|, H position i % |H|), H = P x| Gal in (gamma, j) order.
    """

    def __init__(self, elements, generators, name: str, k: int):
        super().__init__(elements, generators, name)
        R = twisted_ring(k)
        S = make_S(k)
        hs = sorted({(e.gamma, e.j) for e in self.elements})
        nH = len(hs)
        assert self.order == S.order * nH
        assert all(e.s == S.elements[i // nH].c and (e.gamma, e.j) == hs[i % nH]
                   for i, e in enumerate(self.elements))
        hidx = {h: n for n, h in enumerate(hs)}
        self._nH = nH
        self._nS = S.order
        self._hmul = [[hidx[(R.fmul(g1, R.frob(g2, j1)), (j1 + j2) % k)] for g2, j2 in hs]
                      for g1, j1 in hs]
        self._act = [[S.index[TwistedRingElem(R, R.act(t.c, g, j))] for t in S.elements]
                     for g, j in hs]
        self._smul = s_product_table(k)

    def mul(self, i: int, j: int) -> int:
        nH = self._nH
        s1, h1 = divmod(i, nH)
        s2, h2 = divmod(j, nH)
        return self._smul[s1 * self._nS + self._act[h1][s2]] * nH + self._hmul[h1][h2]

    def conj(self, i: int, g: int) -> int:
        return self.mul(self.mul(self._inverses[g], i), g)

    def commutator(self, a: int, b: int) -> int:
        inv = self._inverses
        return self.mul(self.mul(inv[a], inv[b]), self.mul(a, b))

    def commutes(self, a: int, b: int) -> bool:
        return self.mul(a, b) == self.mul(b, a)

    def power(self, i: int, n: int) -> int:
        if n < 0:
            i, n = self.inv(i), -n
        r = self.identity
        while n:
            if n & 1:
                r = self.mul(r, i)
            i = self.mul(i, i)
            n >>= 1
        return r


@lru_cache(maxsize=None)
def make_twisted_group(k: int) -> FiniteGroup:
    _enumeration_guard(k)
    d = twisted_data(k)
    gens = twisted_generators(k)
    G = TwistedGroup(enumerate_elements(gens), gens, f"twisted({k})", k)
    expected = (1 << k) ** (k - 1) * len(d.P) * k
    assert G.order == expected, (G.order, expected)
    return G


def twisted_parts(k: int) -> dict[str, Subgroup]:
    """Subgroups S, P, S*P and the Galois complement of make_twisted_group(k)."""
    G = make_twisted_group(k)
    one = twisted_ring(k).one()
    S = [i for i, e in enumerate(G.elements) if e.gamma == 1 and e.j == 0]
    P = [i for i, e in enumerate(G.elements) if e.s == one and e.j == 0]
    SP = [i for i, e in enumerate(G.elements) if e.j == 0]
    Gal = [i for i, e in enumerate(G.elements) if e.s == one and e.gamma == 1]
    return {
        "S": generate(G, S),
        "P": generate(G, P),
        "SP": generate(G, SP),
        "Gal": generate(G, Gal),
    }


def tn_sequence(n: int) -> int:
    """t_1 = 2, t_{m+1} = 2 t_m + 2."""
    if n < 1:
        raise ValueError("n must be positive")
    t = 2
    for _ in range(n - 1):
        t = 2 * t + 2
    assert t == (1 << (n + 1)) - 2
    return t


# -- group specifications -------------------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    """Tagged group description.

    kind is one of: named, permutation, matrix, semidirect, paper_g150,
    paper_h199650, twisted. ``gens`` holds image lists (permutation) or row
    lists (matrix, semidirect).
    """

    kind: str
    name: str = ""
    param: int = 0
    n: int = 0
    p: int = 0
    gens: tuple = ()


def spec_generators(spec: GroupSpec) -> list:
    if spec.kind == "named":
        return _named_generators(spec.name, spec.param)
    if spec.kind == "permutation":
        gens = [PermElem.checked(g) for g in spec.gens]
        if any(len(g.images) != spec.n for g in gens):
            raise ConstructionError(f"permutation generators must act on {spec.n} points")
        return gens
    if spec.kind == "matrix":
        gens = [MatrixElem.checked(spec.p, g) for g in spec.gens]
        if any(g.n != spec.n for g in gens):
            raise ConstructionError(f"matrix generators must be {spec.n} x {spec.n}")
        return gens
    raise ConstructionError(f"no plain generator list for kind {spec.kind!r}")


def build(spec: GroupSpec, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if spec.kind in ("paper_g150", "paper_h199650"):
        size = 150 if spec.kind == "paper_g150" else 199650
        if size > cap:
            raise ResourceError(f"{spec.kind} has {size} elements, above the cap {cap}")
        return make_g150() if spec.kind == "paper_g150" else make_h199650()
    if spec.kind == "twisted":
        if spec.param < 2 or spec.param & (spec.param - 1):
            raise ConstructionError(f"twisted:{spec.param}: k must be a power of 2, at least 2")
        if spec.param not in (2, 4):
            raise ResourceError(f"twisted:{spec.param} cannot be enumerated (only k = 2 or 4)")
        size = (1 << spec.param) ** (spec.param - 1) * len(twisted_data(spec.param).P) * spec.param
        if size > cap:
            raise ResourceError(f"twisted:{spec.param} has {size} elements, above the cap {cap}")
        return make_twisted_group(spec.param)
    if spec.kind == "semidirect":
        acting = [MatrixElem.checked(spec.p, g) for g in spec.gens]
        return make_semidirect(spec.p, spec.n, acting, cap=cap)
    if spec.kind == "named":
        return make_named(spec.name, spec.param, cap=cap)
    return close(spec_generators(spec), cap=cap, name=spec.kind)


# -- export -------------------------------------------------------------------------


def _perm_line(images: Sequence[int]) -> str:
    cyc = PermElem(images).cycles()
    body = "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc) or "()"
    return f"perm: {body}"


def _mat_line(p: int, rows) -> str:
    inner = ",".join("[" + ",".join(str(x) for x in r) + "]" for r in rows)
    return f"mat p={p} rows=[{inner}]"


def _twisted_perm_images(k: int, g: TwistedGroupElem) -> list[int]:
    """Action (s, h) . t = s h(t) of G on the points of S."""
    S = make_S(k)
    R = twisted_ring(k)
    out = []
    for t in S.elements:
        img = R.mul(g.s, R.act(t.c, g.gamma, g.j))
        out.append(S.index[TwistedRingElem(R, img)])
    return out


def export_gap(spec: GroupSpec, cap: int = DEFAULT_CAP) -> str:
    """Generators and order in a line format a CAS can ingest.

    Permutations use 1-based points; affine pairs (v, m) are written as the
    (n+1) x (n+1) matrix [[m, v], [0, 1]]; twisted groups as permutations of S.
    """
    G = build(spec, cap)
    lines = [f"order: {G.order}"]
    if spec.kind in ("paper_g150", "paper_h199650", "semidirect"):
        for g in G.generators:
            e = G.elements[g]
            lines.append(_mat_line(e.ctx.p, e.as_matrix()))
    elif spec.kind == "twisted":
        for g in twisted_generators(spec.param):
            lines.append(_perm_line(_twisted_perm_images(spec.param, g)))
    else:
        for g in spec_generators(spec):
            if isinstance(g, PermElem):
                lines.append(_perm_line(g.images))
            else:
                lines.append(_mat_line(g.p, g.rows()))
    return "\n".join(lines) + "\n"


def generator_orders(mats: Sequence[MatrixElem]) -> list[int]:
    return [element_order(m) for m in mats]
