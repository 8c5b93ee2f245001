"""Finite group engine over fully enumerated element tables.

A FiniteGroup stores its elements sorted by canonical byte encoding, so an
element is addressed by its index and "smallest index" always means
"smallest encoding". Subgroups are sets of indices into their parent.

Element objects only need ``__mul__``, ``inverse()``, ``encode()`` and
hash/equality consistent with the encoding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Iterable, Protocol, Sequence

from .ffield import prime_factors

DEFAULT_CAP = 1 << 21


class ResourceError(RuntimeError):
    """An enumeration limit was exceeded."""


class GroupElement(Protocol):
    def __mul__(self, other): ...
    def inverse(self): ...
    def encode(self) -> bytes: ...


def p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def is_prime_power(n: int) -> bool:
    return n == 1 or len(prime_factors(n)) == 1


def is_power_of(n: int, p: int) -> bool:
    return p_part(n, p) == n


def element_order(x: GroupElement) -> int:
    """Smallest n >= 1 with x^n = 1, by repeated multiplication."""
    y, n = x, 1
    one = x * x.inverse()
    while y != one:
        y = y * x
        n += 1
    return n


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: frozenset
    element_order: int
    is_real: bool

    @property
    def size(self) -> int:
        return len(self.members)


class FiniteGroup:
    def __init__(self, elements: Sequence, generators: Sequence, name: str = ""):
        self.elements = sorted(elements, key=lambda e: e.encode())
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements")
        self.generators = tuple(self.index[g] for g in generators)
        self.name = name
        one = generators[0] * generators[0].inverse()
        self.identity = self.index[one]

    def __repr__(self):
        return f"<FiniteGroup {self.name or '?'} order={self.order}>"

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    # -- index arithmetic -----------------------------------------------

    def mul(self, i: int, j: int) -> int:
        return self.index[self.elements[i] * self.elements[j]]

    @cached_property
    def _inverses(self) -> list[int]:
        inv = [-1] * self.order
        for i, e in enumerate(self.elements):
            if inv[i] < 0:
                j = self.index[e.inverse()]
                inv[i], inv[j] = j, i
        return inv

    def inv(self, i: int) -> int:
        return self._inverses[i]

    def conj(self, i: int, g: int) -> int:
        """i^g = g^-1 i g."""
        els = self.elements
        return self.index[els[self._inverses[g]] * els[i] * els[g]]

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        els = self.elements
        inv = self._inverses
        return self.index[els[inv[a]] * els[inv[b]] * els[a] * els[b]]

    def power(self, i: int, n: int) -> int:
        if n < 0:
            i, n = self.inv(i), -n
        x = self.elements[i]
        r = self.elements[self.identity]
        while n:
            if n & 1:
                r = r * x
            x = x * x
            n >>= 1
        return self.index[r]

    def commutes(self, a: int, b: int) -> bool:
        els = self.elements
        return els[a] * els[b] == els[b] * els[a]

    # -- cached structure -----------------------------------------------

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, frozenset(range(self.order)), self.generators)

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(self, frozenset([self.identity]), ())

    @cached_property
    def classes(self) -> list[ConjugacyClass]:
        return _orbit_classes(self, range(self.order), self.generators)

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.order
        for c, cl in enumerate(self.classes):
            for x in cl.members:
                out[x] = c
        return out

    @cached_property
    def orders(self) -> list[int]:
        cls = self.classes
        return [cls[c].element_order for c in self.class_of]

    def order_of(self, i: int) -> int:
        return self.orders[i]

    @cached_property
    def primes(self) -> list[int]:
        return prime_factors(self.order)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: frozenset
    gens: tuple = ()

    def __post_init__(self):
        assert self.parent.order % len(self.members) == 0, "Lagrange violated"

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __le__(self, other: Subgroup) -> bool:
        return self.members <= other.members

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    def is_trivial(self) -> bool:
        return self.order == 1

    @cached_property
    def classes(self) -> list[ConjugacyClass]:
        return _orbit_classes(self.parent, sorted(self.members), self.gens)


def as_subgroup(X) -> Subgroup:
    return X.whole if isinstance(X, FiniteGroup) else X


def _parent(X) -> FiniteGroup:
    return X if isinstance(X, FiniteGroup) else X.parent


# -- closure --------------------------------------------------------------


def enumerate_elements(generators: Sequence, cap: int = DEFAULT_CAP) -> list:
    """Breadth-first closure of `generators` under left multiplication."""
    if not generators:
        raise ValueError("need at least one generator")
    one = generators[0] * generators[0].inverse()
    seen = {one}
    order = [one]
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise ResourceError(
                            f"enumeration cap {cap} exceeded (reached {len(seen)} elements)"
                        )
        frontier = nxt
    return order


def close(generators: Sequence, cap: int = DEFAULT_CAP, name: str = "") -> FiniteGroup:
    """Enumerate the group generated by `generators`."""
    return FiniteGroup(enumerate_elements(generators, cap), list(generators), name=name)


class _TooBig(Exception):
    pass


class _Builder:
    """Incremental subgroup generation by Dimino's coset method."""

    def __init__(self, G: FiniteGroup, limit: int | None = None):
        self.G = G
        self.members = [G.identity]
        self.memberset = {G.identity}
        self.gens: list[int] = []
        self.limit = limit

    def add(self, new: int) -> bool:
        if new in self.memberset:
            return False
        G = self.G
        mul = G.mul
        H = list(self.members)
        self.gens.append(new)
        reps = [G.identity]
        i = 0
        while i < len(reps):
            r = reps[i]
            for s in self.gens:
                t = mul(s, r)
                if t not in self.memberset:
                    for h in H:
                        y = mul(t, h)
                        self.members.append(y)
                        self.memberset.add(y)
                    reps.append(t)
                    if self.limit is not None and len(self.members) > self.limit:
                        raise _TooBig
            i += 1
        return True

    def result(self) -> Subgroup:
        return Subgroup(self.G, frozenset(self.memberset), tuple(self.gens))


def generate(G: FiniteGroup, elems: Iterable[int]) -> Subgroup:
    """Subgroup generated by the given element indices."""
    b = _Builder(G)
    for x in elems:
        b.add(x)
    return b.result()


def _generate_bounded(G: FiniteGroup, elems: Iterable[int], limit: int) -> Subgroup | None:
    b = _Builder(G, limit)
    try:
        for x in elems:
            b.add(x)
    except _TooBig:
        return None
    return b.result()


def join(A: Subgroup, B: Subgroup) -> Subgroup:
    return generate(A.parent, list(A.gens) + list(B.gens))


def product(A: Subgroup, B: Subgroup) -> Subgroup:
    """Subgroup generated by A and B (equal to AB when one normalizes the other)."""
    return join(A, B)


# -- conjugacy -------------------------------------------------------------


def _orbit_classes(G: FiniteGroup, members: Iterable[int], gens: Sequence[int]) -> list[ConjugacyClass]:
    """Conjugation orbits under the generators only, O(|X| * #gens)."""
    els = G.elements
    index = G.index
    gpairs = [(els[G.inv(g)], els[g]) for g in gens]
    seen: set[int] = set()
    raw = []
    for x in members:
        if x in seen:
            continue
        orbit = [x]
        seen.add(x)
        k = 0
        while k < len(orbit):
            e = els[orbit[k]]
            for gi, g in gpairs:
                y = index[gi * e * g]
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
            k += 1
        raw.append(frozenset(orbit))
    out = []
    for orb in raw:
        rep = min(orb)
        out.append(
            ConjugacyClass(
                representative=rep,
                members=orb,
                element_order=element_order(els[rep]),
                is_real=G.inv(rep) in orb,
            )
        )
    out.sort(key=lambda c: (c.element_order, c.size, c.representative))
    return out


def conjugacy_classes(X) -> list[ConjugacyClass]:
    return X.classes


def class_containing(X, x: int) -> ConjugacyClass:
    if isinstance(X, FiniteGroup):
        return X.classes[X.class_of[x]]
    for c in X.classes:
        if x in c.members:
            return c
    raise KeyError(x)


def is_real(X, x: int) -> bool:
    """True iff x is conjugate in X to its inverse."""
    return class_containing(X, x).is_real


def inverting_elements(X, x: int) -> frozenset:
    """All g in X with x^g = x^-1 (brute force)."""
    G = _parent(X)
    xi = G.inv(x)
    return frozenset(g for g in as_subgroup(X).members if G.conj(x, g) == xi)


def real_classes(X) -> list[ConjugacyClass]:
    return [c for c in X.classes if c.is_real]


# -- centralizers, normality -------------------------------------------------


def centralizer(X, S: Iterable[int]) -> Subgroup:
    G = _parent(X)
    S = list(S)
    members = [g for g in sorted(as_subgroup(X).members) if all(G.commutes(g, s) for s in S)]
    return generate(G, members)


def center(X) -> Subgroup:
    """Z(X) as the union of singleton conjugacy classes."""
    G = _parent(X)
    return generate(G, [c.representative for c in X.classes if c.size == 1])


def is_normal(X, H: Subgroup) -> bool:
    G = _parent(X)
    ambient = as_subgroup(X)
    if not H.members <= ambient.members:
        return False
    return all(G.conj(h, g) in H.members for h in H.gens for g in ambient.gens)


def normal_closure(X, S: Iterable[int]) -> Subgroup:
    """Smallest normal subgroup of X containing S."""
    G = _parent(X)
    ambient = as_subgroup(X)
    b = _Builder(G)
    for s in S:
        b.add(s)
    done = 0
    # conjugates of every generator (including ones added later) by ambient gens
    while done < len(b.gens):
        s = b.gens[done]
        for g in ambient.gens:
            b.add(G.conj(s, g))
        done += 1
    return b.result()


def normalizes(G: FiniteGroup, H: Subgroup, g: int) -> bool:
    return all(G.conj(h, g) in H.members for h in H.gens)


def normalizer(X, H: Subgroup) -> Subgroup:
    G = _parent(X)
    return generate(G, [g for g in sorted(as_subgroup(X).members) if normalizes(G, H, g)])


# -- derived series ------------------------------------------------------------


def derived_subgroup(X) -> Subgroup:
    G = _parent(X)
    H = as_subgroup(X)
    seeds = [G.commutator(a, b) for a, b in combinations(H.gens, 2)]
    return normal_closure(H, seeds)


def derived_series(X) -> list[Subgroup]:
    series = [as_subgroup(X)]
    while True:
        D = derived_subgroup(series[-1])
        if D.order == series[-1].order:
            return series
        series.append(D)


def derived_length(X) -> int:
    series = derived_series(X)
    if series[-1].order != 1:
        raise ValueError("derived series stabilized above the identity (group not solvable)")
    return len(series) - 1


def is_solvable(X) -> bool:
    return derived_series(X)[-1].order == 1


def commutator_subgroup(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """[A, B], generated by all commutators [a, b]."""
    return generate(G, sorted({G.commutator(a, b) for a in A.members for b in B.members}))


# -- cores, Sylow, Fitting ---------------------------------------------------------


def pi_core(X, primes: Iterable[int]) -> Subgroup:
    """O_pi(X): largest normal pi-subgroup, assembled class by class."""
    G = _parent(X)
    H = as_subgroup(X)
    primes = set(primes)
    bound = 1
    for p in primes:
        bound *= p_part(H.order, p)
    picked: list[int] = []
    for c in X.classes:
        n = c.element_order
        if n == 1 or not set(prime_factors(n)) <= primes:
            continue
        # a p-group has only p-elements: reject on the first bad product x*y
        x = c.representative
        orders = G.orders
        if not all(set(prime_factors(orders[G.mul(x, y)])) <= primes for y in c.members):
            continue
        N = _generate_bounded(G, sorted(c.members), bound)
        if N is not None and set(prime_factors(N.order)) <= primes:
            picked.extend(N.gens)
    return generate(G, picked)


def p_core(X, p: int) -> Subgroup:
    return pi_core(X, [p])


def odd_core(X) -> Subgroup:
    """O_{2'}(X)."""
    H = as_subgroup(X)
    return pi_core(X, [q for q in prime_factors(H.order) if q != 2])


def o2prime(X) -> Subgroup:
    """O^{2'}(X): generated by all elements of 2-power order."""
    G = _parent(X)
    H = as_subgroup(X)
    gens = []
    for c in X.classes:
        if c.element_order > 1 and is_power_of(c.element_order, 2):
            gens.extend(sorted(c.members))
    R = generate(G, gens)
    assert (H.order // R.order) % 2 == 1
    return R


def fitting(X) -> Subgroup:
    G = _parent(X)
    H = as_subgroup(X)
    cores = [p_core(X, p) for p in prime_factors(H.order)]
    F = generate(G, [g for C in cores for g in C.gens])
    expected = 1
    for C in cores:
        expected *= C.order
    assert F.order == expected, "p-cores do not form a direct product"
    return F


def p_elements(X, p: int) -> list[int]:
    """Nonidentity elements of p-power order, ascending."""
    G = _parent(X)
    orders = G.orders
    return [x for x in sorted(as_subgroup(X).members) if orders[x] > 1 and is_power_of(orders[x], p)]


def sylow(X, p: int) -> Subgroup:
    """A Sylow p-subgroup by normalizer ascent (always the smallest eligible element)."""
    G = _parent(X)
    H = as_subgroup(X)
    target = p_part(H.order, p)
    if target == 1:
        return G.trivial
    pel = p_elements(X, p)
    b = _Builder(G)
    b.add(pel[0])
    while len(b.members) < target:
        P = b.result()
        for x in pel:
            if x not in b.memberset and normalizes(G, P, x):
                b.add(x)
                break
        else:
            raise AssertionError("Sylow ascent stalled")
    P = b.result()
    assert P.order == target
    return P


def is_nilpotent(X) -> bool:
    H = as_subgroup(X)
    return all(p_core(X, p).order == p_part(H.order, p) for p in prime_factors(H.order))


def is_abelian(X) -> bool:
    G = _parent(X)
    gens = as_subgroup(X).gens
    return all(G.commutes(a, b) for a, b in combinations(gens, 2))


def is_cyclic(X) -> bool:
    G = _parent(X)
    H = as_subgroup(X)
    return any(G.orders[x] == H.order for x in H.members)


def exponent(X) -> int:
    G = _parent(X)
    e = 1
    for x in as_subgroup(X).members:
        o = G.orders[x]
        e = e * o // gcd(e, o)
    return e


def is_elementary_abelian(X) -> bool:
    H = as_subgroup(X)
    ps = prime_factors(H.order)
    return H.order == 1 or (len(ps) == 1 and is_abelian(X) and exponent(X) == ps[0])


# -- quotients --------------------------------------------------------------


class QuotientElem:
    __slots__ = ("ctx", "rep")

    def __init__(self, ctx: "_CosetTable", rep: int):
        self.ctx = ctx
        self.rep = rep

    def __mul__(self, other: QuotientElem) -> QuotientElem:
        c = self.ctx
        return QuotientElem(c, c.rep_of[c.G.mul(self.rep, other.rep)])

    def inverse(self) -> QuotientElem:
        c = self.ctx
        return QuotientElem(c, c.rep_of[c.G.inv(self.rep)])

    def encode(self) -> bytes:
        return self.ctx.G.elements[self.rep].encode()

    def __eq__(self, other):
        return isinstance(other, QuotientElem) and self.rep == other.rep and self.ctx is other.ctx

    def __hash__(self):
        return hash(self.rep)

    def __repr__(self):
        return f"Coset({self.rep})"


@dataclass(eq=False)
class _CosetTable:
    G: FiniteGroup
    N: Subgroup
    rep_of: list[int] = field(default_factory=list)


class QuotientGroup(FiniteGroup):
    def __init__(self, parent: FiniteGroup, normal: Subgroup, table: _CosetTable):
        gens = [QuotientElem(table, table.rep_of[g]) for g in parent.generators]
        super().__init__(enumerate_elements(gens), gens, name=f"{parent.name}/N{normal.order}")
        self.parent = parent
        self.normal = normal
        self.table = table

    def image(self, i: int) -> int:
        """Index in the quotient of the coset containing parent element i."""
        return self.index[QuotientElem(self.table, self.table.rep_of[i])]

    def image_subgroup(self, H: Subgroup) -> Subgroup:
        return generate(self, sorted({self.image(h) for h in H.gens}))

    def preimage(self, q: int) -> list[int]:
        rep = self.elements[q].rep
        return [x for x in range(self.parent.order) if self.table.rep_of[x] == rep]

    def coset(self, q: int) -> list[int]:
        rep = self.elements[q].rep
        G = self.parent
        return sorted(G.mul(rep, n) for n in self.normal.members)


def quotient(G: FiniteGroup, N: Subgroup) -> QuotientGroup:
    if not is_normal(G, N):
        raise ValueError("quotient by a non-normal subgroup")
    rep_of = [-1] * G.order
    nm = sorted(N.members)
    for i in range(G.order):
        if rep_of[i] < 0:
            for n in nm:
                rep_of[G.mul(i, n)] = i
    return QuotientGroup(G, N, _CosetTable(G, N, rep_of))


# -- Frobenius predicates ----------------------------------------------------------


def acts_fixed_point_freely(K: Subgroup, H: Subgroup, G: FiniteGroup) -> bool:
    """Every nonidentity h in H has trivial centralizer in K."""
    e = G.identity
    for h in H.members:
        if h == e:
            continue
        if any(k != e and G.commutes(k, h) for k in K.members):
            return False
    return True


def _frobenius_kernel_ok(G: FiniteGroup, N: Subgroup, M: Subgroup) -> bool:
    """M is Frobenius with kernel N; N, M normal in G.

    C_N(x) = 1 for every x in M \\ N; checked on one representative per
    G-class, since the condition is invariant under G-conjugation.
    """
    if not (1 < N.order < M.order):
        return False
    e = G.identity
    nm = [n for n in N.members if n != e]
    for c in G.classes:
        x = c.representative
        if x in M.members and x not in N.members:
            if any(G.commutes(n, x) for n in nm):
                return False
    return True


def is_frobenius_with_kernel(G: FiniteGroup, N: Subgroup) -> bool:
    if not is_normal(G, N):
        raise ValueError("kernel candidate is not normal")
    return _frobenius_kernel_ok(G, N, G.whole)


def is_2frobenius(G: FiniteGroup, N: Subgroup, M: Subgroup) -> bool:
    """1 < N < M < G, M Frobenius with kernel N, G/N Frobenius with kernel M/N."""
    if not (is_normal(G, N) and is_normal(G, M)):
        raise ValueError("N and M must be normal in G")
    if not N <= M or not (M.order < G.order):
        return False
    if not _frobenius_kernel_ok(G, N, M):
        return False
    Q = quotient(G, N)
    return _frobenius_kernel_ok(Q, Q.image_subgroup(M), Q.whole)


# -- normal subgroup lattice ---------------------------------------------------


def normal_subgroups(X, cap: int = 4096) -> list[Subgroup]:
    """All normal subgroups as joins of normal closures of classes."""
    G = _parent(X)
    found: dict[frozenset, Subgroup] = {}
    T = G.trivial if isinstance(X, FiniteGroup) else generate(G, [])
    found[T.members] = T
    for c in X.classes:
        N = normal_closure(X, [c.representative])
        found.setdefault(N.members, N)
    queue = list(found.values())
    joins = 0
    i = 0
    while i < len(queue):
        A = queue[i]
        for B in list(found.values()):
            if A.members <= B.members or B.members <= A.members:
                continue
            joins += 1
            if joins > cap:
                raise ResourceError(f"normal subgroup search exceeded {cap} joins ({len(found)} found)")
            J = join(A, B)
            if J.members not in found:
                found[J.members] = J
                queue.append(J)
        i += 1
    return sorted(found.values(), key=lambda S: (S.order, min(S.members - {G.identity}, default=-1)))
