"""Identities of the twisted ring R = F{X}/(X^k) and its unit group S = 1 + J.

Exhaustive checks run over coefficient arrays with numpy; the sampled checks
for larger k use the scalar ring arithmetic and a seeded generator.
"""

from __future__ import annotations

import random

import numpy as np

from .constructions import ArrayRing, TwistedRing, twisted_ring, unit_array
from .primegraph import ClaimResult


def inverse_array(R: TwistedRing, A: np.ndarray) -> np.ndarray:
    return np.array([R.unit_inverse(tuple(int(x) for x in row)) for row in A], dtype=np.uint16)


def _in_level(A: np.ndarray, u: int) -> bool:
    return bool((A[:, 0] == 1).all() and not A[:, 1:u].any())


def unit_group_order(k: int) -> int:
    return len(unit_array(twisted_ring(k), 1))


def level_orders(k: int) -> dict[int, int]:
    R = twisted_ring(k)
    return {u: len(unit_array(R, u)) for u in range(1, k + 1)}


def psi_homomorphism(k: int) -> ClaimResult:
    """psi_u: S_u -> (F, +) is a homomorphism with kernel S_{u+1}, on all pairs."""
    R = twisted_ring(k)
    AR = ArrayRing(R)
    pairs = 0
    for u in range(1, k):
        Su = unit_array(R, u)
        for s in Su:
            st = AR.mul(s, Su)
            pairs += len(Su)
            if not _in_level(st, u):
                return ClaimResult("psi_hom", False, ("closure", u, tuple(s)))
            bad = np.nonzero(st[:, u] != (s[u] ^ Su[:, u]))[0]
            if len(bad):
                return ClaimResult("psi_hom", False, (u, tuple(s), tuple(Su[bad[0]])))
        kernel = {tuple(r) for r in Su if r[u] == 0}
        nxt = {tuple(r) for r in unit_array(R, u + 1)}
        if kernel != nxt:
            return ClaimResult("psi_hom", False, ("kernel", u))
    return ClaimResult("psi_hom", True, pairs)


def commutator_identity(k: int, max_level: int | None = None) -> ClaimResult:
    """psi_{u+v}([s, t]) = a sigma^u(b) + b sigma^v(a) for s in S_u, t in S_v,
    a = psi_u(s), b = psi_v(t); every pair with u + v <= max_level."""
    R = twisted_ring(k)
    AR = ArrayRing(R)
    top = k - 1 if max_level is None else max_level
    pairs = 0
    for u in range(1, top):
        for v in range(1, top - u + 1):
            Su, Sv = unit_array(R, u), unit_array(R, v)
            Svi = inverse_array(R, Sv)
            b = Sv[:, v]
            for s in Su:
                si = np.array(R.unit_inverse(tuple(int(x) for x in s)), dtype=np.uint16)
                c = AR.mul(AR.mul(AR.mul(si, Svi), s), Sv)
                pairs += len(Sv)
                w = u + v
                if not _in_level(c, w):
                    return ClaimResult("commutator_identity", False, (u, v, tuple(s)))
                a = int(s[u])
                expect = AR.mf[u][a][b] ^ AR.mf[v][b, a]
                got = c[:, w] if w < k else np.zeros_like(b)
                bad = np.nonzero(got != expect)[0]
                if len(bad):
                    return ClaimResult("commutator_identity", False, (u, v, tuple(s), tuple(Sv[bad[0]])))
    return ClaimResult("commutator_identity", True, pairs)


# -- seeded sampling for larger k ---------------------------------------------------------------


def _rand_unit(rng: random.Random, R: TwistedRing, u: int) -> tuple:
    q = R.F.size
    c = [0] * R.k
    c[0] = 1
    for i in range(u, R.k):
        c[i] = rng.randrange(q)
    return tuple(c)


def sampled_identities(k: int, seed: int, samples: int = 10_000) -> dict[str, ClaimResult]:
    """Associativity, psi_u additivity, level closure, the commutator formula
    and the coefficient action law on random elements."""
    R = twisted_ring(k)
    F = R.F
    q = F.size
    rng = random.Random(seed)
    out = {}

    def rand_elem():
        return tuple(rng.randrange(q) for _ in range(k))

    def const(g):
        return (g,) + (0,) * (k - 1)

    def run(name, trial):
        for n in range(samples):
            w = trial()
            if w is not None:
                out[name] = ClaimResult(name, False, w, {"sample": n})
                return
        out[name] = ClaimResult(name, True, samples)

    def assoc():
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        if R.mul(R.mul(a, b), c) != R.mul(a, R.mul(b, c)):
            return (a, b, c)

    def psi():
        u = rng.randrange(1, k)
        s, t = _rand_unit(rng, R, u), _rand_unit(rng, R, u)
        st = R.mul(s, t)
        if any(st[1:u]) or st[u] != s[u] ^ t[u]:
            return (u, s, t)

    def filtration():
        u, v = rng.randrange(1, k), rng.randrange(1, k)
        st = R.mul(_rand_unit(rng, R, u), _rand_unit(rng, R, v))
        if st[0] != 1 or any(st[1:min(u, v)]):
            return (u, v, st)

    def comm():
        u = rng.randrange(1, k - 1)
        v = rng.randrange(1, k - u)
        s, t = _rand_unit(rng, R, u), _rand_unit(rng, R, v)
        c = R.mul(R.mul(R.unit_inverse(s), R.unit_inverse(t)), R.mul(s, t))
        a, b = s[u], t[v]
        expect = R.fmul(a, R.frob(b, u)) ^ R.fmul(b, R.frob(a, v))
        if any(c[1:u + v]) or c[u + v] != expect:
            return (u, v, s, t)

    def action():
        g = rng.randrange(1, q)
        s = _rand_unit(rng, R, 1)
        lhs = R.mul(R.mul(const(F.inv_int(g)), s), const(g))
        rhs = tuple(R.fmul(a, F.pow_int(g, (1 << u) - 1)) for u, a in enumerate(s))
        if lhs != rhs:
            return (g, s)

    run("associativity", assoc)
    run("psi_hom", psi)
    run("filtration", filtration)
    run("commutator_identity", comm)
    run("action_law", action)
    return out
