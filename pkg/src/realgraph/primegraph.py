"""Real elements, prime graphs and the structural claims checked on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from . import groupkit as gk
from .ffield import is_prime, prime_factors
from .groupkit import FiniteGroup, Subgroup


class PreconditionError(ValueError):
    """A checker was called on a group outside its hypotheses."""


@dataclass(frozen=True)
class RealSpectrum:
    orders: tuple
    primes: tuple


@dataclass(frozen=True)
class PrimeGraph:
    vertices: tuple
    edges: tuple
    kind: str = "full"

    def __post_init__(self):
        vs = set(self.vertices)
        for p, q in self.edges:
            assert p != q and p in vs and q in vs

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "components": [list(b) for b in components(self).blocks],
        }


@dataclass(frozen=True)
class ComponentPartition:
    blocks: tuple

    @property
    def count(self) -> int:
        return len(self.blocks)


@dataclass
class ClaimResult:
    claim: str
    holds: bool
    witness: Any = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def real_spectrum(G) -> RealSpectrum:
    orders = sorted({c.element_order for c in G.classes if c.is_real})
    primes = sorted({p for n in orders for p in prime_factors(n)})
    return RealSpectrum(tuple(orders), tuple(primes))


def _graph(orders, vertices, kind) -> PrimeGraph:
    edges = set()
    for n in orders:
        ps = [p for p in prime_factors(n) if p in vertices]
        edges.update(combinations(sorted(ps), 2))
    return PrimeGraph(tuple(sorted(vertices)), tuple(sorted(edges)), kind)


def prime_graph(G) -> PrimeGraph:
    """Vertices: primes dividing |G|; edge pq iff some element order is divisible by pq."""
    H = gk.as_subgroup(G)
    orders = {c.element_order for c in G.classes}
    return _graph(orders, set(prime_factors(H.order)), "full")


def real_prime_graph(G) -> PrimeGraph:
    """Vertices: primes p with a real element of order p; edges as in prime_graph
    but over real elements only. Divisibility suffices for edges because powers
    of real elements are real."""
    orders = {c.element_order for c in G.classes if c.is_real}
    return _graph(orders, {n for n in orders if is_prime(n)}, "real")


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller vertex as root
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def components(g: PrimeGraph) -> ComponentPartition:
    uf = _UnionFind(g.vertices)
    for p, q in g.edges:
        uf.union(p, q)
    blocks: dict = {}
    for v in g.vertices:
        blocks.setdefault(uf.find(v), []).append(v)
    return ComponentPartition(tuple(tuple(sorted(b)) for b in sorted(blocks.values())))


# -- properties P and R ----------------------------------------------------------


def satisfies_P(G) -> ClaimResult:
    """Every real element has prime power order."""
    for c in G.classes:
        if c.is_real and not gk.is_prime_power(c.element_order):
            return ClaimResult("P", False, c.representative, {"order": c.element_order})
    return ClaimResult("P", True, real_spectrum(G).orders)


def satisfies_R(G) -> ClaimResult:
    """Every real element has 2-power order or odd order."""
    for c in G.classes:
        n = c.element_order
        if c.is_real and not (gk.is_power_of(n, 2) or n % 2):
            return ClaimResult("R", False, c.representative, {"order": n})
    return ClaimResult("R", True, real_spectrum(G).orders)


# -- checkers ---------------------------------------------------------------------


def _require(conditions: dict[str, bool]):
    failed = [name for name, ok in conditions.items() if not ok]
    if failed:
        raise PreconditionError("precondition(s) violated: " + ", ".join(failed))


def lucido_check(G) -> ClaimResult:
    """No three primes dividing |G| are pairwise non-adjacent in the prime graph."""
    _require({"solvable": gk.is_solvable(G)})
    g = prime_graph(G)
    edges = set(g.edges)
    for t in combinations(g.vertices, 3):
        if not any(e in edges for e in combinations(t, 2)):
            return ClaimResult("lucido", False, t)
    return ClaimResult("lucido", True, g.edges)


def dmn_vertex_check(G) -> ClaimResult:
    """Every prime divisor of |G| is a vertex of the real prime graph."""
    _require({"solvable": gk.is_solvable(G)})
    H = gk.as_subgroup(G)
    vs = real_prime_graph(G).vertices
    primes = tuple(prime_factors(H.order))
    return ClaimResult("dmn_vertices", vs == primes, vs, {"primes": primes})


def corollary_spectrum_check(G) -> ClaimResult:
    _require({
        "solvable": gk.is_solvable(G),
        "satisfies P": satisfies_P(G).holds,
        "O_2(G) > 1": gk.p_core(G, 2).order > 1,
    })
    primes = real_spectrum(G).primes
    ok = primes == (2,) or (len(primes) == 2 and primes[0] == 2)
    return ClaimResult("corollary_spectrum", ok, primes)


def fitting_prime_check(G) -> ClaimResult:
    """Exactly one prime p with O_p(G) not inside Z(G)."""
    H = gk.as_subgroup(G)
    _require({
        "nontrivial": H.order > 1,
        "solvable": gk.is_solvable(G),
        "O^{2'}(G) = G": gk.o2prime(G).order == H.order,
        "O_2(G) = 1": gk.p_core(G, 2).order == 1,
        "satisfies P": satisfies_P(G).holds,
    })
    Z = gk.center(G)
    bad = [p for p in prime_factors(H.order) if not gk.p_core(G, p).members <= Z.members]
    return ClaimResult("fitting_prime", len(bad) == 1, bad[0] if len(bad) == 1 else tuple(bad))


def theorem_a_structure(G: FiniteGroup) -> ClaimResult:
    """Condition (2): G = N x| (K x| Q) a {2,p}-group and 2-Frobenius group with
    K, Q cyclic, all element orders prime powers, z inverting all of K."""
    checks: dict[str, bool] = {}
    out = ClaimResult("theorem_a.structure", False, None, checks)
    primes = G.primes
    checks["two_primes"] = len(primes) == 2 and primes[0] == 2
    if not checks["two_primes"]:
        return out
    p = primes[1]
    N = gk.p_core(G, 2)
    K = gk.sylow(G, p)
    M = gk.join(N, K)
    checks["NK_normal"] = gk.is_normal(G, M) and M.order == N.order * K.order
    if not checks["NK_normal"]:
        return out
    # Frattini: N_G(K) complements N once N x| K is Frobenius
    H = gk.normalizer(G, K)
    checks["complement"] = H.order * N.order == G.order and not (H.members & N.members) - {G.identity}
    if not checks["complement"]:
        return out
    Q = gk.sylow(H, 2)
    checks["K_cyclic"] = gk.is_cyclic(K)
    checks["Q_cyclic"] = gk.is_cyclic(Q)
    checks["two_frobenius"] = gk.is_2frobenius(G, N, M)
    checks["all_prime_power"] = all(gk.is_prime_power(c.element_order) for c in G.classes)
    invs = [q for q in Q.members if G.orders[q] == 2]
    checks["unique_involution"] = len(invs) == 1
    if invs:
        z = invs[0]
        checks["z_inverts_K"] = all(G.conj(k, z) == G.inv(k) for k in K.members)
    else:
        checks["z_inverts_K"] = False
    out.holds = all(checks.values())
    out.witness = {"p": p, "N": N.order, "K": K.order, "Q": Q.order, "M": M.order}
    return out


def theorem_a_check(G: FiniteGroup) -> ClaimResult:
    """Property P holds iff the condition-(2) structure bundle holds."""
    N = gk.p_core(G, 2)
    _require({
        "solvable": gk.is_solvable(G),
        "O^{2'}(G) = G": gk.o2prime(G).order == G.order,
        "not a 2-group": G.primes != [2],
        "O_2(G) > 1": N.order > 1,
    })
    P = satisfies_P(G)
    S = theorem_a_structure(G)
    details = dict(S.details)
    details["P"] = P.holds
    return ClaimResult("theorem_a", P.holds == S.holds, S.witness, details)


def theorem_b_witnesses() -> tuple[ClaimResult, ClaimResult]:
    from .constructions import make_g150, make_h199650

    out = []
    for tag, build, expected in (("g150", make_g150, 3), ("h199650", make_h199650, 4)):
        G = build()
        g = real_prime_graph(G)
        n = components(g).count
        out.append(ClaimResult(f"theorem_b.{tag}", n == expected and not g.edges, n, {"graph": g}))
    return out[0], out[1]
