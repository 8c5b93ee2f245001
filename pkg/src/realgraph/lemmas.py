"""Executable forms of the small lemmas about real elements.

Each checker returns a ClaimResult whose ``details`` count the instances that
were actually examined, so a vacuous pass is visible as a zero count.
"""

from __future__ import annotations

from functools import lru_cache

from . import groupkit as gk
from .ffield import is_prime
from .groupkit import FiniteGroup, Subgroup
from .primegraph import ClaimResult, satisfies_P, satisfies_R


def _is_2power(n: int) -> bool:
    return gk.is_power_of(n, 2)


@lru_cache(maxsize=64)
def normal_data(G: FiniteGroup) -> tuple:
    """Nontrivial normal subgroups of G and the quotients by them."""
    ns = [N for N in gk.normal_subgroups(G) if N.order > 1]
    return tuple(ns), tuple(gk.quotient(G, N) for N in ns)


# -- reality of single elements --------------------------------------------------------


def inverted_by_2element(G: FiniteGroup) -> ClaimResult:
    """Every real element is inverted by some element of 2-power order.

    Class representatives suffice: if y inverts x then y^g inverts x^g.
    """
    seen = 0
    for c in G.classes:
        if not c.is_real:
            continue
        x = c.representative
        xi = G.inv(x)
        seen += 1
        w = next((g for g in range(G.order)
                  if _is_2power(G.orders[g]) and G.conj(x, g) == xi), None)
        if w is None:
            return ClaimResult("elem_prop_1", False, x, {"checked": seen})
    return ClaimResult("elem_prop_1", True, None, {"checked": seen})


def powers_of_real_are_real(G: FiniteGroup) -> ClaimResult:
    seen = 0
    for c in G.classes:
        if not c.is_real:
            continue
        x = c.representative
        for m in range(c.element_order):
            seen += 1
            y = G.power(x, m)
            if not G.classes[G.class_of[y]].is_real:
                return ClaimResult("elem_prop_2", False, (x, m), {"checked": seen})
    return ClaimResult("elem_prop_2", True, None, {"checked": seen})


def odd_real_cosets_lift(G: FiniteGroup, Q: gk.QuotientGroup) -> ClaimResult:
    """A real coset of odd order contains a real element of G."""
    seen = 0
    real_in_G = [G.classes[G.class_of[i]].is_real for i in range(G.order)]
    for c in Q.classes:
        if not c.is_real or c.element_order % 2 == 0:
            continue
        # lifting is conjugation-invariant, so one coset per class suffices
        seen += 1
        if not any(real_in_G[y] for y in Q.coset(c.representative)):
            return ClaimResult("elem_prop_3", False, c.representative, {"checked": seen})
    return ClaimResult("elem_prop_3", True, None, {"checked": seen})


def _two_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """A Sylow 2-subgroup and the cyclic subgroups of 2-element class reps."""
    out = {}
    if G.order % 2 == 0:
        S = gk.sylow(G, 2)
        out[S.members] = S
    for c in G.classes:
        if c.element_order > 1 and _is_2power(c.element_order):
            C = gk.generate(G, [c.representative])
            out.setdefault(C.members, C)
    return sorted(out.values(), key=lambda H: (H.order, min(H.members - {G.identity})))


def two_group_inverts_something(G: FiniteGroup, K: Subgroup, Q: Subgroup) -> ClaimResult | None:
    """If the 2-group Q acts nontrivially on the normal subgroup K by conjugation,
    some q acting nontrivially inverts some x != 1 of K. None when Q acts trivially."""
    e = G.identity
    movers = [q for q in sorted(Q.members) if any(not G.commutes(q, k) for k in K.gens)]
    if not movers:
        return None
    # involutions first: for those, [y, q] is always inverted by q
    movers.sort(key=lambda q: (G.orders[q], q))
    for q in movers:
        for x in sorted(K.members):
            if x != e and G.conj(x, q) == G.inv(x):
                return ClaimResult("elem_prop_4", True, (x, q))
    return ClaimResult("elem_prop_4", False, (K.order, Q.order))


def two_groups_invert(G: FiniteGroup) -> ClaimResult:
    normals, _ = normal_data(G)
    seen = 0
    for K in normals:
        for Q in _two_subgroups(G):
            r = two_group_inverts_something(G, K, Q)
            if r is None:
                continue
            seen += 1
            if not r.holds:
                return ClaimResult("elem_prop_4", False, r.witness, {"checked": seen})
    return ClaimResult("elem_prop_4", True, None, {"checked": seen})


# -- products of real elements -----------------------------------------------------------


def commuting_real_product(G: FiniteGroup) -> ClaimResult:
    """x, y real of distinct prime orders, commuting, inverted by a common g:
    then xy is inverted by g and has order o(x) o(y).

    x runs over class representatives; the hypothesis set is invariant under
    simultaneous conjugation of (x, y, g).
    """
    seen = 0
    real = [G.classes[G.class_of[i]].is_real for i in range(G.order)]
    for c in G.classes:
        p = c.element_order
        if not (c.is_real and is_prime(p)):
            continue
        x = c.representative
        xi = G.inv(x)
        inverters, cent = [], []
        for g in range(G.order):
            h = G.conj(x, g)
            if h == xi:
                inverters.append(g)
            if h == x:
                cent.append(g)
        for y in cent:
            q = G.orders[y]
            if q == p or not is_prime(q) or not real[y]:
                continue
            yi = G.inv(y)
            xy = G.mul(x, y)
            for g in inverters:
                if G.conj(y, g) != yi:
                    continue
                seen += 1
                if G.conj(xy, g) != G.inv(xy) or G.orders[xy] != p * q:
                    return ClaimResult("suff_cond", False, (x, y, g), {"checked": seen})
    return ClaimResult("suff_cond", True, None, {"checked": seen})


# -- normal 2-complements -------------------------------------------------------------


def two_complement_setup(G: FiniteGroup) -> tuple[Subgroup, Subgroup] | None:
    """(K, Q) with K the normal 2-complement and Q a Sylow 2-subgroup, when
    O^{2'}(G) = G and K exists; otherwise None."""
    if gk.o2prime(G).order != G.order:
        return None
    K = gk.odd_core(G)
    Q = gk.sylow(G, 2) if G.order % 2 == 0 else G.trivial
    if K.order * Q.order != G.order:
        return None
    return K, Q


def commutator_with_sylow2_is_complement(G: FiniteGroup) -> ClaimResult | None:
    """[K, Q] = K; None when G has no normal 2-complement or O^{2'}(G) < G."""
    kq = two_complement_setup(G)
    if kq is None:
        return None
    K, Q = kq
    C = gk.commutator_subgroup(G, K, Q)
    return ClaimResult("interder_kq", C == K, (K.order, C.order))


def abelian_complement_criterion(G: FiniteGroup) -> ClaimResult | None:
    """K abelian iff C_K(z) = 1 iff z inverts K, under the unique-involution
    and C_K(z) = C_K(Q) hypotheses; None when these do not apply."""
    kq = two_complement_setup(G)
    if kq is None:
        return None
    K, Q = kq
    invs = [q for q in Q.members if G.orders[q] == 2]
    if len(invs) != 1:
        return None
    z = invs[0]
    CKz = frozenset(k for k in K.members if G.commutes(k, z))
    CKQ = frozenset(k for k in K.members if all(G.commutes(k, q) for q in Q.gens))
    if CKz != CKQ:
        return None
    abelian = gk.is_abelian(K)
    fpf = len(CKz) == 1
    inverts = all(G.conj(k, z) == G.inv(k) for k in K.members)
    ok = abelian == fpf == inverts
    return ClaimResult("abel_k", ok, {"abelian": abelian, "C_K(z)": len(CKz), "z_inverts": inverts})


# -- descent to quotients ------------------------------------------------------------


def properties_descend(G: FiniteGroup) -> ClaimResult:
    """P and R of G pass to every quotient G/N, N > 1."""
    hasP = satisfies_P(G).holds
    hasR = satisfies_R(G).holds
    normals, quotients = normal_data(G)
    for N, Q in zip(normals, quotients):
        if hasP and not satisfies_P(Q).holds:
            return ClaimResult("p_quotient", False, ("P", N.order), {"quotients": len(normals)})
        if hasR and not satisfies_R(Q).holds:
            return ClaimResult("p_quotient", False, ("R", N.order), {"quotients": len(normals)})
    return ClaimResult("p_quotient", True, {"P": hasP, "R": hasR}, {"quotients": len(normals)})


def real_cosets_lift(G: FiniteGroup) -> ClaimResult:
    """odd_real_cosets_lift over every nontrivial normal subgroup."""
    seen = 0
    normals, quotients = normal_data(G)
    for N, Q in zip(normals, quotients):
        r = odd_real_cosets_lift(G, Q)
        seen += r.details["checked"]
        if not r.holds:
            return ClaimResult("elem_prop_3", False, (N.order, r.witness), {"checked": seen})
    return ClaimResult("elem_prop_3", True, None, {"checked": seen})
