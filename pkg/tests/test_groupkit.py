"""Group algorithms on small groups, checked against all-pairs brute force."""

from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from realgraph import groupkit as gk
from realgraph.constructions import PermElem, make_g150, make_named

SMALL = {
    "s3": ("symmetric", 3), "s4": ("symmetric", 4), "a4": ("alternating", 4),
    "d6": ("dihedral", 6), "q8": ("quaternion8", 8), "c6": ("cyclic", 6), "d5": ("dihedral", 5),
}


@pytest.fixture(scope="module", params=sorted(SMALL))
def G(request):
    return make_named(*SMALL[request.param])


def brute_classes(G):
    seen, out = set(), []
    for x in range(G.order):
        if x not in seen:
            c = frozenset(G.conj(x, g) for g in range(G.order))
            seen |= c
            out.append(c)
    return out


def brute_normal_subgroups(G):
    """Unions of classes containing 1 that are closed under products."""
    cls = [c for c in brute_classes(G) if G.identity not in c]
    out = set()
    for r in range(len(cls) + 1):
        for pick in combinations(cls, r):
            S = frozenset([G.identity]).union(*pick)
            if all(G.mul(a, b) in S for a in S for b in S):
                out.add(S)
    return out


def test_closure_axioms(G):
    els = set(range(G.order))
    for a in range(G.order):
        assert G.mul(a, G.inv(a)) == G.identity
        for b in range(G.order):
            assert G.mul(a, b) in els
    e = G.elements[G.identity]
    assert all(G.elements[i] * e == G.elements[i] for i in range(G.order))


def test_canonical_order(G):
    codes = [e.encode() for e in G.elements]
    assert codes == sorted(codes)


def test_classes_partition(G):
    cls = G.classes
    assert sorted(m for c in cls for m in c.members) == list(range(G.order))
    assert {c.members for c in cls} == set(brute_classes(G))
    for c in cls:
        assert G.order % c.size == 0
        assert c.representative == min(c.members)
        assert all(gk.element_order(G.elements[m]) == c.element_order for m in c.members)


def test_reality_is_class_function(G):
    for x in range(G.order):
        brute = any(G.conj(x, g) == G.inv(x) for g in range(G.order))
        assert gk.is_real(G, x) == brute
        assert G.classes[G.class_of[x]].is_real == brute
        assert bool(gk.inverting_elements(G, x)) == brute


def test_centralizer_center_normalizer(G):
    for x in range(G.order):
        C = gk.centralizer(G, [x])
        assert C.members == {g for g in range(G.order) if G.commutes(g, x)}
    Z = gk.center(G)
    assert Z.members == {z for z in range(G.order) if all(G.commutes(z, g) for g in range(G.order))}
    for H in gk.normal_subgroups(G):
        assert gk.normalizer(G, H).order == G.order
        assert gk.is_normal(G, H)


def test_normal_subgroups_match_brute_force(G):
    assert {N.members for N in gk.normal_subgroups(G)} == brute_normal_subgroups(G)


def test_normal_subgroup_orders():
    assert [N.order for N in gk.normal_subgroups(make_named("symmetric", 4))] == [1, 4, 12, 24]
    assert [N.order for N in gk.normal_subgroups(make_named("cyclic", 7))] == [1, 7]
    with pytest.raises(gk.ResourceError):
        gk.normal_subgroups(make_named("dihedral", 8), cap=1)


def test_derived_series():
    S4 = make_named("symmetric", 4)
    assert [H.order for H in gk.derived_series(S4)] == [24, 12, 4, 1]
    assert gk.derived_length(S4) == 3
    S5 = make_named("symmetric", 5)
    assert [H.order for H in gk.derived_series(S5)] == [120, 60]
    assert not gk.is_solvable(S5)
    with pytest.raises(ValueError):
        gk.derived_length(S5)


def test_derived_subgroup_is_all_commutators(G):
    comms = {G.commutator(a, b) for a in range(G.order) for b in range(G.order)}
    assert gk.derived_subgroup(G).members == gk.generate(G, comms).members


def brute_p_core(G, p):
    best = G.trivial
    for N in brute_normal_subgroups(G):
        if gk.is_power_of(len(N), p) and len(N) > best.order:
            best = gk.generate(G, N)
    return best


def test_cores(G):
    for p in G.primes:
        assert gk.p_core(G, p) == brute_p_core(G, p)
    F = gk.fitting(G)
    prod = 1
    for p in G.primes:
        prod *= gk.p_core(G, p).order
    assert F.order == prod
    O = gk.o2prime(G)
    assert (G.order // O.order) % 2 == 1
    assert gk.o2prime(O) == O
    twos = [x for x in range(G.order) if gk.is_power_of(G.orders[x], 2)]
    assert O == gk.generate(G, twos)


def test_sylow(G):
    for p in G.primes:
        P = gk.sylow(G, p)
        assert P.order == gk.p_part(G.order, p)
        assert all(gk.is_power_of(G.orders[x], p) for x in P.members)


def test_predicates():
    assert gk.is_nilpotent(make_named("quaternion8", 8))
    assert not gk.is_nilpotent(make_named("symmetric", 4))
    assert gk.is_solvable(make_named("symmetric", 4))
    assert gk.is_cyclic(make_named("cyclic", 12))
    assert not gk.is_cyclic(make_named("dihedral", 3))
    assert gk.exponent(make_named("symmetric", 4)) == 12
    V = gk.p_core(make_named("symmetric", 4), 2)
    assert gk.is_elementary_abelian(V) and V.order == 4
    assert not gk.is_elementary_abelian(make_named("cyclic", 4))


def test_quotient_agrees_with_coset_products(G):
    for N in gk.normal_subgroups(G):
        Q = gk.quotient(G, N)
        assert Q.order * N.order == G.order
        cosets = {}
        for q in range(Q.order):
            c = frozenset(Q.coset(q))
            assert sorted(c) == sorted(Q.preimage(q))
            cosets[q] = c
        for a in range(Q.order):
            for b in range(Q.order):
                prod = frozenset(G.mul(x, y) for x in cosets[a] for y in cosets[b])
                assert prod == cosets[Q.mul(a, b)]


def test_quotient_of_g150():
    G = make_g150()
    N = gk.fitting(G)
    Q = gk.quotient(G, N)
    assert Q.order == 6 and not gk.is_abelian(Q)
    with pytest.raises(ValueError):
        gk.quotient(make_named("symmetric", 3), gk.sylow(make_named("symmetric", 3), 2))


def test_fixed_point_free_actions():
    A4 = make_named("alternating", 4)
    V = gk.p_core(A4, 2)
    assert gk.acts_fixed_point_freely(V, gk.sylow(A4, 3), A4)
    assert gk.acts_fixed_point_freely(V, A4.trivial, A4)
    S4 = make_named("symmetric", 4)
    V4 = gk.p_core(S4, 2)
    S3 = gk.generate(S4, [S4.index[PermElem([1, 0, 2, 3])], S4.index[PermElem([1, 2, 0, 3])]])
    assert S3.order == 6
    assert not gk.acts_fixed_point_freely(V4, S3, S4)


def test_frobenius_predicates():
    S4 = make_named("symmetric", 4)
    V, A = gk.p_core(S4, 2), gk.derived_subgroup(S4)
    assert gk.is_2frobenius(S4, V, A)
    S3 = make_named("symmetric", 3)
    assert gk.is_frobenius_with_kernel(S3, gk.derived_subgroup(S3))
    C12 = make_named("cyclic", 12)
    ns = gk.normal_subgroups(C12)
    for N in ns:
        for M in ns:
            if N <= M:
                assert not gk.is_2frobenius(C12, N, M)
    with pytest.raises(ValueError):
        gk.is_2frobenius(S4, gk.sylow(S4, 3), A)


def test_enumeration_cap():
    with pytest.raises(gk.ResourceError):
        make_named("symmetric", 5, cap=100)


@given(st.lists(st.integers(0, 23), min_size=1, max_size=3))
def test_generated_subgroups_obey_lagrange(idx):
    S4 = make_named("symmetric", 4)
    H = gk.generate(S4, idx)
    assert S4.order % H.order == 0
    assert all(S4.mul(a, b) in H.members for a in H.members for b in H.members)


def test_subgroup_classes():
    S4 = make_named("symmetric", 4)
    A = gk.derived_subgroup(S4)
    sizes = sorted(c.size for c in A.classes)
    assert sizes == [1, 3, 4, 4]
    assert [c.is_real for c in A.classes].count(True) == 2
