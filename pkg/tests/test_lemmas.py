"""The lemma checkers on the small catalog members, plus their edge cases."""

import pytest

from realgraph import groupkit as gk
from realgraph import lemmas
from realgraph.constructions import make_g150, make_named, make_twisted_group

MEMBERS = [("cyclic", n) for n in range(2, 13)] + [("dihedral", n) for n in range(3, 9)] + [
    ("quaternion8", 8), ("symmetric", 3), ("symmetric", 4), ("alternating", 4)]


@pytest.fixture(scope="module", params=MEMBERS, ids=lambda p: f"{p[0]}{p[1]}")
def G(request):
    return make_named(*request.param)


def test_lemma_checks_hold(G):
    for f in (lemmas.inverted_by_2element, lemmas.powers_of_real_are_real,
              lemmas.commuting_real_product, lemmas.properties_descend,
              lemmas.real_cosets_lift, lemmas.two_groups_invert):
        assert f(G).holds, f.__name__
    for f in (lemmas.commutator_with_sylow2_is_complement, lemmas.abelian_complement_criterion):
        r = f(G)
        assert r is None or r.holds


def test_inverting_2element_brute(G):
    for x in range(G.order):
        if gk.is_real(G, x):
            assert any(gk.is_power_of(G.orders[g], 2) for g in gk.inverting_elements(G, x))


def test_suff_cond_has_instances_in_d6():
    r = lemmas.commuting_real_product(make_named("dihedral", 6))
    assert r.holds and r.details["checked"] == 18


def test_trivial_action_is_skipped():
    A = make_named("cyclic", 12)
    Q = gk.sylow(A, 2)
    assert lemmas.two_group_inverts_something(A, A.whole, Q) is None


def test_applicability():
    assert lemmas.two_complement_setup(make_named("symmetric", 4)) is None
    assert lemmas.two_complement_setup(make_named("cyclic", 6)) is None  # O^{2'} = C2
    K, Q = lemmas.two_complement_setup(make_named("dihedral", 5))
    assert (K.order, Q.order) == (5, 2)


def test_g150_abel_k():
    r = lemmas.abelian_complement_criterion(make_g150())
    assert r.holds and r.witness == {"abelian": False, "C_K(z)": 5, "z_inverts": False}
    r = lemmas.commutator_with_sylow2_is_complement(make_g150())
    assert r.holds and r.witness == (75, 75)


def test_twisted2_quotients():
    G = make_twisted_group(2)
    assert lemmas.properties_descend(G).holds
    assert lemmas.real_cosets_lift(G).holds
