"""Registry of checkable claims and the runner behind ``realgraph verify-paper``.

A suite is a named generator of Claim records. Output is one line per claim,
``<id> = <value> PASS`` or ``<id> = <value> FAIL (witness: ...)``, in
registry order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Iterable, Iterator, TextIO

from . import constructions as cons
from . import groupkit as gk
from . import lemmas
from . import primegraph as pg
from . import ringcheck
from .ffield import make_gf2k, primitive_prime_divisor
from .groupkit import FiniteGroup

DEFAULT_SEED = 0xC0FFEE


@dataclass(frozen=True)
class Claim:
    id: str
    value: Any
    passed: bool
    witness: Any = None


@dataclass(frozen=True)
class Suite:
    id: str
    run: Callable[["Context"], Iterable[Claim]]


@dataclass(frozen=True)
class Context:
    seed: int = DEFAULT_SEED


def fmt(v: Any) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, tuple):
        v = list(v)
    try:
        return json.dumps(v, separators=(",", ":"), sort_keys=True)
    except TypeError:
        return repr(v)


def line(c: Claim) -> str:
    s = f"{c.id} = {fmt(c.value)} {'PASS' if c.passed else 'FAIL'}"
    if not c.passed and c.witness is not None:
        s += f" (witness: {fmt(c.witness)})"
    return s


def expect(cid: str, value: Any, wanted: Any, witness: Any = None) -> Claim:
    return Claim(cid, value, value == wanted, witness if witness is not None else {"expected": wanted})


def from_result(cid: str, r: pg.ClaimResult, value: Any = None) -> Claim:
    return Claim(cid, value if value is not None else r.holds, r.holds, r.witness)


def guarded(cid: str, check: Callable[[FiniteGroup], pg.ClaimResult], G: FiniteGroup,
            want: Any = None) -> Claim:
    """Run a checker whose hypotheses should hold; a violated hypothesis is a failed claim."""
    try:
        r = check(G)
    except pg.PreconditionError as e:
        return Claim(cid, "precondition", False, str(e))
    if want is None:
        return from_result(cid, r)
    return Claim(cid, r.witness, r.holds and r.witness == want, r.witness)


# -- catalog ---------------------------------------------------------------------------------

# (tag, builder); every member gets the full lemma suite except the class-level ones.
_NAMED = (
    [(f"c{n}", ("cyclic", n)) for n in range(2, 13)]
    + [(f"d{n}", ("dihedral", n)) for n in range(3, 9)]
    + [("q8", ("quaternion8", 8)), ("s3", ("symmetric", 3)), ("s4", ("symmetric", 4)),
       ("a4", ("alternating", 4))]
)


@lru_cache(maxsize=None)
def catalog() -> tuple[tuple[str, Callable[[], FiniteGroup]], ...]:
    out = [(tag, (lambda a=args: cons.make_named(*a))) for tag, args in _NAMED]
    out += [("g150", cons.make_g150),
            ("twisted2", lambda: cons.make_twisted_group(2)),
            ("twisted4", lambda: cons.make_twisted_group(4))]
    return tuple(out)


CLASS_LEVEL = (("h199650", cons.make_h199650),)


def _members(with_class_level: bool):
    yield from catalog()
    if with_class_level:
        yield from CLASS_LEVEL


def _solvable_members(with_class_level: bool):
    for tag, build in _members(with_class_level):
        if gk.is_solvable(build()):
            yield tag, build


# -- named examples ---------------------------------------------------------------------------


def field_claims(ctx: Context) -> Iterator[Claim]:
    for k, m in ((2, 0b111), (4, 0b10011), (8, 0x11B)):
        yield expect(f"field.modulus.k{k}", make_gf2k(k).modulus, m)
    for k, p in ((2, 3), (4, 5), (8, 17)):
        q = primitive_prime_divisor(k)
        yield expect(f"field.ppd.k{k}", q, p)
        if k > 2:
            # 2^k - 1 = (2^(k/2) - 1)(2^(k/2) + 1) and q misses the first factor
            yield expect(f"field.ppd_divides_2^{k // 2}+1.k{k}", ((1 << (k // 2)) + 1) % q, 0)
    yield expect("field.tn", [cons.tn_sequence(n) for n in range(1, 6)], [2, 6, 14, 30, 62])


def theorem_b_claims(ctx: Context) -> Iterator[Claim]:
    r1, r2 = pg.theorem_b_witnesses()
    for tag, r, n in (("g150", r1, 3), ("h199650", r2, 4)):
        yield Claim(f"theorem_b.{tag}.components", r.witness, r.witness == n, r.details["graph"].to_dict())
        yield expect(f"theorem_b.{tag}.edgeless", not r.details["graph"].edges, True)


def g150_claims(G: FiniteGroup, tag: str = "g150") -> Iterator[Claim]:
    yield expect(f"{tag}.order", G.order, 150)
    yield expect(f"{tag}.real_orders", list(pg.real_spectrum(G).orders), [1, 2, 3, 5])
    yield from_result(f"{tag}.satisfies_P", pg.satisfies_P(G))
    g = pg.real_prime_graph(G)
    yield expect(f"{tag}.real_components", pg.components(g).count, 3, g.to_dict())
    yield expect(f"{tag}.center_order", gk.center(G).order, 1)
    yield expect(f"{tag}.o2_order", gk.p_core(G, 2).order, 1)
    yield expect(f"{tag}.o2prime_order", gk.o2prime(G).order, G.order)
    yield expect(f"{tag}.normal_subgroup_orders", [N.order for N in gk.normal_subgroups(G)], [1, 25, 75, 150])
    series = gk.derived_series(G)
    F = gk.fitting(G)
    yield expect(f"{tag}.fitting_order", F.order, 25)
    yield expect(f"{tag}.fitting_is_second_derived", len(series) > 2 and F == series[2], True)
    yield guarded(f"{tag}.fitting_prime", pg.fitting_prime_check, G, 5)
    yield guarded(f"{tag}.lucido", pg.lucido_check, G)


def h199650_claims(ctx: Context) -> Iterator[Claim]:
    yield expect("h199650.generator_orders", cons.generator_orders(cons.h199650_action()), [2, 3, 5, 5])
    yield expect("h199650.acting_group_order", gk.close(cons.h199650_action()).order, 150)
    H = cons.make_h199650()
    yield expect("h199650.order", H.order, 199650)
    yield expect("h199650.real_orders", list(pg.real_spectrum(H).orders), [1, 2, 3, 5, 11])
    yield from_result("h199650.satisfies_P", pg.satisfies_P(H))
    g = pg.real_prime_graph(H)
    yield expect("h199650.real_components", pg.components(g).count, 4, g.to_dict())
    yield expect("h199650.center_order", gk.center(H).order, 1)
    series = gk.derived_series(H)
    yield expect("h199650.derived_series_orders", [S.order for S in series], [199650, 99825, 33275, 1331, 1])
    T = series[3]
    yield expect("h199650.third_derived_exponent",
                 gk.exponent(T) if gk.is_elementary_abelian(T) else None, 11)
    yield guarded("h199650.fitting_prime", pg.fitting_prime_check, H, 11)
    yield guarded("h199650.lucido", pg.lucido_check, H)


# -- twisted family -----------------------------------------------------------------------------


def twisted4_claims(ctx: Context) -> Iterator[Claim]:
    k = 4
    yield expect("twisted4.S_order", ringcheck.unit_group_order(k), 4096)
    lv = ringcheck.level_orders(k)
    yield expect("twisted4.level_orders", [lv[u] for u in range(1, k + 1)], [16 ** (k - u) for u in range(1, k + 1)])
    r = ringcheck.psi_homomorphism(k)
    yield Claim("twisted4.psi_hom_pairs", r.witness, r.holds, r.witness)
    r = ringcheck.commutator_identity(k)
    yield Claim("twisted4.commutator_identity_pairs", r.witness, r.holds, r.witness)
    S = cons.make_S(k)
    dS = gk.derived_subgroup(S)
    yield expect("twisted4.derived_S_is_S2", dS == cons.make_Su(k, 2), True, dS.order)
    yield expect("twisted4.derived_length_S", gk.derived_length(S), 2)
    G = cons.make_twisted_group(k)
    parts = cons.twisted_parts(k)
    yield expect("twisted4.P_fixed_point_free", gk.acts_fixed_point_freely(parts["S"], parts["P"], G), True)
    yield expect("twisted4.action_law", _action_law_failures(k), 0)
    yield expect("twisted4.order", G.order, 81920)
    yield expect("twisted4.all_prime_power_orders", all(gk.is_prime_power(n) for n in G.orders), True)
    yield expect("twisted4.o2_is_S", gk.p_core(G, 2) == parts["S"], True)
    yield expect("twisted4.o2prime_order", gk.o2prime(G).order, G.order)
    yield from_result("twisted4.satisfies_P", pg.satisfies_P(G))
    yield expect("twisted4.real_primes", list(pg.real_spectrum(G).primes), [2, 5])
    yield expect("twisted4.two_frobenius", gk.is_2frobenius(G, parts["S"], parts["SP"]), True)
    r = pg.theorem_a_check(G)
    yield Claim("twisted4.theorem_a", r.holds, r.holds, r.details)
    r = pg.corollary_spectrum_check(G)
    yield Claim("twisted4.corollary_spectrum", list(r.witness), r.holds, r.witness)


def _action_law_failures(k: int) -> int:
    """Group conjugation of s by (1, gamma, 0) against the ring product gamma^-1 s gamma."""
    G = cons.make_twisted_group(k)
    R = cons.twisted_ring(k)
    d = cons.twisted_data(k)
    one = R.one()
    bad = 0
    for gamma in d.P:
        g = G.index[cons.TwistedGroupElem(R, one, gamma, 0)]
        cg = (gamma,) + (0,) * (k - 1)
        cgi = (R.F.inv_int(gamma),) + (0,) * (k - 1)
        for s in cons.make_S(k).elements:
            x = G.index[cons.TwistedGroupElem(R, s.c, 1, 0)]
            y = G.elements[G.conj(x, g)]
            if y.s != R.mul(R.mul(cgi, s.c), cg) or (y.gamma, y.j) != (1, 0):
                bad += 1
    return bad


def twisted2_claims(ctx: Context) -> Iterator[Claim]:
    G = cons.make_twisted_group(2)
    parts = cons.twisted_parts(2)
    yield expect("twisted2.order", G.order, 24)
    yield expect("twisted2.two_frobenius", gk.is_2frobenius(G, parts["S"], parts["SP"]), True)
    yield expect("twisted2.all_prime_power_orders", all(gk.is_prime_power(n) for n in G.orders), True)


def twisted8_claims(ctx: Context) -> Iterator[Claim]:
    for name, r in ringcheck.sampled_identities(8, ctx.seed).items():
        yield Claim(f"twisted8.{name}", r.witness if r.holds else r.details, r.holds, r.witness)


def theorem_a_claims(ctx: Context) -> Iterator[Claim]:
    G = cons.make_named("symmetric", 4)
    r = pg.theorem_a_check(G)
    yield Claim("theorem_a.s4", r.holds, r.holds, r.details)
    yield expect("theorem_a.s4.chain", r.witness, {"p": 3, "N": 4, "K": 3, "Q": 2, "M": 12})
    r = pg.theorem_a_check(cons.make_twisted_group(2))
    yield Claim("theorem_a.twisted2", r.holds, r.holds, r.details)


def corollary_claims(ctx: Context) -> Iterator[Claim]:
    for tag, build, primes in (("s4", lambda: cons.make_named("symmetric", 4), [2, 3]),
                               ("d4", lambda: cons.make_named("dihedral", 4), [2]),
                               ("q8", lambda: cons.make_named("quaternion8", 8), [2])):
        r = pg.corollary_spectrum_check(build())
        yield Claim(f"corollary.{tag}", list(r.witness), r.holds and list(r.witness) == primes, r.witness)


# -- lemma suites over the catalog --------------------------------------------------------------


def _per_member(suite_id: str, fn: Callable[[FiniteGroup], pg.ClaimResult | None], class_level: bool,
                solvable_only: bool = False, value: Callable[[pg.ClaimResult], Any] | None = None):
    def run(ctx: Context) -> Iterator[Claim]:
        members = _solvable_members(class_level) if solvable_only else _members(class_level)
        for tag, build in members:
            r = fn(build())
            if r is None:
                continue  # hypotheses do not apply
            v = value(r) if value else r.details.get("checked", r.holds)
            yield Claim(f"{suite_id}.{tag}", v, r.holds, r.witness)
    return Suite(suite_id, run)


def _dmn(G: FiniteGroup) -> pg.ClaimResult | None:
    # the real-vertex statement needs O^{2'}(G) = G (C_3 and A_4 are counterexamples otherwise)
    if gk.o2prime(G).order != G.order:
        return None
    return pg.dmn_vertex_check(G)


def graph_invariants(ctx: Context) -> Iterator[Claim]:
    for tag, build in _members(True):
        G = build()
        full, real = pg.prime_graph(G), pg.real_prime_graph(G)
        sub = set(real.vertices) <= set(full.vertices) and set(real.edges) <= set(full.edges)
        yield expect(f"graph_invariants.real_in_full.{tag}", sub, True)
        yield expect(f"graph_invariants.P_iff_edgeless.{tag}", pg.satisfies_P(G).holds == (not real.edges), True)
        if G.order % 2:
            yield expect(f"graph_invariants.odd_order_spectrum.{tag}", list(pg.real_spectrum(G).orders), [1])


SUITES: tuple[Suite, ...] = (
    Suite("field", field_claims),
    Suite("theorem_b", theorem_b_claims),
    Suite("g150", lambda ctx: g150_claims(cons.make_g150())),
    Suite("h199650", h199650_claims),
    Suite("twisted2", twisted2_claims),
    Suite("twisted4", twisted4_claims),
    Suite("twisted8", twisted8_claims),
    Suite("theorem_a", theorem_a_claims),
    Suite("corollary", corollary_claims),
    _per_member("lemma_elem_prop_1", lemmas.inverted_by_2element, True),
    _per_member("lemma_elem_prop_2", lemmas.powers_of_real_are_real, True),
    _per_member("lemma_elem_prop_3", lemmas.real_cosets_lift, False),
    _per_member("lemma_elem_prop_4", lemmas.two_groups_invert, False),
    _per_member("lemma_suff_cond", lemmas.commuting_real_product, True),
    _per_member("lemma_interder_kq", lemmas.commutator_with_sylow2_is_complement, False,
                value=lambda r: list(r.witness)),
    _per_member("lemma_abel_k", lemmas.abelian_complement_criterion, False,
                value=lambda r: r.witness["abelian"]),
    _per_member("lemma_p_quotient", lemmas.properties_descend, False,
                value=lambda r: r.details["quotients"]),
    _per_member("lucido", pg.lucido_check, True, solvable_only=True, value=lambda r: r.holds),
    _per_member("dmn_vertices", _dmn, True, solvable_only=True, value=lambda r: list(r.witness)),
    Suite("graph_invariants", graph_invariants),
)


class SelectionError(ValueError):
    pass


def _selected(sid: str, cid: str, only: list[str] | None) -> bool:
    if not only:
        return True
    return any(t == sid or cid == t or cid.startswith(t + ".") for t in only)


def run(only: list[str] | None = None, out: TextIO | None = None, ctx: Context | None = None,
        suites: Iterable[Suite] = SUITES) -> tuple[int, int]:
    """Run the selected suites, writing one line per claim. Returns (passed, failed)."""
    import sys

    out = out or sys.stdout
    ctx = ctx or Context()
    suites = list(suites)
    if only:
        for t in only:
            if not any(t == s.id or t.startswith(s.id + ".") for s in suites):
                raise SelectionError(f"unknown claim id {t!r}")
    passed = failed = 0
    for s in suites:
        if only and not any(t == s.id or t.startswith(s.id + ".") for t in only):
            continue
        for c in s.run(ctx):
            if not _selected(s.id, c.id, only):
                continue
            out.write(line(c) + "\n")
            out.flush()
            if c.passed:
                passed += 1
            else:
                failed += 1
    return passed, failed
