"""Built-in tables, enumeration, canonical forms and counterexample search."""

import pytest
from hypothesis import given, settings, strategies as st

from hyperring import (
    CatalogEntry,
    builtin_examples,
    canonical_key,
    canonicalize,
    default_catalog,
    enumerate_structures,
    search_counterexample,
    verify_krasner,
)
from hyperring.catalog import _involutions
from hyperring.core import CapExceeded


# -- built-in tables -----------------------------------------------------------


def test_builtin33_table_rows(b33):
    S = b33.structure
    one, x = S.index_of("1"), S.index_of("x")
    assert S.hyperadd((one, one, x)) == frozenset(S.carrier)
    assert S.hyperadd((0, 0, x)) == frozenset({x})
    assert S.multiply((one, one, x)) == x
    assert S.multiply((x, x, x)) == x
    assert S.multiply((0, one, x)) == 0
    assert S.one == one


def test_builtin24_table_rows(b24):
    S = b24.structure
    a, b = S.index_of("a"), S.index_of("b")
    one = S.index_of("1")
    # the displayed grid: 1+1 = {0,1}, a+b = {1}, 1+b = {a,b}, b+b = {0,1}
    assert S.hyperadd((one, one)) == frozenset({0, one})
    assert S.hyperadd((a, b)) == frozenset({one})
    assert S.hyperadd((one, b)) == frozenset({a, b})
    assert S.hyperadd((b, b)) == frozenset({0, one})
    # products: four factors inside {a,b} give a, anything else gives 0
    assert S.multiply((a, b, a, b)) == a
    assert S.multiply((one, a, b, a)) == 0
    assert S.multiply((0, a, b, a)) == 0


def test_builtin_claims_attached(b33, b24):
    kinds33 = [c.kind for c in b33.claims]
    assert kinds33.count("j-hyperideal") == 2
    assert "krasner-axioms" in kinds33
    kinds24 = [c.kind for c in b24.claims]
    assert "canonical-hypergroup" in kinds24


def test_builtin_verification_verdicts(b33, b24):
    assert not b33.verified  # distributivity fails; stored, not corrected
    assert b24.verified


# -- enumeration ---------------------------------------------------------------


FROZEN_COUNTS = {
    (2, 2): {1: 1, 2: 4, 3: 19},
    (3, 2): {1: 1, 2: 2, 3: 15},
    (2, 3): {1: 1, 2: 4, 3: 24},
    (3, 3): {1: 1, 2: 2, 3: 20},
}


@pytest.mark.parametrize("mn", sorted(FROZEN_COUNTS))
def test_enumeration_counts(mn):
    m, n = mn
    for order, count in FROZEN_COUNTS[mn].items():
        out = enumerate_structures(m, n, order)
        assert len(out) == count
        for S in out:
            assert verify_krasner(S).ok


def test_two_element_field_analog_enumerated():
    # among the four (2,2) structures of order 2 sits the one whose
    # hyperaddition is single-valued two-element addition with 1*1 = 1
    found = False
    for S in enumerate_structures(2, 2, 2):
        single = all(len(v) == 1 for v in S.add.values())
        if single and S.add[(1, 1)] == frozenset({0}) and S.mul[(1, 1)] == 1:
            found = True
    assert found


def test_enumerated_structures_are_canonical():
    for S in enumerate_structures(2, 3, 3):
        assert canonical_key(canonicalize(S)) == canonical_key(S)


def test_canonicalize_idempotent():
    for S in enumerate_structures(2, 2, 3)[:6]:
        C = canonicalize(S)
        CC = canonicalize(C)
        assert C.add == CC.add and C.mul == CC.mul


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_canonical_key_invariant_under_relabeling(data):
    # relabeling the nonzero elements never changes the canonical key
    from hyperring import FiniteStructure
    from hyperring.core import msort

    pool = enumerate_structures(2, 2, 3) + enumerate_structures(3, 2, 2)
    S = data.draw(st.sampled_from(pool))
    others = [x for x in S.carrier if x != S.zero]
    images = data.draw(st.permutations(others))
    perm = list(range(S.size))
    for src, dst in zip(others, images):
        perm[src] = dst
    add = {
        msort(tuple(perm[i] for i in key)): frozenset(perm[v] for v in value)
        for key, value in S.add.items()
    }
    mul = {
        msort(tuple(perm[i] for i in key)): perm[value]
        for key, value in S.mul.items()
    }
    T = FiniteStructure.build("relabeled", S.m, S.n, S.labels, add, mul, S.zero)
    assert canonical_key(T) == canonical_key(S)


def test_raw_and_orbit_strategies_agree_small():
    for m, n, order in ((2, 2, 2), (2, 2, 3), (2, 3, 3), (3, 2, 2), (3, 3, 2)):
        orbit = {canonical_key(S) for S in enumerate_structures(m, n, order, strategy="orbit")}
        raw = {canonical_key(S) for S in enumerate_structures(m, n, order, strategy="raw")}
        assert orbit == raw


@pytest.mark.slow
def test_raw_and_orbit_strategies_agree_order3_ternary():
    # the raw product scan is the independent oracle; ~20s per shape
    for m, n in ((3, 2), (3, 3)):
        orbit = {canonical_key(S) for S in enumerate_structures(m, n, 3, strategy="orbit")}
        raw = {canonical_key(S) for S in enumerate_structures(m, n, 3, strategy="raw")}
        assert orbit == raw


def test_symmetry_off_expands_classes():
    broken = enumerate_structures(2, 2, 3, symmetry=False)
    canon = enumerate_structures(2, 2, 3, symmetry=True)
    assert len(broken) >= len(canon)
    assert {canonical_key(S) for S in broken} == {canonical_key(S) for S in canon}


def test_builtin33_not_rediscovered_because_unverified(b33):
    # the built-in fails verification, so exhaustive enumeration of verified
    # (3,3) order-3 structures cannot contain its relabeling class
    keys = {canonical_key(S) for S in enumerate_structures(3, 3, 3)}
    assert canonical_key(b33.structure) not in keys


def test_enumerated_structure_rediscovered():
    # positive control for canonical-form comparison
    S = enumerate_structures(3, 3, 3)[7]
    keys = {canonical_key(T) for T in enumerate_structures(3, 3, 3)}
    assert canonical_key(S) in keys


def test_order_one_structure():
    (S,) = enumerate_structures(3, 3, 1)
    assert S.size == 1 and S.one == 0
    assert verify_krasner(S).ok


def test_involutions_counts():
    assert len(_involutions([])) == 1
    assert len(_involutions([1])) == 1
    assert len(_involutions([1, 2])) == 2
    assert len(_involutions([1, 2, 3])) == 4
    assert len(_involutions([1, 2, 3, 4])) == 10


def test_enumeration_caps():
    with pytest.raises(CapExceeded):
        enumerate_structures(2, 2, 4, strategy="raw", cap=10_000)
    with pytest.raises(ValueError):
        enumerate_structures(5, 2, 2)


def test_default_catalog_composition(full_catalog):
    names = [e.structure.name for e in full_catalog]
    assert names.count("builtin33") == 1 and names.count("builtin24") == 1
    assert len(names) == len(set(names))
    assert len(full_catalog) == 100
    by_prov = {}
    for e in full_catalog:
        by_prov.setdefault(e.provenance, 0)
        by_prov[e.provenance] += 1
    assert by_prov == {"builtin": 2, "enumerated": 98}
    # order-4 slice present
    assert sum(1 for e in full_catalog if e.structure.size == 4 and e.provenance == "enumerated") == 4


def test_default_catalog_seed_changes_slice_only():
    base = [e.structure.name for e in default_catalog(order4_slice=2)]
    seeded = [e.structure.name for e in default_catalog(order4_slice=2, seed=9)]
    assert len(base) == len(seeded)
    assert base[: len(base) - 2] == seeded[: len(base) - 2]


# -- counterexample search -------------------------------------------------------


def test_search_j_not_always_prime(full_catalog):
    hit = search_counterexample("J => prime", full_catalog)
    assert hit is not None
    assert hit.structure == "enum-m2n2-o3-002"
    assert hit.ideal == ("0",)


def test_search_j_inside_jacobson_has_no_counterexample(full_catalog):
    assert search_counterexample("J => in-jacobson", full_catalog) is None


def test_search_prime_not_always_j(full_catalog):
    # a maximal prime away from the Jacobson radical: prime without J
    hit = search_counterexample("prime => J", full_catalog)
    assert hit is not None
    assert hit.structure == "enum-m2n2-o4-018"
    assert hit.ideal == ("0", "1")


def test_search_maximal_not_always_prime(full_catalog):
    hit = search_counterexample("maximal => prime", full_catalog)
    assert hit is not None and hit.structure == "builtin24"


def test_search_constant_expansion_escapes_jacobson(full_catalog):
    # the finding behind the recorded T16/T18 failures: a deltaR-J
    # hyperideal need not sit inside the Jacobson radical
    hit = search_counterexample("delta-J[deltaR] => in-jacobson", full_catalog)
    assert hit is not None
    assert hit.structure == "enum-m2n2-o4-018"
    hit0 = search_counterexample("delta-J[delta0] => in-jacobson", full_catalog)
    assert hit0 is None


def test_search_with_delta_arguments(small_catalog):
    assert search_counterexample("delta-J[delta0] => delta-J[deltaR]", small_catalog) is None
    assert (
        search_counterexample("delta-J[delta0] => absorbing[delta0,2]", small_catalog)
        is None
    )


def test_search_rejects_bad_specs(small_catalog):
    with pytest.raises(ValueError):
        search_counterexample("J implies prime", small_catalog)
    with pytest.raises(ValueError):
        search_counterexample("bogus => prime", small_catalog)
    with pytest.raises(ValueError):
        search_counterexample("delta-J[nope] => prime", small_catalog)
