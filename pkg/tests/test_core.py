"""Operation tables, iterated operations and the axiom verifier."""

import json

import pytest
from hypothesis import given, settings, strategies as st

from hyperring import (
    ArityError,
    FiniteStructure,
    ForeignElementError,
    MissingIdentityError,
    StructureError,
    is_invertible,
    mul_inverse,
    replay_axiom_check,
    verify_canonical_hypergroup,
    verify_krasner,
)
from hyperring.core import CapExceeded, msort, multiset_minus, multisets, sub_multisets


def idx(entry, *labels):
    S = entry.structure
    return tuple(S.index_of(l) for l in labels)


# -- multiset helpers --------------------------------------------------------


def test_sub_multisets_lex_order():
    assert sub_multisets((1, 1, 2, 2), 2) == [(1, 1), (1, 2), (2, 2)]
    assert sub_multisets((0, 1, 2), 2) == [(0, 1), (0, 2), (1, 2)]
    assert sub_multisets((3,), 1) == [(3,)]


def test_multiset_minus():
    assert multiset_minus((0, 1, 1, 2), (1, 2)) == (0, 1)
    with pytest.raises(ValueError):
        multiset_minus((0, 1), (2,))


# -- table evaluation --------------------------------------------------------


def test_hyperadd_table_rows(b33):
    S = b33.structure
    zero, one, x = 0, 1, 2
    assert S.hyperadd((zero, zero, x)) == frozenset({x})
    assert S.hyperadd((one, one, x)) == frozenset({zero, one, x})
    # scalar neutral: 0+0+a = {a} for every a
    for a in S.carrier:
        assert S.hyperadd((zero, zero, a)) == frozenset({a})


def test_hyperadd_commutative_by_keying(b33):
    S = b33.structure
    assert S.hyperadd((1, 2, 0)) == S.hyperadd((0, 1, 2)) == S.hyperadd((2, 0, 1))


def test_hyperadd_errors(b33):
    S = b33.structure
    with pytest.raises(ArityError):
        S.hyperadd((0, 1))
    with pytest.raises(ForeignElementError):
        S.hyperadd((0, 1, 7))


def test_hyperadd_subsets(b33):
    S = b33.structure
    assert S.hyperadd_subsets([{0}, {0}, {2}]) == frozenset({2})
    # neutral sets: B + {0} + {0} = B
    assert S.hyperadd_subsets([{1, 2}, {0}, {0}]) == frozenset({1, 2})
    # union over the product: f(1,0,0) | f(x,0,0) = {1} | {x}
    assert S.hyperadd_subsets([{1, 2}, {0}, {0}]) == S.hyperadd((1, 0, 0)) | S.hyperadd(
        (2, 0, 0)
    )
    with pytest.raises(StructureError):
        S.hyperadd_subsets([set(), {0}, {0}])


def test_hyperadd_iterated_base_cases(b33):
    S = b33.structure
    assert S.hyperadd_iterated((2,)) == frozenset({2})
    # l=1 is the plain table
    assert S.hyperadd_iterated((1, 1, 2)) == S.hyperadd((1, 1, 2))
    # all zeros fold to {0}
    assert S.hyperadd_iterated((0,) * 5) == frozenset({0})
    # m=3: valid lengths are 1, 3, 5, ..
    with pytest.raises(ArityError):
        S.hyperadd_iterated((0, 1))
    assert S.hyperadd_iterated((0, 0, 0, 0, 2)) == frozenset({2})


def test_multiply_rows(b33, b24):
    S = b33.structure
    assert S.multiply((1, 1, 2)) == 2
    for rest in multisets(S.size, 2):
        assert S.multiply((0,) + rest) == 0
    T = b24.structure
    a, b = 2, 3
    assert T.multiply((a, b, a, b)) == a
    assert T.multiply((1, a, b, a)) == 0


def test_multiply_iterated(b24):
    T = b24.structure
    # 4-ary: valid lengths 1, 4, 7, ..
    assert T.multiply_iterated((2,)) == 2
    assert T.multiply_iterated((2, 3, 2, 3)) == 2
    assert T.multiply_iterated((2, 3, 2, 3, 2, 2, 2)) == 2
    assert T.multiply_iterated((2, 3, 2, 3, 1, 2, 2)) == 0
    with pytest.raises(ArityError):
        T.multiply_iterated((2, 3))


def test_multiply_iterated_zero_absorbs(b33, small_catalog):
    for entry in small_catalog:
        S = entry.structure
        t = 2 * (S.n - 1) + 1
        args = (S.zero,) + tuple(range(S.size))[: t - 1]
        if len(args) < t:
            args = args + (S.zero,) * (t - len(args))
        assert S.multiply_iterated(args) == S.zero


def test_identity_detection(b33, b24):
    assert b33.structure.one == 1
    assert b24.structure.one is None
    assert b33.structure.detect_identities() == (1,)
    assert b24.structure.detect_identities() == ()


def test_scalar_identity_acts(b33):
    S = b33.structure
    for x in S.carrier:
        assert S.multiply((S.one, S.one, x)) == x


def test_invertibility(b33, b24):
    S = b33.structure
    assert is_invertible(S, 1) and mul_inverse(S, 1) == 1
    assert not is_invertible(S, 0)
    # g(x,y,1) is never 1: x is not invertible
    assert not is_invertible(S, 2)
    with pytest.raises(MissingIdentityError):
        is_invertible(b24.structure, 0)


def test_build_rejects_malformed(b33):
    S = b33.structure
    with pytest.raises(StructureError):
        FiniteStructure.build("bad", 3, 3, ("0", "0", "x"), S.add, S.mul, 0)
    incomplete = dict(S.add)
    incomplete.pop((0, 0, 0))
    with pytest.raises(StructureError):
        FiniteStructure.build("bad", 3, 3, S.labels, incomplete, S.mul, 0)
    empty = dict(S.add)
    empty[(0, 0, 0)] = frozenset()
    with pytest.raises(StructureError):
        FiniteStructure.build("bad", 3, 3, S.labels, empty, S.mul, 0)
    with pytest.raises(StructureError):
        FiniteStructure.build("bad", 3, 3, S.labels, S.add, S.mul, 0, declared_one=2)


# -- verification ------------------------------------------------------------


def test_builtin24_passes_all_axioms(b24):
    rep = verify_krasner(b24.structure)
    assert rep.ok
    assert verify_canonical_hypergroup(b24.structure).ok
    assert rep.check("mul-identity").note == "absent"


def test_builtin33_fails_exactly_distributivity(b33):
    rep = verify_krasner(b33.structure)
    failed = [c.axiom for c in rep.failed()]
    assert failed == ["distributivity"]
    check = rep.check("distributivity")
    # the sum-set f(0,1,x) contains 0, so multiplying by (1,x) hits 0 on the
    # left while the element-product side f(0,x,x) stays at {x}
    assert check.witness == ((1, 2), (0, 1, 2))
    assert replay_axiom_check(b33.structure, check)
    assert verify_canonical_hypergroup(b33.structure).ok


def _mutate_add(entry, key, value):
    S = entry.structure
    add = dict(S.add)
    add[key] = value
    return FiniteStructure.build(S.name + "-mut", S.m, S.n, S.labels, add, S.mul, 0)


def _mutate_mul(entry, key, value):
    S = entry.structure
    mul = dict(S.mul)
    mul[key] = value
    return FiniteStructure.build(S.name + "-mut", S.m, S.n, S.labels, S.add, mul, 0)


def test_broken_neutral_reported_with_witness(b24):
    # drop 'a' from 0+a
    M = _mutate_add(b24, (0, 2), frozenset({3}))
    rep = verify_canonical_hypergroup(M)
    check = rep.check("add-neutral")
    assert not check.passed
    assert check.witness == ("not-neutral", 2)
    assert replay_axiom_check(M, check)


def test_broken_absorption_reported_with_witness(b24):
    M = _mutate_mul(b24, (0, 1, 2, 3), 1)
    rep = verify_krasner(M)
    check = rep.check("zero-absorbing")
    assert not check.passed
    assert replay_axiom_check(M, check)


def test_broken_inverse_uniqueness(b24):
    # 1+1 = {0,1} and making a+1 also contain 0 gives 1 two inverses
    M = _mutate_add(b24, (1, 2), frozenset({0, 3}))
    rep = verify_canonical_hypergroup(M)
    check = rep.check("add-inverses")
    assert not check.passed
    assert check.witness[0] == "multiple"
    assert replay_axiom_check(M, check)


def test_broken_associativity_witness_replays(b24):
    M = _mutate_add(b24, (2, 3), frozenset({2}))
    rep = verify_canonical_hypergroup(M)
    assert not rep.ok
    for check in rep.failed():
        assert replay_axiom_check(M, check)


def test_broken_solvability_witness_replays():
    # 2 is never reachable from 1: b in 1+t has no solution for b=2
    add = {
        (0, 0): frozenset({0}),
        (0, 1): frozenset({1}),
        (0, 2): frozenset({2}),
        (1, 1): frozenset({0}),
        (1, 2): frozenset({1}),
        (2, 2): frozenset({0, 2}),
    }
    mul = {k: 0 for k in multisets(3, 2)}
    M = FiniteStructure.build("unsolvable", 2, 2, ("0", "1", "2"), add, mul, 0)
    rep = verify_canonical_hypergroup(M)
    check = rep.check("add-solvability")
    assert not check.passed
    assert replay_axiom_check(M, check)


def test_verify_is_pure(b33):
    a = json.dumps(verify_krasner(b33.structure).as_dict(), sort_keys=True)
    b = json.dumps(verify_krasner(b33.structure).as_dict(), sort_keys=True)
    assert a == b


def test_size_guard():
    big = FiniteStructure.build(
        "big",
        2,
        2,
        tuple(str(i) for i in range(9)),
        {k: frozenset({max(k)}) if 0 in k else frozenset({0}) for k in multisets(9, 2)},
        {k: 0 for k in multisets(9, 2)},
        0,
    )
    with pytest.raises(CapExceeded):
        verify_krasner(big)
    verify_krasner(big, size_guard=False)


# -- iterated folds are bracket-independent on verified structures -----------


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_hyperadd_iterated_bracket_independent(small_catalog, data):
    verified = [e.structure for e in small_catalog if e.verified]
    S = data.draw(st.sampled_from(verified))
    l = data.draw(st.integers(min_value=1, max_value=3))
    t = l * (S.m - 1) + 1
    args = tuple(
        data.draw(st.integers(min_value=0, max_value=S.size - 1)) for _ in range(t)
    )
    left = S.hyperadd_iterated(args)
    # re-associate: fold the tail first, then feed it to the head
    if l >= 2:
        head, tail = args[: S.m - 1], args[S.m - 1 :]
        inner = S.hyperadd_iterated(tail)
        right = S.hyperadd_subsets([{h} for h in head] + [inner])
        assert left == right
    # and in reversed argument order
    assert left == S.hyperadd_iterated(tuple(reversed(args)))


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_multiply_iterated_order_independent(small_catalog, data):
    verified = [e.structure for e in small_catalog if e.verified]
    S = data.draw(st.sampled_from(verified))
    l = data.draw(st.integers(min_value=1, max_value=3))
    t = l * (S.n - 1) + 1
    args = tuple(
        data.draw(st.integers(min_value=0, max_value=S.size - 1)) for _ in range(t)
    )
    assert S.multiply_iterated(args) == S.multiply_iterated(msort(args))
