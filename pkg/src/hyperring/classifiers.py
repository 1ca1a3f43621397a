"""Expansion functions and the J-family hyperideal predicates.

An expansion function assigns to every hyperideal a larger hyperideal,
monotonically.  The classifiers decide, for a proper hyperideal Q:

* J-hyperideal: products landing in Q force the identity-substituted
  co-product into Q whenever the dropped factor avoids the Jacobson radical;
* delta-J: same, with the co-product allowed to land in delta(Q);
* delta-primary: same, with "dropped factor avoids Q" as the trigger;
* (k,n)-absorbing delta-J: for products of k(n-1)+1 factors in Q, either the
  leading (k-1)(n-1)+1 sub-product lies in the Jacobson radical or some other
  sub-product of that length lies in delta(Q).

Scans run over multisets (commutativity is structural), witnesses are
reported as concrete tuples and replay against the literal tuple-level
definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping, Optional

from .core import (
    AxiomCheck,
    AxiomReport,
    FiniteStructure,
    msort,
    multiset_minus,
    multisets,
    sub_multisets,
)
from .ideals import IdealLattice, enumerate_hyperideals, radical_by_primes

ABSORBING_TUPLE_CAP = 10_000_000


class Verdict(str, Enum):
    TRUE = "true"
    FALSE = "false"
    NOT_APPLICABLE = "not_applicable"  # structure lacks a scalar identity
    IMPROPER = "improper"  # subset is the whole carrier or not an ideal

    def __bool__(self) -> bool:
        return self is Verdict.TRUE


@dataclass(frozen=True)
class Witness:
    """Replayable evidence for a negative predicate verdict."""

    predicate: str
    ideal: tuple  # sorted members of Q
    args: tuple  # offending product tuple
    index: Optional[int] = None  # dropped position within args
    prefix_len: Optional[int] = None  # absorbing: leading sub-product length
    delta: Optional[str] = None
    k: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "predicate": self.predicate,
            "ideal": list(self.ideal),
            "args": list(self.args),
            "index": self.index,
            "prefix_len": self.prefix_len,
            "delta": self.delta,
            "k": self.k,
        }


@dataclass(frozen=True)
class PredicateResult:
    verdict: Verdict
    witness: Optional[Witness] = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.verdict is Verdict.TRUE


# -- expansion functions -----------------------------------------------------


@dataclass(frozen=True)
class ExpansionFunction:
    """Total map on a lattice's member sets, intended to be inflationary and
    monotone.  Built-ins are constructed per lattice; arbitrary user tables
    are accepted and validated the same way."""

    name: str
    table: Mapping[frozenset, frozenset]

    def __call__(self, members) -> frozenset:
        key = frozenset(getattr(members, "members", members))
        try:
            return self.table[key]
        except KeyError:
            raise KeyError(f"{self.name} is not defined on {sorted(key)}") from None


def identity_expansion(lattice: IdealLattice) -> ExpansionFunction:
    return ExpansionFunction("delta0", {i.members: i.members for i in lattice})


def radical_expansion(S: FiniteStructure, lattice: IdealLattice) -> ExpansionFunction:
    return ExpansionFunction(
        "delta1",
        {i.members: radical_by_primes(S, i.members, lattice).members for i in lattice},
    )


def constant_expansion(lattice: IdealLattice) -> ExpansionFunction:
    top = frozenset(lattice.parent.carrier)
    return ExpansionFunction("deltaR", {i.members: top for i in lattice})


def table_expansion(name: str, table: Mapping) -> ExpansionFunction:
    return ExpansionFunction(
        name, {frozenset(k): frozenset(v) for k, v in table.items()}
    )


def standard_registry(S: FiniteStructure, lattice: IdealLattice) -> dict:
    """The always-shipped expansions, in deterministic order."""
    return {
        "delta0": identity_expansion(lattice),
        "delta1": radical_expansion(S, lattice),
        "deltaR": constant_expansion(lattice),
    }


def compose_expansions(
    outer: ExpansionFunction, inner: ExpansionFunction
) -> ExpansionFunction:
    """Pointwise composition outer(inner(.)); valid inputs compose to a
    valid expansion, which is asserted rather than re-reported."""
    table = {k: outer(inner(k)) for k in inner.table}
    composed = ExpansionFunction(f"{outer.name}o{inner.name}", table)
    for k, v in table.items():
        assert k <= v, "composition lost inflationarity"
    return composed


def validate_expansion(
    S: FiniteStructure, lattice: IdealLattice, delta: ExpansionFunction
) -> AxiomReport:
    """Check totality, inflationarity and monotonicity over the lattice."""
    checks = []
    missing = [i.members for i in lattice if i.members not in delta.table]
    stray = [
        k for k, v in delta.table.items() if k not in lattice or v not in lattice
    ]
    if missing:
        checks.append(
            AxiomCheck("expansion-total", False, (tuple(sorted(missing[0])),))
        )
    elif stray:
        checks.append(AxiomCheck("expansion-total", False, (tuple(sorted(stray[0])),)))
    else:
        checks.append(AxiomCheck("expansion-total", True))
    infl = AxiomCheck("expansion-inflationary", True)
    for i in lattice:
        if i.members in delta.table and not i.members <= delta(i.members):
            infl = AxiomCheck(
                "expansion-inflationary", False, (tuple(sorted(i.members)),)
            )
            break
    checks.append(infl)
    mono = AxiomCheck("expansion-monotone", True)
    done = False
    for i in lattice:
        for j in lattice:
            if i.members <= j.members and i.members in delta.table and j.members in delta.table:
                if not delta(i.members) <= delta(j.members):
                    mono = AxiomCheck(
                        "expansion-monotone",
                        False,
                        (tuple(sorted(i.members)), tuple(sorted(j.members))),
                    )
                    done = True
                    break
        if done:
            break
    checks.append(mono)
    return AxiomReport(f"{S.name}:{delta.name}", tuple(checks))


def preserves_intersections(
    S: FiniteStructure, lattice: IdealLattice, delta: ExpansionFunction
) -> bool:
    """delta(I & J) == delta(I) & delta(J) over all lattice pairs."""
    for i in lattice:
        for j in lattice:
            meet = i.members & j.members
            if meet not in lattice:
                continue  # lattice invariant says this cannot happen
            if delta(meet) != delta(i.members) & delta(j.members):
                return False
    return True


# -- predicate scans ---------------------------------------------------------


def _gate(S: FiniteStructure, Q: frozenset) -> Optional[PredicateResult]:
    if Q == frozenset(S.carrier):
        raise ValueError("predicate requires a proper hyperideal")
    if S.one is None:
        return PredicateResult(
            Verdict.NOT_APPLICABLE, note="no scalar identity detected"
        )
    return None


def _drop_scan(
    S: FiniteStructure,
    Q: frozenset,
    trigger: frozenset,
    target: frozenset,
    predicate: str,
    delta_name: Optional[str],
) -> PredicateResult:
    """Common shape of the J-family scans: for every n-multiset with product
    in Q and every distinct factor v outside ``trigger``, the product with v
    replaced by the identity must land in ``target``."""
    one = S.one
    for key in multisets(S.size, S.n):
        if S.mul[key] not in Q:
            continue
        for v in sorted(set(key)):
            if v in trigger:
                continue
            dropped = S.mul[msort(multiset_minus(key, (v,)) + (one,))]
            if dropped not in target:
                return PredicateResult(
                    Verdict.FALSE,
                    Witness(
                        predicate,
                        tuple(sorted(Q)),
                        key,
                        index=key.index(v),
                        delta=delta_name,
                    ),
                )
    return PredicateResult(Verdict.TRUE)


def is_j_hyperideal(
    S: FiniteStructure, Q: Iterable[int], lattice: IdealLattice
) -> PredicateResult:
    members = frozenset(Q)
    gate = _gate(S, members)
    if gate is not None:
        return gate
    jac = lattice.jacobson.members
    return _drop_scan(S, members, jac, members, "j-hyperideal", None)


def is_delta_j(
    S: FiniteStructure,
    Q: Iterable[int],
    delta: ExpansionFunction,
    lattice: IdealLattice,
) -> PredicateResult:
    members = frozenset(Q)
    gate = _gate(S, members)
    if gate is not None:
        return gate
    jac = lattice.jacobson.members
    return _drop_scan(S, members, jac, delta(members), "delta-j", delta.name)


def is_delta_primary(
    S: FiniteStructure,
    Q: Iterable[int],
    delta: ExpansionFunction,
    lattice: IdealLattice,
) -> PredicateResult:
    members = frozenset(Q)
    gate = _gate(S, members)
    if gate is not None:
        return gate
    return _drop_scan(S, members, members, delta(members), "delta-primary", delta.name)


def absorbing_arity(n: int, k: int) -> tuple[int, int]:
    """(product length, sub-product length) for the (k,n)-absorbing test."""
    return k * (n - 1) + 1, (k - 1) * (n - 1) + 1


def is_absorbing_delta_j(
    S: FiniteStructure,
    Q: Iterable[int],
    delta: ExpansionFunction,
    k: int,
    lattice: IdealLattice,
    tuple_cap: int = ABSORBING_TUPLE_CAP,
) -> PredicateResult:
    """(k,n)-absorbing delta-J scan.

    Runs over multisets; for a fixed multiset the excluded "leading"
    sub-product ranges over every sub-multiset A, and A itself counts as an
    alternative sub-product exactly when some value of A has further copies
    in the remainder (then an index selection other than the prefix realises
    it).  This matches the tuple-level definition, which the witness replay
    re-checks literally.
    """
    members = frozenset(Q)
    if members == frozenset(S.carrier):
        raise ValueError("predicate requires a proper hyperideal")
    if k < 2:
        raise ValueError("absorbing degree k must be at least 2")
    total, part = absorbing_arity(S.n, k)
    if S.size**total > tuple_cap:
        return PredicateResult(
            Verdict.NOT_APPLICABLE,
            note=f"tuple space {S.size}^{total} exceeds cap {tuple_cap}",
        )
    jac = lattice.jacobson.members
    dQ = delta(members)
    for whole in multisets(S.size, total):
        if S.multiply_iterated(whole) not in members:
            continue
        subs = sub_multisets(whole, part)
        in_dq = [S.multiply_iterated(A) in dQ for A in subs]
        any_in_dq = sum(in_dq)
        for idx, A in enumerate(subs):
            if S.multiply_iterated(A) in jac:
                continue
            # is A realisable by a second index selection?
            rest = multiset_minus(whole, A)
            repeat = any(v in rest for v in A)
            alternatives = any_in_dq - (0 if repeat else int(in_dq[idx]))
            if alternatives == 0:
                return PredicateResult(
                    Verdict.FALSE,
                    Witness(
                        "absorbing-delta-j",
                        tuple(sorted(members)),
                        A + rest,
                        prefix_len=part,
                        delta=delta.name,
                        k=k,
                    ),
                )
    return PredicateResult(Verdict.TRUE)


def replay_witness(
    S: FiniteStructure,
    lattice: IdealLattice,
    registry: Mapping[str, ExpansionFunction],
    w: Witness,
) -> bool:
    """Re-run the violated clause on the witness tuple, literally.

    True means the violation reproduces.  The absorbing replay enumerates
    index subsets of the witness tuple, i.e. the definitional form rather
    than the multiset shortcut used by the scan.
    """
    Q = frozenset(w.ideal)
    jac = lattice.jacobson.members
    args = tuple(w.args)
    if w.predicate == "j-hyperideal":
        return _replay_drop(S, Q, jac, Q, args, w.index)
    if w.predicate == "delta-j":
        return _replay_drop(S, Q, jac, registry[w.delta](Q), args, w.index)
    if w.predicate == "delta-primary":
        return _replay_drop(S, Q, Q, registry[w.delta](Q), args, w.index)
    if w.predicate == "prime":
        return S.mul[msort(args)] in Q and not any(a in Q for a in args)
    if w.predicate == "primary":
        rad = radical_by_primes(S, Q, lattice).members
        v = args[w.index]
        dropped = S.mul[msort(multiset_minus(msort(args), (v,)) + (S.one,))]
        return S.mul[msort(args)] in Q and v not in Q and dropped not in rad
    if w.predicate == "absorbing-delta-j":
        dQ = registry[w.delta](Q)
        part = w.prefix_len
        if S.multiply_iterated(args) not in Q:
            return False
        prefix = args[:part]
        if S.multiply_iterated(prefix) in jac:
            return False
        prefix_ids = tuple(range(part))
        for ids in combinations(range(len(args)), part):
            if ids == prefix_ids:
                continue
            if S.multiply_iterated(tuple(args[i] for i in ids)) in dQ:
                return False
        return True
    raise ValueError(f"no replay rule for predicate {w.predicate!r}")


def _replay_drop(S, Q, trigger, target, args, index) -> bool:
    if S.mul[msort(args)] not in Q:
        return False
    v = args[index]
    if v in trigger:
        return False
    dropped = S.mul[msort(multiset_minus(msort(args), (v,)) + (S.one,))]
    return dropped not in target


# -- classification reports --------------------------------------------------


@dataclass
class ClassificationReport:
    """Per-ideal verdicts for every registered predicate."""

    structure: str
    subset: tuple[str, ...]
    is_ideal: bool
    ideal_clause: Optional[str]
    proper: bool
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "structure": self.structure,
            "subset": list(self.subset),
            "is_ideal": self.is_ideal,
            "ideal_clause": self.ideal_clause,
            "proper": self.proper,
            "verdicts": {k: v.value for k, v in self.verdicts.items()},
            "witnesses": {k: w.as_dict() for k, w in self.witnesses.items()},
            "notes": dict(self.notes),
        }


def classify(
    S: FiniteStructure,
    subset: Iterable[int],
    registry: Optional[Mapping[str, ExpansionFunction]] = None,
    k_max: int = 3,
    lattice: Optional[IdealLattice] = None,
) -> ClassificationReport:
    """Run every predicate on one subset, deterministically.

    Non-ideals and the whole carrier get IMPROPER verdicts across the board;
    identity-dependent predicates report NOT_APPLICABLE when the structure
    has no scalar identity.
    """
    from .ideals import is_hyperideal, is_primary, prime_witness

    members = frozenset(subset)
    lattice = lattice or enumerate_hyperideals(S)
    registry = registry if registry is not None else standard_registry(S, lattice)
    check = is_hyperideal(S, members)
    proper = members != frozenset(S.carrier)
    report = ClassificationReport(
        structure=S.name,
        subset=S.labels_of(members),
        is_ideal=check.ok,
        ideal_clause=check.clause,
        proper=proper,
    )
    keys = ["prime", "primary", "maximal", "J"]
    for name in registry:
        keys.append(f"delta-J[{name}]")
        keys.append(f"delta-primary[{name}]")
    for name in registry:
        for k in range(2, k_max + 1):
            keys.append(f"absorbing[{name},k={k}]")
    if not check.ok or not proper:
        for key in keys:
            report.verdicts[key] = Verdict.IMPROPER
        report.notes["reason"] = (
            "not a hyperideal" if not check.ok else "whole carrier"
        )
        return report

    ok, pw = prime_witness(S, members)
    report.verdicts["prime"] = Verdict.TRUE if ok else Verdict.FALSE
    if pw is not None:
        report.witnesses["prime"] = Witness("prime", tuple(sorted(members)), pw)

    pv, pwit = is_primary(S, members, lattice)
    if pv is None:
        report.verdicts["primary"] = Verdict.NOT_APPLICABLE
        report.notes["primary"] = "no scalar identity detected"
    else:
        report.verdicts["primary"] = Verdict.TRUE if pv else Verdict.FALSE
        if pwit is not None:
            report.witnesses["primary"] = Witness(
                "primary", tuple(sorted(members)), pwit[0], index=pwit[1]
            )

    report.verdicts["maximal"] = (
        Verdict.TRUE
        if any(m.members == members for m in lattice.maximal)
        else Verdict.FALSE
    )

    def put(key: str, res: PredicateResult) -> None:
        report.verdicts[key] = res.verdict
        if res.witness is not None:
            report.witnesses[key] = res.witness
        if res.note:
            report.notes[key] = res.note

    put("J", is_j_hyperideal(S, members, lattice))
    for name, delta in registry.items():
        put(f"delta-J[{name}]", is_delta_j(S, members, delta, lattice))
        put(f"delta-primary[{name}]", is_delta_primary(S, members, delta, lattice))
    for name, delta in registry.items():
        for k in range(2, k_max + 1):
            put(
                f"absorbing[{name},k={k}]",
                is_absorbing_delta_j(S, members, delta, k, lattice),
            )
    return report
