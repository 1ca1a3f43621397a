"""Hyperideal lattice and the classical predicates over a finite structure.

Everything here is exhaustive set arithmetic on small carriers: hyperideal
recognition with witnesses, lattice enumeration (two cross-checkable
strategies), generated ideals, maximal ideals and the Jacobson radical,
primality in both element and subset form, the two radical definitions,
primariness, residuals and locality.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Optional

from .core import (
    CapExceeded,
    FiniteStructure,
    MissingIdentityError,
    msort,
    multiset_minus,
    multisets,
)

# Raw subset scans are 2^(size-1); beyond this the closure strategy takes over.
SCAN_LIMIT = 12
ENUM_SIZE_CAP = 20


@dataclass(frozen=True)
class Hyperideal:
    parent: FiniteStructure
    members: frozenset

    def __post_init__(self) -> None:
        if not self.members <= set(self.parent.carrier):
            raise ValueError("members outside carrier")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hyperideal)
            and self.parent is other.parent
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return hash(self.members)

    @property
    def proper(self) -> bool:
        return len(self.members) < self.parent.size

    def labels(self) -> tuple[str, ...]:
        return self.parent.labels_of(self.members)

    def __repr__(self) -> str:
        return f"Hyperideal({{{','.join(self.labels())}}} of {self.parent.name})"


@dataclass(frozen=True)
class IdealCheck:
    """Outcome of the hyperideal test: first violated clause plus witness."""

    ok: bool
    clause: Optional[str] = None
    witness: Optional[tuple] = None


def is_hyperideal(S: FiniteStructure, subset: Iterable[int]) -> IdealCheck:
    """Test the hyperideal clauses, reporting the first violation.

    Clause order: zero membership, closure under hyperaddition, absorption
    of multiplication in any slot, and solvability inside the subset.
    """
    members = frozenset(subset)
    if not members <= set(S.carrier):
        raise ValueError("subset outside carrier")
    if S.zero not in members:
        return IdealCheck(False, "zero", (S.zero,))
    sorted_members = sorted(members)
    for key in multisets(S.size, S.m):
        if all(k in members for k in key):
            for v in sorted(S.add[key]):
                if v not in members:
                    return IdealCheck(False, "add-closed", (key, v))
    for rest in multisets(S.size, S.n - 1):
        for i in sorted_members:
            prod = S.mul[msort(rest + (i,))]
            if prod not in members:
                return IdealCheck(False, "absorbing", (rest, i, prod))
    for rest in combinations_with_replacement(sorted_members, S.m - 1):
        for b in sorted_members:
            if not any(b in S.add[msort(rest + (t,))] for t in sorted_members):
                return IdealCheck(False, "solvability", (rest, b))
    return IdealCheck(True)


def replay_ideal_check(S: FiniteStructure, subset: Iterable[int], check: IdealCheck) -> bool:
    """Re-evaluate a failed clause's witness; True means it still violates."""
    if check.ok:
        return False
    members = frozenset(subset)
    w = check.witness
    if check.clause == "zero":
        return S.zero not in members
    if check.clause == "add-closed":
        key, v = tuple(w[0]), w[1]
        return all(k in members for k in key) and v in S.add[key] and v not in members
    if check.clause == "absorbing":
        rest, i, _ = w
        return i in members and S.mul[msort(tuple(rest) + (i,))] not in members
    if check.clause == "solvability":
        rest, b = tuple(w[0]), w[1]
        return (
            all(r in members for r in rest)
            and b in members
            and not any(b in S.add[msort(rest + (t,))] for t in sorted(members))
        )
    raise ValueError(f"no replay rule for clause {check.clause!r}")


@dataclass
class IdealLattice:
    """All hyperideals of a structure, sorted by (size, member ids)."""

    parent: FiniteStructure
    ideals: tuple[Hyperideal, ...]

    def __post_init__(self) -> None:
        self._index = {i.members: i for i in self.ideals}
        self._primes: Optional[tuple] = None

    def __iter__(self):
        return iter(self.ideals)

    def __len__(self) -> int:
        return len(self.ideals)

    def __contains__(self, members) -> bool:
        return frozenset(members) in self._index

    def by_members(self, members) -> Hyperideal:
        return self._index[frozenset(members)]

    def proper(self) -> tuple[Hyperideal, ...]:
        return tuple(i for i in self.ideals if i.proper)

    @property
    def maximal(self) -> tuple[Hyperideal, ...]:
        prop = self.proper()
        return tuple(
            i
            for i in prop
            if not any(i.members < j.members for j in prop)
        )

    @property
    def jacobson(self) -> Hyperideal:
        """Intersection of the maximal hyperideals; the whole carrier if none."""
        maxi = self.maximal
        if not maxi:
            return self.by_members(frozenset(self.parent.carrier))
        inter = frozenset(self.parent.carrier)
        for m in maxi:
            inter &= m.members
        return self.by_members(inter)

    def primes(self) -> tuple[Hyperideal, ...]:
        if self._primes is None:
            self._primes = tuple(
                p for p in self.proper() if is_prime(self.parent, p.members, self)
            )
        return self._primes


def enumerate_hyperideals(
    S: FiniteStructure, strategy: str = "auto", size_cap: int = ENUM_SIZE_CAP
) -> IdealLattice:
    """Compute the full hyperideal lattice.

    ``scan`` filters all zero-containing subsets, ``closure`` grows ideals
    from generator closures (breadth-first over single-element extensions).
    Both agree on small carriers; ``auto`` picks by size.
    """
    if S.size > size_cap:
        raise CapExceeded(f"{S.name}: carrier size {S.size} exceeds cap {size_cap}")
    if strategy == "auto":
        strategy = "scan" if S.size <= SCAN_LIMIT else "closure"
    if strategy == "scan":
        found = _enumerate_scan(S)
    elif strategy == "closure":
        found = _enumerate_closure(S)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    ideals = tuple(
        Hyperideal(S, members)
        for members in sorted(found, key=lambda ms: (len(ms), sorted(ms)))
    )
    return IdealLattice(S, ideals)


def _enumerate_scan(S: FiniteStructure) -> set:
    others = [x for x in S.carrier if x != S.zero]
    found = set()
    for r in range(len(others) + 1):
        for combo in combinations(others, r):
            members = frozenset(combo) | {S.zero}
            if is_hyperideal(S, members).ok:
                found.add(members)
    return found


def _close_under_ops(S: FiniteStructure, seed: frozenset) -> frozenset:
    """Smallest superset closed under hyperaddition, additive inverses and
    multiplication absorption.  On a verified structure this is the
    hyperideal generated by the seed."""
    cur = set(seed) | {S.zero}
    changed = True
    while changed:
        changed = False
        members = sorted(cur)
        for key in multisets(len(members), S.m):
            value = S.add[msort(tuple(members[i] for i in key))]
            if not value <= cur:
                cur |= value
                changed = True
        for x in list(cur):
            inv = S.add_inverse(x)
            if inv is not None and inv not in cur:
                cur.add(inv)
                changed = True
        for rest in multisets(S.size, S.n - 1):
            for i in list(cur):
                prod = S.mul[msort(rest + (i,))]
                if prod not in cur:
                    cur.add(prod)
                    changed = True
    return frozenset(cur)


def _enumerate_closure(S: FiniteStructure) -> set:
    base = _close_under_ops(S, frozenset())
    found = set()
    queue = [base]
    while queue:
        cur = queue.pop()
        if cur in found:
            continue
        # closure output is re-checked: on unverified structures the closure
        # operations do not guarantee solvability
        if not is_hyperideal(S, cur).ok:
            continue
        found.add(cur)
        for x in S.carrier:
            if x not in cur:
                queue.append(_close_under_ops(S, cur | {x}))
    return found


@dataclass(frozen=True)
class PrincipalIdeal:
    """Generated hyperideal of one element.

    ``formula_set`` is the plain product set {r*x*1*..*1 | r in carrier};
    ``formula_closed`` records whether that set was already a hyperideal.
    When it is not, ``ideal`` is the smallest lattice member containing it.
    """

    ideal: Hyperideal
    generator: int
    formula_set: frozenset
    formula_closed: bool


def principal_ideal(
    S: FiniteStructure, x: int, lattice: Optional[IdealLattice] = None
) -> PrincipalIdeal:
    if S.one is None:
        raise MissingIdentityError(f"{S.name} has no scalar identity")
    pad = (S.one,) * (S.n - 2)
    raw = frozenset(S.mul[msort((r, x) + pad)] for r in S.carrier)
    check = is_hyperideal(S, raw)
    if lattice is None:
        lattice = enumerate_hyperideals(S)
    if check.ok:
        return PrincipalIdeal(lattice.by_members(raw), x, raw, True)
    enclosing = frozenset(S.carrier)
    for cand in lattice:
        if raw <= cand.members and len(cand.members) < len(enclosing):
            enclosing = cand.members
    return PrincipalIdeal(lattice.by_members(enclosing), x, raw, False)


def maximal_hyperideals(S: FiniteStructure, lattice: Optional[IdealLattice] = None):
    lattice = lattice or enumerate_hyperideals(S)
    return lattice.maximal


def jacobson_radical(S: FiniteStructure, lattice: Optional[IdealLattice] = None):
    lattice = lattice or enumerate_hyperideals(S)
    return lattice.jacobson


def is_local(S: FiniteStructure, lattice: Optional[IdealLattice] = None) -> bool:
    """Exactly one maximal hyperideal.  A one-element structure has none."""
    lattice = lattice or enumerate_hyperideals(S)
    return len(lattice.maximal) == 1


def is_prime(
    S: FiniteStructure, P: Iterable[int], lattice: Optional[IdealLattice] = None
) -> bool:
    """Element form: a zero-divisor-free condition on n-fold products."""
    verdict, _ = prime_witness(S, P)
    return verdict


def prime_witness(S: FiniteStructure, P: Iterable[int]):
    members = frozenset(P)
    if members == frozenset(S.carrier):
        raise ValueError("prime test requires a proper hyperideal")
    for key in multisets(S.size, S.n):
        if S.mul[key] in members and not any(k in members for k in key):
            return False, key
    return True, None


def is_prime_by_subsets(
    S: FiniteStructure, P: Iterable[int], lattice: IdealLattice
) -> bool:
    """Subset form: quantifies over n-tuples of lattice members."""
    members = frozenset(P)
    if members == frozenset(S.carrier):
        raise ValueError("prime test requires a proper hyperideal")
    pool = [i.members for i in lattice]
    for combo in multisets(len(pool), S.n):
        sets = [pool[i] for i in combo]
        prods = _set_product(S, sets)
        if prods <= members and not any(u <= members for u in sets):
            return False
    return True


def _set_product(S: FiniteStructure, sets) -> frozenset:
    from itertools import product as iproduct

    out = set()
    for combo in {msort(c) for c in iproduct(*[sorted(s) for s in sets])}:
        out.add(S.mul[combo])
    return frozenset(out)


def radical_by_primes(
    S: FiniteStructure, I: Iterable[int], lattice: Optional[IdealLattice] = None
) -> Hyperideal:
    """Intersection of the prime hyperideals containing I (the reference
    definition); the whole carrier when no prime contains I."""
    members = frozenset(I)
    lattice = lattice or enumerate_hyperideals(S)
    over = [p.members for p in lattice.primes() if members <= p.members]
    if not over:
        return lattice.by_members(frozenset(S.carrier))
    inter = frozenset(S.carrier)
    for p in over:
        inter &= p
    return lattice.by_members(inter)


def power_exponents(S: FiniteStructure, t_max: Optional[int] = None) -> list[int]:
    """Exponents t for which an n-ary t-th power is defined: t <= n, or
    t = l(n-1)+1.  Bounded by size*(n-1)+1 since powers cycle."""
    if t_max is None:
        t_max = S.size * (S.n - 1) + 1
    ts = [t for t in range(1, min(S.n, t_max) + 1)]
    t = 2 * (S.n - 1) + 1
    while t <= t_max:
        ts.append(t)
        t += S.n - 1
    return ts


def element_power(S: FiniteStructure, x: int, t: int) -> int:
    """t-th multiplicative power, identity-padded below arity n."""
    if S.one is None:
        raise MissingIdentityError(f"{S.name} has no scalar identity")
    if t <= S.n:
        return S.mul[msort((x,) * t + (S.one,) * (S.n - t))]
    return S.multiply_iterated((x,) * t)


def radical_by_powers(
    S: FiniteStructure, I: Iterable[int], t_max: Optional[int] = None
) -> frozenset:
    """Elements with some defined power landing in I."""
    members = frozenset(I)
    ts = power_exponents(S, t_max)
    out = set()
    for x in S.carrier:
        if any(element_power(S, x, t) in members for t in ts):
            out.add(x)
    return frozenset(out)


def is_primary(
    S: FiniteStructure, Q: Iterable[int], lattice: Optional[IdealLattice] = None
):
    """Primary test: whenever a product lands in Q, every factor outside Q
    must leave its identity-substituted co-product inside the radical of Q.
    Returns (verdict, witness); verdict None when no identity exists."""
    members = frozenset(Q)
    if members == frozenset(S.carrier):
        raise ValueError("primary test requires a proper hyperideal")
    if S.one is None:
        return None, None
    lattice = lattice or enumerate_hyperideals(S)
    rad = radical_by_primes(S, members, lattice).members
    for key in multisets(S.size, S.n):
        if S.mul[key] not in members:
            continue
        for v in sorted(set(key)):
            if v in members:
                continue
            rest = multiset_minus(key, (v,))
            if S.mul[msort(rest + (S.one,))] not in rad:
                return False, (key, key.index(v))
    return True, None


def residual(S: FiniteStructure, Q: Iterable[int], T: Iterable[int]) -> frozenset:
    """Elements whose product with every member of T (identity padded) lies
    in Q.  Always contains Q by absorption."""
    if S.one is None:
        raise MissingIdentityError(f"{S.name} has no scalar identity")
    members = frozenset(Q)
    tset = frozenset(T)
    if not tset:
        raise ValueError("residual requires a nonempty subset")
    pad = (S.one,) * (S.n - 2)
    return frozenset(
        x
        for x in S.carrier
        if all(S.mul[msort((x, s) + pad)] in members for s in tset)
    )
