"""Built-in structures, exhaustive small-order enumeration, counterexample
search.

The enumeration works in two stages.  Hyperaddition candidates are generated
from membership orbits: neutrality, inverse uniqueness and reversibility link
individual memberships x in f(..) into closed orbits, so consistent tables
are exactly the unions of orbits extending the forced ones.  Surviving
candidates get the full axiom sweep.  Multiplication candidates are filtered
by associativity, then paired with a distributivity check.  A plain
product-scan strategy exists as a cross-check oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterator, Optional

from .core import (
    CapExceeded,
    FiniteStructure,
    AxiomReport,
    msort,
    multiset_minus,
    multisets,
    sub_multisets,
    verify_canonical_hypergroup,
    verify_krasner,
)
from .classifiers import Verdict, standard_registry
from .ideals import IdealLattice, enumerate_hyperideals

DEFAULT_ARITIES = ((2, 2), (3, 2), (2, 3), (3, 3))
ENUM_CANDIDATE_CAP = 2_000_000
FREE_ORBIT_CAP = 22


@dataclass(frozen=True)
class Claim:
    """An expectation shipped with a built-in structure, to be audited."""

    kind: str  # krasner-axioms | canonical-hypergroup | hyperideal | j-hyperideal
    subset: Optional[tuple[str, ...]] = None

    def as_dict(self) -> dict:
        return {"kind": self.kind, "subset": list(self.subset) if self.subset else None}


@dataclass
class CatalogEntry:
    structure: FiniteStructure
    provenance: str  # builtin | enumerated | file
    claims: tuple[Claim, ...] = ()
    report: AxiomReport = None
    _lattice: Optional[IdealLattice] = field(default=None, repr=False)
    _registry: Optional[dict] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.report is None:
            self.report = verify_krasner(self.structure)

    @property
    def verified(self) -> bool:
        return self.report.ok

    def lattice(self) -> IdealLattice:
        if self._lattice is None:
            self._lattice = enumerate_hyperideals(self.structure)
        return self._lattice

    def registry(self) -> dict:
        if self._registry is None:
            self._registry = standard_registry(self.structure, self.lattice())
        return self._registry


# -- built-in structures -----------------------------------------------------


def _fs(*xs):
    return frozenset(xs)


def builtin_ternary() -> CatalogEntry:
    """Three-element (3,3)-structure on {0, 1, x}.

    Shipped with the claims that it is a Krasner (3,3)-hyperring and that
    {0} and {0,x} are J-hyperideals; the verifier's verdicts are compared
    against these claims by the audit, never assumed.
    """
    A = _fs(0, 1, 2)
    add = {
        (0, 0, 0): _fs(0),
        (0, 0, 1): _fs(1),
        (0, 1, 1): _fs(1),
        (1, 1, 1): _fs(1),
        (1, 1, 2): A,
        (0, 1, 2): A,
        (0, 0, 2): _fs(2),
        (0, 2, 2): _fs(2),
        (1, 2, 2): A,
        (2, 2, 2): _fs(2),
    }
    mul = {key: 0 for key in multisets(3, 3) if 0 in key}
    mul[(1, 1, 1)] = 1
    mul[(1, 1, 2)] = 2
    mul[(1, 2, 2)] = 2
    mul[(2, 2, 2)] = 2
    S = FiniteStructure.build("builtin33", 3, 3, ("0", "1", "x"), add, mul, 0)
    claims = (
        Claim("krasner-axioms"),
        Claim("hyperideal", ("0",)),
        Claim("hyperideal", ("0", "x")),
        Claim("j-hyperideal", ("0",)),
        Claim("j-hyperideal", ("0", "x")),
    )
    return CatalogEntry(S, "builtin", claims)


def builtin_quaternary() -> CatalogEntry:
    """Four-element (2,4)-structure on {0, 1, a, b}: hyperaddition from the
    literature's displayed grid (1+1 = {0,1}, b+b = {0,1}, a+a = {0},
    a+b = {1}, 1+a = {b}, 1+b = {a,b}); products of four elements of {a,b}
    give a, anything else gives 0.  No element acts as a scalar identity,
    which the entry records honestly."""
    AA = _fs(0, 1)
    BB = _fs(2, 3)
    add = {
        (0, 0): _fs(0),
        (0, 1): _fs(1),
        (0, 2): _fs(2),
        (0, 3): _fs(3),
        (1, 1): AA,
        (1, 2): _fs(3),
        (1, 3): BB,
        (2, 2): _fs(0),
        (2, 3): _fs(1),
        (3, 3): AA,
    }
    mul = {
        key: 2 if all(k in (2, 3) for k in key) else 0 for key in multisets(4, 4)
    }
    S = FiniteStructure.build("builtin24", 2, 4, ("0", "1", "a", "b"), add, mul, 0)
    claims = (
        Claim("canonical-hypergroup"),
        Claim("krasner-axioms"),
        Claim("j-hyperideal", ("0",)),
    )
    return CatalogEntry(S, "builtin", claims)


def builtin_examples() -> list[CatalogEntry]:
    return [builtin_ternary(), builtin_quaternary()]


# -- canonical forms ---------------------------------------------------------


def _permuted_key(S: FiniteStructure, perm: tuple[int, ...]):
    add_items = sorted(
        (msort(tuple(perm[i] for i in key)), tuple(sorted(perm[v] for v in value)))
        for key, value in S.add.items()
    )
    mul_items = sorted(
        (msort(tuple(perm[i] for i in key)), perm[value])
        for key, value in S.mul.items()
    )
    return (tuple(add_items), tuple(mul_items))


def _zero_fixing_perms(size: int, zero: int) -> Iterator[tuple[int, ...]]:
    others = [i for i in range(size) if i != zero]
    for images in permutations(others):
        perm = [0] * size
        perm[zero] = zero
        for src, dst in zip(others, images):
            perm[src] = dst
        yield tuple(perm)


def canonical_key(S: FiniteStructure):
    """Lexicographically least table serialization over relabelings that fix
    the zero element."""
    return min(_permuted_key(S, p) for p in _zero_fixing_perms(S.size, S.zero))


def canonicalize(S: FiniteStructure) -> FiniteStructure:
    """Relabel onto the canonical form; idempotent."""
    best = min(
        _zero_fixing_perms(S.size, S.zero), key=lambda p: _permuted_key(S, p)
    )
    add = {
        msort(tuple(best[i] for i in key)): frozenset(best[v] for v in value)
        for key, value in S.add.items()
    }
    mul = {
        msort(tuple(best[i] for i in key)): best[value]
        for key, value in S.mul.items()
    }
    labels = [""] * S.size
    for old, new in enumerate(best):
        labels[new] = S.labels[old]
    return FiniteStructure.build(
        S.name, S.m, S.n, tuple(labels), add, mul, best[S.zero]
    )


# -- hyperaddition candidates (orbit strategy) -------------------------------


def _involutions(elems: list[int]) -> list[dict]:
    """All involutions on a list of elements, deterministic order."""
    if not elems:
        return [{}]
    out = []
    first, rest = elems[0], elems[1:]
    for sub in _involutions(rest):
        out.append({first: first, **sub})
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1 :]
        for sub in _involutions(remaining):
            out.append({first: partner, partner: first, **sub})
    return out


def _orbit_of(atom, iota, m):
    """Closure of one membership atom under the reversibility transform."""
    seen = {atom}
    frontier = [atom]
    while frontier:
        key, x = frontier.pop()
        for a in sorted(set(key)):
            others = multiset_minus(key, (a,))
            new = (msort((x,) + tuple(iota[o] for o in others)), a)
            if new not in seen:
                seen.add(new)
                frontier.append(new)
    return frozenset(seen)


def _add_candidates(order: int, m: int) -> Iterator[dict]:
    """Hyperaddition tables with neutral zero, unique inverses and
    reversibility built in by orbit construction."""
    keys = list(multisets(order, m))
    nonzero = list(range(1, order))
    for iota_nz in _involutions(nonzero):
        iota = {0: 0, **iota_nz}
        forced_present = set()
        forced_absent = set()
        for y in range(order):
            kn = msort((0,) * (m - 1) + (y,))
            forced_present.add((kn, y))
            for z in range(order):
                if z != y:
                    forced_absent.add((kn, z))
        for a in nonzero:
            for b in nonzero:
                if b < a:
                    continue
                key = msort((0,) * (m - 2) + (a, b))
                atom = (key, 0)
                if b == iota[a] or a == iota[b]:
                    forced_present.add(atom)
                else:
                    forced_absent.add(atom)
        all_atoms = [(key, x) for key in keys for x in range(order)]
        orbit_of_atom: dict = {}
        orbits = []
        for atom in all_atoms:
            if atom in orbit_of_atom:
                continue
            orb = _orbit_of(atom, iota, m)
            orbits.append(orb)
            for a in orb:
                orbit_of_atom[a] = orb
        must, free = [], []
        feasible = True
        for orb in orbits:
            has_p = any(a in forced_present for a in orb)
            has_a = any(a in forced_absent for a in orb)
            if has_p and has_a:
                feasible = False
                break
            if has_p:
                must.append(orb)
            elif not has_a:
                free.append(orb)
        if not feasible:
            continue
        if len(free) > FREE_ORBIT_CAP:
            raise CapExceeded(
                f"{len(free)} free membership orbits exceed cap {FREE_ORBIT_CAP}"
            )
        free.sort(key=lambda orb: min(orb))
        base = set()
        for orb in must:
            base |= orb
        for bits in product((0, 1), repeat=len(free)):
            atoms = set(base)
            for bit, orb in zip(bits, free):
                if bit:
                    atoms |= orb
            table = {key: frozenset(x for k, x in atoms if k == key) for key in keys}
            if any(not v for v in table.values()):
                continue
            yield table


def _mul_candidates(order: int, n: int) -> Iterator[dict]:
    """Zero-absorbing associative multiplication tables."""
    free_keys = [k for k in multisets(order, n) if 0 not in k]
    forced = {k: 0 for k in multisets(order, n) if 0 in k}
    for values in product(range(order), repeat=len(free_keys)):
        mul = dict(forced)
        mul.update(zip(free_keys, values))
        if _mul_associative(order, n, mul):
            yield mul


def _mul_associative(order: int, n: int, mul: dict) -> bool:
    for whole in multisets(order, 2 * n - 1):
        first = None
        for A in sub_multisets(whole, n):
            v = mul[msort((mul[A],) + multiset_minus(whole, A))]
            if first is None:
                first = v
            elif v != first:
                return False
    return True


def _distributive(order: int, m: int, n: int, add: dict, mul: dict) -> bool:
    for a in multisets(order, n - 1):
        for xs in multisets(order, m):
            lhs = frozenset(mul[msort(a + (s,))] for s in add[xs])
            rhs = add[msort(tuple(mul[msort(a + (x,))] for x in xs))]
            if lhs != rhs:
                return False
    return True


def _raw_add_candidates(order: int, m: int) -> Iterator[dict]:
    """Plain product scan over all free value assignments (cross-check
    oracle for the orbit strategy).  Zero's neutral row is forced; the
    inverse-uniqueness constraint prunes early."""
    keys = list(multisets(order, m))
    forced = {}
    for y in range(order):
        forced[msort((0,) * (m - 1) + (y,))] = frozenset({y})
    inv_keys = sorted(
        {
            msort((0,) * (m - 2) + (a, b))
            for a in range(1, order)
            for b in range(1, order)
        }
        - set(forced)
    )
    other_keys = [k for k in keys if k not in forced and k not in inv_keys]
    from itertools import combinations

    values = sorted(
        {frozenset(c) for r in range(1, order + 1) for c in combinations(range(order), r)},
        key=lambda s: (len(s), sorted(s)),
    )
    for inv_vals in product(values, repeat=len(inv_keys)):
        table0 = dict(forced)
        table0.update(zip(inv_keys, inv_vals))
        if not _inverses_unique(order, m, table0):
            continue
        for other_vals in product(values, repeat=len(other_keys)):
            table = dict(table0)
            table.update(zip(other_keys, other_vals))
            yield table


def _inverses_unique(order: int, m: int, partial_add: dict) -> bool:
    for x in range(order):
        count = 0
        for y in range(order):
            key = msort((0,) * (m - 2) + (x, y))
            value = partial_add.get(key)
            if value is not None and 0 in value:
                count += 1
        if count != 1:
            return False
    return True


def enumerate_structures(
    m: int,
    n: int,
    order: int,
    symmetry: bool = True,
    strategy: str = "orbit",
    cap: int = ENUM_CANDIDATE_CAP,
) -> list[FiniteStructure]:
    """All verified Krasner (m,n)-hyperrings of the given order.

    Zero is fixed at element 0.  With ``symmetry`` the output is one
    structure per relabeling class (canonical forms, in canonical order);
    without it, every verified zero-fixed table pair is returned.
    """
    if not (2 <= m <= 4 and 2 <= n <= 4):
        raise ValueError(f"unsupported arities ({m},{n})")
    if order < 1:
        raise ValueError("order must be positive")
    if order == 1:
        S = FiniteStructure.build(
            f"enum-m{m}n{n}-o1-000",
            m,
            n,
            ("0",),
            {(0,) * m: frozenset({0})},
            {(0,) * n: 0},
            0,
        )
        return [S]

    if strategy == "orbit":
        add_source = _add_candidates(order, m)
    elif strategy == "raw":
        n_free_keys = len(list(multisets(order, m))) - order
        if (2**order - 1) ** n_free_keys > cap:
            raise CapExceeded(
                f"raw scan of (2^{order}-1)^{n_free_keys} hyperaddition tables"
                f" exceeds cap {cap}"
            )
        add_source = _raw_add_candidates(order, m)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    n_free_mul = len([k for k in multisets(order, n) if 0 not in k])
    if order**n_free_mul > cap:
        raise CapExceeded(
            f"scan of {order}^{n_free_mul} multiplication tables exceeds cap {cap}"
        )
    muls = list(_mul_candidates(order, n))
    labels = tuple(_default_labels(order))
    survivors = []
    seen_keys = set()
    candidates = 0
    for add in add_source:
        candidates += 1
        if candidates > cap:
            raise CapExceeded(f"enumeration candidate cap {cap} exceeded")
        probe = FiniteStructure.build(
            "probe", m, n, labels, add, {k: 0 for k in multisets(order, n)}, 0
        )
        if not verify_canonical_hypergroup(probe, fail_fast=True).ok:
            continue
        for mul in muls:
            if not _distributive(order, m, n, add, mul):
                continue
            S = FiniteStructure.build("candidate", m, n, labels, add, mul, 0)
            if not verify_krasner(S).ok:
                continue
            key = canonical_key(S) if symmetry else _permuted_key(S, tuple(range(order)))
            if key in seen_keys:
                continue
            seen_keys.add(key)
            survivors.append((key, S))
    survivors.sort(key=lambda pair: pair[0])
    out = []
    for i, (key, S) in enumerate(survivors):
        canon = canonicalize(S) if symmetry else S
        # enumerated labels are positional, so relabel after canonicalizing
        out.append(
            FiniteStructure.build(
                f"enum-m{m}n{n}-o{order}-{i:03d}",
                m,
                n,
                labels,
                canon.add,
                canon.mul,
                0,
            )
        )
    return out


def _default_labels(order: int) -> list[str]:
    return [str(i) for i in range(order)]


def _representative_slice(structures: list[FiniteStructure], k: int):
    """Deterministic order-4 sample: leading structures plus, when present,
    one with a scalar identity and one non-local one with identity, so the
    identity-gated predicates see real instances at order 4."""
    from .ideals import enumerate_hyperideals, is_local

    picks = list(structures[: max(0, k - 2)])

    def add_first(pred) -> None:
        for S in structures:
            if S not in picks and pred(S):
                picks.append(S)
                return

    add_first(lambda S: S.one is not None)
    add_first(lambda S: S.one is not None and not is_local(S, enumerate_hyperideals(S)))
    return picks[:k] if len(picks) > k else picks


def default_catalog(
    max_order: int = 3,
    arities=DEFAULT_ARITIES,
    order4_slice: int = 4,
    seed: Optional[int] = None,
) -> list[CatalogEntry]:
    """Built-ins plus exhaustive small orders plus a sampled order-4 slice."""
    entries = builtin_examples()
    for m, n in arities:
        for order in range(1, max_order + 1):
            for S in enumerate_structures(m, n, order):
                entries.append(CatalogEntry(S, "enumerated"))
    if order4_slice:
        slice4 = list(enumerate_structures(2, 2, 4))
        if seed is not None:
            rng = random.Random(seed)
            rng.shuffle(slice4)
        entries.extend(
            CatalogEntry(S, "enumerated")
            for S in _representative_slice(slice4, order4_slice)
        )
    return entries


# -- counterexample search ---------------------------------------------------


@dataclass(frozen=True)
class SearchHit:
    structure: str
    ideal: tuple[str, ...]
    antecedent: str
    consequent: str

    def as_dict(self) -> dict:
        return {
            "structure": self.structure,
            "ideal": list(self.ideal),
            "antecedent": self.antecedent,
            "consequent": self.consequent,
        }


def _parse_predicate(spec: str):
    """Predicate mini-grammar: name or name[args].

    Names: prime, primary, maximal, J, in-jacobson, delta-J[d],
    delta-primary[d], absorbing[d,k].
    """
    from .classifiers import (
        is_absorbing_delta_j,
        is_delta_j,
        is_delta_primary,
        is_j_hyperideal,
    )
    from .ideals import is_primary, prime_witness

    spec = spec.strip()
    name, args = spec, []
    if "[" in spec:
        if not spec.endswith("]"):
            raise ValueError(f"malformed predicate {spec!r}")
        name, inner = spec[:-1].split("[", 1)
        args = [a.strip() for a in inner.split(",")]

    def need_delta(ctx_registry):
        if not args or args[0] not in ctx_registry:
            raise ValueError(f"predicate {spec!r} needs a registered expansion")
        return ctx_registry[args[0]]

    def run(S, lattice, registry, Q) -> Verdict:
        if name == "prime":
            ok, _ = prime_witness(S, Q)
            return Verdict.TRUE if ok else Verdict.FALSE
        if name == "primary":
            v, _ = is_primary(S, Q, lattice)
            if v is None:
                return Verdict.NOT_APPLICABLE
            return Verdict.TRUE if v else Verdict.FALSE
        if name == "maximal":
            return (
                Verdict.TRUE
                if any(m.members == Q for m in lattice.maximal)
                else Verdict.FALSE
            )
        if name == "J":
            return is_j_hyperideal(S, Q, lattice).verdict
        if name == "in-jacobson":
            return (
                Verdict.TRUE if Q <= lattice.jacobson.members else Verdict.FALSE
            )
        if name == "delta-J":
            return is_delta_j(S, Q, need_delta(registry), lattice).verdict
        if name == "delta-primary":
            return is_delta_primary(S, Q, need_delta(registry), lattice).verdict
        if name == "absorbing":
            if len(args) != 2:
                raise ValueError(f"absorbing needs [delta,k], got {spec!r}")
            return is_absorbing_delta_j(
                S, Q, need_delta(registry), int(args[1]), lattice
            ).verdict
        raise ValueError(f"unknown predicate {name!r}")

    return run


def search_counterexample(
    implication: str, entries: list[CatalogEntry]
) -> Optional[SearchHit]:
    """First (structure, proper ideal) violating 'lhs => rhs', if any.

    Instances where either side is inapplicable are skipped.
    """
    if "=>" not in implication:
        raise ValueError("implication must look like 'J => prime'")
    lhs_spec, rhs_spec = (s.strip() for s in implication.split("=>", 1))
    lhs, rhs = _parse_predicate(lhs_spec), _parse_predicate(rhs_spec)
    for entry in entries:
        S = entry.structure
        lattice = entry.lattice()
        registry = entry.registry()
        for ideal in lattice.proper():
            a = lhs(S, lattice, registry, ideal.members)
            b = rhs(S, lattice, registry, ideal.members)
            if a is Verdict.TRUE and b is Verdict.FALSE:
                return SearchHit(S.name, ideal.labels(), lhs_spec, rhs_spec)
    return None
