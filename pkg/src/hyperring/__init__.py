"""Workbench for finite Krasner (m,n)-hyperrings: axiom verification,
hyperideal classification, quotients and homomorphisms, and an executable
audit of the J-hyperideal theory over a structure catalog."""

__version__ = "0.1.0"

from .core import (
    ArityError,
    AxiomCheck,
    AxiomReport,
    CapExceeded,
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
from .ideals import (
    Hyperideal,
    IdealCheck,
    IdealLattice,
    PrincipalIdeal,
    enumerate_hyperideals,
    is_hyperideal,
    is_local,
    is_primary,
    is_prime,
    is_prime_by_subsets,
    prime_witness,
    jacobson_radical,
    maximal_hyperideals,
    principal_ideal,
    radical_by_powers,
    radical_by_primes,
    replay_ideal_check,
    residual,
)
from .classifiers import (
    ClassificationReport,
    ExpansionFunction,
    PredicateResult,
    Verdict,
    Witness,
    classify,
    compose_expansions,
    constant_expansion,
    identity_expansion,
    is_absorbing_delta_j,
    is_delta_j,
    is_delta_primary,
    is_j_hyperideal,
    preserves_intersections,
    radical_expansion,
    replay_witness,
    standard_registry,
    table_expansion,
    validate_expansion,
)
from .morphology import (
    Homomorphism,
    QuotientResult,
    QuotientStructure,
    enumerate_homomorphisms,
    identity_hom,
    image_ideal,
    is_delta_gamma_hom,
    is_homomorphism,
    kernel,
    preimage_ideal,
    projection_hom,
    quotient,
    quotient_expansion,
)
from .catalog import (
    CatalogEntry,
    Claim,
    builtin_examples,
    canonical_key,
    canonicalize,
    default_catalog,
    enumerate_structures,
    search_counterexample,
)
from .fileformat import (
    ParseError,
    export_structure,
    load_structure,
    parse_structure,
    save_structure,
)
from .audit import AuditCell, AuditReport, Discrepancy, THEOREMS, catalog_hash, run_audit
