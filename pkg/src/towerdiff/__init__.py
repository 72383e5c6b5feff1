"""Exact invariants of solvable towers of cyclic extensions over k(x).

Validation, ramification profiles, genus, the explicit holomorphic
differential basis, standard-form normalization, and the Galois module
decomposition, all in exact finite field arithmetic.
"""

from .algebra import (
    AlgebraElement,
    TrackedPlace,
    alg_mul,
    alg_pow,
    apply_automorphism,
    differential_valuation,
    valuation,
)
from .basis import (
    BasisElement,
    enumerate_basis,
    enumerate_basis_single_as,
    enumerate_basis_single_kummer,
    holomorphy_check,
    invariant_table,
    monomial_differential_valuation,
)
from .errors import TowerDiffError
from .ff import FieldElement, FieldSpec
from .galois import (
    DecompositionReport,
    DeltaModule,
    action_matrix,
    cyclic_decomposition,
    nilpotency_check,
    submodule_generators,
)
from .places import Place, ResidueField, artin_schreier_image_test, residue
from .poly import Poly, RatFun, factorize, is_irreducible, weak_approximant
from .standard_form import (
    SubstitutionChain,
    as_weak_standard_form,
    as_zero_normal,
    compositum_to_tower,
    elementary_abelian_merge,
    kummer_standard_form,
)
from .tower import (
    StepSpec,
    TowerDescriptor,
    analyze,
    genus,
    genus_stepwise,
    tracked_place,
    validate,
)

__version__ = "1.0.0"

__all__ = [
    "AlgebraElement",
    "BasisElement",
    "DecompositionReport",
    "DeltaModule",
    "FieldElement",
    "FieldSpec",
    "Place",
    "Poly",
    "RatFun",
    "ResidueField",
    "StepSpec",
    "SubstitutionChain",
    "TowerDescriptor",
    "TowerDiffError",
    "TrackedPlace",
    "action_matrix",
    "alg_mul",
    "alg_pow",
    "analyze",
    "apply_automorphism",
    "artin_schreier_image_test",
    "as_weak_standard_form",
    "as_zero_normal",
    "compositum_to_tower",
    "cyclic_decomposition",
    "differential_valuation",
    "elementary_abelian_merge",
    "enumerate_basis",
    "enumerate_basis_single_as",
    "enumerate_basis_single_kummer",
    "factorize",
    "genus",
    "genus_stepwise",
    "holomorphy_check",
    "invariant_table",
    "is_irreducible",
    "kummer_standard_form",
    "monomial_differential_valuation",
    "nilpotency_check",
    "residue",
    "submodule_generators",
    "tracked_place",
    "validate",
    "valuation",
    "weak_approximant",
]
