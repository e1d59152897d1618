"""Exact power-sum decompositions of the generic determinant.

Everything in this package computes over exact scalars (rationals and
cyclotomic field elements); there is no floating point anywhere.
"""

from .cyclotomic import (
    Cyc,
    PrimeScalar,
    cyclotomic_polynomial,
    omega,
    primitive_root_of_unity,
    root_power_sum,
)
from .multipoly import (
    LinForm,
    SparsePoly,
    determinant_poly,
    diagonal_product_poly,
    permanent_poly,
)
from .decompositions import (
    SCHEME_BUILDERS,
    SCHEMES,
    BoundsRow,
    PowerDecomposition,
    PowerTerm,
    ProductDecomposition,
    bounds_table,
    classical_decomposition,
    gurvits_decomposition,
    krishna_makam_det3,
    main_decomposition,
    monomial_power_decomposition,
)
from .verify import (
    VerificationReport,
    check_closed_form_coefficients,
    verify_power_decomposition,
    verify_product_identity,
)
from .independence import (
    check_promotion,
    check_separation,
    rank_oracle,
    separation_matrix,
    separation_violations,
)
from .symmetry import (
    AffinePerm,
    MonoMatrix,
    SymElement,
    SymmetryEnumeration,
    check_affine_characterization,
    check_sign_formulas,
    check_symmetry_action,
    conjugate_decomposition,
    enumerate_symmetries,
    mono_membership,
    sample_symmetry_actions,
    transpose_closure,
)
from .varieties import (
    ExtraGeneratorReport,
    LocusCount,
    QuadricSet,
    extra_generators,
    finite_field_locus_count,
    quadric_generators,
    vanish_on_points,
)

__version__ = "0.1.0"

__all__ = [
    "AffinePerm",
    "BoundsRow",
    "Cyc",
    "ExtraGeneratorReport",
    "LinForm",
    "LocusCount",
    "MonoMatrix",
    "PowerDecomposition",
    "PowerTerm",
    "PrimeScalar",
    "ProductDecomposition",
    "QuadricSet",
    "SCHEMES",
    "SCHEME_BUILDERS",
    "SparsePoly",
    "SymElement",
    "SymmetryEnumeration",
    "VerificationReport",
    "bounds_table",
    "check_affine_characterization",
    "check_closed_form_coefficients",
    "check_promotion",
    "check_separation",
    "check_sign_formulas",
    "check_symmetry_action",
    "classical_decomposition",
    "conjugate_decomposition",
    "cyclotomic_polynomial",
    "determinant_poly",
    "diagonal_product_poly",
    "enumerate_symmetries",
    "extra_generators",
    "finite_field_locus_count",
    "gurvits_decomposition",
    "krishna_makam_det3",
    "main_decomposition",
    "mono_membership",
    "monomial_power_decomposition",
    "omega",
    "permanent_poly",
    "primitive_root_of_unity",
    "quadric_generators",
    "rank_oracle",
    "root_power_sum",
    "sample_symmetry_actions",
    "separation_matrix",
    "separation_violations",
    "transpose_closure",
    "vanish_on_points",
    "verify_power_decomposition",
    "verify_product_identity",
    "__version__",
]
