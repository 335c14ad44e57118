"""Spectral theory, positive cones, and structure groups of
finite-dimensional formally real Jordan algebras.

Algebras are built from three simple families (real symmetric matrices,
complex hermitian matrices, spin factors) and their direct sums. On top
of the product sit the quadratic representation, spectral functional
calculus, order-theoretic cone tests, membership and factorization in
the structure group of the positive cone, Jordan isotopes, and the
matrix-congruence picture special to complex hermitian algebras.
"""

from .algebra import (AlgebraDescriptor, Element, VOperator, basis_element,
                      block_join, block_split, direct_sum, element,
                      element_eigenvalues, from_matrix, herm_complex,
                      identity_op, inverse, is_invertible, jb_norm,
                      jordan_product, L_op, op_from_matrix_map, op_inverse,
                      spin_element, spin_factor, spin_parts, sym_real,
                      to_matrix, trace_form, U_bilinear, U_op, unit, zero)
from .cone import (cone_retraction, in_closure, in_cone, order_leq,
                   order_unit_norm, preserves_cone, transport)
from .config import default_tol, resolve_tol
from .errors import (AlgebraMismatch, CentralityViolation, DomainViolation,
                     Inconsistent, InconsistentSolve, JordanConeError,
                     LiftFailure, NotAutomorphism, NotConePreserving,
                     NotDerivation, NotIdempotent, NotInCone, NotInLieAlgebra,
                     NotInStr, NotInvertible, OutOfNeighborhood, ParseError,
                     SingularMatrix, SingularOperator, UndecidableWitness,
                     UxNotPositive)
from .fixtures import (Fixture, parse_algebra_label, parse_fixture,
                       serialize_fixture)
from .herm import (AutComponent, AutLift, ImplementingMap, StrComponent,
                   aut_component, congruence_op, derivation_to_skew, j_op,
                   k_complex, lift_automorphism, phase_normalize,
                   recover_implementer, skew_traceless_basis, str_as_lr,
                   str_two_components)
from .isotopes import (HomotopeAlgebra, homotope, homotope_product,
                       isotope_inverse, isotope_isomorphic, isotope_spectrum)
from .sampling import (random_automorphism, random_cone_element,
                       random_derivation, random_element, random_indefinite,
                       random_invertible, rng_for)
from .spectral import (FUNCTION_TAGS, SpectralData, apply_function,
                       hull_check, operator_spectrum, spectral_decompose)
from .structure import (PierceDecomposition, StrDecomposition, StrElement,
                        as_str_element, central_projections, go_decompose,
                        is_automorphism, is_central, is_derivation, lie_split,
                        pierce_decompose, s_op, str_adjoint, str_decompose,
                        str_lie_dimension, str_lie_residual, str_residual,
                        u_positive_decompose, u_spectrum_split)
from .verify import CheckRecord, VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "AlgebraDescriptor", "Element", "VOperator", "basis_element",
    "block_join", "block_split", "direct_sum", "element",
    "element_eigenvalues", "from_matrix", "herm_complex", "identity_op",
    "inverse", "is_invertible", "jb_norm", "jordan_product", "L_op",
    "op_from_matrix_map", "op_inverse", "spin_element", "spin_factor",
    "spin_parts", "sym_real", "to_matrix", "trace_form", "U_bilinear",
    "U_op", "unit", "zero",
    "cone_retraction", "in_closure", "in_cone", "order_leq",
    "order_unit_norm", "preserves_cone", "transport",
    "default_tol", "resolve_tol",
    "AlgebraMismatch", "CentralityViolation", "DomainViolation",
    "Inconsistent", "InconsistentSolve", "JordanConeError", "LiftFailure",
    "NotAutomorphism", "NotConePreserving", "NotDerivation", "NotIdempotent",
    "NotInCone", "NotInLieAlgebra", "NotInStr", "NotInvertible",
    "OutOfNeighborhood", "ParseError", "SingularMatrix", "SingularOperator",
    "UndecidableWitness", "UxNotPositive",
    "Fixture", "parse_algebra_label", "parse_fixture", "serialize_fixture",
    "AutComponent", "AutLift", "ImplementingMap", "StrComponent",
    "aut_component", "congruence_op", "derivation_to_skew", "j_op",
    "k_complex", "lift_automorphism", "phase_normalize",
    "recover_implementer", "skew_traceless_basis", "str_as_lr",
    "str_two_components",
    "HomotopeAlgebra", "homotope", "homotope_product", "isotope_inverse",
    "isotope_isomorphic", "isotope_spectrum",
    "random_automorphism", "random_cone_element", "random_derivation",
    "random_element", "random_indefinite", "random_invertible", "rng_for",
    "FUNCTION_TAGS", "SpectralData", "apply_function", "hull_check",
    "operator_spectrum", "spectral_decompose",
    "PierceDecomposition", "StrDecomposition", "StrElement",
    "as_str_element", "central_projections", "go_decompose",
    "is_automorphism", "is_central", "is_derivation", "lie_split",
    "pierce_decompose", "s_op", "str_adjoint", "str_decompose",
    "str_lie_dimension", "str_lie_residual", "str_residual",
    "u_positive_decompose", "u_spectrum_split",
    "CheckRecord", "VerificationReport", "run_suite",
    "__version__",
]
