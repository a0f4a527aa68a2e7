"""Exact verification of composition-indexed determinant identities."""

from .compositions import (
    Composition,
    CompositionLookupError,
    Domain,
    ParameterError,
    composition_index,
    count_compositions,
    enumerate_compositions,
    shift_down,
    unit_composition,
)
from .polynomials import (
    ExactDivisionError,
    Polynomial,
    binomial_value,
    counting_binomial,
    falling_factorial,
    l_var,
    poly_binomial,
    poly_to_string,
    x_var,
)
from .matrices import EntryFamily, SymbolicMatrix, build_matrix, build_numeric_matrix
from .determinant import MatrixSizeError, det_bareiss, det_laplace, det_numeric
from .closedforms import (
    FactoredForm,
    TheoremId,
    chu_vandermonde_lhs,
    chu_vandermonde_rhs,
    factorial_product,
    factorial_product_closed,
    kernel_action_expected,
    kernel_vector,
    linear_factor_T,
    rhs,
)
from .verify import (
    SymbolicCapExceeded,
    VerificationReport,
    run_suite,
    verify_kernel,
    verify_lemmas,
    verify_numeric,
    verify_specializations,
    verify_symbolic,
)

__version__ = "0.1.0"

__all__ = [
    "Composition", "CompositionLookupError", "Domain", "ParameterError",
    "composition_index", "count_compositions", "enumerate_compositions",
    "shift_down", "unit_composition",
    "ExactDivisionError", "Polynomial", "binomial_value", "counting_binomial",
    "falling_factorial", "l_var", "poly_binomial", "poly_to_string", "x_var",
    "EntryFamily", "SymbolicMatrix", "build_matrix", "build_numeric_matrix",
    "MatrixSizeError", "det_bareiss", "det_laplace", "det_numeric",
    "FactoredForm", "TheoremId", "chu_vandermonde_lhs", "chu_vandermonde_rhs",
    "factorial_product", "factorial_product_closed", "kernel_action_expected",
    "kernel_vector", "linear_factor_T", "rhs",
    "SymbolicCapExceeded", "VerificationReport", "run_suite", "verify_kernel",
    "verify_lemmas", "verify_numeric", "verify_specializations", "verify_symbolic",
]
