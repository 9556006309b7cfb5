"""Numerical certificates for operator-order inequalities.

The package certifies statements of the form "f(B) is below f(A) plus
an explicit constant" for convex scalar functions lifted to Hermitian
matrices, computes the sharp constants by multistart ascent over unit
vectors, and cross-checks every solver against an independent sampling
oracle.
"""

from .constants import ChordCoefficients, beta, beta_point, chord_coeffs, kantorovich
from .certify import (
    CLASSICAL_STATEMENTS,
    Certificate,
    JENSEN_KINDS,
    OrderViolation,
    SandwichResult,
    certify_jensen,
    certify_order,
    find_order_violation,
    verify_classical,
    verify_sandwich_pointwise,
)
from .errors import (
    BadDimensions,
    BadInterval,
    DimensionMismatch,
    DomainError,
    HypothesisViolated,
    InvalidFunction,
    LoewnerCertError,
    NonPositiveAlpha,
    NotHermitian,
    NotUnitalFamily,
    NotUnitVector,
    ParseError,
    SpectrumOutsideDomain,
)
from .gaps import (
    GapProblem,
    GapResult,
    KINDS,
    build_gap_problem,
    gap_objective,
    solve_bruteforce,
    solve_multistart,
)
from .hermitian import (
    LoewnerCheck,
    SpectralDecomposition,
    apply_spectral,
    calc,
    loewner_leq,
    matrix_from_obj,
    matrix_power,
    matrix_to_obj,
    min_eigenvalue,
    random_dominated_pair,
    random_hermitian,
    random_unitary,
    spectral_decompose,
)
from .maps import (
    Conjugation,
    Diag,
    MapFamily,
    Pinch,
    apply_map,
    check_unital_family,
    family_from_obj,
    family_to_obj,
    identity_family,
    map_from_obj,
    map_to_obj,
    random_unital_family,
)
from .scalarfn import (
    Interval,
    ScalarFunction,
    affine,
    check_gradient_inequality,
    exponential,
    format_function,
    format_interval,
    neglog,
    parse_function,
    parse_interval,
    power,
)
from .fuzz import run_fuzz
from .jsonio import dumps_canonical, format_float, load_json_file, sha256_file

__version__ = "0.1.0"

__all__ = [
    "CLASSICAL_STATEMENTS",
    "Certificate",
    "ChordCoefficients",
    "JENSEN_KINDS",
    "Conjugation",
    "Diag",
    "GapProblem",
    "GapResult",
    "Interval",
    "KINDS",
    "LoewnerCheck",
    "MapFamily",
    "OrderViolation",
    "Pinch",
    "SandwichResult",
    "ScalarFunction",
    "SpectralDecomposition",
    "apply_map",
    "apply_spectral",
    "affine",
    "beta",
    "beta_point",
    "build_gap_problem",
    "calc",
    "certify_jensen",
    "certify_order",
    "check_gradient_inequality",
    "check_unital_family",
    "chord_coeffs",
    "dumps_canonical",
    "exponential",
    "family_from_obj",
    "family_to_obj",
    "find_order_violation",
    "format_float",
    "format_function",
    "format_interval",
    "gap_objective",
    "load_json_file",
    "identity_family",
    "kantorovich",
    "loewner_leq",
    "map_from_obj",
    "map_to_obj",
    "matrix_from_obj",
    "matrix_power",
    "matrix_to_obj",
    "min_eigenvalue",
    "neglog",
    "parse_function",
    "parse_interval",
    "power",
    "random_dominated_pair",
    "random_hermitian",
    "random_unital_family",
    "random_unitary",
    "run_fuzz",
    "sha256_file",
    "solve_bruteforce",
    "solve_multistart",
    "spectral_decompose",
    "verify_classical",
    "verify_sandwich_pointwise",
    # errors
    "LoewnerCertError",
    "BadDimensions",
    "BadInterval",
    "DimensionMismatch",
    "DomainError",
    "HypothesisViolated",
    "InvalidFunction",
    "NonPositiveAlpha",
    "NotHermitian",
    "NotUnitalFamily",
    "NotUnitVector",
    "ParseError",
    "SpectrumOutsideDomain",
]
