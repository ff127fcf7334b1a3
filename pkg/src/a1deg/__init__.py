"""Exact A1-degrees of univariate polynomial maps as Grothendieck-Witt classes."""

from .degree import (
    Bezoutian,
    ClosedPoint,
    bezoutian,
    block_basis,
    block_basis_form,
    closed_point,
    global_degree,
    local_degree,
    local_degree_rational,
    local_form_rational,
)
from .errors import A1DegError, ConfigError
from .fields import (
    Extension,
    FieldElement,
    PrimeField,
    RationalFunctionField,
    Rationals,
    char,
    degree_over_base,
    field_make,
    is_square,
    square_class_rep,
)
from .forms import (
    GWClass,
    SymForm,
    Verdict,
    block_hankel_diagonalize,
    diagonalize,
    gw_equal,
    hasse_invariant,
    hilbert_symbol,
    hyperbolic_reduce,
    upper_hankel_class,
)
from .parsing import parse_element, parse_field, parse_poly
from .poly import (
    Poly,
    base_change,
    hasse_derivative,
    horner_basis,
    multiplicity_at,
    separability_decompose,
)
from .transfer import (
    ScharlauFunctional,
    cohomological_lift,
    cohomological_transfer,
    geometric_lift,
    geometric_transfer,
    omega0,
    scaled_scharlau_form,
    scaled_trace_form,
    scharlau_apply,
    trace_form,
    verify_transfer_identity,
)

__all__ = [
    "A1DegError",
    "Bezoutian",
    "ClosedPoint",
    "ConfigError",
    "Extension",
    "FieldElement",
    "GWClass",
    "Poly",
    "PrimeField",
    "RationalFunctionField",
    "Rationals",
    "ScharlauFunctional",
    "SymForm",
    "Verdict",
    "base_change",
    "bezoutian",
    "block_basis",
    "block_basis_form",
    "block_hankel_diagonalize",
    "char",
    "closed_point",
    "cohomological_lift",
    "cohomological_transfer",
    "degree_over_base",
    "diagonalize",
    "field_make",
    "geometric_lift",
    "geometric_transfer",
    "global_degree",
    "gw_equal",
    "hasse_derivative",
    "hasse_invariant",
    "hilbert_symbol",
    "horner_basis",
    "hyperbolic_reduce",
    "is_square",
    "local_degree",
    "local_degree_rational",
    "local_form_rational",
    "multiplicity_at",
    "omega0",
    "parse_element",
    "parse_field",
    "parse_poly",
    "scaled_scharlau_form",
    "scaled_trace_form",
    "scharlau_apply",
    "separability_decompose",
    "square_class_rep",
    "trace_form",
    "upper_hankel_class",
    "verify_transfer_identity",
]
