"""Growth, certified finite quotients and congruence residual-girth bounds
for finitely generated linear groups over rational function fields."""

from .galois import ExtensionField, FieldElement, PrimeField, extend_field, make_prime_field
from .girth import (
    Certificate,
    ProbeResult,
    certify,
    certify_char_p,
    certify_char_zero,
    constraint_polynomials,
    fit_growth_exponent,
    general_linear_order,
    probe_minimal_quotient,
    verify_injectivity,
)
from .matgroup import LinearGroup, Reduction, enumerate_ball, growth_table, load_group_spec
from .survival import survive_multivariate, survive_univariate

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ExtensionField",
    "FieldElement",
    "LinearGroup",
    "PrimeField",
    "ProbeResult",
    "Reduction",
    "certify",
    "certify_char_p",
    "certify_char_zero",
    "constraint_polynomials",
    "enumerate_ball",
    "extend_field",
    "fit_growth_exponent",
    "general_linear_order",
    "growth_table",
    "load_group_spec",
    "make_prime_field",
    "probe_minimal_quotient",
    "survive_multivariate",
    "survive_univariate",
    "verify_injectivity",
]
