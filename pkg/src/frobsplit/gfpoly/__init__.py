"""Finite-field arithmetic and sparse graded polynomials."""

from .ambient import (
    AMBIENTS,
    P1,
    P2,
    P3,
    P4,
    P1112,
    P1123,
    P1xP1,
    WeightedAmbient,
    get_ambient,
    weighted_projective,
)
from .field import GF, FieldError, embedding
from .poly import (
    DEFAULT_TERM_CAP,
    Poly,
    PolyError,
    ResourceLimitError,
    Ring,
    add,
    binary_power,
    change_ring,
    derivative,
    evaluate,
    exact_divide,
    frobenius_reduce,
    frobenius_scale,
    mul,
    mul_truncated,
    multinomial,
    parse,
    power,
    product,
    random_form,
    ring,
    substitute,
    to_string,
)
from .scan import ScanBudgetError, ScanResult, singular_point_scan

PrimeField = GF
PrimePoly = Poly
