"""Exact-arithmetic laboratory for symbolic powers of fat-point ideals."""

__version__ = "0.1.0"

from .fields import (
    DEFAULT_PRIME,
    RECHECK_PRIME,
    FieldError,
    PrimeField,
    RationalField,
    SeedStream,
    field_from_config,
    random_scalar,
    scalar_arith,
)
from .forms import (
    Form,
    FormError,
    SliceBasis,
    divide_form,
    fixed_divisor,
    form_product,
    gcd_forms,
    monomial_basis,
    rref_slice,
)
from .ideals import (
    ContainmentReport,
    IdealContext,
    IdealError,
    MaximalIdeal,
    SchemeIdeal,
    SpanIdeal,
    conditions_matrix,
    contains,
    power,
    product,
    shift_by_M,
    verify_containment_witness,
)
from .invariants import (
    BetaCertificationError,
    GammaBracket,
    alpha,
    beta,
    gamma_bracket,
    hilbert_function,
    minimal_generator_degrees,
    regularity,
)
from .schemes import (
    FatPointScheme,
    ProjectivePoint,
    SchemeError,
    explicit_scheme,
    general_points,
    star_configuration,
)
