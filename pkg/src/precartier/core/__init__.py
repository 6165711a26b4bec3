"""Scalars, bialgebras, tensor legs and exact linear algebra."""

from .bialgebra import (
    FinBialgebra,
    InvalidBialgebra,
    MissingAntipode,
    StructureError,
    format_combination,
    trivial_bialgebra,
    validate_bialgebra,
)
from .linalg import LinearMap, SolutionSpace, nullspace
from .report import AxiomReport, Verdict
from .scalars import QQ, FieldSpec, RatFunc, ScalarParseError, TruncPoly, make_field, rational_functions, truncated
from .tensors import (
    MultiForm,
    NotConvInvertible,
    NotInvertible,
    OrderMismatch,
    TensorElement,
    apply_antipode_leg,
    apply_coproduct_leg,
    apply_counit_leg,
    convolution_invert,
    convolution_mul,
    counit_form,
    element,
    flip_op,
    form,
    form_leg_embed,
    invert_in_tensor_algebra,
    kron,
    leg_embed,
    multiply_legs,
    one,
    tensor_mul,
)
