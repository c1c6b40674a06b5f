"""superweil: exact-arithmetic equivariant cohomology for Lie superalgebras.

Everything is computed over the rationals with degree-truncated models:
super-commutative and tensor Weil models, the quantized model built from a
central extension by a quadratic form, their basic (equivariant)
cohomology, and the degree-by-degree transport realizing a Duflo-type
isomorphism between symmetric and enveloping invariants.
"""

__version__ = "0.1.0"

from .kernels import BACKEND as KERNEL_BACKEND
from .scalars import QQ, RATIONAL_BACKEND, parse_rational, rational_str
from .superlin import (
    GradedMorphism,
    SuperVectorSpace,
    braiding,
    dual_space,
    linear_solve,
    make_space,
    odd_line,
    power,
    tensor,
    tensor_morphism,
    unit_space,
)

__all__ = [
    "QQ",
    "RATIONAL_BACKEND",
    "KERNEL_BACKEND",
    "parse_rational",
    "rational_str",
    "SuperVectorSpace",
    "GradedMorphism",
    "make_space",
    "unit_space",
    "odd_line",
    "tensor",
    "tensor_morphism",
    "braiding",
    "power",
    "dual_space",
    "linear_solve",
    "__version__",
]
