"""Exact-arithmetic kernel for Drinfeld-type twist quantization of Lie
superalgebras, with order-by-order verification of every Hopf-superalgebra
and Yang-Baxter identity of the construction.
"""

__version__ = "0.1.0"

from .errors import (ConfigurationError, DegreeCapExceeded, EvennessViolation,
                     InvalidTwist, KernelError, NotInvertible, SchemaError,
                     UInverseMismatch)
from .scalar import DEFAULT_TRUNCATION, HSeries, parse_rational
from .liesuper import (Cobracket, LieSuperalgebra, RMatrix, check_cybe,
                       check_gcybe_invariance, coboundary_cobracket,
                       schouten_bracket, validate_cobracket,
                       validate_superalgebra)
from .enveloping import (PBWMonomial, UEAElement, normalize_word,
                         pbw_normalize)
from .tensor import TensorElement, coproduct0, outer
from .twist import (Twist, check_cocycle, check_counit_normalization,
                    check_hat_twist, check_right_cocycle, compute_R,
                    compute_u, gauge_transform, right_from_left,
                    twisted_antipode, twisted_coproduct,
                    verify_gauge_equivalence, verify_quasitriangular)
from .rep import (GradedMatrix, GradedSpace, Representation, braid_matrix,
                  check_super_qybe, matrix_R, qybe_components, qybe_embedded,
                  super_permutation, validate_representation)
from .report import Report, ValidationReport

__all__ = [
    "ConfigurationError", "DegreeCapExceeded", "EvennessViolation",
    "InvalidTwist", "KernelError", "NotInvertible", "SchemaError",
    "UInverseMismatch",
    "DEFAULT_TRUNCATION", "HSeries", "parse_rational",
    "Cobracket", "LieSuperalgebra", "RMatrix", "check_cybe",
    "check_gcybe_invariance", "coboundary_cobracket", "schouten_bracket",
    "validate_cobracket", "validate_superalgebra",
    "PBWMonomial", "UEAElement", "normalize_word", "pbw_normalize",
    "TensorElement", "coproduct0", "outer",
    "Twist", "check_cocycle", "check_counit_normalization", "check_hat_twist",
    "check_right_cocycle", "compute_R", "compute_u", "gauge_transform",
    "right_from_left", "twisted_antipode", "twisted_coproduct",
    "verify_gauge_equivalence", "verify_quasitriangular",
    "GradedMatrix", "GradedSpace", "Representation", "braid_matrix",
    "check_super_qybe", "matrix_R", "qybe_components", "qybe_embedded",
    "super_permutation", "validate_representation",
    "Report", "ValidationReport",
]
