from .halfplane import (
    InverseReport,
    MatrixPoint,
    classify,
    halfplane_inverse_check,
    imaginary_part,
    triangular_inverse_check,
)
from .subordination import (
    SubordinationResult,
    compressed_resolvent_blocks,
    compressed_resolvent_samples,
    matricial_F,
    matricial_from_spectrum,
    matricial_Phi_triangular,
)
