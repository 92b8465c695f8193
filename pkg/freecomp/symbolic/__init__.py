from .scalars import CentralScalar, GaussianRational, I, format_rational, gaussian, parse_gaussian, parse_rational
from .poly import Generator, GeneratorKind, NCPoly, projection, reduce_word, variable, words_up_to
from .tensor import TensorPoly
from .derivation import (
    FreeDifferenceQuotient,
    check_coassociativity,
    check_corepresentation,
    check_leibniz,
    check_star_compatibility,
    corepresentation_is_exact,
    fdq,
    fdq_iterated,
    kernel_is_constant,
    truncated_resolvent,
)
from .compression import CompressionParams, check_coalgebra_morphism, embed, psi_expand
from .norms import check_series_norm_inequality, norm_R_upper, projective_norm_upper
