from .partitions import NCPartition, enumerate_nc
from .cumulants import CumulantSequence, cumulants_to_moments, free_additive_convolution, moments_to_cumulants
from .marginals import (
    arcsine_moments,
    atomic_moments,
    bernoulli_moments,
    catalan,
    projection_moments,
    semicircle_moments,
)
from .model import FreenessModel
from .expectation import (
    compressed_conditional_expectation,
    compressed_moments,
    compressed_trace,
    conditional_expectation,
    psi,
)
from .checks import (
    CheckReport,
    CheckResult,
    check_expmorph,
    check_psi_probabilistic,
    conjugate_variable_check,
    markov_check,
    sum_compression_letter,
)
