from .sampling import (
    GUE_STREAM,
    PROJECTION_STREAM,
    REGULARIZER_STREAM,
    RMTModel,
    XBuilder,
    gue,
    haar_isometry,
    haar_unitary,
    map_samples,
    sample_mean,
    sample_model,
    stream,
    tree_sum,
)
from .envelope import Envelope
