from .measure import Atom, MeasureSpec, SmoothKind, SmoothPart
from .cauchy import HalfPlanePoint, arcsine_cauchy, cauchy_transform, reciprocal_cauchy, semicircle_cauchy
from .closed_forms import (
    bernoulli_semigroup_cauchy,
    bernoulli_subordination,
    semicircle_semigroup_cauchy,
    semicircle_subordination,
)
from .series import LaurentSeries, PowerSeries, cauchy_series, compose_cauchy
from .semigroup import (
    SubordinationPoint,
    analytic_subordination,
    closed_semigroup_cauchy,
    composition_residual,
    compress_moments,
    formal_subordination,
    semigroup_law_residuals,
    semigroup_measure_moments,
    semigroup_transform,
    subordination_point,
)
from .density import DensityEstimate, density_on_grid, stieltjes_density
from .eta import EtaResult, eta_series, proof_radius
