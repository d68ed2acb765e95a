"""robinlab: numerical laboratory for principal Robin p-Laplacian
eigenvalues, boundary trace constants, and boundary-layer asymptotics on
one-dimensional, radial, and model-layer geometries."""

from .geometry import (
    Ball,
    CurvatureData,
    Domain,
    HalfLine,
    Interval,
    ModelLayer,
    Sector,
    Shell,
    WeightProfile,
    curvature_data,
    domain_from_json,
    domain_to_json,
    radial_weight,
    scaled,
    weight_from_curvatures,
)
from .closedform import (
    aux_inequality_constant,
    extension_expansion_coefficient,
    half_line_eigenvalue,
    half_line_minimizer,
    halfspace_trace_constant,
    leading_asymptote,
    sector_eigenvalue,
    trace_slope_reference,
)
from .quotient import (
    EigenSolution,
    Grid1D,
    ProblemSpec,
    QuotientEvaluator,
    SolverConfig,
    assemble,
    build_layer_grid,
    euler_lagrange_residual,
    halfline_eigenvalue,
    interval_eigenvalue,
    layer_rate,
    minimize,
    model_layer_eigenvalue,
    radial_eigenvalue,
    solve_domain,
)
from .trace import (
    TraceExpansion,
    TraceResult,
    extension_lower_bound,
    trace_constant,
    trace_expansion_slope,
)
from .experiments import (
    ConcentrationReport,
    RateFit,
    SweepResult,
    alpha_sweep,
    concentration_report,
    fit_remainder_rate,
    isoperimetric_compare,
)

__version__ = "0.1.0"
