"""Forward and inverse moment problems for projected polytope spline measures."""

from .cones import (
    ConeDecision,
    PositivityResult,
    RealizabilityResult,
    bm_obstruction,
    fixed_node_inequalities,
    polygon_realizable,
    reconstructed_positivity,
    spline_cone_membership,
)
from .directional import (
    AtomicMeasure,
    DirectionalDataset,
    MomentTensorSet,
    basic_compatibility,
    compat_codimension,
    directional_moment,
    match_two_projections,
    rank_bound,
    veronese_compatibility,
)
from .errors import (
    AtomicMeasureError,
    ComplexRoots,
    DegenerateProjection,
    DegreeDrop,
    DependentDirections,
    KernelDimensionError,
    MultipleRoots,
    NegativeDensity,
    NoAnnihilator,
    NotConcave,
    OriginNotInK,
    PronyError,
    SingularSystem,
    SizeLimit,
    WindowTooShort,
)
from .estimator import PronyReconstructor
from .forward import (
    MomentVector,
    NormalizedSequence,
    check_recurrence,
    forward_moments,
    minimal_annihilator,
    normalize,
    rational_form,
)
from .inverse import (
    ReconstructionResult,
    amplitude_matrix,
    det_amplitude_closed_form,
    hankel_matrix,
    kernel_polynomial,
    reconstruct,
    solve_amplitudes,
)
from .measures import (
    BSplineDensity,
    KnotSet,
    PiecewiseLinearDensity,
    Polygon,
    Simplex,
    SplineMeasure,
    bspline_eval,
    density_csv,
    measure_density_eval,
    numeric_moment,
    polygon_pushforward,
    product_body,
    simplex_pushforward,
)
from .symmetric import (
    Polynomial,
    complete_homogeneous,
    elementary_symmetric,
    poly_from_roots,
    real_roots,
)
from .variety import (
    MembershipResult,
    VarietyParams,
    membership,
    variety_hankel,
    variety_invariants,
)

__version__ = "0.1.0"
