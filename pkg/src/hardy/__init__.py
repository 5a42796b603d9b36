"""Toeplitz and Hankel operators between Hardy-type spaces on the unit circle.

Desk-scale numerical realizations of the rearrangement-invariant space
calculus (Lebesgue / Lorentz / Orlicz / bounded), Riesz projection and outer
functions, truncated Toeplitz/Hankel operators, and verification of the
two-sided multiplier and Nehari-distance sandwiches plus the noncompactness
lower bound.
"""

from .analytic import (
    AnalyticWitness,
    FactorizationError,
    analytic_factorize,
    conjugate_function,
    flip,
    outer_function,
    riesz_norm_estimate,
    riesz_project,
)
from .circle import (
    FourierSeries,
    GridContext,
    GridFunction,
    analyze,
    fejer_smooth,
    inner_product,
    make_grid,
    pointwise_product,
    synthesize,
)
from .compactness import (
    SeparationCertificate,
    inclusion_constant,
    noncompactness_bound,
    separated_sequence,
)
from .nehari import (
    DistanceResult,
    NehariReport,
    distance_to_antianalytic,
    hankel_norm_l2,
    nehari_check,
)
from .operators import (
    BrownHalmosReport,
    OperatorTruncation,
    PatternReport,
    SymbolOperator,
    apply_hankel,
    apply_toeplitz,
    brown_halmos_check,
    hankel_matrix,
    operator_norm_estimate,
    pattern_check,
    symbol_recovery,
    toeplitz_matrix,
)
from .orlicz import (
    FactorizationCheck,
    OrliczFunction,
    PowerLogOrlicz,
    PowerOrlicz,
    TabulatedOrlicz,
    UnboundedTransformError,
)
from .spaces import (
    BOUNDED,
    BoydEstimate,
    NormEstimate,
    OrliczBisectionError,
    Space,
    SpaceResult,
    boyd_indices,
    boyd_indices_numeric,
    dilate,
    distribution,
    dual_norm_via_polynomials,
    koethe_dual,
    lebesgue,
    legendre_transform,
    lorentz,
    multiplier_norm_variational,
    multiplier_space,
    norm,
    norm_samples,
    orlicz_factorization_check,
    orlicz_space,
    product_norm_variational,
    product_space,
    rearrangement,
    space_identity_suite,
    young_conjugate,
)

__version__ = "0.1.0"
