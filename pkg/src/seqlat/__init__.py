"""seqlat: desk-scale numerics for Banach sequence lattices.

Concrete norms (l_p, c_0, Lorentz, Orlicz, Musielak-Orlicz), optimal
upper/lower sequence-space functionals over a host lattice, empirical
decomposability and estimate constants, K-functionals on concrete couples,
and an orbit-operator constructor for the finite (l_1^n, l_inf^n) couple.
"""

from .config import RunConfig
from .decomp import (
    DecompReport,
    EstimateReport,
    IndexReport,
    decomposability_constant,
    estimate_constant,
    estimate_product_infimum,
    grobler_dodds,
    multiplicator_check,
)
from .errors import (
    CapExceededError,
    Delta2ViolationError,
    DivergenceError,
    DomainOverflowError,
    InvalidSpecError,
    MajorizationError,
    SeqlatError,
    TruncationWarning,
    UnsupportedCoupleError,
    UnsupportedHostError,
)
from .interpolation import (
    CoupleSpec,
    KCurve,
    k_curve,
    k_functional,
    k_ratio_test,
    orbit_operator,
    partial_sum_majorization,
    validate_orbit_operator,
)
from .norms import (
    function_norm,
    host_norm,
    lorentz_norm,
    lp_norm,
    luxemburg_norm,
    musielak_norm,
    orlicz_sequence_norm,
    seq_norm,
    weighted_lp_norm,
)
from .optimal import (
    DisjointFamily,
    OptimConfig,
    OptimalNormResult,
    disjoint_infimum,
    lower_sequence_norm,
    musielak_intersection_norm,
    orlicz_disjoint_reduction,
    upper_fundamental_sandwich,
    upper_sequence_norm,
)
from .orlicz import (
    Delta2Report,
    DilationProfile,
    OrliczFunction,
    delta2_constant,
    dilation_function,
    evaluate,
    fundamental_function,
    inverse,
    power,
    power_log,
    tabulated,
    young_conjugate,
)
from .rearrangement import (
    SeqVector,
    StepFunction,
    decreasing_rearrangement,
    distribution_function,
    equimeasurable,
    rearrangement_partial_integral,
)
from .spaces import BetaSequence, LatticeSpec
from .verify import run_verification_suite

__version__ = "0.1.0"
