"""Chu sequence cross-correlation: exact evaluation, closed forms, distributions and set selection."""
from ._kernels import BACKEND
from .chu import (
    ChuSequence,
    CorrelationVector,
    autocorrelation,
    cross_correlation,
    cross_correlation_all_lags,
    generate,
)
from .distribution import (
    MaxCorrDistribution,
    distribution_bruteforce,
    distribution_closed,
    special_case_count,
    verify_uniformity,
)
from .numtheory import Factorization, UnitGroup, divisors, euler_phi, factorize, gcd, unit_group
from .selection import SelectionPlan, admissible_pair, construct_set, max_set_exhaustive, plan, verify_set
from .theory import (
    CrossCorrProfile,
    LagDecomposition,
    magnitude_closed_form,
    magnitude_squared_gsum,
    max_magnitude,
    pair_profile,
)

__version__ = "0.1.0"
