"""Exact and simulated analysis of the CHSH inequality.

Subpackages by concern:

    trig_model    the two-photon pair law and angle conventions
    quasiprob     the 16x16 marginal-constraint system and its solutions
    inequalities  first-member evaluators and grid scans
    pathmodel     route-aware joint law and the bounded combination
    montecarlo    the seeded sampling experiment and both estimators
    cli           command-line front end (solve / scan / simulate / verify)
"""

from .errors import (
    ChshLabError,
    InconsistentSystemError,
    InvalidInputError,
    UndefinedEstimateError,
)
from .trig_model import (
    AngleSet,
    PairDistribution,
    pair_distribution,
    pair_expectation,
    pair_probability,
    single_marginal,
)

__version__ = "0.1.0"

__all__ = [
    "AngleSet",
    "ChshLabError",
    "InconsistentSystemError",
    "InvalidInputError",
    "PairDistribution",
    "UndefinedEstimateError",
    "__version__",
    "pair_distribution",
    "pair_expectation",
    "pair_probability",
    "single_marginal",
]
