"""Two-qubit entanglement: Wootters concurrence, a rank-2 closed form, and an EF oracle.

>>> from twoqubit import bell_mixture, spectral_concurrence
>>> round(spectral_concurrence(bell_mixture("phi+", "psi-", 0.25)).concurrence, 12)
0.5
"""

from ._kernels import BACKEND
from .errors import (
    BadIndex,
    BadProbability,
    DomainError,
    InvariantViolation,
    NotHermitian,
    NotNormalized,
    NotPSD,
    NumericalError,
    ParseError,
    RankTooHigh,
    SameState,
    TwoQubitError,
)
from .linalg import HermEigenResult, herm_eigen, sqrt_psd
from .measures import (
    Branch,
    ConcurrenceReport,
    Method,
    binary_entropy,
    closed_form_concurrence,
    closed_form_sq,
    complex_concurrence,
    concurrence_bounds,
    corollary_branch,
    corollary_branches,
    entanglement_of_concurrence,
    magic_concurrence,
    polarized_vector,
    pure_concurrence,
    spectral_concurrence,
    spin_flip,
    wootters_lambdas,
    z_of_concurrence,
)
from .oracle import Decomposition, IsometryParams, OracleResult, minimize_ef, wootters_gap
from .states import (
    BellKind,
    DensityMatrix,
    PureState,
    Rank2Decomposition,
    bell_mixture,
    bell_state,
    departure_diag,
    departure_orth,
    eigen_rank2,
    magic_basis_state,
    parse_state,
    random_pure,
    random_rank2,
    to_density,
    werner,
    write_state,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BadIndex",
    "BadProbability",
    "DomainError",
    "InvariantViolation",
    "NotHermitian",
    "NotNormalized",
    "NotPSD",
    "NumericalError",
    "ParseError",
    "RankTooHigh",
    "SameState",
    "TwoQubitError",
    "Branch",
    "ConcurrenceReport",
    "Method",
    "binary_entropy",
    "closed_form_concurrence",
    "closed_form_sq",
    "complex_concurrence",
    "concurrence_bounds",
    "corollary_branch",
    "corollary_branches",
    "entanglement_of_concurrence",
    "magic_concurrence",
    "polarized_vector",
    "pure_concurrence",
    "spectral_concurrence",
    "spin_flip",
    "wootters_lambdas",
    "z_of_concurrence",
    "BellKind",
    "DensityMatrix",
    "PureState",
    "Rank2Decomposition",
    "bell_mixture",
    "bell_state",
    "departure_diag",
    "departure_orth",
    "eigen_rank2",
    "magic_basis_state",
    "parse_state",
    "random_pure",
    "random_rank2",
    "to_density",
    "werner",
    "write_state",
    "HermEigenResult",
    "herm_eigen",
    "sqrt_psd",
    "Decomposition",
    "IsometryParams",
    "OracleResult",
    "minimize_ef",
    "wootters_gap",
]
