"""Forward and inverse spectral solver for -y'' + q(x) y = lam y on (0, pi).

Boundary conditions are y'(0) = -f(lam) y(0) with f rational
Herglotz-Nevanlinna (or Dirichlet), and y'(pi) = b y(pi) with b real or inf
(Dirichlet).  The package computes eigenvalues by Prufer-angle shooting,
evaluates the endpoint Weyl function m(lam) = y'(pi)/y(pi), verifies the
reflection-doubling correspondence, and reconstructs (q, f) from
fixed-index eigenvalue data or from two spectra.
"""

from .errors import (
    AmbiguousCountError,
    BracketingError,
    DataInconsistencyError,
    DomainError,
    InputFormatError,
    IntegrationError,
    SolverError,
)
from .inverse import (
    FixedIndexDataset,
    ModelConfig,
    ReconstructionResult,
    ValidationReport,
    reconstruct_fixed_index,
    reconstruct_two_spectra,
    residual_norm,
    synth_data,
    validate_fixed_index_data,
)
from .model import (
    DIRICHLET,
    LeftBoundary,
    Potential,
    RationalHerglotz,
    SolutionState,
    canonical_state,
    check_right_boundary,
    herglotz_eval,
    herglotz_pair,
    potential_eval,
    symmetric_double,
)
from .shooting import ShootResult, count_eigenvalues_below, endpoint_angle, integrate
from .spectral import (
    CorrespondencePair,
    CorrespondenceReport,
    Spectrum,
    correspondence_check,
    doubled_spectrum,
    eigenvalue,
    m_sample,
    spectrum,
    weyl_m,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousCountError",
    "BracketingError",
    "CorrespondencePair",
    "CorrespondenceReport",
    "DIRICHLET",
    "DataInconsistencyError",
    "DomainError",
    "FixedIndexDataset",
    "InputFormatError",
    "IntegrationError",
    "LeftBoundary",
    "ModelConfig",
    "Potential",
    "RationalHerglotz",
    "ReconstructionResult",
    "ShootResult",
    "SolutionState",
    "SolverError",
    "Spectrum",
    "ValidationReport",
    "canonical_state",
    "check_right_boundary",
    "correspondence_check",
    "count_eigenvalues_below",
    "doubled_spectrum",
    "eigenvalue",
    "endpoint_angle",
    "herglotz_eval",
    "herglotz_pair",
    "integrate",
    "m_sample",
    "potential_eval",
    "reconstruct_fixed_index",
    "reconstruct_two_spectra",
    "residual_norm",
    "spectrum",
    "symmetric_double",
    "synth_data",
    "validate_fixed_index_data",
    "weyl_m",
    "__version__",
]
