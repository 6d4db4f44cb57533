"""Linear secure-degrees-of-freedom toolkit for MIMO wiretap channels
with a cooperative jammer and no eavesdropper CSIT.

Exact rational linear algebra decides decodability and leakage of linear
precoding schemes; closed-form bound curves, Gaussian mutual-information
sweeps and Monte Carlo genericity oracles cross-check each other.
"""

from .bounds import (
    BoundPoint,
    comparison_curves,
    emit_curve,
    general_upper_sdof,
    linear_sum_sdof,
)
from .channel import (
    DEFAULT_GRID_DENOM,
    ChannelRealization,
    LegitimateCsit,
    StackedChannel,
    SystemDims,
    load_realization,
    sample_realization,
    save_realization,
    stack,
)
from .entropy import (
    POWER_GRID_DEFAULT,
    GaussianLinearSystem,
    MISweep,
    dof_slope,
    gaussian_entropy,
    leakage_mi,
    legitimate_mi,
    secrecy_rate_proxy,
)
from .errors import (
    DimensionMismatch,
    InvalidRank,
    InvalidRegime,
    MalformedFile,
    NumericalFailure,
    ResampleLimitExceeded,
    SdofLabError,
    SingularMatrix,
    UnsupportedFormat,
)
from .oracles import (
    SearchResult,
    TrialSummary,
    converse_search,
    full_space_trial,
    least_alignment_trial,
    rank_lemma_trial,
)
from .ratmat import RationalMatrix, block_diag, format_fraction, hconcat, parse_fraction
from .schemes import (
    LinearScheme,
    compose_mac_timeshare,
    construct_wth_scheme,
    load_scheme,
    save_scheme,
)
from .verifier import (
    VerificationReport,
    decodable_dimensions,
    full_space_ratio,
    leakage_dimensions,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "BoundPoint",
    "ChannelRealization",
    "DEFAULT_GRID_DENOM",
    "DimensionMismatch",
    "GaussianLinearSystem",
    "InvalidRank",
    "InvalidRegime",
    "LegitimateCsit",
    "LinearScheme",
    "MISweep",
    "MalformedFile",
    "NumericalFailure",
    "POWER_GRID_DEFAULT",
    "RationalMatrix",
    "ResampleLimitExceeded",
    "SdofLabError",
    "SearchResult",
    "SingularMatrix",
    "StackedChannel",
    "SystemDims",
    "TrialSummary",
    "UnsupportedFormat",
    "VerificationReport",
    "block_diag",
    "comparison_curves",
    "compose_mac_timeshare",
    "construct_wth_scheme",
    "converse_search",
    "decodable_dimensions",
    "dof_slope",
    "emit_curve",
    "format_fraction",
    "full_space_ratio",
    "full_space_trial",
    "gaussian_entropy",
    "general_upper_sdof",
    "hconcat",
    "leakage_dimensions",
    "leakage_mi",
    "least_alignment_trial",
    "legitimate_mi",
    "linear_sum_sdof",
    "load_realization",
    "load_scheme",
    "parse_fraction",
    "rank_lemma_trial",
    "sample_realization",
    "save_realization",
    "save_scheme",
    "secrecy_rate_proxy",
    "stack",
    "verify",
]
