"""Cauchy and Hilbert tensors: construction, definiteness, spectra, Hadamard products."""
from .definiteness import (
    Definiteness,
    DefinitenessReport,
    MonotonicityReport,
    RowSumProfile,
    classify,
    monotonicity_probe,
    pd_via_row_sums,
    row_sum_profile,
)
from .errors import (
    BudgetExceeded,
    CauchyTensorError,
    DimensionMismatch,
    DuplicateIndex,
    EmptyList,
    EmptySubset,
    IndexOutOfRange,
    NearSingularSum,
    NoConvergence,
    NotPositiveVector,
    OddOrderUnsupported,
    OrderNotTwo,
    PreconditionViolated,
    QuadratureFailure,
    ShapeMismatch,
    ZeroMultisetSum,
)
from .hadamard import hadamard, hadamard_chain
from .spectral import (
    BoundsReport,
    SpectralPair,
    bounds,
    h_eigen_max,
    h_lambda_max_variational,
    h_lambda_min_variational,
    odd_sign_audit,
    z_eigen_search,
    zero_z_exclusion_probe,
)
from .tensor import (
    GeneratingVector,
    SymmetricTensor,
    apply_xm,
    apply_xm1,
    apply_xm2,
    build_cauchy,
    build_hilbert,
    entry,
    hilbert_vector,
    is_hankel_compatible,
    principal_subtensor,
)

__version__ = "0.1.0"
