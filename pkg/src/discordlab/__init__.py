"""Response-based quantum correlation measures for qubit-qudit states."""

from .applications import (
    LocalHamiltonian,
    SpectrumOmega,
    helstrom_error,
    interferometric_power,
    min_distance_over_spectrum,
    quantum_fisher_information,
    trace_discord_of_response,
    worst_case_reading_error,
)
from .errors import (
    ConvergenceFailureError,
    DimensionMismatchError,
    DiscordLabError,
    InvalidProbabilitiesError,
    InvalidSpectrumError,
    NonSquareError,
    NotHermitianError,
    NotPSDError,
    NotPureError,
    NotUnitaryError,
    NotUnitTraceError,
    OptimizerFailureError,
    OutOfRangeError,
    OutOfRegionError,
    UnsupportedDimensionError,
)
from .explorer import (
    REGIONS,
    BoundaryRecord,
    Region,
    classify_region,
    composite_boundary,
    family_d_discord,
    hill_climb,
    observed_crossovers,
    records_to_csv,
    region_c_curve,
    scan,
)
from .linalg import haar_unitary
from .metrics import (
    MetricKind,
    SandwichBounds,
    bures_distance,
    fidelity,
    hellinger_distance,
    sandwich_check,
    trace_distance,
)
from .response import (
    DEFAULT_SETTINGS,
    DiscordResult,
    GeometricDiscordResult,
    LocalUnitaryAngles,
    OptimizerSettings,
    bell_diagonal_discord,
    bell_diagonal_discord_argmin,
    bell_diagonal_root_fidelity,
    discord_of_response,
    entanglement_of_response_pure,
    geometric_discord_batch,
    geometric_discord_bures,
    response_objective,
    werner_discord,
    werner_discord_vs_purity,
    werner_f_roots,
    werner_purity,
)
from .states import (
    BellDiagonalSpectrum,
    DensityMatrix,
    apply_local_unitary,
    bell_diagonal,
    classical_quantum,
    from_dense,
    mq_family_b,
    mq_family_c,
    mq_family_d,
    partial_trace,
    purity,
    random_pure,
    random_state,
    singlet_vector,
    state_from_spec,
    werner,
)

__version__ = "0.1.0"

__all__ = [
    "BellDiagonalSpectrum",
    "BoundaryRecord",
    "ConvergenceFailureError",
    "DEFAULT_SETTINGS",
    "DensityMatrix",
    "DimensionMismatchError",
    "DiscordLabError",
    "DiscordResult",
    "GeometricDiscordResult",
    "InvalidProbabilitiesError",
    "InvalidSpectrumError",
    "LocalHamiltonian",
    "LocalUnitaryAngles",
    "MetricKind",
    "NonSquareError",
    "NotHermitianError",
    "NotPSDError",
    "NotPureError",
    "NotUnitTraceError",
    "NotUnitaryError",
    "OptimizerFailureError",
    "OptimizerSettings",
    "OutOfRangeError",
    "OutOfRegionError",
    "REGIONS",
    "Region",
    "SandwichBounds",
    "SpectrumOmega",
    "UnsupportedDimensionError",
    "apply_local_unitary",
    "bell_diagonal",
    "bell_diagonal_discord",
    "bell_diagonal_discord_argmin",
    "bell_diagonal_root_fidelity",
    "bures_distance",
    "classical_quantum",
    "classify_region",
    "composite_boundary",
    "discord_of_response",
    "entanglement_of_response_pure",
    "family_d_discord",
    "fidelity",
    "from_dense",
    "geometric_discord_batch",
    "geometric_discord_bures",
    "haar_unitary",
    "hellinger_distance",
    "helstrom_error",
    "hill_climb",
    "interferometric_power",
    "min_distance_over_spectrum",
    "mq_family_b",
    "mq_family_c",
    "mq_family_d",
    "observed_crossovers",
    "partial_trace",
    "purity",
    "quantum_fisher_information",
    "random_pure",
    "random_state",
    "records_to_csv",
    "region_c_curve",
    "response_objective",
    "sandwich_check",
    "scan",
    "singlet_vector",
    "state_from_spec",
    "trace_discord_of_response",
    "trace_distance",
    "werner",
    "werner_discord",
    "werner_discord_vs_purity",
    "werner_f_roots",
    "werner_purity",
    "worst_case_reading_error",
]
