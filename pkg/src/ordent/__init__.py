"""ordent: ordinal-pattern statistics and growth-class-tailored entropies."""

from .patterns import (
    MAX_PATTERN_LENGTH,
    OrdinalPattern,
    PatternCode,
    TimeSeries,
    decode_pattern,
    encode_pattern,
    extract_patterns,
    pattern_of,
    validate_pattern,
)
from .census import (
    CensusCurve,
    PatternDistribution,
    TransitionMatrix,
    census,
    finite_pc_curve,
    forbidden_patterns,
    transition_matrix,
)
from .entropies import (
    CompositionLaw,
    Distribution,
    GroupLogarithm,
    identity_group_log,
    lambert_w0,
    q_exp,
    q_log,
    relative_z,
    renyi,
    shannon,
    tsallis,
    tsallis_group_log,
    two_param_entropy,
    z_ab_entropy,
    z_entropy_general,
)
from .complexity import (
    ComplexityClass,
    GrowthFit,
    RateEstimate,
    classify_growth,
    composition_law_for,
    entropy_rate,
    metric_perm_entropy,
    topological_perm_entropy,
)
from .processgen import (
    ProcessSpec,
    fbm,
    fgn,
    fgn_autocovariance,
    generate,
    logistic,
    noisy_cubic,
    noisy_logistic,
    noisy_skew_tent,
    replace_spec,
    white_noise,
)
from .logistic_exact import (
    OrdinalCellSet,
    arcsine_cdf,
    exact_transition_probs,
    measure_of,
    ordinal_cells,
    preimage_intervals,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_PATTERN_LENGTH",
    "OrdinalPattern",
    "PatternCode",
    "TimeSeries",
    "pattern_of",
    "encode_pattern",
    "decode_pattern",
    "extract_patterns",
    "validate_pattern",
    "PatternDistribution",
    "TransitionMatrix",
    "CensusCurve",
    "census",
    "forbidden_patterns",
    "transition_matrix",
    "finite_pc_curve",
    "Distribution",
    "shannon",
    "renyi",
    "tsallis",
    "two_param_entropy",
    "z_ab_entropy",
    "lambert_w0",
    "q_log",
    "q_exp",
    "GroupLogarithm",
    "identity_group_log",
    "tsallis_group_log",
    "CompositionLaw",
    "z_entropy_general",
    "relative_z",
    "ComplexityClass",
    "GrowthFit",
    "RateEstimate",
    "metric_perm_entropy",
    "topological_perm_entropy",
    "composition_law_for",
    "entropy_rate",
    "classify_growth",
    "ProcessSpec",
    "generate",
    "replace_spec",
    "white_noise",
    "fgn",
    "fbm",
    "fgn_autocovariance",
    "logistic",
    "noisy_logistic",
    "noisy_cubic",
    "noisy_skew_tent",
    "OrdinalCellSet",
    "arcsine_cdf",
    "measure_of",
    "ordinal_cells",
    "exact_transition_probs",
    "preimage_intervals",
]
