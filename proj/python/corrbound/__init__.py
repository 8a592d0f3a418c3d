"""Security bounds for linear TRNG correctors Y = G*X over GF(2).

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (  # noqa: F401
    BiasModel,
    DeltaGrid,
    ExactDistribution,
    FrontierPoint,
    GeneratorMatrix,
    RandomCodeParams,
    WeightDistribution,
    DEFAULT_ENUMERATION_LIMIT,
    Error,
    ParseError,
    DimensionMismatch,
    ValidationError,
    RankTooLarge,
    InvalidParams,
    EmptyCode,
    RankDeficient,
    TargetUnreachable,
    InputTooLarge,
    NotRankDeficient,
    EmptyCorpus,
    InternalCheckError,
    check_rank_deficiency_claim,
    chebyshev_tail,
    enumerate_rowspan,
    eval_w,
    eval_w_minus_1_log2,
    exact_distribution_direct,
    exact_distribution_fourier,
    exact_norms,
    expected_l2_sq,
    l1_bounds,
    l2_distance,
    linf_norm,
    max_bias_for_security,
    monte_carlo_l2_sq,
    pareto_frontier,
    parse_weights,
    prior_bounds,
    rank,
    reed_muller_generator,
    report,
    sample_generator,
    scan_corpus,
    security_bits_from_log2,
    variance_bound_l2_sq,
    weights_from_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
