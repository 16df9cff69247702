"""GDoF evaluation and TIM-TIN decomposition for K-user interference
channels known only through coarse channel-strength exponents."""

from .decomp import (
    DecompositionResult,
    SearchBudget,
    evaluate_map,
    search,
    split,
    synthesize_scheme,
    time_share,
)
from .evaluator import (
    WeightedVector,
    finite_p_rate,
    finite_p_stream_rates,
    gdof_report,
    logdet_exponent,
    slope_estimate,
    successive_gdof,
    user_gdof,
)
from .model import (
    ChannelMatrix,
    DecompositionMap,
    DimensionMismatch,
    DomainError,
    EmptyVector,
    GDoFReport,
    MapMismatch,
    NonSquare,
    NumericalFailure,
    PositivePowerExponent,
    Scheme,
    Stream,
    UserGdof,
    WeightMismatch,
    ZeroDirectLink,
    format_rational,
    to_fraction,
    validate_channel,
    validate_scheme,
)
from .tim import TimSolution, TimTopology, build_graphs, tim_solve
from .tin import TinSolution, single_level_gdof, tin_feasible, tin_symmetric

__version__ = "0.1.0"
