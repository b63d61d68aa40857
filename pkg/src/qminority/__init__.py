"""Four-player quantum Minority game under memoryful decoherence."""

from .linalg import (
    ValidationReport,
    apply_kraus,
    completeness_residual,
    conjugate,
    pauli,
    tensor,
    validate_density,
)
from .channels import (
    KINDS,
    PAULI_KINDS,
    ChannelSpec,
    KrausSet,
    ad_correlated_kraus,
    ad_uncorrelated_kraus,
    build_channel,
    pauli_memory_kraus,
    pauli_prob_vector,
    verify_completeness,
)
from .game import (
    CurvePoint,
    GameConfig,
    GameResult,
    StrategyTriple,
    best_response_search,
    entangler,
    minority_payoff,
    ne_strategy,
    payoff_curve,
    run_game,
    strategy_unitary,
)
from .formulas import (
    ComparisonPoint,
    DiscrepancyReport,
    OverlapPoint,
    OverlapReport,
    compare,
    formula_payoff,
    overlap_check,
)

__version__ = "0.1.0"

__all__ = [
    "ValidationReport", "apply_kraus", "completeness_residual", "conjugate",
    "pauli", "tensor", "validate_density",
    "KINDS", "PAULI_KINDS", "ChannelSpec", "KrausSet", "ad_correlated_kraus",
    "ad_uncorrelated_kraus", "build_channel", "pauli_memory_kraus",
    "pauli_prob_vector", "verify_completeness",
    "CurvePoint", "GameConfig", "GameResult", "StrategyTriple",
    "best_response_search", "entangler", "minority_payoff", "ne_strategy",
    "payoff_curve", "run_game", "strategy_unitary",
    "ComparisonPoint", "DiscrepancyReport", "OverlapPoint", "OverlapReport",
    "compare", "formula_payoff", "overlap_check",
]
