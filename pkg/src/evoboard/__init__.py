"""Evolutionary search for entertaining two-player board games.

The package evolves 50-gene rule chromosomes inside a generalized
chess/checkers space, scores candidates with four playout-derived
entertainment metrics, and exposes the evolved games for human play and
rating through a FastAPI service.
"""

from .genome import (
    CaptureStyle,
    Chromosome,
    InvalidChromosomeError,
    Movement,
    PieceRules,
    RuleSet,
    StepSize,
    decode,
    encode,
    mutate,
    random_chromosome,
    validate,
)
from .engine import (
    GameState,
    GameStatus,
    MatchRecord,
    Move,
    apply_move,
    game_status,
    initial_state,
    legal_moves,
    playout,
)
from .metrics import MetricsVector, evaluate_chromosome, rank_population
from .evolve import Archive, EvolutionConfig, fitness_difference, run_evolution

__version__ = "0.1.0"

__all__ = [
    "Archive",
    "CaptureStyle",
    "Chromosome",
    "EvolutionConfig",
    "GameState",
    "GameStatus",
    "InvalidChromosomeError",
    "MatchRecord",
    "MetricsVector",
    "Move",
    "Movement",
    "PieceRules",
    "RuleSet",
    "StepSize",
    "apply_move",
    "decode",
    "encode",
    "evaluate_chromosome",
    "fitness_difference",
    "game_status",
    "initial_state",
    "legal_moves",
    "mutate",
    "playout",
    "random_chromosome",
    "rank_population",
    "run_evolution",
    "validate",
]
