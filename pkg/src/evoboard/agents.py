"""Playing agents used for fitness evaluation and as human opponents.

The random agent shuffles the legal-move queue and, under mandatory capture,
prefers the first capturing move. The minimax agent searches one ply by
default and scores children with a material evaluator: each piece type is
weighted by its movement flexibility (direction count, doubled for sliders)
plus a large bonus for the piece of honor so losing it dominates material.
When every child scores the same (sparse endgames), the agent picks the move
that most closely approaches an opponent piece.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .engine import (
    GameState,
    Move,
    apply_move,
    cell_col,
    cell_row,
    legal_moves,
)
from .genome import Movement, RuleSet, StepSize

HONOR_BONUS = 50.0
MULTI_STEP_FACTOR = 2.0

DIRECTION_COUNT = {
    Movement.DIAG_FWD: 2,
    Movement.DIAG_FWD_BACK: 4,
    Movement.ALL_DIRS: 8,
    Movement.L_SHAPE: 8,
    Movement.STRAIGHT_FWD_BACK: 2,
    Movement.STRAIGHT_FWD: 1,
}


@dataclass(frozen=True)
class EvaluationWeights:
    """Per-type weights for the rule-based board evaluator."""

    per_type: tuple[float, ...]  # indexed by type - 1
    honor_bonus: float = HONOR_BONUS

    @classmethod
    def from_rules(
        cls,
        rules: RuleSet,
        honor_bonus: float = HONOR_BONUS,
        multi_step_factor: float = MULTI_STEP_FACTOR,
    ) -> "EvaluationWeights":
        weights = []
        for t in range(1, 7):
            piece = rules.piece(t)
            w = DIRECTION_COUNT[piece.movement] * (
                multi_step_factor if piece.step == StepSize.MULTIPLE else 1.0
            )
            if rules.piece_of_honor == t:
                w += honor_bonus
            weights.append(w)
        return cls(per_type=tuple(weights), honor_bonus=honor_bonus)

    def of(self, piece_type: int) -> float:
        return self.per_type[piece_type - 1]


def evaluate_board(
    state: GameState,
    rules: RuleSet,
    pov: int,
    weights: Optional[EvaluationWeights] = None,
) -> float:
    """Own weighted material minus the opponent's; antisymmetric in `pov`."""
    w = weights or EvaluationWeights.from_rules(rules)
    score = 0.0
    for pid in range(len(state.piece_cell)):
        if state.piece_cell[pid] < 0:
            continue
        value = w.of(state.piece_type[pid])
        score += value if state.piece_player[pid] == pov else -value
    return score


def random_agent_move(
    state: GameState,
    rules: RuleSet,
    rng: random.Random,
    moves: Optional[Sequence[Move]] = None,
) -> Move:
    """Shuffle the legal moves; under mandatory capture return the first
    capturing move from the shuffled queue, otherwise the queue head."""
    queue = list(legal_moves(state, rules) if moves is None else moves)
    if not queue:
        raise ValueError("no legal moves; check game status before asking")
    rng.shuffle(queue)
    if rules.mandatory_capture:
        for move in queue:
            if move.captures:
                return move
    return queue[0]


def _move_gain(move: Move, state: GameState, weights: EvaluationWeights) -> float:
    """Exact change of the mover's evaluation caused by one move."""
    gain = 0.0
    for cell in move.captures:
        gain += weights.of(abs(state.board_val[cell]))
    mover_type = abs(state.board_val[move.from_cell])
    if move.converts_to is not None and move.converts_to != mover_type:
        gain += weights.of(move.converts_to) - weights.of(mover_type)
    return gain


def _approach_distance(move: Move, state: GameState, side: int) -> int:
    """Chebyshev distance from the moved piece to the nearest opponent piece
    surviving the move; 0 when no opponent piece remains."""
    captured = set(move.captures)
    to_row, to_col = cell_row(move.to_cell), cell_col(move.to_cell)
    best = 0
    found = False
    for cell in state.pieces_of(1 - side):
        if cell in captured:
            continue
        distance = max(abs(cell_row(cell) - to_row), abs(cell_col(cell) - to_col))
        if not found or distance < best:
            best, found = distance, True
    return best


def minimax_agent_move(
    state: GameState,
    rules: RuleSet,
    rng: Optional[random.Random] = None,
    moves: Optional[Sequence[Move]] = None,
    weights: Optional[EvaluationWeights] = None,
    depth: int = 1,
) -> Move:
    """One-ply argmax of the evaluator over the legal moves.

    If every child evaluates equal, fall back to the approach rule: take the
    move minimizing the post-move Chebyshev distance to the nearest opponent
    piece. Remaining ties resolve to the lowest (from, to) cell pair, so the
    agent is fully deterministic and the rng is unused.
    """
    candidates = list(legal_moves(state, rules) if moves is None else moves)
    if not candidates:
        raise ValueError("no legal moves; check game status before asking")
    w = weights or EvaluationWeights.from_rules(rules)
    if depth <= 1:
        scored = [(_move_gain(m, state, w), m) for m in candidates]
    else:
        scored = [
            (_search_value(state, rules, m, w, depth - 1), m) for m in candidates
        ]
    values = [s for s, _ in scored]
    if max(values) == min(values):
        return min(
            candidates,
            key=lambda m: (
                _approach_distance(m, state, state.side_to_move),
                m.from_cell,
                m.to_cell,
                m.path,
            ),
        )
    best = max(values)
    return min(
        (m for s, m in scored if s == best),
        key=lambda m: (m.from_cell, m.to_cell, m.path),
    )


_WIN_VALUE = 1_000_000.0


def _search_value(
    state: GameState, rules: RuleSet, move: Move, w: EvaluationWeights, depth: int
) -> float:
    """Negamax value of `move` for the side making it (depth extra plies)."""
    pov = state.side_to_move
    child = apply_move(state, rules, move, check=False)
    return _negamax(child, rules, w, depth, pov)


def _negamax(
    state: GameState, rules: RuleSet, w: EvaluationWeights, depth: int, pov: int
) -> float:
    if not state.status.ongoing:
        if state.status.kind == "draw":
            return 0.0
        return _WIN_VALUE if state.status.winner == pov else -_WIN_VALUE
    if depth == 0:
        return evaluate_board(state, rules, pov, w)
    replies = legal_moves(state, rules)
    values = [
        _negamax(apply_move(state, rules, m, check=False), rules, w, depth - 1, pov)
        for m in replies
    ]
    return max(values) if state.side_to_move == pov else min(values)


class RandomAgent:
    """Uniform choice among legal moves, capture-first under mandatory capture."""

    name = "random"

    def select_move(self, state, rules, rng, moves=None) -> Move:
        return random_agent_move(state, rules, rng, moves=moves)


class MinimaxAgent:
    """Rule-based evaluator searched to a fixed depth (contract default 1)."""

    name = "minimax"

    def __init__(self, depth: int = 1, weights: Optional[EvaluationWeights] = None):
        self.depth = depth
        self.weights = weights

    def select_move(self, state, rules, rng=None, moves=None) -> Move:
        return minimax_agent_move(
            state, rules, rng, moves=moves, weights=self.weights, depth=self.depth
        )
