"""Neural board controller and the coevolutionary learnability measure.

The controller is a fully connected 64-91-40-10-1 network with a hyperbolic
tangent at every neuron and parameters bounded to [-2, 2]. The board is fed
as 64 inputs oriented from the controller's point of view (own home rows
first): an own piece of type t becomes +t/6, an opponent piece -t/6, an empty
cell 0.

Learnability of a game is the number of coevolution iterations until the
population's best network beats every other member of its population in a
round-robin. Each pairing is two games with colors swapped; "beats" means
strictly more wins than losses across the pair.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .engine import ONE, GameState, Move, legal_moves, playout
from .genome import RuleSet
from .seeding import derive_seed

LAYER_SIZES = (64, 91, 40, 10, 1)
WEIGHT_BOUND = 2.0
INIT_SCALE = 0.2  # fresh networks start well inside the bound


class AnnController:
    """Feed-forward tanh network over the 64-cell board encoding."""

    def __init__(self, weights: list[np.ndarray], biases: list[np.ndarray]):
        self.weights = weights
        self.biases = biases

    @classmethod
    def random(
        cls, rng: np.random.Generator, scale: float = INIT_SCALE
    ) -> "AnnController":
        weights, biases = [], []
        for fan_in, fan_out in zip(LAYER_SIZES, LAYER_SIZES[1:]):
            weights.append(rng.uniform(-scale, scale, size=(fan_in, fan_out)))
            biases.append(rng.uniform(-scale, scale, size=fan_out))
        return cls(weights, biases)

    def forward(self, inputs: np.ndarray) -> float:
        return float(self.forward_batch(inputs.reshape(1, -1))[0])

    def forward_batch(self, batch: np.ndarray) -> np.ndarray:
        """Evaluate a (k, 64) batch; returns k values in (-1, 1)."""
        activation = batch
        for w, b in zip(self.weights, self.biases):
            activation = np.tanh(activation @ w + b)
        return activation[:, 0]

    def mutated(self, rng: np.random.Generator, sigma: float = 0.1) -> "AnnController":
        weights = [
            np.clip(w + rng.normal(0.0, sigma, size=w.shape), -WEIGHT_BOUND, WEIGHT_BOUND)
            for w in self.weights
        ]
        biases = [
            np.clip(b + rng.normal(0.0, sigma, size=b.shape), -WEIGHT_BOUND, WEIGHT_BOUND)
            for b in self.biases
        ]
        return AnnController(weights, biases)

    def to_flat(self) -> np.ndarray:
        parts = []
        for w, b in zip(self.weights, self.biases):
            parts.append(w.ravel())
            parts.append(b.ravel())
        return np.concatenate(parts)

    @classmethod
    def from_flat(cls, flat: np.ndarray) -> "AnnController":
        weights, biases = [], []
        offset = 0
        for fan_in, fan_out in zip(LAYER_SIZES, LAYER_SIZES[1:]):
            n = fan_in * fan_out
            weights.append(flat[offset : offset + n].reshape(fan_in, fan_out).copy())
            offset += n
            biases.append(flat[offset : offset + fan_out].copy())
            offset += fan_out
        if offset != flat.size:
            raise ValueError(f"expected {offset} parameters, got {flat.size}")
        return cls(weights, biases)

    def save(self, path) -> None:
        """Text dump: layer-size header line, then one parameter per line."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(" ".join(str(s) for s in LAYER_SIZES) + "\n")
            for value in self.to_flat():
                fh.write(repr(float(value)) + "\n")

    @classmethod
    def load(cls, path) -> "AnnController":
        with open(path, "r", encoding="utf-8") as fh:
            header = tuple(int(x) for x in fh.readline().split())
            if header != LAYER_SIZES:
                raise ValueError(f"unsupported layer sizes {header}")
            flat = np.array([float(line) for line in fh if line.strip()])
        return cls.from_flat(flat)


def board_inputs(state: GameState, pov: int) -> np.ndarray:
    """64-input encoding oriented with `pov`'s home rows first."""
    inputs = np.zeros(64)
    board = state.board_val
    sign = 1 if pov == ONE else -1
    for cell in range(64):
        value = board[cell]
        if value:
            index = cell if pov == ONE else 63 - cell
            inputs[index] = (value * sign) / 6.0
    return inputs


def _child_inputs(
    base: np.ndarray, moves: Sequence[Move], state: GameState, pov: int
) -> np.ndarray:
    """Inputs of every one-ply child, built incrementally from the parent's."""
    batch = np.repeat(base.reshape(1, -1), len(moves), axis=0)
    board = state.board_val
    for i, move in enumerate(moves):
        row = batch[i]
        mover_type = abs(board[move.from_cell])
        final_type = move.converts_to or mover_type
        row[move.from_cell if pov == ONE else 63 - move.from_cell] = 0.0
        for cell in move.captures:
            row[cell if pov == ONE else 63 - cell] = 0.0
        row[move.to_cell if pov == ONE else 63 - move.to_cell] = final_type / 6.0
    return batch


class AnnAgent:
    """Argmax of the network over the one-ply children; deterministic."""

    name = "ann"

    def __init__(self, controller: AnnController):
        self.controller = controller

    def select_move(self, state, rules, rng=None, moves=None) -> Move:
        candidates = list(legal_moves(state, rules) if moves is None else moves)
        if not candidates:
            raise ValueError("no legal moves; check game status before asking")
        pov = state.side_to_move
        base = board_inputs(state, pov)
        values = self.controller.forward_batch(
            _child_inputs(base, candidates, state, pov)
        )
        best = values.max()
        return min(
            (m for m, v in zip(candidates, values) if v == best),
            key=lambda m: (m.from_cell, m.to_cell, m.path),
        )


@dataclass(frozen=True)
class CoevolutionConfig:
    population_size: int = 20
    opponents: int = 5           # pairings sampled per individual per iteration
    sigma: float = 0.1           # Gaussian mutation scale
    max_iterations: int = 300
    win_score: float = 1.0
    draw_score: float = 0.0
    loss_score: float = -2.0


@dataclass(frozen=True)
class IterationStats:
    iteration: int
    best_score: float        # selection score of the iteration's best
    mean_score: float
    round_robin_score: float  # best's +1/0/-2 total over the round-robin
    beats_all: bool


@dataclass(frozen=True)
class CoevolutionResult:
    iterations: int
    converged: bool  # False when the iteration cap was reached first
    trace: tuple[IterationStats, ...] = field(default_factory=tuple)


def _duel(first: AnnAgent, second: AnnAgent, rules: RuleSet) -> int:
    """Outcome for `first` of one game as player one: 1 win, 0 draw, -1 loss."""
    record = playout(rules, first, second, random.Random(0))
    if record.winner == "one":
        return 1
    if record.winner == "two":
        return -1
    return 0


def _pair_outcome(a: AnnAgent, b: AnnAgent, rules: RuleSet) -> tuple[int, int]:
    """(wins, losses) for `a` over two games with colors swapped."""
    first = _duel(a, b, rules)
    second = -_duel(b, a, rules)
    wins = (first > 0) + (second > 0)
    losses = (first < 0) + (second < 0)
    return wins, losses


def _pair_score(wins: int, losses: int, config: CoevolutionConfig) -> float:
    draws = 2 - wins - losses
    return (
        wins * config.win_score
        + draws * config.draw_score
        + losses * config.loss_score
    )


def coevolve_learnability(
    rules: RuleSet,
    config: CoevolutionConfig,
    seed: int,
    initial: Optional[Sequence[AnnController]] = None,
) -> CoevolutionResult:
    """Train a network population on the game and report the learning duration.

    Per iteration every individual plays `config.opponents` sampled opponents
    (two games per pairing, colors swapped) and is scored +1/0/-2 per game;
    the top half survives and reproduces by Gaussian mutation. The returned
    iteration count is the first at which the iteration's best individual
    beats all others in a full round-robin; if the cap is hit the cap is
    returned with `converged=False`.
    """
    rng = np.random.default_rng(derive_seed(seed, "coevolution"))
    if initial is not None:
        population = list(initial)
    else:
        population = [
            AnnController.random(rng) for _ in range(config.population_size)
        ]
    size = len(population)
    if size < 2:
        raise ValueError("coevolution needs at least two individuals")
    trace: list[IterationStats] = []
    pair_cache: dict[tuple[int, int], tuple[int, int]] = {}

    for iteration in range(1, config.max_iterations + 1):
        agents = [AnnAgent(c) for c in population]
        pair_cache.clear()

        def pairing(i: int, j: int) -> tuple[int, int]:
            # deterministic games: cache by index pair within the iteration
            key = (i, j) if i < j else (j, i)
            if key not in pair_cache:
                pair_cache[key] = _pair_outcome(agents[key[0]], agents[key[1]], rules)
            wins, losses = pair_cache[key]
            return (wins, losses) if key == (i, j) else (losses, wins)

        scores = [0.0] * size
        for i in range(size):
            others = [j for j in range(size) if j != i]
            count = min(config.opponents, len(others))
            picks = rng.choice(len(others), size=count, replace=False)
            for pick in picks:
                wins, losses = pairing(i, others[int(pick)])
                scores[i] += _pair_score(wins, losses, config)

        best = min(range(size), key=lambda i: (-scores[i], i))
        beats_all = True
        rr_score = 0.0
        for j in range(size):
            if j == best:
                continue
            wins, losses = pairing(best, j)
            rr_score += _pair_score(wins, losses, config)
            if wins <= losses:
                beats_all = False
        trace.append(
            IterationStats(
                iteration=iteration,
                best_score=scores[best],
                mean_score=sum(scores) / size,
                round_robin_score=rr_score,
                beats_all=beats_all,
            )
        )
        if beats_all:
            return CoevolutionResult(iteration, True, tuple(trace))

        order = sorted(range(size), key=lambda i: (-scores[i], i))
        survivors = [population[i] for i in order[: max(1, size // 2)]]
        offspring = [
            survivors[i % len(survivors)].mutated(rng, config.sigma)
            for i in range(size - len(survivors))
        ]
        population = survivors + offspring

    return CoevolutionResult(config.max_iterations, False, tuple(trace))
