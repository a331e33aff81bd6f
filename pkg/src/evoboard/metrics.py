"""Entertainment metrics over playout batches and rank-based fitness.

A game is evaluated from two batches of n playouts each:

* random vs random, feeding duration, dynamism and usability;
* minimax vs random with colors alternating game by game, feeding
  intelligence (fraction of games the minimax agent wins).

Duration is additionally mapped onto the five-step scale that rewards games
lasting neither too few nor too many plies; that scaled value is what ranking
and the evolutionary promotion rule consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .agents import MinimaxAgent, RandomAgent
from .engine import MatchRecord, playout
from .genome import Chromosome, RuleSet, decode
from .seeding import derive_rng, derive_seed

DEFAULT_PLAYOUTS = 20

# metric order everywhere: the w1..w4 weight order of the combined fitness
METRIC_KEYS = ("duration", "intelligence", "dynamism", "usability")


@dataclass(frozen=True)
class MetricsVector:
    """The four entertainment metrics of one chromosome."""

    duration_raw: float
    duration: float       # scaled to the five-step {0, .2, .5, .8, 1} scale
    intelligence: float
    dynamism: float
    usability: float
    n: int = DEFAULT_PLAYOUTS

    def value(self, key: str) -> float:
        if key not in METRIC_KEYS:
            raise KeyError(f"unknown metric {key!r}")
        return getattr(self, key)

    def to_dict(self) -> dict:
        return {
            "duration_raw": self.duration_raw,
            "duration": self.duration,
            "intelligence": self.intelligence,
            "dynamism": self.dynamism,
            "usability": self.usability,
            "n": self.n,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "MetricsVector":
        return cls(**raw)


def duration(records: Sequence[MatchRecord]) -> float:
    """Mean ply count over the batch."""
    if not records:
        raise ValueError("empty batch")
    return sum(r.plies for r in records) / len(records)


def scale_duration(d: float) -> float:
    """Five-step scaling of the raw duration.

    [0,10] and (90,100] -> 0; (10,20] and (80,90] -> 0.2; (20,30] and
    (70,80] -> 0.5; (30,40] and (60,70] -> 0.8; (40,60] -> 1. The half-open
    intervals assign every boundary exactly once.
    """
    if not 0 <= d <= 100:
        raise ValueError(f"duration {d} outside [0, 100]")
    if d <= 10 or d > 90:
        return 0.0
    if d <= 20 or d > 80:
        return 0.2
    if d <= 30 or d > 70:
        return 0.5
    if d <= 40 or d > 60:
        return 0.8
    return 1.0


def _minimax_side(record: MatchRecord) -> str:
    sides = [
        name
        for name, agent in (("one", record.agent_one), ("two", record.agent_two))
        if agent == MinimaxAgent.name
    ]
    if len(sides) != 1:
        raise ValueError(
            f"record needs exactly one minimax side, has agents "
            f"{record.agent_one!r} vs {record.agent_two!r}"
        )
    return sides[0]


def intelligence(records: Sequence[MatchRecord]) -> float:
    """Fraction of games won by the minimax side; draws and losses count 0."""
    if not records:
        raise ValueError("empty batch")
    wins = sum(1 for r in records if r.winner == _minimax_side(r))
    return wins / len(records)


def dynamism(records: Sequence[MatchRecord], m: Optional[int] = None) -> float:
    """Mean over games of the per-piece average of C_i / L_i.

    C_i counts the cells piece i entered; L_i is its life in plies (until
    death, or game end for survivors). `m` defaults to the piece count of
    each record, i.e. the chromosome's template realized by both players.
    """
    if not records:
        raise ValueError("empty batch")
    total = 0.0
    for record in records:
        pieces = m if m is not None else len(record.pieces)
        if pieces < 1:
            raise ValueError("dynamism needs at least one piece")
        acc = 0.0
        for stat in record.pieces:
            life = record.piece_life(stat)
            if life > 0:
                acc += stat.cell_changes / life
        total += acc / pieces
    return total / len(records)


def usability(records: Sequence[MatchRecord], usable_cells: int = 64) -> float:
    """Mean over games of total cell arrivals divided by the usable cells."""
    if not records:
        raise ValueError("empty batch")
    total = sum(sum(r.cell_visits) / usable_cells for r in records)
    return total / len(records)


@dataclass(frozen=True)
class RankFitness:
    """Per-metric ranks within one population plus the combined fitness."""

    ranks: tuple[int, int, int, int]  # duration, intelligence, dynamism, usability
    combined: float

    def rank(self, key: str) -> int:
        return self.ranks[METRIC_KEYS.index(key)]


def rank_population(
    vectors: Sequence[MetricsVector],
    weights: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0),
) -> list[RankFitness]:
    """Rank each metric independently, best getting rank P, and combine.

    Ties keep population order (stable sort), so ranks are always a
    permutation of 1..P per metric. The scaled duration is the duration axis.
    """
    population = len(vectors)
    if population < 1:
        raise ValueError("empty population")
    ranks = [[0] * 4 for _ in range(population)]
    for axis, key in enumerate(METRIC_KEYS):
        order = sorted(range(population), key=lambda i: -vectors[i].value(key))
        for position, index in enumerate(order):
            ranks[index][axis] = population - position
    return [
        RankFitness(
            ranks=tuple(rank_row),
            combined=sum(w * r for w, r in zip(weights, rank_row)),
        )
        for rank_row in ranks
    ]


@dataclass(frozen=True)
class Evaluation:
    """A chromosome's metrics plus the raw records they were computed from."""

    metrics: MetricsVector
    random_records: tuple[MatchRecord, ...]
    versus_records: tuple[MatchRecord, ...]


def evaluate_ruleset(
    rules: RuleSet,
    seed: int,
    n: int = DEFAULT_PLAYOUTS,
    genes: Optional[Sequence[int]] = None,
    minimax_depth: int = 1,
) -> Evaluation:
    """Run both playout batches and assemble the metrics vector."""
    random_records = []
    for k in range(n):
        rng = derive_rng(seed, "random", k)
        random_records.append(
            playout(
                rules, RandomAgent(), RandomAgent(), rng,
                genes=genes, seed=derive_seed(seed, "random", k),
            )
        )
    versus_records = []
    minimax = MinimaxAgent(depth=minimax_depth)
    for k in range(n):
        rng = derive_rng(seed, "versus", k)
        # alternate colors so first-move advantage cancels out
        agents = (minimax, RandomAgent()) if k % 2 == 0 else (RandomAgent(), minimax)
        versus_records.append(
            playout(
                rules, agents[0], agents[1], rng,
                genes=genes, seed=derive_seed(seed, "versus", k),
            )
        )
    d = duration(random_records)
    vector = MetricsVector(
        duration_raw=d,
        duration=scale_duration(d),
        intelligence=intelligence(versus_records),
        dynamism=dynamism(random_records),
        usability=usability(random_records),
        n=n,
    )
    return Evaluation(
        metrics=vector,
        random_records=tuple(random_records),
        versus_records=tuple(versus_records),
    )


def evaluate_chromosome(
    chromosome: Chromosome,
    seed: int,
    n: int = DEFAULT_PLAYOUTS,
    minimax_depth: int = 1,
) -> Evaluation:
    return evaluate_ruleset(
        decode(chromosome), seed, n=n, genes=chromosome.genes,
        minimax_depth=minimax_depth,
    )


def format_metrics_line(
    label: str, vector: MetricsVector, fitness: Optional[RankFitness] = None
) -> str:
    """One report line: raw and scaled duration, I, Dyn, U, ranks, FF."""
    line = (
        f"{label}  D={vector.duration_raw:.2f} scaled={vector.duration:.1f} "
        f"I={vector.intelligence:.2f} Dyn={vector.dynamism:.4f} "
        f"U={vector.usability:.4f} n={vector.n}"
    )
    if fitness is not None:
        ranks = ",".join(str(r) for r in fitness.ranks)
        line += f" ranks=[{ranks}] FF={fitness.combined:.1f}"
    return line
