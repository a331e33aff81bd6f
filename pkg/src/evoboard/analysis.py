"""Post-evolution analysis: diversity selection, survey statistics with an
exact or Monte Carlo p-value, and the learnability experiment harness.

Pairwise game diversity on a metric is the absolute difference of the two
games' values normalized by the metric's maximum over the archive. A game's
diversity count compares it against every other archived game on the metric
under which it itself was archived.

Survey answers are coded per subject: +1 entertaining, -1 not entertaining,
0 otherwise ("signed" coding); the alternative "positive" coding maps yes to
+1 and everything else to 0. The correlation statistic is the mean code, and
its p-value is the probability under a null of independent uniform codes that
the statistic is at least as large.
"""

from __future__ import annotations

import itertools
import statistics
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Optional, Sequence

from .metrics import METRIC_KEYS, MetricsVector
from .neural import CoevolutionConfig, CoevolutionResult, coevolve_learnability
from .genome import RuleSet
from .seeding import derive_rng

DIVERSITY_THRESHOLD = 0.6
ALPHA = 0.17
EXACT_ENUMERATION_LIMIT = 10**6

CODE_BY_ANSWER = {
    "signed": {"yes": 1, "no": -1, "neutral": 0},
    "positive": {"yes": 1, "no": 0, "neutral": 0},
}

# service rating vocabulary maps onto the survey answers
ANSWER_BY_RATING = {"liked": "yes", "disliked": "no", "neutral": "neutral"}


def pair_diversity(
    a: MetricsVector, b: MetricsVector, metric: str, metric_max: float
) -> float:
    """Normalized absolute difference of one metric; 0 when there is no
    spread to normalize by."""
    if metric_max == 0:
        return 0.0
    if metric_max < 0:
        raise ValueError("metric maximum must be non-negative")
    return abs(a.value(metric) - b.value(metric)) / metric_max


def diversity_counts(
    entries: Sequence[tuple[MetricsVector, str]],
    threshold: float = DIVERSITY_THRESHOLD,
) -> list[int]:
    """Count, per archived game, how many others differ by at least the
    threshold on the game's own archived metric.

    `entries` pairs each game's metrics with the metric it was archived
    under. Note this interpretation reproduces the reference counts for most
    but not all games; the residuals are reported as computed, not patched.
    """
    maxima = {
        key: max((vector.value(key) for vector, _ in entries), default=0.0)
        for key in METRIC_KEYS
    }
    counts = []
    for i, (vector, metric) in enumerate(entries):
        count = 0
        for j, (other_vector, _) in enumerate(entries):
            if i == j:
                continue
            if pair_diversity(vector, other_vector, metric, maxima[metric]) >= threshold:
                count += 1
        counts.append(count)
    return counts


def select_diverse(counts: Sequence[int], k: int = 3) -> list[int]:
    """1-based indices of the k games with the highest diversity count; ties
    go to the lower game number."""
    order = sorted(range(len(counts)), key=lambda i: (-counts[i], i))
    return sorted(i + 1 for i in order[:k])


def select_diverse_games(
    entries: Sequence[tuple[MetricsVector, str]],
    k: int = 3,
    threshold: float = DIVERSITY_THRESHOLD,
) -> list[int]:
    """Chain diversity_counts and select_diverse over archive entries."""
    return select_diverse(diversity_counts(entries, threshold), k)


def encode_answers(answers: Sequence[str], coding: str = "signed") -> list[int]:
    """Map yes/no/neutral answers onto survey codes."""
    table = CODE_BY_ANSWER[coding]
    return [table[a] for a in answers]


def correlation_c(codes: Sequence[int]) -> float:
    """Mean of the per-subject codes, bounded to [-1, 1]."""
    if not codes:
        raise ValueError("empty sample")
    bad = [z for z in codes if z not in (-1, 0, 1)]
    if bad:
        raise ValueError(f"codes restricted to -1/0/+1, got {bad}")
    return sum(codes) / len(codes)


class PValueResult(NamedTuple):
    p: float
    method: str            # "exact" | "monte-carlo"
    trials: Optional[int]  # None for exact enumeration


def p_value(
    c: float,
    n: int,
    codes: Sequence[int] = (-1, 0, 1),
    trials: int = 200_000,
    seed: int = 0,
    exact_limit: int = EXACT_ENUMERATION_LIMIT,
) -> PValueResult:
    """P(C >= c) under a null of n independent uniform draws from `codes`.

    Enumerates all outcomes exactly while len(codes)**n fits the limit,
    otherwise falls back to seeded Monte Carlo with the trial count reported.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    threshold = c * n - 1e-9
    if len(codes) ** n <= exact_limit:
        hits = sum(
            1
            for outcome in itertools.product(codes, repeat=n)
            if sum(outcome) >= threshold
        )
        return PValueResult(hits / len(codes) ** n, "exact", None)
    rng = derive_rng(seed, "p-value", n)
    hits = 0
    for _ in range(trials):
        total = sum(rng.choice(codes) for _ in range(n))
        if total >= threshold:
            hits += 1
    return PValueResult(hits / trials, "monte-carlo", trials)


def reject_null(p: float, alpha: float = ALPHA) -> bool:
    return p < alpha


# ---------------------------------------------------------------------------
# Ratings-file ingestion (the service's flat store) and per-game statistics


class RatingRecord(NamedTuple):
    subject: str
    game: str
    run: int
    code: str  # liked | disliked | neutral


def parse_rating_line(line: str) -> RatingRecord:
    parts = line.rstrip("\n").split("\t")
    if len(parts) < 4:
        raise ValueError(f"malformed rating line: {line!r}")
    return RatingRecord(parts[0], parts[1], int(parts[2]), parts[3])


def read_ratings(path) -> list[RatingRecord]:
    with open(path, "r", encoding="utf-8") as fh:
        return [parse_rating_line(line) for line in fh if line.strip()]


@dataclass(frozen=True)
class GameSurveyRow:
    game: str
    n: int
    c: float
    p: float
    method: str
    reject: bool


def survey_statistics(
    ratings: Sequence[RatingRecord],
    coding: str = "signed",
    alpha: float = ALPHA,
    trials: int = 200_000,
    seed: int = 0,
) -> list[GameSurveyRow]:
    """Correlation and p-value per game; every rating record is one sample."""
    by_game: dict[str, list[str]] = {}
    for record in ratings:
        by_game.setdefault(record.game, []).append(ANSWER_BY_RATING[record.code])
    rows = []
    for game in sorted(by_game):
        codes = encode_answers(by_game[game], coding)
        c = correlation_c(codes)
        result = p_value(c, len(codes), trials=trials, seed=seed)
        rows.append(
            GameSurveyRow(
                game=game,
                n=len(codes),
                c=c,
                p=result.p,
                method=result.method,
                reject=reject_null(result.p, alpha),
            )
        )
    return rows


# ---------------------------------------------------------------------------
# Learnability experiment


@dataclass(frozen=True)
class LearnabilityReport:
    results: dict[str, tuple[CoevolutionResult, ...]]  # per game, one per seed
    medians: dict[str, float]
    capped: dict[str, int]  # runs per game that hit the iteration cap

    def ordinal_holds(self, reference: str) -> bool:
        """True when the reference game's median is strictly below every
        other game's median."""
        ref = self.medians[reference]
        return all(
            ref < median for name, median in self.medians.items() if name != reference
        )


def learnability_experiment(
    games: Mapping[str, RuleSet],
    config: CoevolutionConfig,
    seeds: Sequence[int],
) -> LearnabilityReport:
    """Run coevolution per game with matched config and seeds."""
    results: dict[str, tuple[CoevolutionResult, ...]] = {}
    for name, rules in games.items():
        results[name] = tuple(
            coevolve_learnability(rules, config, seed) for seed in seeds
        )
    medians = {
        name: statistics.median(r.iterations for r in runs)
        for name, runs in results.items()
    }
    capped = {
        name: sum(1 for r in runs if not r.converged) for name, runs in results.items()
    }
    return LearnabilityReport(results=results, medians=medians, capped=capped)
