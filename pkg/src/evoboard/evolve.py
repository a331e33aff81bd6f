"""1+1 evolutionary strategy over chromosome families with a best-of archive.

Each family holds one parent. Per iteration each parent produces one mutated
child, the child is evaluated, and it replaces the parent only when the
fitness difference (the sum over the four metrics of child/parent value
ratios, with zero guards and each term capped at 2) strictly exceeds 4. The
archive keeps the best two chromosomes ever evaluated per metric and only
ever improves.

Parents keep the metrics measured when they were first evaluated; evaluation
noise is not re-sampled every iteration.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .genome import Chromosome, mutate, random_chromosome
from .metrics import METRIC_KEYS, MetricsVector, evaluate_chromosome, rank_population
from .seeding import derive_rng, derive_seed

PROMOTION_THRESHOLD = 4.0
TERM_CAP = 2.0
ARCHIVE_SLOTS = 2

# slot order of the 8-slot archive (and the game numbering every diversity
# report uses); differs from the w1..w4 weight order of combined fitness
ARCHIVE_ORDER = ("duration", "dynamism", "intelligence", "usability")


@dataclass(frozen=True)
class Family:
    id: int
    parent: Chromosome
    metrics: MetricsVector


def fitness_difference(parent: MetricsVector, child: MetricsVector) -> float:
    """Sum over the four metrics of child/parent, guarded and capped.

    Identical vectors give exactly 4 (each term 1). A zero parent value
    contributes 1 when the child is also zero and the cap value 2 when the
    child improved on zero. The scaled duration is the duration axis.
    """
    total = 0.0
    for key in METRIC_KEYS:
        parent_value = parent.value(key)
        child_value = child.value(key)
        if parent_value == 0:
            term = 1.0 if child_value == 0 else TERM_CAP
        else:
            term = min(TERM_CAP, child_value / parent_value)
        total += term
    return total


@dataclass(frozen=True)
class ArchiveEntry:
    chromosome: Chromosome
    metrics: MetricsVector


class Archive:
    """Best two chromosomes per metric, ever seen; updates are monotone."""

    def __init__(self) -> None:
        self.slots: dict[str, list[ArchiveEntry]] = {key: [] for key in METRIC_KEYS}

    def update(self, chromosome: Chromosome, metrics: MetricsVector) -> bool:
        """Insert where the value strictly beats an incumbent; ties keep the
        incumbent and a chromosome already archived under a metric is not
        inserted twice."""
        changed = False
        entry = ArchiveEntry(chromosome, metrics)
        for key in METRIC_KEYS:
            incumbents = self.slots[key]
            if any(e.chromosome.genes == chromosome.genes for e in incumbents):
                continue
            value = metrics.value(key)
            position = None
            for i in range(len(incumbents)):
                if value > incumbents[i].metrics.value(key):
                    position = i
                    break
            if position is None and len(incumbents) < ARCHIVE_SLOTS:
                position = len(incumbents)
            if position is not None:
                incumbents.insert(position, entry)
                del incumbents[ARCHIVE_SLOTS:]
                changed = True
        return changed

    def best_values(self) -> dict[str, list[float]]:
        return {
            key: [e.metrics.value(key) for e in self.slots[key]]
            for key in METRIC_KEYS
        }

    def entries(self) -> list[tuple[str, int, ArchiveEntry]]:
        """(metric, slot index starting at 1, entry) in archive slot order."""
        out = []
        for key in ARCHIVE_ORDER:
            for i, entry in enumerate(self.slots[key]):
                out.append((key, i + 1, entry))
        return out

    @property
    def full(self) -> bool:
        return all(len(self.slots[key]) == ARCHIVE_SLOTS for key in METRIC_KEYS)

    def to_lines(self) -> list[str]:
        lines = []
        for key, slot, entry in self.entries():
            lines.append(
                json.dumps(
                    {
                        "metric": key,
                        "slot": slot,
                        "chromosome": entry.chromosome.text(),
                        "metrics": entry.metrics.to_dict(),
                    },
                    separators=(",", ":"),
                )
            )
        return lines

    @classmethod
    def from_lines(cls, lines: Sequence[str]) -> "Archive":
        archive = cls()
        for line in lines:
            if not line.strip():
                continue
            raw = json.loads(line)
            archive.slots[raw["metric"]].append(
                ArchiveEntry(
                    chromosome=Chromosome.parse(raw["chromosome"]),
                    metrics=MetricsVector.from_dict(raw["metrics"]),
                )
            )
        return archive

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(self.to_lines()) + "\n")

    @classmethod
    def load(cls, path) -> "Archive":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_lines(fh.readlines())


@dataclass(frozen=True)
class TraceRecord:
    """One family's outcome in one iteration, plus the archive snapshot."""

    iteration: int
    family: int
    promoted: bool
    fitness_difference: Optional[float]
    parent: str                 # chromosome text after the promotion decision
    parent_metrics: MetricsVector
    child: str
    child_metrics: Optional[MetricsVector]
    ff_parent: Optional[float] = None
    ff_child: Optional[float] = None
    archive_best: dict = field(default_factory=dict)
    error: Optional[str] = None

    def to_json(self) -> str:
        payload = {
            "iteration": self.iteration,
            "family": self.family,
            "promoted": self.promoted,
            "fitness_difference": self.fitness_difference,
            "parent": self.parent,
            "parent_metrics": self.parent_metrics.to_dict(),
            "child": self.child,
            "child_metrics": (
                self.child_metrics.to_dict() if self.child_metrics else None
            ),
            "ff_parent": self.ff_parent,
            "ff_child": self.ff_child,
            "archive_best": self.archive_best,
            "error": self.error,
        }
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "TraceRecord":
        raw = json.loads(line)
        return cls(
            iteration=raw["iteration"],
            family=raw["family"],
            promoted=raw["promoted"],
            fitness_difference=raw["fitness_difference"],
            parent=raw["parent"],
            parent_metrics=MetricsVector.from_dict(raw["parent_metrics"]),
            child=raw["child"],
            child_metrics=(
                MetricsVector.from_dict(raw["child_metrics"])
                if raw["child_metrics"]
                else None
            ),
            ff_parent=raw.get("ff_parent"),
            ff_child=raw.get("ff_child"),
            archive_best=raw.get("archive_best", {}),
            error=raw.get("error"),
        )


@dataclass(frozen=True)
class EvolutionConfig:
    seed: int
    families: int = 10
    iterations: int = 100
    playouts: int = 20
    mutation_rate: float = 0.3
    weights: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)
    minimax_depth: int = 1
    threads: int = 1


@dataclass
class EvolutionResult:
    archive: Archive
    trace: list[TraceRecord]
    families: list[Family]


Evaluator = Callable[[Chromosome, int], MetricsVector]


def _default_evaluator(config: EvolutionConfig) -> Evaluator:
    def evaluate(chromosome: Chromosome, seed: int) -> MetricsVector:
        return evaluate_chromosome(
            chromosome, seed, n=config.playouts, minimax_depth=config.minimax_depth
        ).metrics

    return evaluate


def _evaluate_task(args: tuple[tuple[int, ...], int, int, int]) -> MetricsVector:
    genes, seed, n, depth = args
    return evaluate_chromosome(
        Chromosome(genes), seed, n=n, minimax_depth=depth
    ).metrics


def _evaluate_batch(
    jobs: list[tuple[Chromosome, int]],
    config: EvolutionConfig,
    evaluator: Optional[Evaluator],
    pool: Optional[ProcessPoolExecutor],
) -> list[MetricsVector]:
    """Evaluate chromosomes in submission order; parallelism never changes
    results because every job carries its own derived seed."""
    if evaluator is not None:
        return [evaluator(chromosome, seed) for chromosome, seed in jobs]
    if pool is not None:
        tasks = [
            (chromosome.genes, seed, config.playouts, config.minimax_depth)
            for chromosome, seed in jobs
        ]
        return list(pool.map(_evaluate_task, tasks))
    default = _default_evaluator(config)
    return [default(chromosome, seed) for chromosome, seed in jobs]


def family_step(
    family: Family,
    child: Chromosome,
    child_metrics: MetricsVector,
) -> tuple[Family, bool, float]:
    """Apply the promotion rule; returns (next family, promoted, difference).

    The child replaces the parent only when the fitness difference strictly
    exceeds 4; a difference of exactly 4 keeps the parent.
    """
    difference = fitness_difference(family.metrics, child_metrics)
    if difference > PROMOTION_THRESHOLD:
        return Family(family.id, child, child_metrics), True, difference
    return family, False, difference


def run_evolution(
    config: EvolutionConfig,
    evaluator: Optional[Evaluator] = None,
    progress: Optional[Callable[[int, int], None]] = None,
) -> EvolutionResult:
    """Run the full strategy: random init, per-family steps, shared archive.

    Fully reproducible from `config.seed`: mutation and evaluation seeds are
    derived per (iteration, family), and archive updates happen in family
    order at the end of each iteration.
    """
    pool: Optional[ProcessPoolExecutor] = None
    if evaluator is None and config.threads > 1:
        pool = ProcessPoolExecutor(max_workers=config.threads)
    try:
        init_jobs = []
        parents = []
        for fid in range(1, config.families + 1):
            parent = random_chromosome(derive_rng(config.seed, "init", fid))
            parents.append(parent)
            init_jobs.append((parent, derive_seed(config.seed, "eval", 0, fid)))
        init_metrics = _evaluate_batch(init_jobs, config, evaluator, pool)
        archive = Archive()
        families = []
        for fid, parent, vector in zip(range(1, config.families + 1), parents, init_metrics):
            families.append(Family(fid, parent, vector))
            archive.update(parent, vector)

        trace: list[TraceRecord] = []
        for iteration in range(1, config.iterations + 1):
            children = [
                mutate(
                    family.parent,
                    derive_rng(config.seed, "mutate", iteration, family.id),
                    rate=config.mutation_rate,
                )
                for family in families
            ]
            jobs = [
                (child, derive_seed(config.seed, "eval", iteration, family.id))
                for child, family in zip(children, families)
            ]
            errors: list[Optional[str]] = [None] * len(jobs)
            try:
                child_metrics = _evaluate_batch(jobs, config, evaluator, pool)
            except Exception:
                # fall back to one-by-one so a single bad child only skips
                # its own family's iteration
                child_metrics = []
                for index, (child, seed) in enumerate(jobs):
                    try:
                        child_metrics.append(
                            _evaluate_batch([(child, seed)], config, evaluator, pool)[0]
                        )
                    except Exception as exc:  # noqa: BLE001
                        child_metrics.append(None)
                        errors[index] = str(exc)

            # combined rank fitness over parents + children, reporting only
            vectors = [f.metrics for f in families] + [
                m for m in child_metrics if m is not None
            ]
            fitness = rank_population(vectors, weights=config.weights)
            ff_parent = [f.combined for f in fitness[: len(families)]]
            ff_child_iter = iter(fitness[len(families):])

            next_families = []
            for index, family in enumerate(families):
                child = children[index]
                vector = child_metrics[index]
                if vector is None:
                    next_families.append(family)
                    trace.append(
                        TraceRecord(
                            iteration=iteration,
                            family=family.id,
                            promoted=False,
                            fitness_difference=None,
                            parent=family.parent.text(),
                            parent_metrics=family.metrics,
                            child=child.text(),
                            child_metrics=None,
                            ff_parent=ff_parent[index],
                            ff_child=None,
                            archive_best=archive.best_values(),
                            error=errors[index],
                        )
                    )
                    continue
                stepped, promoted, difference = family_step(family, child, vector)
                next_families.append(stepped)
                archive.update(child, vector)
                trace.append(
                    TraceRecord(
                        iteration=iteration,
                        family=family.id,
                        promoted=promoted,
                        fitness_difference=difference,
                        parent=stepped.parent.text(),
                        parent_metrics=stepped.metrics,
                        child=child.text(),
                        child_metrics=vector,
                        ff_parent=ff_parent[index],
                        ff_child=next(ff_child_iter).combined,
                        archive_best=archive.best_values(),
                    )
                )
            families = next_families
            if progress is not None:
                progress(iteration, config.iterations)
        return EvolutionResult(archive=archive, trace=trace, families=families)
    finally:
        if pool is not None:
            pool.shutdown()


def write_trace(path, trace: Sequence[TraceRecord]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in trace:
            fh.write(record.to_json() + "\n")


def read_trace(path) -> list[TraceRecord]:
    with open(path, "r", encoding="utf-8") as fh:
        return [TraceRecord.from_json(line) for line in fh if line.strip()]
