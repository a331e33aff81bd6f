"""Genotype of a game: a 50-gene integer chromosome and its decoded rule set.

Gene layout (1-indexed positions):

==========  =======================================  ======
genes       meaning                                  values
==========  =======================================  ======
1..24       placement template, cell k of the three  0..6
            rows nearest player one (0 = empty)
25..30      movement logic of piece types 1..6       1..6
31..36      step size per type (0 single, 1 multi)   0/1
37..42      capture logic (0 step-into, 1 step-over) 0/1
43          piece of honor (0 = none)                0..6
44..49      conversion target per type (0 = none)    0..6
50          mandatory capture flag                   0/1
==========  =======================================  ======

Movement codes: 1 diagonal forward, 2 diagonal forward/backward,
3 all directions, 4 L-shaped, 5 straight forward/backward,
6 straight forward.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterator, Optional, Sequence

GENE_COUNT = 50
PLACEMENT_CELLS = 24
PIECE_TYPES = 6

_PLACEMENT = slice(0, 24)
_MOVEMENT = slice(24, 30)
_STEP = slice(30, 36)
_CAPTURE = slice(36, 42)
_HONOR = 42
_CONVERSION = slice(43, 49)
_MANDATORY = 49

# (low, high) inclusive bounds per gene index.
GENE_BOUNDS: tuple[tuple[int, int], ...] = (
    ((0, 6),) * 24 + ((1, 6),) * 6 + ((0, 1),) * 6 + ((0, 1),) * 6
    + ((0, 6),) + ((0, 6),) * 6 + ((0, 1),)
)

MUTATION_RATE = 0.3


class Movement(IntEnum):
    DIAG_FWD = 1
    DIAG_FWD_BACK = 2
    ALL_DIRS = 3
    L_SHAPE = 4
    STRAIGHT_FWD_BACK = 5
    STRAIGHT_FWD = 6


class StepSize(IntEnum):
    SINGLE = 0
    MULTIPLE = 1


class CaptureStyle(IntEnum):
    STEP_INTO = 0
    STEP_OVER = 1


MOVEMENT_NAMES = {
    Movement.DIAG_FWD: "Diagonal Forward",
    Movement.DIAG_FWD_BACK: "Diagonal Forward & Backward",
    Movement.ALL_DIRS: "All Directions",
    Movement.L_SHAPE: "L shaped",
    Movement.STRAIGHT_FWD_BACK: "Straight Forward & Backward",
    Movement.STRAIGHT_FWD: "Straight Forward",
}


class InvalidChromosomeError(ValueError):
    """Raised when an operation requires a valid chromosome and gets none."""

    def __init__(self, violations: Sequence[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


@dataclass(frozen=True)
class Chromosome:
    """Immutable 50-gene genotype."""

    genes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "genes", tuple(int(g) for g in self.genes))

    def __iter__(self) -> Iterator[int]:
        return iter(self.genes)

    def __len__(self) -> int:
        return len(self.genes)

    def gene(self, position: int) -> int:
        """Gene by 1-indexed position, matching the layout table."""
        return self.genes[position - 1]

    def text(self) -> str:
        """Serialized form: 50 comma-separated integers on one line."""
        return ",".join(str(g) for g in self.genes)

    @classmethod
    def parse(cls, line: str) -> "Chromosome":
        parts = [p for p in line.strip().split(",") if p != ""]
        try:
            genes = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise InvalidChromosomeError([f"non-integer gene: {exc}"]) from None
        if len(genes) != GENE_COUNT:
            raise InvalidChromosomeError(
                [f"expected {GENE_COUNT} genes, got {len(genes)}"]
            )
        return cls(genes)


@dataclass(frozen=True)
class PieceRules:
    """Decoded behavior of one piece type."""

    movement: Movement
    step: StepSize
    capture: CaptureStyle
    conversion: Optional[int]  # target type on reaching the last row


@dataclass(frozen=True)
class RuleSet:
    """Decoded phenotype: everything the engine needs to play a game."""

    placement: tuple[int, ...]  # 24 cells, player one's three nearest rows
    pieces: tuple[PieceRules, ...]  # indexed by type - 1
    piece_of_honor: Optional[int]
    mandatory_capture: bool

    def piece(self, piece_type: int) -> PieceRules:
        return self.pieces[piece_type - 1]

    @property
    def pieces_per_player(self) -> int:
        return sum(1 for t in self.placement if t != 0)


def validate(chromosome: Chromosome, max_pieces: Optional[int] = None) -> list[str]:
    """Return every violated constraint; an empty list means valid.

    `max_pieces` optionally enforces a stricter per-player piece cap than the
    24 cells the placement template allows.
    """
    genes = chromosome.genes
    violations: list[str] = []
    if len(genes) != GENE_COUNT:
        return [f"expected {GENE_COUNT} genes, got {len(genes)}"]
    for i, (value, (low, high)) in enumerate(zip(genes, GENE_BOUNDS)):
        if not low <= value <= high:
            violations.append(
                f"gene {i + 1} out of range {low}-{high} (value {value})"
            )
    placed = sum(1 for t in genes[_PLACEMENT] if t != 0)
    if placed == 0:
        violations.append("no pieces: placement genes 1-24 are all zero")
    if max_pieces is not None and placed > max_pieces:
        violations.append(f"{placed} pieces exceed cap of {max_pieces}")
    return violations


def is_valid(chromosome: Chromosome) -> bool:
    return not validate(chromosome)


def decode(chromosome: Chromosome) -> RuleSet:
    """Decode a valid chromosome into a RuleSet.

    Raises InvalidChromosomeError naming each out-of-range gene otherwise.
    """
    violations = validate(chromosome)
    if violations:
        raise InvalidChromosomeError(violations)
    genes = chromosome.genes
    pieces = tuple(
        PieceRules(
            movement=Movement(genes[_MOVEMENT][t]),
            step=StepSize(genes[_STEP][t]),
            capture=CaptureStyle(genes[_CAPTURE][t]),
            conversion=genes[_CONVERSION][t] or None,
        )
        for t in range(PIECE_TYPES)
    )
    return RuleSet(
        placement=tuple(genes[_PLACEMENT]),
        pieces=pieces,
        piece_of_honor=genes[_HONOR] or None,
        mandatory_capture=bool(genes[_MANDATORY]),
    )


def encode(rules: RuleSet) -> Chromosome:
    """Inverse of decode; `decode(encode(r)) == r` for any valid RuleSet."""
    genes: list[int] = list(rules.placement)
    genes += [int(p.movement) for p in rules.pieces]
    genes += [int(p.step) for p in rules.pieces]
    genes += [int(p.capture) for p in rules.pieces]
    genes.append(rules.piece_of_honor or 0)
    genes += [p.conversion or 0 for p in rules.pieces]
    genes.append(1 if rules.mandatory_capture else 0)
    return Chromosome(tuple(genes))


def _sample_placement(rng: random.Random) -> list[int]:
    # resample the whole block until at least one piece exists
    while True:
        block = [rng.randint(0, 6) for _ in range(PLACEMENT_CELLS)]
        if any(block):
            return block


def random_chromosome(rng: random.Random) -> Chromosome:
    """Uniform chromosome over the legal gene ranges, deterministic per rng."""
    genes = _sample_placement(rng)
    genes += [rng.randint(low, high) for (low, high) in GENE_BOUNDS[24:]]
    return Chromosome(tuple(genes))


def mutate(
    chromosome: Chromosome,
    rng: random.Random,
    rate: float = MUTATION_RATE,
) -> Chromosome:
    """Resample each gene uniformly within its range with probability `rate`.

    If mutation empties the placement template the block is redrawn, so the
    result always validates.
    """
    genes = list(chromosome.genes)
    for i, (low, high) in enumerate(GENE_BOUNDS):
        if rng.random() < rate:
            genes[i] = rng.randint(low, high)
    if not any(genes[_PLACEMENT]):
        genes[_PLACEMENT] = _sample_placement(rng)
    return Chromosome(tuple(genes))
