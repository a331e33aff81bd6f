"""Chromosome validation, decoding, random init and mutation."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evoboard import fixtures
from evoboard.genome import (
    GENE_BOUNDS,
    Chromosome,
    InvalidChromosomeError,
    Movement,
    StepSize,
    CaptureStyle,
    decode,
    encode,
    is_valid,
    mutate,
    random_chromosome,
    validate,
)


def make_genes(**overrides) -> list[int]:
    """A minimal valid chromosome: one type-1 piece, everything else lowest."""
    genes = [low for low, _ in GENE_BOUNDS]
    genes[0] = 1
    for index, value in overrides.items():
        genes[int(index)] = value
    return genes


class TestValidate:
    def test_fixture_chromosomes_are_valid(self):
        for name in fixtures.FIXTURE_NAMES:
            assert validate(fixtures.fixture_chromosome(name)) == []

    def test_empty_placement_is_rejected(self):
        genes = make_genes()
        genes[0] = 0
        violations = validate(Chromosome(tuple(genes)))
        assert any("no pieces" in v for v in violations)

    def test_movement_gene_out_of_range(self):
        genes = make_genes()
        genes[26] = 7  # gene 27, movement of type 3
        violations = validate(Chromosome(tuple(genes)))
        assert violations == ["gene 27 out of range 1-6 (value 7)"]

    @pytest.mark.parametrize(
        "index,value",
        [(0, 7), (0, -1), (24, 0), (30, 2), (36, -1), (42, 7), (43, 9), (49, 2)],
    )
    def test_every_block_boundary(self, index, value):
        genes = make_genes()
        genes[index] = value
        assert validate(Chromosome(tuple(genes)))

    def test_wrong_length(self):
        assert validate(Chromosome((1,) * 10)) == ["expected 50 genes, got 10"]

    def test_optional_piece_cap(self):
        genes = make_genes()
        genes[:24] = [1] * 24
        chromosome = Chromosome(tuple(genes))
        assert validate(chromosome) == []
        assert any("exceed" in v for v in validate(chromosome, max_pieces=16))


class TestDecode:
    def test_movement_gene_positions(self):
        genes = make_genes(**{"24": 4})  # gene 25 -> type 1 movement
        rules = decode(Chromosome(tuple(genes)))
        assert rules.piece(1).movement == Movement.L_SHAPE

    def test_movement_enumeration_order(self):
        codes = {
            1: Movement.DIAG_FWD,
            2: Movement.DIAG_FWD_BACK,
            3: Movement.ALL_DIRS,
            4: Movement.L_SHAPE,
            5: Movement.STRAIGHT_FWD_BACK,
            6: Movement.STRAIGHT_FWD,
        }
        for code, movement in codes.items():
            genes = make_genes(**{"24": code})
            assert decode(Chromosome(tuple(genes))).piece(1).movement == movement

    def test_zero_honor_is_none(self):
        rules = decode(Chromosome(tuple(make_genes(**{"42": 0}))))
        assert rules.piece_of_honor is None

    def test_conversion_target(self):
        rules = decode(Chromosome(tuple(make_genes(**{"43": 6}))))
        assert rules.piece(1).conversion == 6

    def test_zero_conversion_is_none(self):
        rules = decode(Chromosome(tuple(make_genes(**{"43": 0}))))
        assert rules.piece(1).conversion is None

    def test_placement_passthrough(self):
        genes = make_genes()
        genes[:24] = [0] * 24
        genes[5] = 3
        rules = decode(Chromosome(tuple(genes)))
        assert rules.placement[5] == 3
        assert rules.pieces_per_player == 1

    def test_step_and_capture_flags(self):
        genes = make_genes(**{"30": 1, "36": 1})
        rules = decode(Chromosome(tuple(genes)))
        assert rules.piece(1).step == StepSize.MULTIPLE
        assert rules.piece(1).capture == CaptureStyle.STEP_OVER

    def test_invalid_raises_with_gene_name(self):
        genes = make_genes()
        genes[26] = 7
        with pytest.raises(InvalidChromosomeError, match="gene 27"):
            decode(Chromosome(tuple(genes)))

    def test_fixture_game1_rule_table(self):
        rules = fixtures.fixture_rules("game1")
        assert rules.piece(1).movement == Movement.L_SHAPE
        assert rules.piece(1).conversion == 6
        assert rules.piece(5).capture == CaptureStyle.STEP_OVER
        assert rules.piece_of_honor == 5
        assert rules.mandatory_capture is False

    def test_fixture_game2_mandatory_capture(self):
        assert fixtures.fixture_rules("game2").mandatory_capture is True


@st.composite
def chromosomes(draw):
    genes = [draw(st.integers(low, high)) for low, high in GENE_BOUNDS]
    if not any(genes[:24]):
        genes[draw(st.integers(0, 23))] = draw(st.integers(1, 6))
    return Chromosome(tuple(genes))


class TestRoundTrip:
    @given(chromosomes())
    @settings(max_examples=200)
    def test_encode_decode_identity(self, chromosome):
        rules = decode(chromosome)
        assert encode(rules) == chromosome
        assert decode(encode(rules)) == rules

    @given(chromosomes())
    def test_text_round_trip(self, chromosome):
        assert Chromosome.parse(chromosome.text()) == chromosome

    def test_parse_rejects_wrong_length(self):
        with pytest.raises(InvalidChromosomeError, match="expected 50"):
            Chromosome.parse("1,2,3")


class TestRandomChromosome:
    def test_same_seed_same_chromosome(self):
        assert random_chromosome(random.Random(7)) == random_chromosome(random.Random(7))

    def test_samples_always_valid(self):
        rng = random.Random(123)
        for _ in range(1000):
            assert is_valid(random_chromosome(rng))

    def test_binary_gene_frequency(self):
        # law of large numbers: mandatory-capture gene is 1 about half the time
        rng = random.Random(99)
        ones = sum(random_chromosome(rng).genes[49] for _ in range(10_000))
        assert abs(ones / 10_000 - 0.5) < 0.05


def expected_change_fraction() -> float:
    # a uniform resample keeps the old value with probability 1/range
    return sum((high - low) / (high - low + 1) for low, high in GENE_BOUNDS) / 50


class TestMutate:
    def test_rate_zero_is_identity(self):
        chromosome = fixtures.fixture_chromosome("game1")
        assert mutate(chromosome, random.Random(5), rate=0.0) == chromosome

    def test_rate_one_changes_expected_fraction(self):
        rng = random.Random(2024)
        chromosome = fixtures.fixture_chromosome("game2")
        changed = 0
        trials = 1000
        for _ in range(trials):
            mutant = mutate(chromosome, rng, rate=1.0)
            changed += sum(a != b for a, b in zip(mutant.genes, chromosome.genes))
        observed = changed / (trials * 50)
        assert abs(observed - expected_change_fraction()) < 0.02

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=300)
    def test_mutants_always_valid(self, seed):
        rng = random.Random(seed)
        chromosome = random_chromosome(rng)
        assert is_valid(mutate(chromosome, rng))

    def test_same_seed_same_mutant(self):
        chromosome = fixtures.fixture_chromosome("game3")
        a = mutate(chromosome, random.Random(42))
        b = mutate(chromosome, random.Random(42))
        assert a == b
