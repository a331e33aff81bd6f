"""Entertainment metrics, duration scaling, rank fitness, evaluation protocol."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evoboard import fixtures
from evoboard.engine import (
    ONE,
    TWO,
    GameState,
    MatchRecord,
    PieceStat,
    apply_move,
    legal_moves,
    parse_cell,
    playout,
)
from evoboard.genome import CaptureStyle, Movement, StepSize
from evoboard.metrics import (
    MetricsVector,
    duration,
    dynamism,
    evaluate_chromosome,
    format_metrics_line,
    intelligence,
    rank_population,
    scale_duration,
    usability,
)

from test_engine import uniform_rules


def make_record(
    plies: int,
    winner: str = "draw",
    agent_one: str = "random",
    agent_two: str = "random",
    pieces: tuple = (),
    visits: tuple = None,
) -> MatchRecord:
    return MatchRecord(
        genes=None,
        seed=None,
        agent_one=agent_one,
        agent_two=agent_two,
        winner=winner,
        reason="test",
        plies=plies,
        pieces=tuple(
            PieceStat(i, "one", 1, 1, cell_changes, death)
            for i, (cell_changes, death) in enumerate(pieces)
        ),
        cell_visits=tuple(visits) if visits is not None else (0,) * 64,
    )


class TestDuration:
    def test_constant_batch(self):
        records = [make_record(100) for _ in range(20)]
        assert duration(records) == 100

    def test_arithmetic_mean(self):
        records = [make_record(p) for p in (10, 20, 30, 40)]
        assert duration(records) == 25

    def test_empty_batch_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            duration([])


class TestScaleDuration:
    # one interior case per band of the five-step scale
    @pytest.mark.parametrize(
        "raw,expected",
        [
            (5, 0.0), (15, 0.2), (25, 0.5), (35, 0.8), (50, 1.0),
            (65, 0.8), (75, 0.5), (85, 0.2), (95, 0.0),
        ],
    )
    def test_band_interiors(self, raw, expected):
        assert scale_duration(raw) == expected

    # boundaries are assigned exactly once by the half-open intervals
    @pytest.mark.parametrize(
        "raw,expected",
        [
            (0, 0.0), (10, 0.0), (20, 0.2), (30, 0.5), (40, 0.8),
            (41, 1.0), (60, 1.0), (70, 0.8), (80, 0.5), (90, 0.2), (100, 0.0),
        ],
    )
    def test_band_boundaries(self, raw, expected):
        assert scale_duration(raw) == expected

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            scale_duration(101)
        with pytest.raises(ValueError):
            scale_duration(-1)


class TestIntelligence:
    def test_fraction_of_minimax_wins(self):
        records = []
        for i in range(20):
            side = "one" if i % 2 == 0 else "two"
            agents = ("minimax", "random") if side == "one" else ("random", "minimax")
            if i < 14:
                winner = side            # minimax wins
            elif i < 17:
                winner = "draw"
            else:
                winner = "one" if side == "two" else "two"  # minimax loses
            records.append(make_record(50, winner, agents[0], agents[1]))
        assert intelligence(records) == pytest.approx(0.7)

    def test_all_wins(self):
        records = [make_record(10, "one", "minimax", "random") for _ in range(20)]
        assert intelligence(records) == 1.0

    def test_requires_exactly_one_minimax_side(self):
        with pytest.raises(ValueError, match="exactly one minimax"):
            intelligence([make_record(10, "one", "random", "random")])


class TestDynamism:
    def test_zero_move_game(self):
        record = make_record(0, pieces=((0, None), (0, None)))
        assert dynamism([record]) == 0.0

    def test_piece_entering_one_cell_per_ply(self):
        record = make_record(8, pieces=((8, None),))
        assert dynamism([record]) == 1.0

    def test_scripted_six_ply_chase(self):
        # hand-traced game: both single all-direction movers, honor type 1;
        # player two chases and captures on ply 6
        rules = uniform_rules(
            movement=Movement.ALL_DIRS,
            step=StepSize.SINGLE,
            capture=CaptureStyle.STEP_INTO,
            honor=1,
        )
        script = [
            ("c3", "d4"), ("f6", "e5"), ("d4", "d3"),
            ("e5", "d4"), ("d3", "c3"), ("d4", "c3"),
        ]

        class Scripted:
            name = "scripted"

            def __init__(self):
                self.step = iter(script)

            def select_move(self, state, rules, rng, moves=None):
                frm, to = next(self.step)
                return next(
                    m
                    for m in legal_moves(state, rules)
                    if m.from_cell == parse_cell(frm) and m.to_cell == parse_cell(to)
                )

        state = GameState.setup(
            [(ONE, 1, parse_cell("c3")), (TWO, 1, parse_cell("f6"))]
        )
        agent = Scripted()
        while state.status.ongoing:
            move = agent.select_move(state, rules, None)
            state = apply_move(state, rules, move)
        from evoboard.engine import build_record

        record = build_record(state, "scripted", "scripted")
        assert record.plies == 6
        assert record.winner == "two" and record.reason == "honor"
        # each piece entered 3 cells over a 6-ply life: (3/6 + 3/6) / 2
        assert dynamism([record]) == pytest.approx(0.5)
        assert usability([record]) == pytest.approx(6 / 64)
        assert duration([record]) == 6

    def test_reorder_invariance(self):
        rules = fixtures.fixture_rules("game1")
        from evoboard.agents import RandomAgent

        records = [
            playout(rules, RandomAgent(), RandomAgent(), random.Random(s), seed=s)
            for s in range(6)
        ]
        shuffled = list(records)
        random.Random(0).shuffle(shuffled)
        assert dynamism(records) == pytest.approx(dynamism(shuffled), rel=1e-12)
        assert usability(records) == pytest.approx(usability(shuffled), rel=1e-12)
        assert duration(records) == duration(shuffled)


class TestUsability:
    def test_zero_move_game(self):
        assert usability([make_record(0)]) == 0.0

    def test_single_arrival(self):
        visits = [0] * 64
        visits[10] = 1
        assert usability([make_record(1, visits=tuple(visits))]) == pytest.approx(1 / 64)

    def test_times_64_equals_mean_cells_entered(self):
        rules = fixtures.fixture_rules("game2")
        from evoboard.agents import RandomAgent

        records = [
            playout(rules, RandomAgent(), RandomAgent(), random.Random(s), seed=s)
            for s in range(5)
        ]
        mean_entered = sum(
            sum(p.cell_changes for p in r.pieces) for r in records
        ) / len(records)
        assert usability(records) * 64 == pytest.approx(mean_entered)


def vector(d=50.0, i=0.5, dyn=0.1, u=10.0, n=20) -> MetricsVector:
    return MetricsVector(
        duration_raw=d,
        duration=scale_duration(d),
        intelligence=i,
        dynamism=dyn,
        usability=u,
        n=n,
    )


class TestRankPopulation:
    def test_ranks_sum_per_metric(self):
        rng = random.Random(1)
        vectors = [
            vector(rng.uniform(0, 100), rng.random(), rng.random(), rng.uniform(0, 90))
            for _ in range(20)
        ]
        fitness = rank_population(vectors)
        for axis in range(4):
            assert sum(f.ranks[axis] for f in fitness) == 210

    def test_best_on_everything_gets_80(self):
        best = vector(d=50, i=1.0, dyn=0.9, u=99.0)
        rest = [vector(d=5, i=0.1, dyn=0.01, u=1.0) for _ in range(19)]
        fitness = rank_population([best] + rest)
        assert fitness[0].combined == 80.0
        assert fitness[0].ranks == (20, 20, 20, 20)

    def test_weights_scale_combined(self):
        # ties on the last three metrics keep population order, so the first
        # vector ranks 2 on every axis and the duration axis is doubled
        vectors = [vector(d=50), vector(d=5)]
        fitness = rank_population(vectors, weights=(2.0, 1.0, 1.0, 1.0))
        assert fitness[0].combined == 10.0
        assert fitness[1].combined == 5.0

    def test_ties_keep_population_order(self):
        vectors = [vector() for _ in range(5)]
        fitness = rank_population(vectors)
        assert [f.ranks[0] for f in fitness] == [5, 4, 3, 2, 1]

    @given(st.permutations(range(5)))
    @settings(max_examples=50)
    def test_permutation_equivariance(self, order):
        # tie-free vectors: with ties, ranks intentionally follow population
        # order, so equivariance only holds when every metric is distinct
        durations = (5, 15, 25, 35, 50)
        vectors = [
            vector(d=durations[i], i=0.1 * i, dyn=0.05 * i + 0.01, u=3.0 * i + 1)
            for i in range(5)
        ]
        base = rank_population(vectors)
        permuted = rank_population([vectors[i] for i in order])
        for new_index, old_index in enumerate(order):
            assert permuted[new_index] == base[old_index]


class TestEvaluateChromosome:
    def test_deterministic(self):
        chromosome = fixtures.fixture_chromosome("game4")
        a = evaluate_chromosome(chromosome, seed=7, n=4)
        b = evaluate_chromosome(chromosome, seed=7, n=4)
        assert a.metrics == b.metrics
        assert a.random_records == b.random_records

    def test_minimax_colors_alternate(self):
        chromosome = fixtures.fixture_chromosome("game4")
        evaluation = evaluate_chromosome(chromosome, seed=3, n=6)
        ones = sum(1 for r in evaluation.versus_records if r.agent_one == "minimax")
        twos = sum(1 for r in evaluation.versus_records if r.agent_two == "minimax")
        assert ones == twos == 3

    def test_metrics_recomputable_from_records(self):
        chromosome = fixtures.fixture_chromosome("game1")
        evaluation = evaluate_chromosome(chromosome, seed=11, n=4)
        m = evaluation.metrics
        assert m.duration_raw == duration(evaluation.random_records)
        assert m.duration == scale_duration(m.duration_raw)
        assert m.intelligence == intelligence(evaluation.versus_records)
        assert m.dynamism == dynamism(evaluation.random_records)
        assert m.usability == usability(evaluation.random_records)

    def test_report_line_format(self):
        line = format_metrics_line("game1", vector())
        assert "D=50.00" in line and "n=20" in line
