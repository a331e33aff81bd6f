"""The four reference games shipped with the package.

Games 1-3 came out of evolution runs; game 4 is a randomly initialized game
that never went through evolution and serves as the trivial baseline in the
learnability and survey experiments. Each is stored as a chromosome text file
(50 comma-separated genes on one line) next to this module.
"""

from __future__ import annotations

from importlib import resources

from .genome import Chromosome, RuleSet, decode

FIXTURE_NAMES = ("game1", "game2", "game3", "game4")

DISPLAY_NAMES = {
    "game1": "Game 1 (evolved)",
    "game2": "Game 2 (evolved)",
    "game3": "Game 3 (evolved)",
    "game4": "Game 4 (random baseline)",
}

EVOLVED = ("game1", "game2", "game3")
RANDOM_BASELINE = "game4"


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {FIXTURE_NAMES}")
    return (
        resources.files(__package__)
        .joinpath("fixtures", f"{name}.chromosome")
        .read_text(encoding="utf-8")
    )


def fixture_chromosome(name: str) -> Chromosome:
    return Chromosome.parse(fixture_text(name))


def fixture_rules(name: str) -> RuleSet:
    return decode(fixture_chromosome(name))


def all_fixtures() -> dict[str, Chromosome]:
    return {name: fixture_chromosome(name) for name in FIXTURE_NAMES}
