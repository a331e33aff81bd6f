"""Server-side state: the game registry, live sessions, and the ratings file.

Sessions live in memory and each one is mutated only under its own lock; the
ratings store appends to a flat file (one record per line) and survives
restarts by re-reading it.
"""

from __future__ import annotations

import asyncio
import hashlib
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from ..agents import MinimaxAgent, RandomAgent
from ..engine import GameState, initial_state
from ..evolve import Archive
from ..fixtures import DISPLAY_NAMES, FIXTURE_NAMES, fixture_chromosome
from ..genome import Chromosome, RuleSet, decode
from ..seeding import derive_rng


@dataclass(frozen=True)
class GameEntry:
    id: str
    name: str
    source: str  # fixture | archive | upload
    chromosome: Chromosome
    rules: RuleSet


class GameRegistry:
    """Playable games: the shipped fixtures plus an optional archive."""

    def __init__(self, archive: Optional[Archive] = None):
        self._games: dict[str, GameEntry] = {}
        for name in FIXTURE_NAMES:
            chromosome = fixture_chromosome(name)
            self._register(
                GameEntry(
                    id=name,
                    name=DISPLAY_NAMES[name],
                    source="fixture",
                    chromosome=chromosome,
                    rules=decode(chromosome),
                )
            )
        if archive is not None:
            for metric, slot, entry in archive.entries():
                game_id = f"archive-{metric}-{slot}"
                self._register(
                    GameEntry(
                        id=game_id,
                        name=f"Archive best {metric} #{slot}",
                        source="archive",
                        chromosome=entry.chromosome,
                        rules=decode(entry.chromosome),
                    )
                )

    def _register(self, entry: GameEntry) -> GameEntry:
        self._games[entry.id] = entry
        return entry

    def register_upload(self, chromosome: Chromosome) -> GameEntry:
        digest = hashlib.sha256(chromosome.text().encode()).hexdigest()[:8]
        game_id = f"upload-{digest}"
        if game_id in self._games:
            return self._games[game_id]
        return self._register(
            GameEntry(
                id=game_id,
                name=f"Uploaded game {digest}",
                source="upload",
                chromosome=chromosome,
                rules=decode(chromosome),
            )
        )

    def get(self, game_id: str) -> GameEntry:
        return self._games[game_id]

    def list(self) -> list[GameEntry]:
        return list(self._games.values())


@dataclass
class Session:
    id: str
    game: GameEntry
    human_side: int
    opponent: str
    run_index: int
    state: GameState
    rng: object
    history: list[dict] = field(default_factory=list)
    lock: asyncio.Lock = field(default_factory=asyncio.Lock)
    listeners: list = field(default_factory=list)

    @property
    def agent(self):
        return MinimaxAgent() if self.opponent == "minimax" else RandomAgent()


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}

    def create(
        self,
        game: GameEntry,
        human_side: int,
        opponent: str,
        run_index: int,
        seed: Optional[int] = None,
    ) -> Session:
        session_id = uuid.uuid4().hex[:12]
        if seed is None:
            seed = int.from_bytes(uuid.uuid4().bytes[:4], "big")
        session = Session(
            id=session_id,
            game=game,
            human_side=human_side,
            opponent=opponent,
            run_index=run_index,
            state=initial_state(game.rules),
            rng=derive_rng(seed, "session", session_id),
        )
        self._sessions[session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        return self._sessions[session_id]


class DuplicateRatingError(Exception):
    pass


@dataclass(frozen=True)
class StoredRating:
    subject_id: str
    game_id: str
    run_index: int
    code: str
    timestamp: str


class RatingsStore:
    """Append-only flat file, one tab-separated record per line."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self._records: list[StoredRating] = []
        self._seen: set[tuple[str, str, int]] = set()
        if self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                subject, game, run, code, *rest = line.split("\t")
                record = StoredRating(
                    subject, game, int(run), code, rest[0] if rest else ""
                )
                self._records.append(record)
                self._seen.add((subject, game, int(run)))

    def add(
        self, subject_id: str, game_id: str, run_index: int, code: str
    ) -> StoredRating:
        key = (subject_id, game_id, run_index)
        if key in self._seen:
            raise DuplicateRatingError(
                f"subject {subject_id!r} already rated {game_id!r} run {run_index}"
            )
        record = StoredRating(
            subject_id,
            game_id,
            run_index,
            code,
            datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(
                f"{record.subject_id}\t{record.game_id}\t{record.run_index}"
                f"\t{record.code}\t{record.timestamp}\n"
            )
        self._records.append(record)
        self._seen.add(key)
        return record

    def list(self, subject_id: Optional[str] = None) -> list[StoredRating]:
        if subject_id is None:
            return list(self._records)
        return [r for r in self._records if r.subject_id == subject_id]
