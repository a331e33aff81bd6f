"""Game engine: board setup, legal-move generation, move application, playouts.

Board cells are numbered 0..63 row-major from player one's back corner, so
cell = row * 8 + col and the algebraic name of cell 0 is a1. "Forward" always
means toward the opponent: +row for player one, -row for player two.

Semantics of the generalized rule space:

* Single-step pieces move one cell along a movement direction; multi-step
  pieces slide along the ray up to the first occupied cell.
* Step-into types capture by landing on the opponent's cell (the first
  opponent piece on a ray is reachable for sliders).
* Step-over types capture checkers-style: jump an opponent piece to the empty
  cell immediately behind it. Sliders may first slide up to the piece; the
  jump is still over exactly one piece. Once a jump starts, the chain is
  extended while further jumps exist; each maximal chain is one move, and
  jumped pieces are removed immediately (they cannot be jumped twice).
* L-shaped movers use the fixed knight pattern and ignore the step-size gene.
  With step-over capture the destination must be empty and any opponent piece
  on the two long-leg cells dies; with step-into the destination behaves like
  a normal knight capture.
* A move's `path` lists every cell the piece enters, in order: each slide
  cell, each chain landing, or the single destination. Those arrivals feed
  the per-piece and per-cell statistics.
* Conversion triggers only when a move ends on the opponent's first row.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple, Optional, Sequence

from .genome import CaptureStyle, Movement, RuleSet, StepSize

ONE = 0
TWO = 1
PLAYER_NAMES = ("one", "two")
BOARD_CELLS = 64
MAX_PLIES = 100


def other(player: int) -> int:
    return 1 - player


def cell_row(cell: int) -> int:
    return cell >> 3


def cell_col(cell: int) -> int:
    return cell & 7


def cell_name(cell: int) -> str:
    """Algebraic name, a1..h8; player one's home rows are ranks 1-3."""
    return "abcdefgh"[cell & 7] + str((cell >> 3) + 1)


def parse_cell(name: str) -> int:
    name = name.strip().lower()
    if len(name) != 2 or name[0] not in "abcdefgh" or name[1] not in "12345678":
        raise ValueError(f"bad cell name {name!r}")
    return (int(name[1]) - 1) * 8 + "abcdefgh".index(name[0])


class EngineError(Exception):
    pass


class IllegalMoveError(EngineError):
    """A move outside the legal set was submitted."""

    def __init__(self, reason: str, legal: Optional[Sequence["Move"]] = None):
        super().__init__(reason)
        self.reason = reason
        self.legal = list(legal) if legal is not None else []


class AgentFaultError(EngineError):
    """An agent produced an illegal move during a playout."""

    def __init__(self, player: int, agent_name: str, reason: str):
        super().__init__(f"agent {agent_name!r} (player {PLAYER_NAMES[player]}): {reason}")
        self.player = player
        self.agent_name = agent_name


class Move(NamedTuple):
    from_cell: int
    to_cell: int
    path: tuple[int, ...]       # cells entered, in order; last equals to_cell
    captures: tuple[int, ...]   # cells whose occupants die, in capture order
    converts_to: Optional[int]  # piece type after the move, None if unchanged


@dataclass(frozen=True)
class GameStatus:
    kind: str  # "ongoing" | "won" | "draw"
    winner: Optional[int] = None
    reason: Optional[str] = None

    @property
    def ongoing(self) -> bool:
        return self.kind == "ongoing"


ONGOING = GameStatus("ongoing")


# ---------------------------------------------------------------------------
# Precomputed geometry

_DIRECTIONS = ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1))


def _ray(cell: int, dr: int, dc: int) -> tuple[int, ...]:
    cells = []
    r, c = cell_row(cell) + dr, cell_col(cell) + dc
    while 0 <= r < 8 and 0 <= c < 8:
        cells.append(r * 8 + c)
        r += dr
        c += dc
    return tuple(cells)


_BASE_DIRS = {
    Movement.DIAG_FWD: ((1, -1), (1, 1)),
    Movement.DIAG_FWD_BACK: ((1, -1), (1, 1), (-1, -1), (-1, 1)),
    Movement.ALL_DIRS: _DIRECTIONS,
    Movement.STRAIGHT_FWD_BACK: ((1, 0), (-1, 0)),
    Movement.STRAIGHT_FWD: ((1, 0),),
}

# RAY_TABLE[(movement, player)][cell] -> tuple of rays (tuples of cells).
RAY_TABLE: dict[tuple[Movement, int], tuple[tuple[tuple[int, ...], ...], ...]] = {}
for _movement, _dirs in _BASE_DIRS.items():
    for _player in (ONE, TWO):
        _mirrored = _dirs if _player == ONE else tuple((-dr, dc) for dr, dc in _dirs)
        RAY_TABLE[(_movement, _player)] = tuple(
            tuple(r for r in (_ray(cell, *d) for d in _mirrored) if r)
            for cell in range(BOARD_CELLS)
        )

_L_OFFSETS = ((2, 1), (2, -1), (-2, 1), (-2, -1), (1, 2), (1, -2), (-1, 2), (-1, -2))


def _knight_entries(cell: int) -> tuple[tuple[int, tuple[int, int]], ...]:
    r, c = cell_row(cell), cell_col(cell)
    entries = []
    for dr, dc in _L_OFFSETS:
        r2, c2 = r + dr, c + dc
        if not (0 <= r2 < 8 and 0 <= c2 < 8):
            continue
        if abs(dr) == 2:  # long leg along the rows
            step = 1 if dr > 0 else -1
            mids = ((r + step) * 8 + c, (r + 2 * step) * 8 + c)
        else:  # long leg along the columns
            step = 1 if dc > 0 else -1
            mids = (r * 8 + (c + step), r * 8 + (c + 2 * step))
        entries.append((r2 * 8 + c2, mids))
    return tuple(entries)


KNIGHT_TABLE: tuple[tuple[tuple[int, tuple[int, int]], ...], ...] = tuple(
    _knight_entries(cell) for cell in range(BOARD_CELLS)
)


# ---------------------------------------------------------------------------
# Game state


class GameState:
    """Mutable board position plus the statistics accumulators of one game.

    `apply_move` never mutates its input; it works on a copy, so states behave
    like values and a single playout exclusively owns its chain of states.
    """

    __slots__ = (
        "board_val",      # 64 ints: 0 empty, +type player one, -type player two
        "board_pid",      # 64 ints: piece id or -1
        "side_to_move",
        "ply_count",
        "piece_player",   # per piece id
        "piece_type",     # current type (conversion rewrites it)
        "piece_type0",    # type at setup
        "piece_cell",     # current cell or -1 once dead
        "piece_moves",    # C_i: cells entered by this piece
        "piece_death",    # ply of death, None while alive
        "cell_visits",    # C_k: arrivals per cell (placement not counted)
        "type_counts",    # live piece count per (player, type)
        "start_type_counts",
        "status",
    )

    def __init__(self) -> None:
        self.board_val = [0] * BOARD_CELLS
        self.board_pid = [-1] * BOARD_CELLS
        self.side_to_move = ONE
        self.ply_count = 0
        self.piece_player: list[int] = []
        self.piece_type: list[int] = []
        self.piece_type0: list[int] = []
        self.piece_cell: list[int] = []
        self.piece_moves: list[int] = []
        self.piece_death: list[Optional[int]] = []
        self.cell_visits = [0] * BOARD_CELLS
        self.type_counts = [[0] * 7, [0] * 7]
        self.start_type_counts = ((0,) * 7, (0,) * 7)
        self.status: GameStatus = ONGOING

    @classmethod
    def setup(
        cls,
        pieces: Sequence[tuple[int, int, int]],
        side_to_move: int = ONE,
        ply_count: int = 0,
    ) -> "GameState":
        """Build a position from (player, type, cell) triples.

        The given pieces are treated as the game's initial material, which is
        what the piece-of-honor ending is measured against.
        """
        state = cls()
        state.side_to_move = side_to_move
        state.ply_count = ply_count
        for player, piece_type, cell in pieces:
            if state.board_val[cell] != 0:
                raise ValueError(f"two pieces on cell {cell_name(cell)}")
            pid = len(state.piece_player)
            state.piece_player.append(player)
            state.piece_type.append(piece_type)
            state.piece_type0.append(piece_type)
            state.piece_cell.append(cell)
            state.piece_moves.append(0)
            state.piece_death.append(None)
            state.board_val[cell] = piece_type if player == ONE else -piece_type
            state.board_pid[cell] = pid
            state.type_counts[player][piece_type] += 1
        state.start_type_counts = (
            tuple(state.type_counts[ONE]),
            tuple(state.type_counts[TWO]),
        )
        return state

    def copy(self) -> "GameState":
        dup = GameState.__new__(GameState)
        dup.board_val = self.board_val[:]
        dup.board_pid = self.board_pid[:]
        dup.side_to_move = self.side_to_move
        dup.ply_count = self.ply_count
        dup.piece_player = self.piece_player[:]
        dup.piece_type = self.piece_type[:]
        dup.piece_type0 = self.piece_type0[:]
        dup.piece_cell = self.piece_cell[:]
        dup.piece_moves = self.piece_moves[:]
        dup.piece_death = self.piece_death[:]
        dup.cell_visits = self.cell_visits[:]
        dup.type_counts = [self.type_counts[0][:], self.type_counts[1][:]]
        dup.start_type_counts = self.start_type_counts
        dup.status = self.status
        return dup

    def piece_count(self, player: int) -> int:
        return sum(self.type_counts[player][1:])

    def pieces_of(self, player: int) -> list[int]:
        """Cells of the player's live pieces, ascending."""
        sign = 1 if player == ONE else -1
        return [c for c in range(BOARD_CELLS) if self.board_val[c] * sign > 0]


def initial_state(rules: RuleSet) -> GameState:
    """Set up both players from the placement template.

    Player one fills cells 0..23 with the template; player two receives the
    180-degree mirror on cells 63..40, so cell (row, col) of player one maps
    to (9-row, 9-col) in algebraic terms.
    """
    pieces: list[tuple[int, int, int]] = []
    for k, piece_type in enumerate(rules.placement):
        if piece_type:
            pieces.append((ONE, piece_type, k))
    for k, piece_type in enumerate(rules.placement):
        if piece_type:
            pieces.append((TWO, piece_type, 63 - k))
    state = GameState.setup(pieces)
    state.status = game_status(state, rules)
    return state


# ---------------------------------------------------------------------------
# Move generation


def _finish(
    frm: int, to: int, path: tuple[int, ...], captures: tuple[int, ...],
    piece_type: int, side: int, rules: RuleSet,
) -> Move:
    converts: Optional[int] = None
    if cell_row(to) == (7 if side == ONE else 0):
        converts = rules.piece(piece_type).conversion
    return Move(frm, to, path, captures, converts)


def _into_moves(
    board: list[int], cell: int, piece_type: int, side: int, rules: RuleSet,
) -> Iterator[Move]:
    piece = rules.piece(piece_type)
    own_positive = side == ONE
    rays = RAY_TABLE[(piece.movement, side)][cell]
    multiple = piece.step == StepSize.MULTIPLE
    for ray in rays:
        path: list[int] = []
        for target in ray if multiple else ray[:1]:
            value = board[target]
            if value == 0:
                path.append(target)
                yield _finish(cell, target, tuple(path), (), piece_type, side, rules)
                continue
            if (value > 0) != own_positive:
                path.append(target)
                yield _finish(
                    cell, target, tuple(path), (target,), piece_type, side, rules
                )
            break


def _over_chains(
    board: list[int], start: int, side: int,
    rays_of: Callable[[int], tuple[tuple[int, ...], ...]], multiple: bool,
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All maximal jump chains from `start` on a scratch board.

    The mover must already be lifted off `board`. Jumped pieces are blanked
    for the rest of the chain and restored on backtrack.
    """
    own_positive = side == ONE
    chains: list[tuple[tuple[int, ...], tuple[int, ...]]] = []

    def extend(cur: int, path: list[int], caps: list[int]) -> None:
        jumped = False
        for ray in rays_of(cur):
            index = 0
            if multiple:
                while index < len(ray) and board[ray[index]] == 0:
                    index += 1
            if index + 1 >= len(ray):
                continue
            over, landing = ray[index], ray[index + 1]
            value = board[over]
            if value == 0 or (value > 0) == own_positive or board[landing] != 0:
                continue
            jumped = True
            slide = list(ray[:index])
            board[over] = 0
            extend(cur=landing, path=path + slide + [landing], caps=caps + [over])
            board[over] = value
        if not jumped and path:
            chains.append((tuple(path), tuple(caps)))

    extend(start, [], [])
    return chains


def _over_moves(
    board: list[int], cell: int, piece_type: int, side: int, rules: RuleSet,
) -> Iterator[Move]:
    piece = rules.piece(piece_type)
    rays = RAY_TABLE[(piece.movement, side)][cell]
    multiple = piece.step == StepSize.MULTIPLE
    # quiet moves: step or slide onto empty cells only
    for ray in rays:
        path: list[int] = []
        for target in ray if multiple else ray[:1]:
            if board[target] != 0:
                break
            path.append(target)
            yield _finish(cell, target, tuple(path), (), piece_type, side, rules)
    # jump chains, on a scratch copy with the mover lifted
    scratch = board[:]
    scratch[cell] = 0
    table = RAY_TABLE[(piece.movement, side)]
    for path, caps in _over_chains(scratch, cell, side, table.__getitem__, multiple):
        yield _finish(cell, path[-1], path, caps, piece_type, side, rules)


def _l_moves(
    board: list[int], cell: int, piece_type: int, side: int, rules: RuleSet,
) -> Iterator[Move]:
    piece = rules.piece(piece_type)
    own_positive = side == ONE
    step_into = piece.capture == CaptureStyle.STEP_INTO
    for target, mids in KNIGHT_TABLE[cell]:
        value = board[target]
        if step_into:
            if value == 0:
                yield _finish(cell, target, (target,), (), piece_type, side, rules)
            elif (value > 0) != own_positive:
                yield _finish(
                    cell, target, (target,), (target,), piece_type, side, rules
                )
        elif value == 0:
            caps = tuple(
                m for m in mids
                if board[m] != 0 and (board[m] > 0) != own_positive
            )
            yield _finish(cell, target, (target,), caps, piece_type, side, rules)


def _generate(state: GameState, rules: RuleSet) -> Iterator[Move]:
    side = state.side_to_move
    board = state.board_val
    for pid in range(len(state.piece_cell)):
        cell = state.piece_cell[pid]
        if cell < 0 or state.piece_player[pid] != side:
            continue
        piece_type = state.piece_type[pid]
        movement = rules.piece(piece_type).movement
        if movement == Movement.L_SHAPE:
            yield from _l_moves(board, cell, piece_type, side, rules)
        elif rules.piece(piece_type).capture == CaptureStyle.STEP_INTO:
            yield from _into_moves(board, cell, piece_type, side, rules)
        else:
            yield from _over_moves(board, cell, piece_type, side, rules)


def legal_moves(state: GameState, rules: RuleSet) -> list[Move]:
    """All legal moves for the side to move.

    When the mandatory-capture flag is set and at least one capturing move
    exists, only capturing moves are returned.
    """
    moves: list[Move] = []
    seen: set[Move] = set()
    for move in _generate(state, rules):
        if move not in seen:
            seen.add(move)
            moves.append(move)
    if rules.mandatory_capture:
        capturing = [m for m in moves if m.captures]
        if capturing:
            return capturing
    return moves


def has_any_move(state: GameState, rules: RuleSet) -> bool:
    # mandatory capture only restricts which moves are legal, never whether
    # any exists, so the unfiltered generator decides existence
    for _ in _generate(state, rules):
        return True
    return False


# ---------------------------------------------------------------------------
# Status and move application


def game_status(state: GameState, rules: RuleSet) -> GameStatus:
    """Terminal detection, in priority order: honor loss, blockade, ply cap.

    The honor clause only binds players whose initial setup contained the
    honor type. If one move zeroes both players' honor counts (a capture plus
    a conversion out of the honor type), the opponent of the mover loses:
    captures resolve before the mover's own conversion.
    """
    honor = rules.piece_of_honor
    if honor is not None:
        mover = other(state.side_to_move)
        for player in (state.side_to_move, mover):
            if (
                state.start_type_counts[player][honor] > 0
                and state.type_counts[player][honor] == 0
            ):
                return GameStatus("won", winner=other(player), reason="honor")
    if not has_any_move(state, rules):
        return GameStatus("won", winner=other(state.side_to_move), reason="blockade")
    if state.ply_count >= MAX_PLIES:
        counts = (state.piece_count(ONE), state.piece_count(TWO))
        if counts[ONE] > counts[TWO]:
            return GameStatus("won", winner=ONE, reason="piece_count")
        if counts[TWO] > counts[ONE]:
            return GameStatus("won", winner=TWO, reason="piece_count")
        return GameStatus("draw", reason="equal_pieces")
    return ONGOING


def apply_move(
    state: GameState, rules: RuleSet, move: Move, *, check: bool = True
) -> GameState:
    """Apply a legal move and return the successor state.

    With `check` the move is validated against the legal set first; playouts
    skip the check because agents pick from the list the engine just built.
    """
    if check:
        legal = legal_moves(state, rules)
        if move not in legal:
            raise IllegalMoveError("move not in legal set", legal=legal)
    nxt = state.copy()
    side = nxt.side_to_move
    pid = nxt.board_pid[move.from_cell]
    ply = nxt.ply_count + 1
    nxt.board_val[move.from_cell] = 0
    nxt.board_pid[move.from_cell] = -1
    for captured_cell in move.captures:
        cpid = nxt.board_pid[captured_cell]
        nxt.type_counts[nxt.piece_player[cpid]][nxt.piece_type[cpid]] -= 1
        nxt.board_val[captured_cell] = 0
        nxt.board_pid[captured_cell] = -1
        nxt.piece_cell[cpid] = -1
        nxt.piece_death[cpid] = ply
    for entered in move.path:
        nxt.cell_visits[entered] += 1
    nxt.piece_moves[pid] += len(move.path)
    piece_type = nxt.piece_type[pid]
    if move.converts_to is not None and move.converts_to != piece_type:
        nxt.type_counts[side][piece_type] -= 1
        nxt.type_counts[side][move.converts_to] += 1
        nxt.piece_type[pid] = move.converts_to
        piece_type = move.converts_to
    nxt.board_val[move.to_cell] = piece_type if side == ONE else -piece_type
    nxt.board_pid[move.to_cell] = pid
    nxt.piece_cell[pid] = move.to_cell
    nxt.ply_count = ply
    nxt.side_to_move = other(side)
    nxt.status = game_status(nxt, rules)
    return nxt


# ---------------------------------------------------------------------------
# Playouts and match records


class PieceStat(NamedTuple):
    piece: int
    player: str
    type_initial: int
    type_final: int
    cell_changes: int           # C_i
    death_ply: Optional[int]    # None if the piece survived


@dataclass(frozen=True)
class MatchRecord:
    """Statistics of one finished playout; everything metrics need."""

    genes: Optional[tuple[int, ...]]
    seed: Optional[int]
    agent_one: str
    agent_two: str
    winner: str                  # "one" | "two" | "draw"
    reason: str
    plies: int
    pieces: tuple[PieceStat, ...]
    cell_visits: tuple[int, ...]

    def piece_life(self, stat: PieceStat) -> int:
        """L_i: plies from the start until death, or game end if it survived."""
        return stat.death_ply if stat.death_ply is not None else self.plies

    def to_json(self) -> str:
        payload = {
            "genes": list(self.genes) if self.genes is not None else None,
            "seed": self.seed,
            "agent_one": self.agent_one,
            "agent_two": self.agent_two,
            "winner": self.winner,
            "reason": self.reason,
            "plies": self.plies,
            "pieces": [list(p) for p in self.pieces],
            "cell_visits": list(self.cell_visits),
        }
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "MatchRecord":
        raw = json.loads(line)
        return cls(
            genes=tuple(raw["genes"]) if raw["genes"] is not None else None,
            seed=raw["seed"],
            agent_one=raw["agent_one"],
            agent_two=raw["agent_two"],
            winner=raw["winner"],
            reason=raw["reason"],
            plies=raw["plies"],
            pieces=tuple(PieceStat(*p) for p in raw["pieces"]),
            cell_visits=tuple(raw["cell_visits"]),
        )


def build_record(
    state: GameState,
    agent_one: str,
    agent_two: str,
    genes: Optional[Sequence[int]] = None,
    seed: Optional[int] = None,
) -> MatchRecord:
    status = state.status
    if status.kind == "won":
        winner = PLAYER_NAMES[status.winner]
    elif status.kind == "draw":
        winner = "draw"
    else:
        raise EngineError("cannot record an unfinished game")
    stats = tuple(
        PieceStat(
            piece=pid,
            player=PLAYER_NAMES[state.piece_player[pid]],
            type_initial=state.piece_type0[pid],
            type_final=state.piece_type[pid],
            cell_changes=state.piece_moves[pid],
            death_ply=state.piece_death[pid],
        )
        for pid in range(len(state.piece_player))
    )
    return MatchRecord(
        genes=tuple(genes) if genes is not None else None,
        seed=seed,
        agent_one=agent_one,
        agent_two=agent_two,
        winner=winner,
        reason=status.reason or "",
        plies=state.ply_count,
        pieces=stats,
        cell_visits=tuple(state.cell_visits),
    )


def playout(
    rules: RuleSet,
    agent_one,
    agent_two,
    rng,
    genes: Optional[Sequence[int]] = None,
    seed: Optional[int] = None,
) -> MatchRecord:
    """Play one full game, alternating agents from the initial position.

    Deterministic for a fixed rng state and deterministic agents. An agent
    returning a move outside the legal set aborts the playout with the fault
    attributed to it.
    """
    state = initial_state(rules)
    agents = (agent_one, agent_two)
    while state.status.ongoing:
        moves = legal_moves(state, rules)
        agent = agents[state.side_to_move]
        move = agent.select_move(state, rules, rng, moves=moves)
        if move not in moves:
            raise AgentFaultError(
                state.side_to_move, getattr(agent, "name", "?"), "illegal move"
            )
        state = apply_move(state, rules, move, check=False)
    return build_record(
        state,
        agent_one=getattr(agent_one, "name", "one"),
        agent_two=getattr(agent_two, "name", "two"),
        genes=genes,
        seed=seed,
    )


def write_records(path, records: Sequence[MatchRecord]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(record.to_json() + "\n")


def read_records(path) -> list[MatchRecord]:
    with open(path, "r", encoding="utf-8") as fh:
        return [MatchRecord.from_json(line) for line in fh if line.strip()]
