"""FastAPI application wrapping the engine for human play and rating.

The server owns all legality: clients submit (from, to) pairs, optionally a
full chain path, and the move is applied only if it matches a member of the
engine's legal set. The agent replies synchronously within the same request.
A per-session websocket pushes the new state after every applied move.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Query, WebSocket, WebSocketDisconnect
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..engine import (
    PLAYER_NAMES,
    GameState,
    Move,
    apply_move,
    cell_name,
    legal_moves,
    parse_cell,
)
from ..evolve import Archive
from ..genome import (
    Chromosome,
    InvalidChromosomeError,
    MOVEMENT_NAMES,
    RuleSet,
    StepSize,
    CaptureStyle,
)
from .schemas import (
    AppliedMoveModel,
    CreateSessionRequest,
    GameInfoModel,
    LegalMovesResponse,
    MoveModel,
    MoveRequest,
    MoveResponse,
    PieceModel,
    RatingRequest,
    RatingResponse,
    RatingsListResponse,
    RulesSummaryModel,
    SessionResponse,
    StateModel,
    StatusModel,
    TypeRuleModel,
)
from .store import (
    DuplicateRatingError,
    GameEntry,
    GameRegistry,
    RatingsStore,
    Session,
    SessionStore,
)


def state_model(state: GameState) -> StateModel:
    board: list[Optional[PieceModel]] = [None] * 64
    for cell in range(64):
        pid = state.board_pid[cell]
        if pid >= 0:
            board[cell] = PieceModel(
                player=PLAYER_NAMES[state.piece_player[pid]],
                type=state.piece_type[pid],
                piece_id=pid,
            )
    status = state.status
    return StateModel(
        board=board,
        side_to_move=PLAYER_NAMES[state.side_to_move],
        ply_count=state.ply_count,
        status=StatusModel(
            kind=status.kind,
            winner=PLAYER_NAMES[status.winner] if status.winner is not None else None,
            reason=status.reason,
        ),
    )


def move_model(move: Move) -> MoveModel:
    return MoveModel(
        from_cell=cell_name(move.from_cell),
        to_cell=cell_name(move.to_cell),
        path=[cell_name(c) for c in move.path],
        captures=[cell_name(c) for c in move.captures],
        converts_to=move.converts_to,
    )


def applied_move_model(move: Move, by: str, player: int) -> AppliedMoveModel:
    base = move_model(move)
    return AppliedMoveModel(
        **base.model_dump(by_alias=False), by=by, player=PLAYER_NAMES[player]
    )


def rules_summary(rules: RuleSet) -> RulesSummaryModel:
    types = []
    for t in range(1, 7):
        piece = rules.piece(t)
        types.append(
            TypeRuleModel(
                type=t,
                movement=MOVEMENT_NAMES[piece.movement],
                step="Multiple" if piece.step == StepSize.MULTIPLE else "Single",
                capture=(
                    "Step Over"
                    if piece.capture == CaptureStyle.STEP_OVER
                    else "Step Into"
                ),
                conversion=piece.conversion,
                count_per_player=sum(1 for x in rules.placement if x == t),
            )
        )
    return RulesSummaryModel(
        types=types,
        piece_of_honor=rules.piece_of_honor,
        mandatory_capture=rules.mandatory_capture,
        placement=list(rules.placement),
    )


def session_response(session: Session) -> SessionResponse:
    return SessionResponse(
        session_id=session.id,
        game_id=session.game.id,
        game_name=session.game.name,
        human_side=PLAYER_NAMES[session.human_side],
        opponent=session.opponent,
        run_index=session.run_index,
        rules=rules_summary(session.game.rules),
        state=state_model(session.state),
        history=[AppliedMoveModel(**entry) for entry in session.history],
    )


async def broadcast_state(session: Session, last_moves: list[dict]) -> None:
    payload = {
        "type": "state",
        "session_id": session.id,
        "state": state_model(session.state).model_dump(by_alias=True),
        "last_moves": last_moves,
    }
    alive = []
    for ws in session.listeners:
        try:
            await ws.send_json(payload)
            alive.append(ws)
        except Exception:  # noqa: BLE001 - dead sockets drop silently
            pass
    session.listeners[:] = alive


def _play_agent_move(session: Session) -> Optional[dict]:
    """Let the agent reply if the game is ongoing and it is its turn."""
    state = session.state
    if not state.status.ongoing or state.side_to_move == session.human_side:
        return None
    rules = session.game.rules
    moves = legal_moves(state, rules)
    move = session.agent.select_move(state, rules, session.rng, moves=moves)
    entry = applied_move_model(move, "agent", state.side_to_move).model_dump(
        by_alias=False
    )
    session.state = apply_move(state, rules, move, check=False)
    session.history.append(entry)
    return entry


def create_app(
    archive: Optional[Archive] = None,
    ratings_path: Path = Path("ratings.tsv"),
    ui_dir: Optional[str] = None,
) -> FastAPI:
    app = FastAPI(title="evoboard", version="0.1.0")
    registry = GameRegistry(archive=archive)
    sessions = SessionStore()
    ratings = RatingsStore(Path(ratings_path))
    app.state.registry = registry
    app.state.sessions = sessions
    app.state.ratings = ratings

    @app.exception_handler(RequestValidationError)
    async def malformed_body(_request, exc: RequestValidationError):
        # malformed request bodies are a 400, not the framework default 422
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/games", response_model=list[GameInfoModel])
    def list_games() -> list[GameInfoModel]:
        return [
            GameInfoModel(
                id=entry.id,
                name=entry.name,
                source=entry.source,
                rules=rules_summary(entry.rules),
            )
            for entry in registry.list()
        ]

    def _resolve_game(request: CreateSessionRequest) -> GameEntry:
        if request.game_id:
            try:
                return registry.get(request.game_id)
            except KeyError:
                raise HTTPException(404, f"unknown game {request.game_id!r}")
        if request.chromosome:
            try:
                return registry.register_upload(Chromosome.parse(request.chromosome))
            except InvalidChromosomeError as exc:
                raise HTTPException(400, f"bad chromosome: {exc}")
        raise HTTPException(400, "either game_id or chromosome is required")

    @app.post("/sessions", response_model=SessionResponse, status_code=201)
    async def create_session(request: CreateSessionRequest) -> SessionResponse:
        game = _resolve_game(request)
        session = sessions.create(
            game=game,
            human_side=PLAYER_NAMES.index(request.human_side),
            opponent=request.opponent,
            run_index=request.run_index,
            seed=request.seed,
        )
        async with session.lock:
            agent_entry = _play_agent_move(session)
            if agent_entry:
                await broadcast_state(session, [agent_entry])
        return session_response(session)

    def _get_session(session_id: str) -> Session:
        try:
            return sessions.get(session_id)
        except KeyError:
            raise HTTPException(404, f"unknown session {session_id!r}")

    @app.get("/sessions/{session_id}", response_model=SessionResponse)
    def read_session(session_id: str) -> SessionResponse:
        return session_response(_get_session(session_id))

    @app.get("/sessions/{session_id}/moves", response_model=LegalMovesResponse)
    def read_legal_moves(
        session_id: str, from_cell: Optional[str] = Query(default=None, alias="from")
    ) -> LegalMovesResponse:
        session = _get_session(session_id)
        state = session.state
        if not state.status.ongoing:
            return LegalMovesResponse(moves=[])
        moves = legal_moves(state, session.game.rules)
        if from_cell is not None:
            try:
                origin = parse_cell(from_cell)
            except ValueError as exc:
                raise HTTPException(400, str(exc))
            moves = [m for m in moves if m.from_cell == origin]
        return LegalMovesResponse(moves=[move_model(m) for m in moves])

    @app.post(
        "/sessions/{session_id}/moves",
        response_model=MoveResponse,
        responses={409: {"description": "illegal move, legal alternatives attached"}},
    )
    async def play_move(session_id: str, request: MoveRequest) -> MoveResponse:
        session = _get_session(session_id)
        rules = session.game.rules
        async with session.lock:
            state = session.state
            if not state.status.ongoing:
                raise HTTPException(409, "game is over")
            if state.side_to_move != session.human_side:
                raise HTTPException(409, "not your turn")
            moves = legal_moves(state, rules)
            try:
                origin = parse_cell(request.from_cell)
                target = parse_cell(request.to_cell)
                chain = (
                    [parse_cell(c) for c in request.chain_path]
                    if request.chain_path is not None
                    else None
                )
            except ValueError as exc:
                raise HTTPException(400, str(exc))
            matches = [
                m for m in moves if m.from_cell == origin and m.to_cell == target
            ]
            if chain is not None:
                matches = [m for m in matches if list(m.path) == chain]
            if len(matches) != 1:
                detail = (
                    "illegal move"
                    if not matches
                    else "ambiguous move, specify chain_path"
                )
                return JSONResponse(
                    status_code=409,
                    content={
                        "detail": detail,
                        "legal_moves": [
                            move_model(m).model_dump(by_alias=True) for m in moves
                        ],
                    },
                )
            move = matches[0]
            human_entry = applied_move_model(
                move, "human", state.side_to_move
            ).model_dump(by_alias=False)
            session.state = apply_move(state, rules, move, check=False)
            session.history.append(human_entry)
            agent_entry = _play_agent_move(session)
            applied = [human_entry] + ([agent_entry] if agent_entry else [])
            await broadcast_state(session, applied)
            return MoveResponse(
                human_move=AppliedMoveModel(**human_entry),
                agent_move=AppliedMoveModel(**agent_entry) if agent_entry else None,
                state=state_model(session.state),
            )

    @app.post("/ratings", response_model=RatingResponse, status_code=201)
    def add_rating(request: RatingRequest) -> RatingResponse:
        try:
            record = ratings.add(
                request.subject_id, request.game_id, request.run_index, request.code
            )
        except DuplicateRatingError as exc:
            raise HTTPException(409, str(exc))
        return RatingResponse(
            subject_id=record.subject_id,
            game_id=record.game_id,
            run_index=record.run_index,
            code=record.code,
            timestamp=record.timestamp,
        )

    @app.get("/ratings", response_model=RatingsListResponse)
    def list_ratings(subject_id: Optional[str] = None) -> RatingsListResponse:
        return RatingsListResponse(
            ratings=[
                RatingResponse(
                    subject_id=r.subject_id,
                    game_id=r.game_id,
                    run_index=r.run_index,
                    code=r.code,
                    timestamp=r.timestamp,
                )
                for r in ratings.list(subject_id)
            ]
        )

    @app.websocket("/sessions/{session_id}/ws")
    async def session_updates(websocket: WebSocket, session_id: str) -> None:
        try:
            session = sessions.get(session_id)
        except KeyError:
            await websocket.close(code=4404)
            return
        await websocket.accept()
        session.listeners.append(websocket)
        await websocket.send_json(
            {
                "type": "state",
                "session_id": session.id,
                "state": state_model(session.state).model_dump(by_alias=True),
                "last_moves": [],
            }
        )
        try:
            while True:
                # clients only listen; reads keep the connection alive
                await websocket.receive_text()
        except WebSocketDisconnect:
            if websocket in session.listeners:
                session.listeners.remove(websocket)

    if ui_dir is None:
        default_ui = Path("frontend/dist")
        if default_ui.is_dir():
            ui_dir = str(default_ui)
    if ui_dir:
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
