"""Request/response models of the play-and-rate HTTP API.

Cells travel as algebraic names (a1..h8, player one's home rows are ranks
1-3). The board is a 64-entry array indexed row-major from a1.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class PieceModel(BaseModel):
    player: Literal["one", "two"]
    type: int
    piece_id: int


class StatusModel(BaseModel):
    kind: Literal["ongoing", "won", "draw"]
    winner: Optional[Literal["one", "two"]] = None
    reason: Optional[str] = None


class StateModel(BaseModel):
    board: list[Optional[PieceModel]]
    side_to_move: Literal["one", "two"]
    ply_count: int
    status: StatusModel


class MoveModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    from_cell: str = Field(alias="from")
    to_cell: str = Field(alias="to")
    path: list[str]
    captures: list[str]
    converts_to: Optional[int] = None


class AppliedMoveModel(MoveModel):
    by: Literal["human", "agent"]
    player: Literal["one", "two"]


class TypeRuleModel(BaseModel):
    type: int
    movement: str
    step: Literal["Single", "Multiple"]
    capture: Literal["Step Into", "Step Over"]
    conversion: Optional[int] = None
    count_per_player: int


class RulesSummaryModel(BaseModel):
    types: list[TypeRuleModel]
    piece_of_honor: Optional[int] = None
    mandatory_capture: bool
    placement: list[int]


class GameInfoModel(BaseModel):
    id: str
    name: str
    source: Literal["fixture", "archive", "upload"]
    rules: RulesSummaryModel


class CreateSessionRequest(BaseModel):
    game_id: Optional[str] = None
    chromosome: Optional[str] = None  # raw 50-gene line, alternative to game_id
    human_side: Literal["one", "two"] = "one"
    opponent: Literal["random", "minimax"] = "minimax"
    run_index: int = Field(default=1, ge=1, le=3)
    seed: Optional[int] = None


class SessionResponse(BaseModel):
    session_id: str
    game_id: str
    game_name: str
    human_side: Literal["one", "two"]
    opponent: Literal["random", "minimax"]
    run_index: int
    rules: RulesSummaryModel
    state: StateModel
    history: list[AppliedMoveModel]


class LegalMovesResponse(BaseModel):
    moves: list[MoveModel]


class MoveRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    from_cell: str = Field(alias="from")
    to_cell: str = Field(alias="to")
    chain_path: Optional[list[str]] = None  # full path for ambiguous chains


class MoveResponse(BaseModel):
    human_move: AppliedMoveModel
    agent_move: Optional[AppliedMoveModel] = None
    state: StateModel


class IllegalMoveResponse(BaseModel):
    detail: str
    legal_moves: list[MoveModel]


class RatingRequest(BaseModel):
    subject_id: str
    game_id: str
    run_index: int = Field(ge=1, le=3)
    code: Literal["liked", "disliked", "neutral"]


class RatingResponse(BaseModel):
    subject_id: str
    game_id: str
    run_index: int
    code: str
    timestamp: str


class RatingsListResponse(BaseModel):
    ratings: list[RatingResponse]
