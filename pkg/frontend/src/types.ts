// Wire types of the play service. Cells travel as algebraic names (a1..h8).

export type PlayerName = "one" | "two";
export type RatingCode = "liked" | "disliked" | "neutral";

export interface Piece {
  player: PlayerName;
  type: number;
  piece_id: number;
}

export interface Status {
  kind: "ongoing" | "won" | "draw";
  winner: PlayerName | null;
  reason: string | null;
}

export interface GameState {
  board: (Piece | null)[];
  side_to_move: PlayerName;
  ply_count: number;
  status: Status;
}

export interface MoveInfo {
  from: string;
  to: string;
  path: string[];
  captures: string[];
  converts_to: number | null;
}

export interface AppliedMove extends MoveInfo {
  by: "human" | "agent";
  player: PlayerName;
}

export interface TypeRule {
  type: number;
  movement: string;
  step: "Single" | "Multiple";
  capture: "Step Into" | "Step Over";
  conversion: number | null;
  count_per_player: number;
}

export interface RulesSummary {
  types: TypeRule[];
  piece_of_honor: number | null;
  mandatory_capture: boolean;
  placement: number[];
}

export interface GameInfo {
  id: string;
  name: string;
  source: "fixture" | "archive" | "upload";
  rules: RulesSummary;
}

export interface Session {
  session_id: string;
  game_id: string;
  game_name: string;
  human_side: PlayerName;
  opponent: "random" | "minimax";
  run_index: number;
  rules: RulesSummary;
  state: GameState;
  history: AppliedMove[];
}

export interface MoveResult {
  human_move: AppliedMove;
  agent_move: AppliedMove | null;
  state: GameState;
}

export interface MoveRejection {
  detail: string;
  legal_moves: MoveInfo[];
}

export interface Rating {
  subject_id: string;
  game_id: string;
  run_index: number;
  code: RatingCode;
  timestamp: string;
}

export interface StateUpdate {
  type: "state";
  session_id: string;
  state: GameState;
  last_moves: AppliedMove[];
}
