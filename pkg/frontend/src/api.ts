// Thin typed client for the play service. All legality stays server-side:
// the client only ever submits moves it received from these endpoints.

import type {
  GameInfo,
  MoveInfo,
  MoveRejection,
  MoveResult,
  Rating,
  RatingCode,
  Session,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
    public rejection?: MoveRejection,
  ) {
    super(message);
  }
}

type FetchLike = typeof fetch;

export class PlayClient {
  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = fetch.bind(globalThis),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (!response.ok) {
      let detail = `${response.status}`;
      let rejection: MoveRejection | undefined;
      try {
        const body = await response.json();
        detail = body.detail ?? detail;
        if (Array.isArray(body.legal_moves)) {
          rejection = body as MoveRejection;
        }
      } catch {
        // non-JSON error body: keep the status text
      }
      throw new ApiError(response.status, detail, rejection);
    }
    return (await response.json()) as T;
  }

  listGames(): Promise<GameInfo[]> {
    return this.request<GameInfo[]>("/games");
  }

  createSession(options: {
    game_id: string;
    human_side?: "one" | "two";
    opponent?: "random" | "minimax";
    run_index?: number;
    seed?: number;
  }): Promise<Session> {
    return this.request<Session>("/sessions", {
      method: "POST",
      body: JSON.stringify(options),
    });
  }

  getSession(sessionId: string): Promise<Session> {
    return this.request<Session>(`/sessions/${sessionId}`);
  }

  legalMoves(sessionId: string, from?: string): Promise<MoveInfo[]> {
    const query = from ? `?from=${encodeURIComponent(from)}` : "";
    return this.request<{ moves: MoveInfo[] }>(
      `/sessions/${sessionId}/moves${query}`,
    ).then((body) => body.moves);
  }

  playMove(
    sessionId: string,
    move: { from: string; to: string; chain_path?: string[] },
  ): Promise<MoveResult> {
    return this.request<MoveResult>(`/sessions/${sessionId}/moves`, {
      method: "POST",
      body: JSON.stringify(move),
    });
  }

  rate(rating: {
    subject_id: string;
    game_id: string;
    run_index: number;
    code: RatingCode;
  }): Promise<Rating> {
    return this.request<Rating>("/ratings", {
      method: "POST",
      body: JSON.stringify(rating),
    });
  }

  ratings(subjectId: string): Promise<Rating[]> {
    return this.request<{ ratings: Rating[] }>(
      `/ratings?subject_id=${encodeURIComponent(subjectId)}`,
    ).then((body) => body.ratings);
  }

  stateSocket(sessionId: string): WebSocket {
    const wsBase = this.baseUrl
      ? this.baseUrl.replace(/^http/, "ws")
      : `ws://${window.location.host}`;
    return new WebSocket(`${wsBase}/sessions/${sessionId}/ws`);
  }
}
