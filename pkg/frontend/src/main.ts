// Browser entry point: game list, board interaction, live updates, ratings.

import { ApiError, PlayClient } from "./api.js";
import { BoardView, describeStatus } from "./board.js";
import { RUNS_PER_GAME, SurveyTracker } from "./flow.js";
import { MoveSelector } from "./moveSelector.js";
import { renderRulesPanel } from "./rules.js";
import type { GameInfo, RatingCode, Session, StateUpdate } from "./types.js";

const client = new PlayClient("");

function el<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing #${id}`);
  return element as T;
}

class App {
  private tracker!: SurveyTracker;
  private games: GameInfo[] = [];
  private session: Session | null = null;
  private board!: BoardView;
  private selector: MoveSelector | null = null;
  private selectedCell: string | null = null;
  private socket: WebSocket | null = null;

  async start(): Promise<void> {
    this.games = await client.listGames();
    this.tracker = new SurveyTracker(this.games.map((g) => g.id));
    this.board = new BoardView(el("board"), {
      onCellClick: (cell) => void this.onCellClick(cell),
    });
    this.renderGameList();
    el("rating-dialog").hidden = true;
    for (const code of ["liked", "disliked", "neutral"] as RatingCode[]) {
      el(`rate-${code}`).addEventListener("click", () => void this.submitRating(code));
    }
  }

  private renderGameList(): void {
    const list = el("game-list");
    list.innerHTML = "";
    for (const game of this.games) {
      const item = document.createElement("li");
      const button = document.createElement("button");
      const done = this.tracker.completedRuns(game.id);
      button.textContent = `${game.name} (run ${Math.min(done + 1, RUNS_PER_GAME)}/${RUNS_PER_GAME})`;
      button.disabled = !this.tracker.canStartRun(game.id);
      button.addEventListener("click", () => void this.startRun(game.id));
      item.appendChild(button);
      list.appendChild(item);
    }
  }

  private subjectId(): string {
    const value = el<HTMLInputElement>("subject-id").value.trim();
    return value || "anonymous";
  }

  private async startRun(gameId: string): Promise<void> {
    const runIndex = this.tracker.startRun(gameId);
    this.session = await client.createSession({
      game_id: gameId,
      human_side: "one",
      opponent: (el<HTMLSelectElement>("opponent").value as "random" | "minimax"),
      run_index: runIndex,
    });
    const game = this.games.find((g) => g.id === gameId);
    el("game-title").textContent = `${game?.name ?? gameId} - run ${runIndex}`;
    renderRulesPanel(el("rules-panel"), this.session.rules);
    this.connectSocket();
    this.refresh();
    this.renderGameList();
  }

  private connectSocket(): void {
    this.socket?.close();
    if (!this.session) return;
    this.socket = client.stateSocket(this.session.session_id);
    this.socket.onmessage = (event) => {
      const update = JSON.parse(event.data) as StateUpdate;
      if (this.session && update.session_id === this.session.session_id) {
        this.session.state = update.state;
        this.refresh();
      }
    };
  }

  private refresh(): void {
    if (!this.session) return;
    const state = this.session.state;
    this.board.render(state, this.session.human_side);
    el("status-banner").textContent = describeStatus(state, this.session.human_side);
    if (state.status.kind !== "ongoing") {
      if (this.tracker.phase(this.session.game_id) === "playing") {
        this.tracker.finishRun(this.session.game_id);
      }
      el("rating-dialog").hidden = false;
    }
  }

  private async onCellClick(cell: string): Promise<void> {
    if (!this.session || this.session.state.status.kind !== "ongoing") return;
    if (this.session.state.side_to_move !== this.session.human_side) return;

    if (this.selector) {
      const result = this.selector.click(cell);
      if (result.kind === "complete") {
        await this.submitMove(result.move.from, result.move.to, result.move.path);
        return;
      }
      if (result.kind === "pending") {
        this.board.highlight(result.highlights, this.selectedCell ?? undefined);
        return;
      }
      this.selector = null;
      this.selectedCell = null;
      this.board.clearHighlights();
    }
    // selecting a piece: ask the server what it may do
    const moves = await client.legalMoves(this.session.session_id, cell);
    if (moves.length === 0) return;
    this.selector = new MoveSelector(moves);
    this.selectedCell = cell;
    this.board.highlight(this.selector.highlights(), cell);
  }

  private async submitMove(from: string, to: string, path: string[]): Promise<void> {
    if (!this.session) return;
    this.selector = null;
    this.selectedCell = null;
    try {
      const result = await client.playMove(this.session.session_id, {
        from,
        to,
        chain_path: path,
      });
      this.session.state = result.state;
      this.board.clearHighlights();
      this.refresh();
    } catch (error) {
      if (error instanceof ApiError && error.rejection) {
        el("status-banner").textContent = `Rejected: ${error.message}`;
        this.board.clearHighlights();
      } else {
        throw error;
      }
    }
  }

  private async submitRating(code: RatingCode): Promise<void> {
    if (!this.session) return;
    try {
      await client.rate({
        subject_id: this.subjectId(),
        game_id: this.session.game_id,
        run_index: this.session.run_index,
        code,
      });
    } catch (error) {
      if (!(error instanceof ApiError && error.status === 409)) throw error;
    }
    this.tracker.recordRating(this.session.game_id, code);
    el("rating-dialog").hidden = true;
    el("game-title").textContent = this.tracker.allDone()
      ? "All runs complete, thank you!"
      : "Pick the next run";
    this.session = null;
    this.socket?.close();
    this.renderGameList();
  }
}

void new App().start();
