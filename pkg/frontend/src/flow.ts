// Survey session tracker: each subject plays every game three times and must
// rate a finished run before the next one unlocks.

import type { RatingCode } from "./types.js";

export const RUNS_PER_GAME = 3;

export type RunPhase = "idle" | "playing" | "awaiting-rating" | "done";

interface GameProgress {
  completedRuns: number;
  phase: RunPhase;
}

export class SurveyTracker {
  private progress = new Map<string, GameProgress>();

  constructor(gameIds: string[]) {
    for (const id of gameIds) {
      this.progress.set(id, { completedRuns: 0, phase: "idle" });
    }
  }

  private entry(gameId: string): GameProgress {
    const entry = this.progress.get(gameId);
    if (!entry) throw new Error(`unknown game ${gameId}`);
    return entry;
  }

  /** The run index (1-based) the next session of this game should carry. */
  nextRunIndex(gameId: string): number {
    return this.entry(gameId).completedRuns + 1;
  }

  phase(gameId: string): RunPhase {
    return this.entry(gameId).phase;
  }

  completedRuns(gameId: string): number {
    return this.entry(gameId).completedRuns;
  }

  /** A new run may start only when nothing is pending and runs remain. */
  canStartRun(gameId: string): boolean {
    const entry = this.entry(gameId);
    return (
      (entry.phase === "idle" || entry.phase === "playing") &&
      entry.completedRuns < RUNS_PER_GAME
    );
  }

  startRun(gameId: string): number {
    if (!this.canStartRun(gameId)) {
      throw new Error(
        this.entry(gameId).phase === "awaiting-rating"
          ? "rate the finished run before starting the next one"
          : "all runs of this game are complete",
      );
    }
    this.entry(gameId).phase = "playing";
    return this.nextRunIndex(gameId);
  }

  /** Called when the session reaches a terminal state. */
  finishRun(gameId: string): void {
    const entry = this.entry(gameId);
    if (entry.phase !== "playing") throw new Error("no run in progress");
    entry.phase = "awaiting-rating";
  }

  /** Called after the rating was accepted by the service. */
  recordRating(gameId: string, _code: RatingCode): void {
    const entry = this.entry(gameId);
    if (entry.phase !== "awaiting-rating") {
      throw new Error("no finished run awaiting a rating");
    }
    entry.completedRuns += 1;
    entry.phase = entry.completedRuns >= RUNS_PER_GAME ? "done" : "idle";
  }

  allDone(): boolean {
    return [...this.progress.values()].every((e) => e.phase === "done");
  }
}
