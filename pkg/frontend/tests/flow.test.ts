import { describe, expect, it } from "vitest";

import { RUNS_PER_GAME, SurveyTracker } from "../src/flow.js";

describe("SurveyTracker", () => {
  it("walks a game through three rated runs", () => {
    const tracker = new SurveyTracker(["game1"]);
    for (let run = 1; run <= RUNS_PER_GAME; run++) {
      expect(tracker.canStartRun("game1")).toBe(true);
      expect(tracker.startRun("game1")).toBe(run);
      tracker.finishRun("game1");
      expect(tracker.phase("game1")).toBe("awaiting-rating");
      tracker.recordRating("game1", "liked");
    }
    expect(tracker.phase("game1")).toBe("done");
    expect(tracker.canStartRun("game1")).toBe(false);
  });

  it("blocks the next run until the finished one is rated", () => {
    const tracker = new SurveyTracker(["game1"]);
    tracker.startRun("game1");
    tracker.finishRun("game1");
    expect(tracker.canStartRun("game1")).toBe(false);
    expect(() => tracker.startRun("game1")).toThrow(/rate the finished run/);
    tracker.recordRating("game1", "neutral");
    expect(tracker.canStartRun("game1")).toBe(true);
  });

  it("rejects ratings when no run finished", () => {
    const tracker = new SurveyTracker(["game1"]);
    expect(() => tracker.recordRating("game1", "liked")).toThrow(
      /no finished run/,
    );
  });

  it("tracks games independently and reports completion", () => {
    const tracker = new SurveyTracker(["a", "b"]);
    for (const game of ["a", "b"]) {
      for (let run = 0; run < RUNS_PER_GAME; run++) {
        tracker.startRun(game);
        tracker.finishRun(game);
        tracker.recordRating(game, "disliked");
      }
    }
    expect(tracker.allDone()).toBe(true);
  });

  it("refuses unknown games", () => {
    const tracker = new SurveyTracker(["a"]);
    expect(() => tracker.startRun("zzz")).toThrow(/unknown game/);
  });
});
