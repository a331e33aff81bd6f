import { describe, expect, it } from "vitest";

import { MoveSelector } from "../src/moveSelector.js";
import type { MoveInfo } from "../src/types.js";

function move(from: string, to: string, path: string[], captures: string[] = []): MoveInfo {
  return { from, to, path, captures, converts_to: null };
}

describe("MoveSelector", () => {
  it("completes a simple move on a destination click", () => {
    const selector = new MoveSelector([
      move("c3", "b4", ["b4"]),
      move("c3", "d4", ["d4"]),
    ]);
    const result = selector.click("d4");
    expect(result.kind).toBe("complete");
    if (result.kind === "complete") {
      expect(result.move.to).toBe("d4");
    }
  });

  it("ignores clicks that match nothing", () => {
    const selector = new MoveSelector([move("c3", "b4", ["b4"])]);
    expect(selector.click("h8").kind).toBe("miss");
  });

  it("highlights the first step of every candidate", () => {
    const selector = new MoveSelector([
      move("c3", "b4", ["b4"]),
      move("c3", "g5", ["e5", "g5"], ["d4", "f4"]),
    ]);
    expect(selector.highlights()).toEqual(["b4", "e5"]);
  });

  it("walks an ambiguous jump chain click by click", () => {
    // two chains share the same first landing; a slide also ends on e5
    const chainLeft = move("c3", "c7", ["e5", "c7"], ["d4", "d6"]);
    const chainRight = move("c3", "g7", ["e5", "g7"], ["d4", "f6"]);
    const selector = new MoveSelector([chainLeft, chainRight]);
    const first = selector.click("e5");
    expect(first.kind).toBe("pending");
    if (first.kind === "pending") {
      expect(first.highlights).toEqual(["c7", "g7"]);
    }
    const second = selector.click("g7");
    expect(second.kind).toBe("complete");
    if (second.kind === "complete") {
      expect(second.move).toEqual(chainRight);
    }
  });

  it("prefers a unique destination over prefix narrowing", () => {
    // clicking the final cell of a long slide submits it directly
    const slide = move("a1", "a5", ["a2", "a3", "a4", "a5"]);
    const step = move("a1", "a2", ["a2"]);
    const selector = new MoveSelector([slide, step]);
    const result = selector.click("a5");
    expect(result.kind).toBe("complete");
    if (result.kind === "complete") {
      expect(result.move).toEqual(slide);
    }
  });

  it("completes a chain whose tail is reached by narrowing", () => {
    const chain = move("c3", "e5", ["e5"], ["d4"]);
    const longer = move("c3", "g7", ["e5", "g7"], ["d4", "f6"]);
    const selector = new MoveSelector([chain, longer]);
    // e5 is the destination of one candidate but also a prefix of the other:
    // the unique-destination rule fires for the short chain
    const result = selector.click("e5");
    expect(result.kind).toBe("complete");
    if (result.kind === "complete") {
      expect(result.move).toEqual(chain);
    }
  });
});
