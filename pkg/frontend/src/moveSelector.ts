// Click-by-click move entry over server-provided candidates.
//
// The selector never invents moves: it only narrows the list the service
// returned for the selected piece. A click on a destination that identifies
// exactly one candidate completes the move; when several chains share cells,
// successive clicks walk the path until one chain remains.

import type { MoveInfo } from "./types.js";

export type SelectorResult =
  | { kind: "pending"; highlights: string[] }
  | { kind: "complete"; move: MoveInfo }
  | { kind: "miss" };

export class MoveSelector {
  private clicked: string[] = [];
  private candidates: MoveInfo[];

  constructor(moves: MoveInfo[]) {
    this.candidates = [...moves];
  }

  /** Cells worth highlighting: every next path step of a live candidate. */
  highlights(): string[] {
    const cells = new Set<string>();
    for (const move of this.candidates) {
      const next = move.path[this.clicked.length];
      if (next) cells.add(next);
    }
    return [...cells].sort();
  }

  /** Feed one board click; the result says whether a move was identified. */
  click(cell: string): SelectorResult {
    // a click that uniquely names a destination finishes the move outright
    const byDestination = this.candidates.filter(
      (m) => m.to === cell && m.path.length > this.clicked.length,
    );
    if (byDestination.length === 1) {
      return { kind: "complete", move: byDestination[0] };
    }
    // otherwise walk the chain one step
    const byPrefix = this.candidates.filter(
      (m) => m.path[this.clicked.length] === cell,
    );
    if (byPrefix.length === 0) {
      return { kind: "miss" };
    }
    this.clicked.push(cell);
    this.candidates = byPrefix;
    const [only] = this.candidates;
    if (this.candidates.length === 1 && only.path.length === this.clicked.length) {
      return { kind: "complete", move: only };
    }
    return { kind: "pending", highlights: this.highlights() };
  }
}
