// Board rendering: an 8x8 grid of divs, rank 8 at the top, with piece type
// numbers colored per player and CSS-class highlights for legal targets.

import type { GameState, PlayerName } from "./types.js";

export const FILES = "abcdefgh";

export function cellName(index: number): string {
  return FILES[index % 8] + String(Math.floor(index / 8) + 1);
}

export function cellIndex(name: string): number {
  return (Number(name[1]) - 1) * 8 + FILES.indexOf(name[0]);
}

export interface BoardCallbacks {
  onCellClick(cell: string): void;
}

export class BoardView {
  private cells = new Map<string, HTMLElement>();

  constructor(root: HTMLElement, callbacks: BoardCallbacks) {
    root.classList.add("board");
    for (let rank = 8; rank >= 1; rank--) {
      for (let file = 0; file < 8; file++) {
        const name = FILES[file] + String(rank);
        const cell = document.createElement("div");
        cell.dataset.cell = name;
        const dark = (rank + file) % 2 === 0;
        cell.className = `cell ${dark ? "dark" : "light"}`;
        cell.addEventListener("click", () => callbacks.onCellClick(name));
        this.cells.set(name, cell);
        root.appendChild(cell);
      }
    }
  }

  render(state: GameState, humanSide: PlayerName): void {
    for (const [name, element] of this.cells) {
      const piece = state.board[cellIndex(name)];
      element.classList.remove("highlight", "selected", "own");
      if (!piece) {
        element.textContent = "";
        element.classList.remove("piece-one", "piece-two");
        continue;
      }
      element.textContent = String(piece.type);
      element.classList.toggle("piece-one", piece.player === "one");
      element.classList.toggle("piece-two", piece.player === "two");
      if (piece.player === humanSide && state.side_to_move === humanSide) {
        element.classList.add("own");
      }
    }
  }

  highlight(cells: string[], selected?: string): void {
    for (const [name, element] of this.cells) {
      element.classList.toggle("highlight", cells.includes(name));
      element.classList.toggle("selected", name === selected);
    }
  }

  clearHighlights(): void {
    this.highlight([]);
  }
}

export function describeStatus(state: GameState, humanSide: PlayerName): string {
  const status = state.status;
  if (status.kind === "ongoing") {
    return state.side_to_move === humanSide
      ? `Your move (ply ${state.ply_count})`
      : "Opponent is thinking...";
  }
  if (status.kind === "draw") {
    return `Draw: ${status.reason ?? ""} after ${state.ply_count} plies`;
  }
  const won = status.winner === humanSide;
  return `${won ? "You win" : "You lose"} (${status.reason ?? ""}, ply ${state.ply_count})`;
}
