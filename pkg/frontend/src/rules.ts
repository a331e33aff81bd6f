// Rules panel: the per-type movement/step/capture/conversion table plus the
// game-wide flags, mirroring how the games are documented to players.

import type { RulesSummary } from "./types.js";

export function rulesRows(rules: RulesSummary): string[][] {
  return rules.types
    .filter((t) => t.count_per_player > 0)
    .map((t) => [
      String(t.type),
      t.movement,
      t.step,
      t.capture,
      t.conversion === null ? "Nil" : String(t.conversion),
      String(t.count_per_player),
    ]);
}

export function rulesFlags(rules: RulesSummary): string {
  const honor = rules.piece_of_honor === null ? "Nil" : String(rules.piece_of_honor);
  const mandatory = rules.mandatory_capture ? "Yes" : "No";
  return `Piece of Honor ${honor} - Mandatory to Capture ${mandatory}`;
}

export function renderRulesPanel(root: HTMLElement, rules: RulesSummary): void {
  const headers = ["Piece", "Movement", "Step", "Capture", "Converts to", "Count"];
  const rows = rulesRows(rules)
    .map((row) => `<tr>${row.map((v) => `<td>${v}</td>`).join("")}</tr>`)
    .join("");
  root.innerHTML = `
    <table class="rules-table">
      <thead><tr>${headers.map((h) => `<th>${h}</th>`).join("")}</tr></thead>
      <tbody>${rows}</tbody>
    </table>
    <p class="rules-flags">${rulesFlags(rules)}</p>`;
}
