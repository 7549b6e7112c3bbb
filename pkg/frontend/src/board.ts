// Pure rendering: a service view plus a fixed layout in, an SVG string
// plus interaction metadata out. Clickability comes verbatim from the
// service's legal flags; colors come verbatim from its letters.

import type { GameView } from "./types.js";
import type { Point } from "./layout.js";

export const FILL: Record<string, string> = {
  W: "#ffffff", // white: undominated, worth 3
  B: "#4682b4", // steel blue: dominated with an undominated neighbor, worth 2
  R: "#8b1a1a", // dark red: fully settled, worth 0
};

export interface BoardModel {
  svg: string;
  clickable: number[];
  colors: Record<number, string>;
  status: string;
  summary: string[];
  over: boolean;
  turns: number;
}

function edgeKey(u: number, v: number): string {
  return u < v ? `${u}-${v}` : `${v}-${u}`;
}

function capLine(view: GameView): string {
  const caps = view.bounds;
  const engineStarts = view.start === "dominator";
  const cap35 = engineStarts ? caps.cap_3n5 : caps.cap_3n5_staller;
  const cap58 = engineStarts ? caps.cap_5n8 : caps.cap_5n8_staller;
  const classNote = caps.class_no_d4 ? "" : " [class n/a: leaf pair at distance 4]";
  return `${view.turns} <= ${cap35} (3n/5)${classNote}, ${view.turns} <= ${cap58} (5n/8)`;
}

export function renderBoard(
  view: GameView,
  layout: Point[],
  highlight: number | null = null,
): BoardModel {
  const clickable = view.vertices.filter((v) => v.legal).map((v) => v.id);
  const clickSet = new Set(clickable);
  const colors: Record<number, string> = {};
  for (const v of view.vertices) colors[v.id] = v.color;

  const active = new Set(view.active_edges.map(([u, v]) => edgeKey(u, v)));
  const parts: string[] = [
    `<svg viewBox="0 0 640 420" xmlns="http://www.w3.org/2000/svg" role="img">`,
  ];
  for (const [u, v] of view.base_edges) {
    const pu = layout[u];
    const pv = layout[v];
    if (!pu || !pv) continue;
    const isActive = active.has(edgeKey(u, v));
    const cls = isActive ? "edge active" : "edge pruned";
    parts.push(
      `<line class="${cls}" x1="${pu.x.toFixed(1)}" y1="${pu.y.toFixed(1)}"` +
        ` x2="${pv.x.toFixed(1)}" y2="${pv.y.toFixed(1)}"/>`,
    );
  }
  for (const v of view.vertices) {
    const p = layout[v.id];
    if (!p) continue;
    const classes = ["vertex"];
    if (clickSet.has(v.id)) classes.push("clickable");
    if (highlight === v.id) classes.push("hint");
    parts.push(
      `<g class="${classes.join(" ")}" data-vertex="${v.id}">` +
        `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="14"` +
        ` fill="${FILL[v.color]}"/>` +
        `<text x="${p.x.toFixed(1)}" y="${(p.y + 4).toFixed(1)}"` +
        ` text-anchor="middle">${v.id}</text></g>`,
    );
  }
  parts.push("</svg>");

  let status: string;
  if (view.over) {
    status = `game over in ${view.turns} turns`;
  } else if (view.to_move === "human") {
    status = `your move (${view.human})`;
  } else {
    status = "engine is thinking";
  }

  const summary: string[] = [];
  summary.push(`board value ${view.value} points, phase ${view.phase}`);
  summary.push(
    `ledger: surplus ${view.ledger.phase1_extra}, critical turns ${view.ledger.critical}`,
  );
  const recent = view.records.slice(-3);
  for (const r of recent) {
    const mark = r.critical ? " (critical)" : "";
    summary.push(
      `turn ${r.index}: ${r.player} plays ${r.vertex} for ${r.gain}${mark}`,
    );
  }
  summary.push(capLine(view));
  return {
    svg: parts.join("\n"),
    clickable,
    colors,
    status,
    summary,
    over: view.over,
    turns: view.turns,
  };
}
