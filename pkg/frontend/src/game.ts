// Client state machine, DOM-free so the contract tests can drive it.
// One request in flight at a time; clicks on non-legal vertices are
// inert; the layout is computed once per game id.

import type { Transport } from "./api.js";
import type { GameView, HintView, NewGamePayload } from "./types.js";
import { forceLayout, type Point } from "./layout.js";
import { renderBoard, type BoardModel } from "./board.js";

export class GameClient {
  private view: GameView | null = null;
  private layout: Point[] = [];
  private layoutFor: string | null = null;
  private highlight: number | null = null;
  busy = false;

  constructor(private readonly transport: Transport) {}

  private adopt(view: GameView): void {
    this.view = view;
    if (this.layoutFor !== view.id) {
      this.layout = forceLayout(view.n, view.base_edges);
      this.layoutFor = view.id;
    }
  }

  model(): BoardModel | null {
    if (!this.view) return null;
    return renderBoard(this.view, this.layout, this.highlight);
  }

  async newGame(payload: NewGamePayload): Promise<BoardModel> {
    this.busy = true;
    try {
      const view = (await this.transport.post("/games", payload)) as GameView;
      this.highlight = null;
      this.adopt(view);
      return this.model()!;
    } finally {
      this.busy = false;
    }
  }

  async refresh(): Promise<BoardModel | null> {
    if (!this.view) return null;
    this.busy = true;
    try {
      this.adopt((await this.transport.get(`/games/${this.view.id}`)) as GameView);
      return this.model();
    } finally {
      this.busy = false;
    }
  }

  /** Apply a click; returns null (inert) unless the vertex is legal now. */
  async clickVertex(vertex: number): Promise<BoardModel | null> {
    if (!this.view || this.busy) return null;
    const legal = this.view.vertices.some((v) => v.id === vertex && v.legal);
    if (!legal || this.view.to_move !== "human") return null;
    this.busy = true;
    try {
      const view = (await this.transport.post(
        `/games/${this.view.id}/moves`,
        { vertex },
      )) as GameView;
      this.highlight = null;
      this.adopt(view);
      return this.model();
    } finally {
      this.busy = false;
    }
  }

  async hint(): Promise<number | null> {
    if (!this.view || this.busy || this.view.over) return null;
    this.busy = true;
    try {
      const hint = (await this.transport.get(
        `/games/${this.view.id}/hint`,
      )) as HintView;
      this.highlight = hint.vertex;
      return hint.vertex;
    } finally {
      this.busy = false;
    }
  }
}
