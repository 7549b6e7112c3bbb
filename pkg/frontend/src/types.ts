// Mirrors of the service's JSON views. The client renders these and
// nothing else: no game rule is ever computed locally.

export type Side = "dominator" | "staller";

export interface VertexView {
  id: number;
  color: "W" | "B" | "R";
  legal: boolean;
}

export interface TurnView {
  index: number;
  player: Side;
  vertex: number;
  gain: number;
  phase: number;
  newly_red: number;
  critical: boolean;
}

export interface BoundsView {
  cap_3n5: number;
  cap_3n5_staller: number;
  cap_5n8: number;
  cap_5n8_staller: number;
  class_no_d4: boolean;
}

export interface GameView {
  id: string;
  n: number;
  human: Side;
  start: Side;
  staller_policy: string;
  vertices: VertexView[];
  base_edges: [number, number][];
  active_edges: [number, number][];
  to_move: "human" | "engine" | null;
  phase: number;
  over: boolean;
  turns: number;
  value: number;
  records: TurnView[];
  move_log: number[];
  ledger: { phase1_extra: number; critical: number };
  bounds: BoundsView;
  applied?: TurnView[];
}

export interface HintView {
  vertex: number;
  remaining_with_best_play: number;
}

export interface NewGamePayload {
  edge_list?: string;
  generator?: { kind: string; n: number; seed?: number; components?: number };
  human: Side;
  start: Side;
  staller_policy?: string;
  seed?: number;
}
