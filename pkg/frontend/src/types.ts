/** Shapes exchanged with the workspace service. */

export interface GraphNode {
  inner_kind: "r" | "s";
  inner_index: number;
  kind: "region" | "wire" | "vertex";
  label: string;
  color: string;
}

export interface GraphRow {
  outer_kind: "r" | "s";
  outer_index: number;
  nodes: GraphNode[];
}

export interface SliceGraph {
  dimension: number;
  rows: GraphRow[];
  edges: [[number, number], [number, number]][];
  text: string;
}

export interface ContractDirective {
  path: string;
  window: [number, number];
  bias: "lower" | "higher" | null;
}

export interface ExpandDirective {
  path: string;
  height: number;
  split: [number[], number[]];
  first: "lower" | "higher";
}

export type Directive =
  | { kind: "contract"; body: ContractDirective }
  | { kind: "expand"; body: ExpandDirective };

export interface LogEntry {
  command: string;
  before_hash: string;
  after_hash: string;
}

export interface WorkspaceState {
  id: string;
  hash: string;
  workspace: unknown;
}

export interface ServiceError {
  status: number;
  reason: string;
  detail: string;
}

/** Gesture mapping thresholds; pixel distances are relative to the render
 * unit so the same configuration works at any zoom. */
export interface GestureConfig {
  /** Pixel height of one layer row in the rendering. */
  unit: number;
  /** Vertical fraction of a unit a drag must cover to mean anything. */
  activateFraction: number;
  /** Horizontal pixels beyond which a contract drag carries a bias. */
  biasThresholdPx: number;
}

export const DEFAULT_GESTURES: GestureConfig = {
  unit: 40,
  activateFraction: 0.5,
  biasThresholdPx: 12,
};
