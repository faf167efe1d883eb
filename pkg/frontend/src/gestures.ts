/** Pure mapping from drag gestures on a rendered slice to directives.
 *
 * Every gesture resolves to exactly one outcome: a directive, "ambiguous"
 * (the caller should ask instead of guessing), or "none" (ignore).  Rows
 * are indexed as the service lists them; the renderer draws row 0 at the
 * bottom, so a drag upward on screen moves toward higher row numbers.
 */

import type {
  Directive,
  GestureConfig,
  GraphRow,
  SliceGraph,
} from "./types.js";

export interface Drag {
  /** Row and node position where the drag started. */
  row: number;
  pos: number;
  /** Screen-space displacement: dy > 0 is downward. */
  dx: number;
  dy: number;
}

export type GestureOutcome =
  | { kind: "contract" | "expand"; directive: Directive }
  | { kind: "ambiguous"; reason: string }
  | { kind: "none" };

function vertexPositions(row: GraphRow): number[] {
  const out: number[] = [];
  row.nodes.forEach((n, i) => {
    if (n.kind === "vertex") out.push(i);
  });
  return out;
}

function singularIndices(row: GraphRow): number[] {
  const out: number[] = [];
  for (const n of row.nodes) {
    if (n.inner_kind === "s") out.push(n.inner_index);
  }
  return out;
}

/** Resolve a drag that started on a vertex of a singular row.
 *
 * A row with a single vertex contracts toward the adjacent singular row
 * the drag moves into; the horizontal component selects the bias
 * (left = lower, right = higher).  A row with several vertices expands:
 * the dragged vertex splits off from the rest, downward sending it to
 * the earlier height and upward to the later one.
 */
export function resolveDrag(
  graph: SliceGraph,
  path: string,
  name: string,
  drag: Drag,
  cfg: GestureConfig,
): GestureOutcome {
  const row = graph.rows[drag.row];
  if (!row || row.outer_kind !== "s") return { kind: "none" };
  const node = row.nodes[drag.pos];
  if (!node || node.kind !== "vertex") return { kind: "none" };

  const reach = Math.abs(drag.dy);
  if (reach < cfg.unit * cfg.activateFraction) {
    return {
      kind: "ambiguous",
      reason: "drag too short to pick a target height",
    };
  }
  // screen up (dy < 0) is the next row upward, which is a higher index
  const upward = drag.dy < 0;

  const vertices = vertexPositions(row);
  if (vertices.length >= 2) {
    const mine = node.inner_index;
    const rest = singularIndices(row).filter((i) => i !== mine);
    const body: Directive = {
      kind: "expand",
      body: {
        path,
        height: row.outer_index,
        split: [[mine], rest],
        first: upward ? "higher" : "lower",
      },
    };
    return { kind: "expand", directive: body };
  }

  const targetRow = drag.row + (upward ? 2 : -2);
  const target = graph.rows[targetRow];
  if (!target || target.outer_kind !== "s") {
    return { kind: "none" };
  }
  const low = Math.min(row.outer_index, target.outer_index);
  let bias: "lower" | "higher" | null = null;
  if (drag.dx <= -cfg.biasThresholdPx) bias = "lower";
  else if (drag.dx >= cfg.biasThresholdPx) bias = "higher";
  return {
    kind: "contract",
    directive: {
      kind: "contract",
      body: { path, window: [low, low + 2], bias },
    },
  };
}

/** Split options offered when a drag was ambiguous: every way to pull
 * one singular point of the row out on its own. */
export function splitChoices(row: GraphRow): [number[], number[]][] {
  const all = singularIndices(row);
  return all.map((i) => [[i], all.filter((j) => j !== i)]);
}
