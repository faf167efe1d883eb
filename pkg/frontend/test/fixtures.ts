/** Slice graphs as the service serves them, frozen for gesture tests. */

import type { GraphNode, SliceGraph } from "../src/types.js";

function region(i: number): GraphNode {
  return {
    inner_kind: "r",
    inner_index: i,
    kind: "region",
    label: "region",
    color: "",
  };
}

function wire(i: number): GraphNode {
  return {
    inner_kind: "s",
    inner_index: i,
    kind: "wire",
    label: "wire",
    color: "#2266cc",
  };
}

function bead(i: number): GraphNode {
  return {
    inner_kind: "s",
    inner_index: i,
    kind: "vertex",
    label: "bead",
    color: "#cc2222",
  };
}

/** Two beads on parallel wires at distinct heights (rows bottom-up:
 * r0, s0 with the left bead, r1, s1 with the right bead, r2). */
export const staggeredBeads: SliceGraph = {
  dimension: 2,
  rows: [
    { outer_kind: "r", outer_index: 0, nodes: [region(0), wire(0), region(1), wire(1), region(2)] },
    { outer_kind: "s", outer_index: 0, nodes: [region(0), bead(0), region(1), wire(1), region(2)] },
    { outer_kind: "r", outer_index: 1, nodes: [region(0), wire(0), region(1), wire(1), region(2)] },
    { outer_kind: "s", outer_index: 1, nodes: [region(0), wire(0), region(1), bead(1), region(2)] },
    { outer_kind: "r", outer_index: 2, nodes: [region(0), wire(0), region(1), wire(1), region(2)] },
  ],
  edges: [
    [[0, 1], [1, 1]],
    [[0, 3], [1, 3]],
    [[2, 1], [1, 1]],
    [[2, 3], [1, 3]],
    [[2, 1], [3, 1]],
    [[2, 3], [3, 3]],
    [[4, 1], [3, 1]],
    [[4, 3], [3, 3]],
  ],
  text: "",
};

/** The same two beads at a single height (rows r0, s0, r1). */
export const levelBeads: SliceGraph = {
  dimension: 2,
  rows: [
    { outer_kind: "r", outer_index: 0, nodes: [region(0), wire(0), region(1), wire(1), region(2)] },
    { outer_kind: "s", outer_index: 0, nodes: [region(0), bead(0), region(1), bead(1), region(2)] },
    { outer_kind: "r", outer_index: 1, nodes: [region(0), wire(0), region(1), wire(1), region(2)] },
  ],
  edges: [
    [[0, 1], [1, 1]],
    [[0, 3], [1, 3]],
    [[2, 1], [1, 1]],
    [[2, 3], [1, 3]],
  ],
  text: "",
};
