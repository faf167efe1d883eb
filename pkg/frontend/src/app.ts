/** Browser entry point: binds the controller to a plain DOM layout.
 *
 * Layout: a toolbar (workspace and diagram pickers, slice selectors, undo),
 * the rendered slice with a pointer overlay for drag gestures, a history
 * panel, and a toast area for failures.
 */

import { ApiClient } from "./api.js";
import { Controller, type View } from "./controller.js";
import type { LogEntry, SliceGraph } from "./types.js";
import { DEFAULT_GESTURES } from "./types.js";

const UNIT = DEFAULT_GESTURES.unit;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Pixel center of a rendered node, mirroring the server's layout. */
function nodeCenter(
  graph: SliceGraph,
  row: number,
  pos: number,
): { x: number; y: number } {
  const node = graph.rows[row]!.nodes[pos]!;
  const x = (2 * node.inner_index + (node.inner_kind === "s" ? 1 : 0) + 1) * UNIT;
  const y = (graph.rows.length - row) * UNIT;
  return { x, y };
}

function nearestVertex(
  graph: SliceGraph,
  x: number,
  y: number,
): { row: number; pos: number } | null {
  let best: { row: number; pos: number } | null = null;
  let bestDist = (UNIT / 2) ** 2;
  graph.rows.forEach((row, rn) => {
    row.nodes.forEach((node, pos) => {
      if (node.kind !== "vertex") return;
      const c = nodeCenter(graph, rn, pos);
      const d = (c.x - x) ** 2 + (c.y - y) ** 2;
      if (d < bestDist) {
        bestDist = d;
        best = { row: rn, pos };
      }
    });
  });
  return best;
}

export function createApp(root: HTMLElement, baseUrl: string): Controller {
  const api = new ApiClient(baseUrl);

  const toolbar = el("div", "toolbar");
  const workspaceInput = el("input");
  workspaceInput.placeholder = "workspace id";
  const diagramInput = el("input");
  diagramInput.placeholder = "diagram name";
  const openButton = el("button", "", "Open");
  const pathLabel = el("span", "path-label", "Slice:");
  const selectors = el("span", "selectors");
  const undoButton = el("button", "", "Undo");
  toolbar.append(
    workspaceInput,
    diagramInput,
    openButton,
    pathLabel,
    selectors,
    undoButton,
  );

  const stage = el("div", "stage");
  const history = el("div", "history");
  const toasts = el("div", "toasts");
  root.append(toolbar, stage, history, toasts);

  let currentGraph: SliceGraph | null = null;
  let dragStart: { row: number; pos: number; x: number; y: number } | null =
    null;

  const view: View = {
    showSlice(svg, graph) {
      currentGraph = graph;
      stage.innerHTML = svg;
      rebuildSelectors().catch(() => undefined);
    },
    showLog(entries: LogEntry[]) {
      history.innerHTML = "";
      history.append(el("h2", "", "History"));
      for (const entry of entries.slice().reverse()) {
        const line = el("div", "log-entry", entry.command);
        line.title = `${entry.before_hash.slice(0, 12)} → ${entry.after_hash.slice(0, 12)}`;
        history.append(line);
      }
    },
    toast(message) {
      const note = el("div", "toast", message);
      toasts.append(note);
      setTimeout(() => note.remove(), 6000);
    },
    setBusy(busy) {
      for (const input of root.querySelectorAll("button, input, select")) {
        (input as HTMLButtonElement).disabled = busy;
      }
    },
    chooseSplit(row, choices) {
      return new Promise((resolve) => {
        const popover = el("div", "popover");
        popover.append(el("div", "", "Pick the points to pull out:"));
        for (const choice of choices) {
          const button = el("button", "", `[${choice[0].join(",")}] / [${choice[1].join(",")}]`);
          button.addEventListener("click", () => {
            popover.remove();
            resolve(choice);
          });
          popover.append(button);
        }
        const cancel = el("button", "", "Cancel");
        cancel.addEventListener("click", () => {
          popover.remove();
          resolve(null);
        });
        popover.append(cancel);
        root.append(popover);
      });
    },
  };

  const controller = new Controller(api, view, DEFAULT_GESTURES);

  /** One selector per outer level above the rendered two dimensions,
   * rebuilt by walking the path prefix and asking for each level's rows. */
  async function rebuildSelectors(): Promise<void> {
    if (controller.workspaceId === null || controller.diagram === null) return;
    const segments = controller.path === "" ? [] : controller.path.split(",");
    selectors.innerHTML = "";
    let prefix: string[] = [];
    for (let level = 0; ; level++) {
      const graph = await api.getSlice(
        controller.workspaceId,
        controller.diagram,
        prefix.join(","),
      );
      if (graph.dimension <= 2) break;
      const select = el("select");
      const blank = el("option", "", "(stay)");
      blank.value = "";
      select.append(blank);
      for (const row of graph.rows) {
        const token = `${row.outer_kind}${row.outer_index}`;
        const option = el("option", "", token);
        option.value = token;
        select.append(option);
      }
      const chosen = segments[level] ?? "";
      select.value = chosen;
      const frozen = prefix.slice();
      select.addEventListener("change", () => {
        const next = select.value === "" ? frozen : [...frozen, select.value];
        controller.setPath(next.join(",")).catch(() => undefined);
      });
      selectors.append(select);
      if (chosen === "") break;
      prefix = [...prefix, chosen];
    }
  }

  stage.addEventListener("pointerdown", (event) => {
    if (currentGraph === null) return;
    const bounds = stage.getBoundingClientRect();
    const x = event.clientX - bounds.left;
    const y = event.clientY - bounds.top;
    const hit = nearestVertex(currentGraph, x, y);
    if (hit) dragStart = { ...hit, x, y };
  });

  stage.addEventListener("pointerup", (event) => {
    if (dragStart === null) return;
    const bounds = stage.getBoundingClientRect();
    const drag = {
      row: dragStart.row,
      pos: dragStart.pos,
      dx: event.clientX - bounds.left - dragStart.x,
      dy: event.clientY - bounds.top - dragStart.y,
    };
    dragStart = null;
    controller.onDrag(drag).catch(() => undefined);
  });

  openButton.addEventListener("click", () => {
    controller
      .open(workspaceInput.value.trim(), diagramInput.value.trim())
      .catch((e) => view.toast(String(e)));
  });

  undoButton.addEventListener("click", () => {
    controller.undo().catch(() => undefined);
  });

  return controller;
}

const mount = document.getElementById("app");
if (mount) createApp(mount, "");
