/** Wiring between gestures, the API client, and a display surface.
 *
 * The controller never updates the display from a mutation response
 * directly: after every accepted mutation it refetches the slice, so what
 * the user sees is always exactly what the service would serve fresh.
 */

import { ApiClient, ApiError, MutationInFlight } from "./api.js";
import { resolveDrag, splitChoices, type Drag } from "./gestures.js";
import type {
  Directive,
  GestureConfig,
  GraphRow,
  LogEntry,
  SliceGraph,
} from "./types.js";

export interface View {
  showSlice(svg: string, graph: SliceGraph): void;
  showLog(entries: LogEntry[]): void;
  toast(message: string): void;
  setBusy(busy: boolean): void;
  /** Ask the user to pick a split; resolves null when dismissed. */
  chooseSplit(
    row: GraphRow,
    choices: [number[], number[]][],
  ): Promise<[number[], number[]] | null>;
}

export class Controller {
  workspaceId: string | null = null;
  diagram: string | null = null;
  path = "";
  graph: SliceGraph | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly view: View,
    private readonly gestures: GestureConfig,
  ) {}

  async open(workspaceId: string, diagram: string): Promise<void> {
    this.workspaceId = workspaceId;
    this.diagram = diagram;
    this.path = "";
    await this.api.getWorkspace(workspaceId);
    await this.refresh();
  }

  async setPath(path: string): Promise<void> {
    this.path = path;
    await this.refresh();
  }

  async refresh(): Promise<void> {
    if (this.workspaceId === null || this.diagram === null) return;
    const [svg, graph] = await Promise.all([
      this.api.getSliceSvg(this.workspaceId, this.diagram, this.path),
      this.api.getSlice(this.workspaceId, this.diagram, this.path),
    ]);
    this.graph = graph;
    this.view.showSlice(svg, graph);
    this.view.showLog(await this.api.getLog(this.workspaceId));
  }

  /** Map a drag to a directive; null when the gesture resolves to nothing
   * or the user dismisses the split popover. */
  async directiveFor(drag: Drag): Promise<Directive | null> {
    if (this.graph === null || this.diagram === null) return null;
    const outcome = resolveDrag(
      this.graph,
      this.path,
      this.diagram,
      drag,
      this.gestures,
    );
    if (outcome.kind === "none") return null;
    if (outcome.kind !== "ambiguous") return outcome.directive;
    const row = this.graph.rows[drag.row];
    if (!row || row.outer_kind !== "s") return null;
    const split = await this.view.chooseSplit(row, splitChoices(row));
    if (split === null) return null;
    return {
      kind: "expand",
      body: {
        path: this.path,
        height: row.outer_index,
        split,
        first: drag.dy < 0 ? "higher" : "lower",
      },
    };
  }

  async onDrag(drag: Drag): Promise<void> {
    const directive = await this.directiveFor(drag);
    if (directive !== null) await this.apply(directive);
  }

  async apply(directive: Directive): Promise<void> {
    if (this.workspaceId === null || this.diagram === null) return;
    this.view.setBusy(true);
    try {
      if (directive.kind === "contract") {
        await this.api.contract(this.workspaceId, this.diagram, directive.body);
      } else {
        await this.api.expand(this.workspaceId, this.diagram, directive.body);
      }
      await this.refresh();
    } catch (e) {
      this.reportFailure(e);
    } finally {
      this.view.setBusy(false);
    }
  }

  async undo(): Promise<void> {
    if (this.workspaceId === null) return;
    this.view.setBusy(true);
    try {
      await this.api.undo(this.workspaceId);
      await this.refresh();
    } catch (e) {
      this.reportFailure(e);
    } finally {
      this.view.setBusy(false);
    }
  }

  private reportFailure(e: unknown): void {
    if (e instanceof ApiError) {
      this.view.toast(
        e.error.detail
          ? `${e.error.reason}: ${e.error.detail}`
          : e.error.reason,
      );
    } else if (e instanceof MutationInFlight) {
      this.view.toast("still working on the previous move");
    } else {
      throw e;
    }
  }
}
