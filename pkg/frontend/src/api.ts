/** Typed client for the workspace service.
 *
 * Keeps the last seen state hash and sends it as If-Match on every
 * mutation, so a stale client gets a 409 instead of clobbering state.
 * At most one mutation is in flight at a time; starting a second one
 * while the first is pending is a programming error and throws.
 */

import type {
  ContractDirective,
  ExpandDirective,
  LogEntry,
  ServiceError,
  SliceGraph,
  WorkspaceState,
} from "./types.js";

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiError extends Error {
  constructor(public readonly error: ServiceError) {
    super(`${error.reason}: ${error.detail}`);
  }
}

export class MutationInFlight extends Error {
  constructor() {
    super("a mutation is already in flight");
  }
}

async function fail(response: Response): Promise<never> {
  let reason = response.statusText || "Error";
  let detail = "";
  try {
    const body = (await response.json()) as { reason?: string; detail?: string };
    if (body.reason) reason = body.reason;
    if (body.detail) detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError({ status: response.status, reason, detail });
}

export class ApiClient {
  private etag: string | null = null;
  private pending = false;

  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  get lastHash(): string | null {
    return this.etag;
  }

  get busy(): boolean {
    return this.pending;
  }

  private async readState(response: Response): Promise<WorkspaceState> {
    if (!response.ok) await fail(response);
    const state = (await response.json()) as WorkspaceState;
    this.etag = state.hash;
    return state;
  }

  async createWorkspace(document?: unknown): Promise<WorkspaceState> {
    const response = await this.fetchFn(`${this.base}/workspaces`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(document === undefined ? {} : { document }),
    });
    return this.readState(response);
  }

  async getWorkspace(id: string): Promise<WorkspaceState> {
    const response = await this.fetchFn(`${this.base}/workspaces/${id}`);
    return this.readState(response);
  }

  async getSlice(
    id: string,
    name: string,
    path: string,
  ): Promise<SliceGraph> {
    const query = new URLSearchParams({ path, format: "graph" });
    const response = await this.fetchFn(
      `${this.base}/workspaces/${id}/diagrams/${name}/slice?${query}`,
    );
    if (!response.ok) await fail(response);
    return (await response.json()) as SliceGraph;
  }

  async getSliceSvg(id: string, name: string, path: string): Promise<string> {
    const query = new URLSearchParams({ path, format: "svg" });
    const response = await this.fetchFn(
      `${this.base}/workspaces/${id}/diagrams/${name}/slice?${query}`,
    );
    if (!response.ok) await fail(response);
    return response.text();
  }

  async getLog(id: string): Promise<LogEntry[]> {
    const response = await this.fetchFn(`${this.base}/workspaces/${id}/log`);
    if (!response.ok) await fail(response);
    return ((await response.json()) as { log: LogEntry[] }).log;
  }

  private async mutate(url: string, body?: unknown): Promise<WorkspaceState> {
    if (this.pending) throw new MutationInFlight();
    this.pending = true;
    try {
      const headers: Record<string, string> = {
        "content-type": "application/json",
      };
      if (this.etag !== null) headers["if-match"] = this.etag;
      const response = await this.fetchFn(url, {
        method: "POST",
        headers,
        body: JSON.stringify(body ?? {}),
      });
      return await this.readState(response);
    } finally {
      this.pending = false;
    }
  }

  contract(
    id: string,
    name: string,
    body: ContractDirective,
  ): Promise<WorkspaceState> {
    return this.mutate(
      `${this.base}/workspaces/${id}/diagrams/${name}/contract`,
      body,
    );
  }

  expand(
    id: string,
    name: string,
    body: ExpandDirective,
  ): Promise<WorkspaceState> {
    return this.mutate(
      `${this.base}/workspaces/${id}/diagrams/${name}/expand`,
      body,
    );
  }

  undo(id: string): Promise<WorkspaceState> {
    return this.mutate(`${this.base}/workspaces/${id}/undo`);
  }
}
