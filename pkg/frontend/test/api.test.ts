import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, MutationInFlight } from "../src/api.js";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("ApiClient", () => {
  it("remembers the hash and sends it as If-Match on mutations", async () => {
    const seen: { url: string; headers: Record<string, string> }[] = [];
    const client = new ApiClient("", async (url, init) => {
      seen.push({
        url,
        headers: Object.fromEntries(
          Object.entries((init?.headers ?? {}) as Record<string, string>),
        ),
      });
      return jsonResponse(200, { id: "w1", hash: "abc", workspace: {} });
    });
    await client.getWorkspace("w1");
    expect(client.lastHash).toBe("abc");
    await client.contract("w1", "beads", {
      path: "",
      window: [0, 2],
      bias: null,
    });
    expect(seen[1]?.headers["if-match"]).toBe("abc");
  });

  it("surfaces the service's structured failure reason", async () => {
    const client = new ApiClient("", async () =>
      jsonResponse(422, {
        reason: "DeltaColimitFailed",
        detail: "step 1: Incomparable: classes 0 and 2 unrelated",
        step: 1,
      }),
    );
    await client.getWorkspace("w1").catch(() => undefined);
    let caught: unknown;
    try {
      await client.contract("w1", "opposed", {
        path: "",
        window: [0, 2],
        bias: null,
      });
    } catch (e) {
      caught = e;
    }
    expect(caught).toBeInstanceOf(ApiError);
    const error = caught as ApiError;
    expect(error.error.reason).toBe("DeltaColimitFailed");
    expect(error.error.status).toBe(422);
    expect(error.message).toContain("DeltaColimitFailed");
  });

  it("refuses a second mutation while one is in flight", async () => {
    let release: (r: Response) => void = () => undefined;
    const client = new ApiClient("", (_url, init) => {
      if (init?.method === "POST") {
        return new Promise<Response>((resolve) => {
          release = resolve;
        });
      }
      return Promise.resolve(
        jsonResponse(200, { id: "w1", hash: "h", workspace: {} }),
      );
    });
    const first = client.undo("w1");
    expect(client.busy).toBe(true);
    await expect(
      client.contract("w1", "beads", { path: "", window: [0, 2], bias: null }),
    ).rejects.toBeInstanceOf(MutationInFlight);
    release(jsonResponse(200, { id: "w1", hash: "h2", workspace: {} }));
    await first;
    expect(client.busy).toBe(false);
    expect(client.lastHash).toBe("h2");
  });

  it("clears the in-flight flag after a failure", async () => {
    const client = new ApiClient("", async () =>
      jsonResponse(409, { reason: "Conflict", detail: "stale" }),
    );
    await expect(client.undo("w1")).rejects.toBeInstanceOf(ApiError);
    expect(client.busy).toBe(false);
  });
});
