// API client: request shapes, error mapping, latest-wins cancellation.
import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError, LatestWins } from "../src/api";
import scoreBasic from "../fixtures/score-basic.json";
import { DEFAULT_SNAPSHOT } from "../src/state";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient", () => {
  it("posts the snapshot to /api/score and returns the report", async () => {
    const fetchMock = vi.fn().mockImplementation(() => Promise.resolve(jsonResponse(scoreBasic)));
    vi.stubGlobal("fetch", fetchMock);
    const api = new ApiClient("");
    const report = await api.score(DEFAULT_SNAPSHOT);
    expect(report.pqr.value).toBe(1.44);
    const [url, init] = fetchMock.mock.calls[0]!;
    expect(url).toBe("/api/score");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body as string)).toEqual(DEFAULT_SNAPSHOT);
  });

  it("maps 400 bodies onto ApiError with the named field", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(
        jsonResponse({ error: "weights sum to 0.9", field: "domainWeights" }, 400),
      ),
    );
    const api = new ApiClient("");
    await expect(api.score(DEFAULT_SNAPSHOT)).rejects.toMatchObject({
      status: 400,
      field: "domainWeights",
    });
  });

  it("maps network failures onto ApiError with status 0", async () => {
    vi.stubGlobal("fetch", vi.fn().mockRejectedValue(new TypeError("connection refused")));
    const api = new ApiClient("");
    try {
      await api.health();
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(0);
    }
  });
});

describe("LatestWins", () => {
  it("aborts the previous in-flight request and keeps the newest", async () => {
    const latest = new LatestWins();
    const outcomes: string[] = [];

    const hang = (signal: AbortSignal, tag: string) =>
      new Promise<string>((resolve, reject) => {
        signal.addEventListener("abort", () => {
          outcomes.push(`aborted:${tag}`);
          const err = new Error("aborted");
          err.name = "AbortError";
          reject(err);
        });
      });

    const first = latest.run("k", (signal) => hang(signal, "first"));
    const second = latest.run("k", async () => "second-done");

    expect(await first).toBeNull(); // superseded
    expect(await second).toBe("second-done");
    expect(outcomes).toEqual(["aborted:first"]);
  });

  it("independent keys do not cancel each other", async () => {
    const latest = new LatestWins();
    const a = latest.run("a", async () => "a");
    const b = latest.run("b", async () => "b");
    expect(await a).toBe("a");
    expect(await b).toBe("b");
  });

  it("propagates real errors", async () => {
    const latest = new LatestWins();
    await expect(
      latest.run("k", async () => {
        throw new ApiError(500, "boom");
      }),
    ).rejects.toBeInstanceOf(ApiError);
  });
});
