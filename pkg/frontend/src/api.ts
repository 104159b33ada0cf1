// Typed client for the workbench HTTP API. The UI computes no scores itself:
// every number it displays came out of one of these calls.

import type {
  IndexEntry,
  ProblemDoc,
  ProjectionRequest,
  ScoreReportDoc,
  SeriesDoc,
  SnapshotDoc,
  SolutionDoc,
} from "./types";

export class ApiError extends Error {
  readonly status: number;
  readonly field: string | null;

  constructor(status: number, message: string, field: string | null = null) {
    super(message);
    this.status = status;
    this.field = field;
  }
}

async function request<T>(url: string, init: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    if ((err as Error).name === "AbortError") throw err;
    throw new ApiError(0, `API unreachable: ${(err as Error).message}`);
  }
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    // non-JSON error bodies fall through to the status check below
  }
  if (!response.ok) {
    const doc = body as { error?: string; field?: string | null } | null;
    throw new ApiError(
      response.status,
      doc?.error ?? `HTTP ${response.status}`,
      doc?.field ?? null,
    );
  }
  return body as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private post<T>(path: string, payload: unknown, signal?: AbortSignal): Promise<T> {
    return request<T>(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
      signal,
    });
  }

  private get<T>(path: string, signal?: AbortSignal): Promise<T> {
    return request<T>(`${this.baseUrl}${path}`, { method: "GET", signal });
  }

  health(): Promise<{ status: string }> {
    return this.get("/api/health");
  }

  snapshots(): Promise<IndexEntry[]> {
    return this.get("/api/snapshots");
  }

  snapshot(id: string): Promise<SnapshotDoc> {
    return this.get(`/api/snapshots/${encodeURIComponent(id)}`);
  }

  saveSnapshot(doc: SnapshotDoc): Promise<{ id: string }> {
    return this.post("/api/snapshots", doc);
  }

  score(snapshot: SnapshotDoc, signal?: AbortSignal): Promise<ScoreReportDoc> {
    return this.post("/api/score", snapshot, signal);
  }

  project(params: ProjectionRequest, signal?: AbortSignal): Promise<SeriesDoc> {
    return this.post("/api/project", params, signal);
  }

  optimize(problem: ProblemDoc, signal?: AbortSignal): Promise<SolutionDoc> {
    return this.post("/api/optimize", problem, signal);
  }

  schema(name: string): Promise<Record<string, unknown>> {
    return this.get(`/api/schema/${encodeURIComponent(name)}`);
  }
}

/** Per-key in-flight cancellation: a new run aborts the previous one, so each
 * panel only ever renders its latest response. */
export class LatestWins {
  private controllers = new Map<string, AbortController>();

  async run<T>(key: string, fn: (signal: AbortSignal) => Promise<T>): Promise<T | null> {
    this.controllers.get(key)?.abort();
    const controller = new AbortController();
    this.controllers.set(key, controller);
    try {
      return await fn(controller.signal);
    } catch (err) {
      if ((err as Error).name === "AbortError") return null; // superseded
      throw err;
    } finally {
      if (this.controllers.get(key) === controller) {
        this.controllers.delete(key);
      }
    }
  }
}
