// Typed client for the engine's v1 endpoints.
//
// The dashboard never computes a score: every number it shows travels
// through one of these calls.

import type {
  AnalyticsPayload,
  ChangeImpactReport,
  GraphEdit,
  GraphPayload,
  LayerSelection,
  PathsResponse,
  ProblemDocument,
  SortKey,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly problem: ProblemDocument,
  ) {
    super(problem.message);
    this.name = "ApiError";
  }
}

export class ConflictError extends ApiError {
  constructor(status: number, problem: ProblemDocument) {
    super(status, problem);
    this.name = "ConflictError";
  }

  get currentVersion(): number | null {
    const version = this.problem.details["current_version"];
    return typeof version === "number" ? version : null;
  }
}

async function parseProblem(response: Response): Promise<ProblemDocument> {
  try {
    const body = (await response.json()) as Partial<ProblemDocument>;
    return {
      code: body.code ?? "unknown",
      message: body.message ?? response.statusText,
      details: body.details ?? {},
    };
  } catch {
    return { code: "unknown", message: response.statusText, details: {} };
  }
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      const problem = await parseProblem(response);
      if (response.status === 409) throw new ConflictError(response.status, problem);
      throw new ApiError(response.status, problem);
    }
    return (await response.json()) as T;
  }

  health(): Promise<{ name: string; version: string }> {
    return this.request("/v1/health");
  }

  getGraph(graphId: string, options: { layer?: LayerSelection; version?: number } = {}):
      Promise<GraphPayload> {
    const query = new URLSearchParams();
    if (options.layer && options.layer !== "Cumulative") query.set("layer", options.layer);
    if (options.version != null) query.set("version", String(options.version));
    const suffix = query.size ? `?${query}` : "";
    return this.request(`/v1/graphs/${encodeURIComponent(graphId)}${suffix}`);
  }

  getAnalytics(graphId: string, version?: number): Promise<AnalyticsPayload> {
    const suffix = version != null ? `?version=${version}` : "";
    return this.request(`/v1/graphs/${encodeURIComponent(graphId)}/analytics${suffix}`);
  }

  getPaths(graphId: string, sort: SortKey, limit: number): Promise<PathsResponse> {
    return this.request(
      `/v1/graphs/${encodeURIComponent(graphId)}/paths?sort=${sort}&limit=${limit}`,
    );
  }

  patchGraph(graphId: string, ifMatchVersion: number, edits: GraphEdit[]):
      Promise<ChangeImpactReport> {
    return this.request(`/v1/graphs/${encodeURIComponent(graphId)}`, {
      method: "PATCH",
      headers: {
        "Content-Type": "application/json",
        "If-Match": String(ifMatchVersion),
      },
      body: JSON.stringify(edits),
    });
  }
}
