/** Typed client for the session service.  Every mutation goes through the
 * server; responses replace the local view wholesale. */

import type {
  DecisionResponse,
  ErrorDocument,
  GraphDocument,
  SessionResponse,
  TraceDocument,
  UploadResponse,
  ViewDocument,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly detail: Record<string, unknown> = {},
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    const doc = await response.json();
    if (!response.ok) {
      const err = doc as ErrorDocument;
      throw new ApiError(response.status, err.code ?? "error", err.message ?? "request failed", err.detail ?? {});
    }
    return doc as T;
  }

  uploadModel(model: unknown): Promise<UploadResponse> {
    return this.request("POST", "/models", model);
  }

  modelGraph(modelId: string): Promise<GraphDocument> {
    return this.request("GET", `/models/${modelId}/graph`);
  }

  newSession(modelId: string): Promise<SessionResponse> {
    return this.request("POST", "/sessions", { model_id: modelId });
  }

  view(sessionId: string): Promise<ViewDocument> {
    return this.request("GET", `/sessions/${sessionId}/view`);
  }

  takeDecision(sessionId: string, decision: string, value: unknown): Promise<DecisionResponse> {
    return this.request("POST", `/sessions/${sessionId}/decisions`, { decision, value });
  }

  whatif(sessionId: string, decision: string, value: unknown): Promise<{ trace: TraceDocument }> {
    return this.request("POST", `/sessions/${sessionId}/whatif`, { decision, value });
  }

  retract(sessionId: string, decision: string): Promise<{ view: ViewDocument }> {
    return this.request("DELETE", `/sessions/${sessionId}/decisions/${decision}`);
  }
}
