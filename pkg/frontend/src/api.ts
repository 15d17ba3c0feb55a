// Thin typed client for the recommender API. Configuration is just the
// base URL; every method maps 1:1 onto an endpoint.

import type {
  CorpusSummary,
  ErrorEnvelope,
  MutationResponse,
  RecommendationsResponse,
  SessionResponse,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly details: Record<string, unknown>;
  readonly status: number;

  constructor(status: number, body: ErrorEnvelope["error"]) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.details = body.details ?? {};
  }
}

async function parse<T>(response: Response): Promise<T> {
  const body = await response.json();
  if (!response.ok) {
    const envelope = (body as ErrorEnvelope).error ?? {
      code: "unknown_error",
      message: `request failed with status ${response.status}`,
      details: {},
    };
    throw new ApiError(response.status, envelope);
  }
  return body as T;
}

export interface Api {
  getCorpus(): Promise<CorpusSummary>;
  createSession(overrides?: Record<string, number>): Promise<SessionResponse>;
  getSession(sessionId: string): Promise<SessionResponse>;
  addItem(sessionId: string, item: string): Promise<MutationResponse>;
  removeItem(sessionId: string, item: string): Promise<MutationResponse>;
  getRecommendations(sessionId: string): Promise<RecommendationsResponse>;
  selectDish(
    sessionId: string,
    dish: string,
    recipeId: string,
    acceptedItems: string[],
  ): Promise<MutationResponse>;
}

export class HttpApi implements Api {
  constructor(private readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  private get<T>(path: string): Promise<T> {
    return fetch(this.url(path)).then((r) => parse<T>(r));
  }

  private send<T>(method: string, path: string, payload?: unknown): Promise<T> {
    return fetch(this.url(path), {
      method,
      headers: payload === undefined ? {} : { "Content-Type": "application/json" },
      body: payload === undefined ? undefined : JSON.stringify(payload),
    }).then((r) => parse<T>(r));
  }

  getCorpus(): Promise<CorpusSummary> {
    return this.get("/corpus");
  }

  createSession(overrides?: Record<string, number>): Promise<SessionResponse> {
    return this.send("POST", "/sessions", overrides ?? {});
  }

  getSession(sessionId: string): Promise<SessionResponse> {
    return this.get(`/sessions/${encodeURIComponent(sessionId)}`);
  }

  addItem(sessionId: string, item: string): Promise<MutationResponse> {
    return this.send(
      "POST",
      `/sessions/${encodeURIComponent(sessionId)}/items`,
      { item },
    );
  }

  removeItem(sessionId: string, item: string): Promise<MutationResponse> {
    return this.send(
      "DELETE",
      `/sessions/${encodeURIComponent(sessionId)}/items/${encodeURIComponent(item)}`,
    );
  }

  getRecommendations(sessionId: string): Promise<RecommendationsResponse> {
    return this.get(`/sessions/${encodeURIComponent(sessionId)}/recommendations`);
  }

  selectDish(
    sessionId: string,
    dish: string,
    recipeId: string,
    acceptedItems: string[],
  ): Promise<MutationResponse> {
    return this.send(
      "POST",
      `/sessions/${encodeURIComponent(sessionId)}/select`,
      { dish, recipe_id: recipeId, accepted_items: acceptedItems },
    );
  }
}
