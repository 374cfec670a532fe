/** Thin client for the registry-graph service.
 *
 * Everything the dashboard knows about the backend goes through this file:
 * four JSON endpoints plus the newline-delimited chat stream. No other
 * module issues requests.
 */

import type {
  ChatFrame,
  Dossier,
  SearchResponse,
  ToolPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly path: string,
    detail: string,
  ) {
    super(`${path} failed with ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

export interface ChatOptions {
  sessionId?: string;
  /** Selected entity; the key is omitted from the request when absent. */
  currentUid?: string;
  signal?: AbortSignal;
}

/** Split a byte stream into parsed NDJSON frames, tolerating arbitrary
 * chunk boundaries. Exposed for direct testing. */
export async function* parseNdjson(
  body: ReadableStream<Uint8Array>,
): AsyncGenerator<ChatFrame> {
  const reader = body.getReader();
  const decoder = new TextDecoder();
  let buffer = "";
  try {
    for (;;) {
      const { done, value } = await reader.read();
      if (done) break;
      buffer += decoder.decode(value, { stream: true });
      let newline;
      while ((newline = buffer.indexOf("\n")) >= 0) {
        const line = buffer.slice(0, newline).trim();
        buffer = buffer.slice(newline + 1);
        if (line) yield JSON.parse(line) as ChatFrame;
      }
    }
    buffer += decoder.decode();
    const tail = buffer.trim();
    if (tail) yield JSON.parse(tail) as ChatFrame;
  } finally {
    reader.releaseLock();
  }
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async get<T>(path: string, signal?: AbortSignal): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, { signal });
    if (!response.ok) {
      throw new ApiError(response.status, path, await response.text());
    }
    return (await response.json()) as T;
  }

  search(query: string, limit = 10, signal?: AbortSignal): Promise<SearchResponse> {
    const params = new URLSearchParams({ q: query, limit: String(limit) });
    return this.get(`/search?${params}`, signal);
  }

  entity(uid: string, signal?: AbortSignal): Promise<Dossier> {
    return this.get(`/entity/${encodeURIComponent(uid)}`, signal);
  }

  network(uid: string, signal?: AbortSignal): Promise<ToolPayload> {
    return this.get(`/entity/${encodeURIComponent(uid)}/network`, signal);
  }

  history(uid: string, signal?: AbortSignal): Promise<ToolPayload> {
    return this.get(`/entity/${encodeURIComponent(uid)}/history`, signal);
  }

  /** Stream one chat turn. Frames arrive in emission order: trace frames
   * while the agent works, then a single answer or error frame. */
  async *chat(message: string, options: ChatOptions = {}): AsyncGenerator<ChatFrame> {
    const body: Record<string, unknown> = { message, stream: true };
    if (options.sessionId) body.session_id = options.sessionId;
    if (options.currentUid) body.current_uid = options.currentUid;
    const response = await this.fetchFn(this.baseUrl + "/chat", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal: options.signal,
    });
    if (!response.ok) {
      throw new ApiError(response.status, "/chat", await response.text());
    }
    if (!response.body) throw new ApiError(0, "/chat", "response had no body");
    yield* parseNdjson(response.body);
  }
}
