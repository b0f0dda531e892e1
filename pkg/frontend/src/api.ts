import type { AskResponse, StageFailure } from "./types.js";

export class ApiError extends Error {
  readonly stage: string;
  readonly status: number;
  readonly position?: StageFailure["position"];

  constructor(status: number, failure: StageFailure) {
    super(failure.message);
    this.status = status;
    this.stage = failure.stage;
    this.position = failure.position;
  }
}

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export interface AskRequest {
  nl?: string;
  ir?: string;
  k?: number;
}

async function failureOf(response: Response): Promise<StageFailure> {
  try {
    const body = await response.json();
    if (body && typeof body.message === "string") {
      return { stage: body.stage ?? "server", message: body.message, position: body.position };
    }
  } catch {
    // fall through to the generic failure
  }
  return { stage: "server", message: `request failed (${response.status})` };
}

export async function ask(
  request: AskRequest,
  fetchFn: FetchLike = fetch,
  base = "",
): Promise<AskResponse> {
  const response = await fetchFn(`${base}/api/ask`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(request),
  });
  if (!response.ok) {
    throw new ApiError(response.status, await failureOf(response));
  }
  return (await response.json()) as AskResponse;
}

export async function fetchEntity(
  id: string,
  fetchFn: FetchLike = fetch,
  base = "",
): Promise<Record<string, unknown>> {
  const response = await fetchFn(`${base}/api/entity/${encodeURIComponent(id)}`);
  if (!response.ok) {
    throw new ApiError(response.status, await failureOf(response));
  }
  return (await response.json()) as Record<string, unknown>;
}
