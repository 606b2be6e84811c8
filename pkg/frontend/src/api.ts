import type {
  MetricsRequestBody,
  MetricsResponseBody,
  PlanDocument,
  RelationshipEntry,
  SolveRequestBody,
  ValidateResponseBody,
} from './types.js';

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number,
    public readonly detail: unknown = null,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

async function post<T>(base: string, path: string, body: unknown): Promise<T> {
  let response: Response;
  try {
    response = await fetch(`${base}${path}`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
  } catch (error) {
    const message = error instanceof Error ? error.message : 'network error';
    throw new ApiError(`cannot reach the solver service: ${message}`, 0);
  }
  const text = await response.text();
  let payload: unknown = null;
  if (text) {
    try {
      payload = JSON.parse(text);
    } catch {
      payload = text;
    }
  }
  if (!response.ok) {
    const detail =
      payload && typeof payload === 'object' && 'detail' in payload
        ? (payload as { detail: unknown }).detail
        : payload;
    const message =
      typeof detail === 'string' ? detail : `request failed with status ${response.status}`;
    throw new ApiError(message, response.status, detail);
  }
  return payload as T;
}

export class SolverClient {
  constructor(public baseUrl: string = '') {}

  solve(request: SolveRequestBody): Promise<PlanDocument> {
    return post(this.baseUrl, '/api/solve', request);
  }

  validate(relationships: RelationshipEntry[]): Promise<ValidateResponseBody> {
    return post(this.baseUrl, '/api/validate', { relationships });
  }

  metrics(request: MetricsRequestBody): Promise<MetricsResponseBody> {
    return post(this.baseUrl, '/api/metrics', request);
  }

  async health(): Promise<{ status: string; version: string }> {
    const response = await fetch(`${this.baseUrl}/api/health`);
    if (!response.ok) {
      throw new ApiError('health check failed', response.status);
    }
    return response.json();
  }
}

/**
 * Guard against out-of-order responses: only the most recently issued
 * token is current, so a slow older solve cannot overwrite a newer one.
 */
export function createRequestGate(): {
  begin: () => number;
  isCurrent: (token: number) => boolean;
} {
  let latest = 0;
  return {
    begin: () => {
      latest += 1;
      return latest;
    },
    isCurrent: (token: number) => token === latest,
  };
}
