/**
 * Thin typed HTTP client for the analytics service.
 * All methods resolve to parsed JSON bodies or reject with ApiError;
 * no response field is reinterpreted or recomputed on the way through.
 */

import type {
  AnalysisRequest,
  AnalysisResponse,
  CompareRequest,
  CompareResponse,
  ElementsResponse,
  KpisResponse,
  SequenceDetailResponse,
} from './types.js';

/** Subset of the fetch contract the client needs; injectable for tests. */
export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Non-2xx response, carrying the service's detail message when present. */
export class ApiError extends Error {
  readonly status: number;
  readonly detail: string;

  constructor(status: number, detail: string) {
    super(`HTTP ${status}: ${detail}`);
    this.name = 'ApiError';
    this.status = status;
    this.detail = detail;
  }

  /** True when the requested sequence belongs to a superseded snapshot. */
  get stale(): boolean {
    return this.status === 410;
  }

  /** True when the service has no snapshot yet or is briefly unreachable. */
  get retryable(): boolean {
    return this.status === 503 || this.status === 0;
  }
}

async function errorFrom(response: Response): Promise<ApiError> {
  let detail = response.statusText || 'request failed';
  try {
    const body = await response.json();
    if (typeof body.detail === 'string') {
      detail = body.detail;
    } else if (typeof body.error === 'string') {
      detail = body.error;
    }
  } catch {
    // Non-JSON error body; keep the status text.
  }
  return new ApiError(response.status, detail);
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, err instanceof Error ? err.message : String(err));
    }
    if (!response.ok) {
      throw await errorFrom(response);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  getKpis(): Promise<KpisResponse> {
    return this.request('/kpis');
  }

  getElements(): Promise<ElementsResponse> {
    return this.request('/elements');
  }

  analyze(req: AnalysisRequest): Promise<AnalysisResponse> {
    return this.post('/analysis', req);
  }

  compare(req: CompareRequest): Promise<CompareResponse> {
    return this.post('/analysis/compare', req);
  }

  getSequence(sequenceId: string, margin?: number): Promise<SequenceDetailResponse> {
    const suffix = margin === undefined ? '' : `?margin=${margin}`;
    return this.request(`/sequence/${encodeURIComponent(sequenceId)}${suffix}`);
  }
}
