/** Thin typed client for the detection service. Every non-2xx response
 * carries an {error, detail} envelope, surfaced as ApiError. */

import type {
  DocumentDetail,
  DocumentSummary,
  ErrorEnvelope,
  PairReport,
  PairSummary,
  Thresholds,
  Verdict,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail: string;

  constructor(status: number, envelope: ErrorEnvelope) {
    super(`${envelope.error}: ${envelope.detail}`);
    this.status = status;
    this.code = envelope.error;
    this.detail = envelope.detail;
  }
}

/** Network-level failure (service down), distinct from an API error. */
export class ServiceUnreachable extends Error {
  constructor(cause: unknown) {
    super(`service unreachable: ${String(cause)}`);
  }
}

export interface VerdictSubmission {
  reviewer: string;
  decision: string;
  note?: string;
  expected_token?: string;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base: string, fetchImpl?: FetchLike) {
    this.base = base.replace(/\/+$/, "");
    // bind: bare window.fetch throws Illegal invocation when detached
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.base + path, init);
    } catch (cause) {
      throw new ServiceUnreachable(cause);
    }
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const envelope =
        body && typeof body.error === "string" && typeof body.detail === "string"
          ? (body as ErrorEnvelope)
          : { error: `http_${response.status}`, detail: "malformed error body" };
      throw new ApiError(response.status, envelope);
    }
    return body as T;
  }

  health(): Promise<{ status: string; documents: number }> {
    return this.request("/health");
  }

  async documents(): Promise<DocumentSummary[]> {
    const data = await this.request<{ documents: DocumentSummary[] }>("/documents");
    return data.documents;
  }

  document(id: string): Promise<DocumentDetail> {
    return this.request(`/documents/${encodeURIComponent(id)}`);
  }

  async pairs(minFlag: string = "warning"): Promise<PairSummary[]> {
    const data = await this.request<{ pairs: PairSummary[] }>(
      `/pairs?min_flag=${encodeURIComponent(minFlag)}`,
    );
    return data.pairs;
  }

  report(first: string, second: string): Promise<PairReport> {
    return this.request(
      `/pairs/${encodeURIComponent(first)}/${encodeURIComponent(second)}/report`,
    );
  }

  submitVerdict(
    first: string,
    second: string,
    submission: VerdictSubmission,
  ): Promise<Verdict> {
    return this.request(
      `/pairs/${encodeURIComponent(first)}/${encodeURIComponent(second)}/verdict`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(submission),
      },
    );
  }

  async verdicts(): Promise<Verdict[]> {
    const data = await this.request<{ verdicts: Verdict[] }>("/verdicts");
    return data.verdicts;
  }

  thresholds(): Promise<Thresholds> {
    return this.request("/thresholds");
  }

  setThresholds(next: Thresholds): Promise<Thresholds> {
    return this.request("/thresholds", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(next),
    });
  }
}
