/** Verdict submission with conflict reconciliation and an offline
 * outbox.
 *
 * The server keeps one active verdict per pair; replacing it requires
 * echoing its token. A 409 therefore means "someone got there first":
 * surface the active token so the reviewer can look at the latest state
 * and resubmit deliberately. Submissions made while the service is down
 * wait in the outbox; a retry that hits a 409 resolves that entry as a
 * conflict instead of looping, so nothing is ever stored twice.
 */

import { ApiClient, ApiError, ServiceUnreachable } from "./api.js";
import type { VerdictSubmission } from "./api.js";
import type { Verdict } from "./types.js";

const TOKEN_RE = /\b[0-9a-f]{16}\b/;

export function conflictToken(error: ApiError): string | null {
  const match = TOKEN_RE.exec(error.detail);
  return match ? match[0] : null;
}

export type SubmitOutcome =
  | { kind: "stored"; verdict: Verdict }
  | { kind: "conflict"; activeToken: string | null }
  | { kind: "rejected"; error: ApiError }
  | { kind: "queued" };

export interface PendingVerdict {
  first: string;
  second: string;
  submission: VerdictSubmission;
}

export class VerdictOutbox {
  private readonly client: ApiClient;
  readonly pending: PendingVerdict[] = [];

  constructor(client: ApiClient) {
    this.client = client;
  }

  async submit(
    first: string,
    second: string,
    submission: VerdictSubmission,
  ): Promise<SubmitOutcome> {
    try {
      const verdict = await this.client.submitVerdict(first, second, submission);
      return { kind: "stored", verdict };
    } catch (error) {
      if (error instanceof ServiceUnreachable) {
        this.pending.push({ first, second, submission });
        return { kind: "queued" };
      }
      if (error instanceof ApiError && error.status === 409) {
        return { kind: "conflict", activeToken: conflictToken(error) };
      }
      if (error instanceof ApiError) {
        return { kind: "rejected", error };
      }
      throw error;
    }
  }

  /** Retry everything queued. Entries that store or conflict leave the
   * outbox; only unreachable ones stay. */
  async retryPending(): Promise<{ stored: Verdict[]; conflicts: PendingVerdict[] }> {
    const stored: Verdict[] = [];
    const conflicts: PendingVerdict[] = [];
    const remaining: PendingVerdict[] = [];
    for (const entry of this.pending) {
      try {
        stored.push(
          await this.client.submitVerdict(entry.first, entry.second, entry.submission),
        );
      } catch (error) {
        if (error instanceof ServiceUnreachable) {
          remaining.push(entry);
        } else if (error instanceof ApiError && error.status === 409) {
          conflicts.push(entry);
        } else if (error instanceof ApiError) {
          conflicts.push(entry);
        } else {
          throw error;
        }
      }
    }
    this.pending.length = 0;
    this.pending.push(...remaining);
    return { stored, conflicts };
  }
}
