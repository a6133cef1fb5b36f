import { describe, expect, it } from "vitest";
import { ApiClient, ApiError } from "../src/api.js";
import { VerdictOutbox, conflictToken } from "../src/verdicts.js";
import { makeVerdict } from "./fixtures.js";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

/** fetch stub with a scriptable response queue and a call log */
function scriptedFetch(script: Array<() => Response | Error>) {
  const calls: { url: string; body: string | null }[] = [];
  const fetchImpl = async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, body: (init?.body as string) ?? null });
    const step = script.shift();
    if (!step) throw new Error("fetch script exhausted");
    const result = step();
    if (result instanceof Error) throw result;
    return result;
  };
  return { fetchImpl, calls };
}

describe("conflictToken", () => {
  it("pulls the active token out of the conflict detail", () => {
    const error = new ApiError(409, {
      error: "verdict_conflict",
      detail:
        "pair has an active verdict; supersede it by sending its token 9f2ab04c11de88e7",
    });
    expect(conflictToken(error)).toBe("9f2ab04c11de88e7");
  });

  it("returns null when no token is present", () => {
    const error = new ApiError(400, { error: "bad_request", detail: "nope" });
    expect(conflictToken(error)).toBeNull();
  });
});

describe("VerdictOutbox", () => {
  const submission = { reviewer: "rt", decision: "plagiarism", note: "" };

  it("stores on success", async () => {
    const verdict = makeVerdict();
    const { fetchImpl, calls } = scriptedFetch([() => jsonResponse(201, verdict)]);
    const outbox = new VerdictOutbox(new ApiClient("http://svc.test", fetchImpl));
    const outcome = await outbox.submit("doc-a", "doc-b", submission);
    expect(outcome).toEqual({ kind: "stored", verdict });
    expect(outbox.pending).toHaveLength(0);
    expect(calls[0].url).toBe("http://svc.test/pairs/doc-a/doc-b/verdict");
    expect(JSON.parse(calls[0].body!)).toEqual(submission);
  });

  it("reports a conflict with the active token", async () => {
    const { fetchImpl } = scriptedFetch([
      () =>
        jsonResponse(409, {
          error: "verdict_conflict",
          detail:
            "pair has an active verdict; supersede it by sending its token feedfacecafe0001",
        }),
    ]);
    const outbox = new VerdictOutbox(new ApiClient("http://svc.test", fetchImpl));
    const outcome = await outbox.submit("doc-a", "doc-b", submission);
    expect(outcome).toEqual({ kind: "conflict", activeToken: "feedfacecafe0001" });
    expect(outbox.pending).toHaveLength(0);
  });

  it("queues while the service is unreachable, then drains on retry", async () => {
    const verdict = makeVerdict();
    const { fetchImpl, calls } = scriptedFetch([
      () => new TypeError("fetch failed"),
      () => jsonResponse(201, verdict),
    ]);
    const outbox = new VerdictOutbox(new ApiClient("http://svc.test", fetchImpl));

    const outcome = await outbox.submit("doc-a", "doc-b", submission);
    expect(outcome).toEqual({ kind: "queued" });
    expect(outbox.pending).toHaveLength(1);

    const { stored, conflicts } = await outbox.retryPending();
    expect(stored).toEqual([verdict]);
    expect(conflicts).toHaveLength(0);
    expect(outbox.pending).toHaveLength(0);
    expect(calls).toHaveLength(2);
  });

  it("keeps entries queued when the retry is also unreachable", async () => {
    const { fetchImpl } = scriptedFetch([
      () => new TypeError("down"),
      () => new TypeError("still down"),
    ]);
    const outbox = new VerdictOutbox(new ApiClient("http://svc.test", fetchImpl));
    await outbox.submit("doc-a", "doc-b", submission);
    const { stored } = await outbox.retryPending();
    expect(stored).toHaveLength(0);
    expect(outbox.pending).toHaveLength(1);
  });

  it("resolves a queued entry that hits 409 as a conflict, not a resubmit loop", async () => {
    const { fetchImpl, calls } = scriptedFetch([
      () => new TypeError("down"),
      () =>
        jsonResponse(409, {
          error: "verdict_conflict",
          detail:
            "pair has an active verdict; supersede it by sending its token 0011223344556677",
        }),
    ]);
    const outbox = new VerdictOutbox(new ApiClient("http://svc.test", fetchImpl));
    await outbox.submit("doc-a", "doc-b", submission);

    const { stored, conflicts } = await outbox.retryPending();
    expect(stored).toHaveLength(0);
    expect(conflicts).toHaveLength(1);
    // the entry left the outbox for good; nothing can double-store
    expect(outbox.pending).toHaveLength(0);

    await outbox.retryPending();
    expect(calls).toHaveLength(2);
  });
});

describe("ApiClient error mapping", () => {
  it("wraps an envelope into ApiError fields", async () => {
    const { fetchImpl } = scriptedFetch([
      () => jsonResponse(404, { error: "unknown_document", detail: "no such id x" }),
    ]);
    const client = new ApiClient("http://svc.test", fetchImpl);
    const error = await client.document("x").catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(404);
    expect(error.code).toBe("unknown_document");
    expect(error.detail).toBe("no such id x");
  });

  it("synthesizes an envelope when the error body is not one", async () => {
    const { fetchImpl } = scriptedFetch([
      () => new Response("<html>gateway</html>", { status: 502 }),
    ]);
    const client = new ApiClient("http://svc.test", fetchImpl);
    const error = await client.health().catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.code).toBe("http_502");
  });

  it("unwraps list envelopes", async () => {
    const { fetchImpl, calls } = scriptedFetch([
      () => jsonResponse(200, { pairs: [] }),
      () => jsonResponse(200, { verdicts: [] }),
      () => jsonResponse(200, { documents: [] }),
    ]);
    const client = new ApiClient("http://svc.test/", fetchImpl);
    expect(await client.pairs("suspicious")).toEqual([]);
    expect(await client.verdicts()).toEqual([]);
    expect(await client.documents()).toEqual([]);
    expect(calls[0].url).toBe("http://svc.test/pairs?min_flag=suspicious");
  });
});
