import { describe, expect, it } from "vitest";
import { bestScore, filterPairs, pairKey, sortPairs } from "../src/queue.js";
import type { PairSummary, SuspicionFlags } from "../src/types.js";

function flags(partial: Partial<SuspicionFlags>): SuspicionFlags {
  const base: SuspicionFlags = {
    text: "none",
    math: "none",
    cite: "none",
    combined: "none",
    flagged: [],
  };
  return { ...base, ...partial };
}

function pair(
  first: string,
  second: string,
  f: Partial<SuspicionFlags>,
  scores: Partial<PairSummary["scores"]>,
): PairSummary {
  return {
    first,
    second,
    flags: flags(f),
    scores: { text: null, math: null, cite: null, ...scores },
  };
}

describe("bestScore", () => {
  it("takes the max over non-null channels", () => {
    expect(bestScore(pair("a", "b", {}, { text: 0.2, cite: 0.5 }))).toBe(0.5);
  });

  it("is zero when every channel is null", () => {
    expect(bestScore(pair("a", "b", {}, {}))).toBe(0);
  });
});

describe("sortPairs", () => {
  it("puts suspicious pairs above warnings, then sorts by strength", () => {
    const weakWarning = pair(
      "d-3",
      "d-4",
      { text: "warning", combined: "warning" },
      { text: 0.14 },
    );
    const strongWarning = pair(
      "d-5",
      "d-6",
      { text: "warning", combined: "warning" },
      { text: 0.18 },
    );
    const suspicious = pair(
      "d-1",
      "d-2",
      { text: "suspicious", combined: "suspicious" },
      { text: 0.23 },
    );
    const sorted = sortPairs([weakWarning, strongWarning, suspicious]);
    expect(sorted.map((p) => p.first)).toEqual(["d-1", "d-5", "d-3"]);
  });

  it("breaks full ties by pair ids", () => {
    const a = pair("a-1", "a-2", { combined: "warning" }, { text: 0.2 });
    const b = pair("b-1", "b-2", { combined: "warning" }, { text: 0.2 });
    expect(sortPairs([b, a]).map((p) => p.first)).toEqual(["a-1", "b-1"]);
  });

  it("does not mutate its input", () => {
    const input = [
      pair("z-1", "z-2", { combined: "none" }, {}),
      pair("a-1", "a-2", { combined: "suspicious" }, { text: 0.9 }),
    ];
    sortPairs(input);
    expect(input[0].first).toBe("z-1");
  });
});

describe("filterPairs", () => {
  const pairs = [
    pair("p-1", "p-2", { text: "suspicious", combined: "suspicious" }, { text: 0.3 }),
    pair("p-3", "p-4", { cite: "suspicious", combined: "suspicious" }, { cite: 0.6 }),
    pair("p-5", "p-6", { text: "warning", combined: "warning" }, { text: 0.14 }),
    pair("p-7", "p-8", { combined: "none" }, { text: 0.05 }),
  ];

  it("filters on the combined flag by default", () => {
    const kept = filterPairs(pairs, { minLevel: "suspicious", channel: "any" });
    expect(kept.map((p) => p.first)).toEqual(["p-1", "p-3"]);
  });

  it("filters on a single channel's own flag", () => {
    const kept = filterPairs(pairs, { minLevel: "suspicious", channel: "text" });
    expect(kept.map((p) => p.first)).toEqual(["p-1"]);
  });

  it("warning floor keeps suspicious pairs too", () => {
    const kept = filterPairs(pairs, { minLevel: "warning", channel: "any" });
    expect(kept).toHaveLength(3);
  });
});

describe("pairKey", () => {
  it("is stable and order-sensitive", () => {
    expect(pairKey("a", "b")).toBe("a::b");
    expect(pairKey("a", "b")).not.toBe(pairKey("b", "a"));
  });
});
