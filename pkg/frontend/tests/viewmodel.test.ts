import { describe, expect, it } from "vitest";
import { buildPairViewModel, formatScore } from "../src/viewmodel.js";
import { makeDoc, makeReport, makeVerdict } from "./fixtures.js";

describe("formatScore", () => {
  it("prints two decimals when available", () => {
    expect(formatScore(0.3271, true)).toBe("0.33");
    expect(formatScore(0, true)).toBe("0.00");
  });

  it("prints a dash when the channel is unavailable", () => {
    expect(formatScore(0.9, false)).toBe("-");
  });
});

describe("buildPairViewModel", () => {
  it("copies channel scores verbatim instead of recomputing", () => {
    const report = makeReport({
      text: {
        jaccard: 0.23,
        containment_first_in_second: 0.41,
        containment_second_in_first: 0.37,
      },
      math: { available: true, histogram: 0.66, sequence: 0.5, category: "equivalent" },
      cite: { available: true, coupling: 0.75, sequence: 0.8 },
      flags: { text: "suspicious", math: "warning", cite: "suspicious", combined: "suspicious" },
    });
    const vm = buildPairViewModel(report, makeDoc(), makeDoc({ id: "doc-b" }), []);

    const byName = Object.fromEntries(vm.channels.map((c) => [c.name, c]));
    expect(byName.text.scores.map((s) => s.value)).toEqual(["0.23", "0.41", "0.37"]);
    expect(byName.text.level).toBe("suspicious");
    expect(byName.math.scores.map((s) => s.value)).toEqual(["0.66", "0.50"]);
    expect(byName.cite.scores.map((s) => s.value)).toEqual(["0.75", "0.80"]);
    expect(vm.mathCategory).toBe("equivalent");
  });

  it("splits matched spans into per-side offsets", () => {
    const report = makeReport({
      text: {
        matched_spans: [
          { first_start: 3, first_end: 9, second_start: 14, second_end: 20 },
          { first_start: 30, first_end: 35, second_start: 0, second_end: 5 },
        ],
      },
    });
    const vm = buildPairViewModel(report, makeDoc(), makeDoc({ id: "doc-b" }), []);
    expect(vm.firstSpans).toEqual([
      { start: 3, end: 9 },
      { start: 30, end: 35 },
    ]);
    expect(vm.secondSpans).toEqual([
      { start: 14, end: 20 },
      { start: 0, end: 5 },
    ]);
  });

  it("collects formula evidence indexes per side", () => {
    const report = makeReport({
      math: { available: true, evidence: [[0, 2], [3, 2], [5, 1]] },
    });
    const vm = buildPairViewModel(report, makeDoc(), makeDoc({ id: "doc-b" }), []);
    expect([...vm.firstFormulaHits].sort()).toEqual([0, 3, 5]);
    expect([...vm.secondFormulaHits].sort()).toEqual([1, 2]);
  });

  it("hides the math category when the channel is unavailable", () => {
    const report = makeReport({
      math: { available: false, category: "unrelated" },
    });
    const vm = buildPairViewModel(report, makeDoc(), makeDoc({ id: "doc-b" }), []);
    expect(vm.mathCategory).toBeNull();
  });

  it("marks citations highlighted only when available and flagged", () => {
    const flagged = buildPairViewModel(
      makeReport({ cite: { available: true }, flags: { cite: "suspicious" } }),
      makeDoc(),
      makeDoc({ id: "doc-b" }),
      [],
    );
    expect(flagged.citeHighlighted).toBe(true);

    const quiet = buildPairViewModel(
      makeReport({ cite: { available: true }, flags: { cite: "none" } }),
      makeDoc(),
      makeDoc({ id: "doc-b" }),
      [],
    );
    expect(quiet.citeHighlighted).toBe(false);

    const unavailable = buildPairViewModel(
      makeReport({ cite: { available: false }, flags: { cite: "suspicious" } }),
      makeDoc(),
      makeDoc({ id: "doc-b" }),
      [],
    );
    expect(unavailable.citeHighlighted).toBe(false);
  });

  it("keeps only this pair's verdicts and treats the last as active", () => {
    const mine1 = makeVerdict({ decision: "unclear", token: "aaaaaaaaaaaaaaaa" });
    const other = makeVerdict({ first: "doc-x", second: "doc-y" });
    const mine2 = makeVerdict({ decision: "plagiarism", token: "bbbbbbbbbbbbbbbb" });
    const vm = buildPairViewModel(
      makeReport(),
      makeDoc(),
      makeDoc({ id: "doc-b" }),
      [mine1, other, mine2],
    );
    expect(vm.verdictHistory).toEqual([mine1, mine2]);
    expect(vm.activeVerdict).toBe(mine2);
  });

  it("has no active verdict for an unreviewed pair", () => {
    const vm = buildPairViewModel(makeReport(), makeDoc(), makeDoc({ id: "doc-b" }), []);
    expect(vm.activeVerdict).toBeNull();
    expect(vm.verdictHistory).toEqual([]);
  });
});
