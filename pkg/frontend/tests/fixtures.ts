/** Builders for wire-shaped payloads used across suites. Values mirror
 * what the service emits; tests override just the fields they exercise. */

import type {
  CiteChannel,
  DocumentDetail,
  MathChannel,
  PairReport,
  SuspicionFlags,
  TextChannel,
  Thresholds,
  Verdict,
} from "../src/types.js";

export function textChannel(over: Partial<TextChannel> = {}): TextChannel {
  return {
    available: true,
    jaccard: 0,
    containment_first_in_second: 0,
    containment_second_in_first: 0,
    both_empty: false,
    matched_spans: [],
    ...over,
  };
}

export function mathChannel(over: Partial<MathChannel> = {}): MathChannel {
  return {
    available: false,
    histogram: 0,
    sequence: 0,
    category: "unrelated",
    evidence: [],
    ...over,
  };
}

export function citeChannel(over: Partial<CiteChannel> = {}): CiteChannel {
  return { available: false, coupling: 0, sequence: 0, ...over };
}

export function suspicionFlags(over: Partial<SuspicionFlags> = {}): SuspicionFlags {
  return {
    text: "none",
    math: "none",
    cite: "none",
    combined: "none",
    flagged: [],
    ...over,
  };
}

export interface ReportOverrides {
  first?: string;
  second?: string;
  first_year?: number;
  second_year?: number;
  text?: Partial<TextChannel>;
  math?: Partial<MathChannel>;
  cite?: Partial<CiteChannel>;
  flags?: Partial<SuspicionFlags>;
}

export function makeReport(over: ReportOverrides = {}): PairReport {
  return {
    pair: {
      first: over.first ?? "doc-a",
      second: over.second ?? "doc-b",
      first_year: over.first_year ?? 1998,
      second_year: over.second_year ?? 2004,
    },
    channels: {
      text: textChannel(over.text),
      math: mathChannel(over.math),
      cite: citeChannel(over.cite),
    },
    flags: suspicionFlags(over.flags),
  };
}

export function makeDoc(over: Partial<DocumentDetail> = {}): DocumentDetail {
  return {
    id: "doc-a",
    title: "On bounded operators",
    authors: ["R. Tanaka"],
    year: 1998,
    language: "en",
    abstract: "We study bounded operators.",
    body: "We study bounded operators on a separable Hilbert space.",
    formulae: [],
    references: [],
    citations: [],
    ...over,
  };
}

export function makeVerdict(over: Partial<Verdict> = {}): Verdict {
  return {
    first: "doc-a",
    second: "doc-b",
    reviewer: "rt",
    decision: "plagiarism",
    note: "",
    timestamp: "2026-08-22T10:00:00+00:00",
    token: "0123456789abcdef",
    ...over,
  };
}

export function defaultThresholds(): Thresholds {
  return {
    text: { warning: 0.12, suspicious: 0.2 },
    cite: { warning: 0.15, suspicious: 0.5 },
    math: { warning: 0.6, suspicious: 0.85 },
  };
}
