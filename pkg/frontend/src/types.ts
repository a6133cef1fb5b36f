/** Wire types for the detection service. Shapes mirror the server's
 * response schemas one to one; nothing here is computed client-side. */

export type FlagLevel = "none" | "warning" | "suspicious";

export type ChannelName = "text" | "math" | "cite";

export interface SuspicionFlags {
  text: FlagLevel;
  math: FlagLevel;
  cite: FlagLevel;
  combined: FlagLevel;
  flagged: string[];
}

export interface MatchedSpan {
  first_start: number;
  first_end: number;
  second_start: number;
  second_end: number;
}

export interface TextChannel {
  available: boolean;
  jaccard: number;
  containment_first_in_second: number;
  containment_second_in_first: number;
  both_empty: boolean;
  matched_spans: MatchedSpan[];
}

export interface MathChannel {
  available: boolean;
  histogram: number;
  sequence: number;
  category: string;
  /** pairs of formula indexes, [index in first, index in second] */
  evidence: [number, number][];
}

export interface CiteChannel {
  available: boolean;
  coupling: number;
  sequence: number;
}

export interface PairReport {
  pair: {
    first: string;
    second: string;
    first_year: number;
    second_year: number;
  };
  channels: {
    text: TextChannel;
    math: MathChannel;
    cite: CiteChannel;
  };
  flags: SuspicionFlags;
}

export interface PairSummary {
  first: string;
  second: string;
  flags: SuspicionFlags;
  scores: { text: number | null; math: number | null; cite: number | null };
}

export interface DocumentSummary {
  id: string;
  title: string;
  authors: string[];
  year: number;
  language: string;
  journal?: string | null;
  formula_count?: number;
  reference_count?: number;
}

export interface FormulaJson {
  raw: string;
  tokens: { kind: string; value: string }[];
  position: number;
}

export interface DocumentDetail {
  id: string;
  title: string;
  authors: string[];
  year: number;
  language: string;
  abstract: string;
  body: string;
  journal?: string;
  series?: string;
  publisher?: string;
  formulae: FormulaJson[];
  references: { raw: string; normalized?: unknown }[];
  citations: { position: number; ref: number }[];
}

export interface Verdict {
  first: string;
  second: string;
  reviewer: string;
  decision: string;
  note: string;
  timestamp: string;
  token: string;
}

export interface ChannelThreshold {
  warning: number;
  suspicious: number;
}

export interface Thresholds {
  text: ChannelThreshold;
  cite: ChannelThreshold;
  math: ChannelThreshold;
}

export interface ErrorEnvelope {
  error: string;
  detail: string;
}

export const FLAG_ORDER: Record<FlagLevel, number> = {
  none: 0,
  warning: 1,
  suspicious: 2,
};

export const VERDICT_DECISIONS = [
  "plagiarism",
  "legitimate_reuse",
  "translation",
  "topical_relatedness",
  "compilation",
  "identical",
  "retracted",
  "distribution_stopped",
  "unclear",
  "no_reuse",
] as const;
