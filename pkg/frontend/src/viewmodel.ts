/** Pair view model: a 1:1 projection of the server's report plus the
 * two documents and verdict history. Scores are copied, never derived;
 * the only client-side work is picking spans apart per side. */

import type {
  DocumentDetail,
  FlagLevel,
  PairReport,
  Verdict,
} from "./types.js";
import type { Span } from "./highlight.js";

export interface ChannelView {
  name: "text" | "math" | "cite";
  available: boolean;
  level: FlagLevel;
  /** score cells as the server reported them; "-" when unavailable */
  scores: { label: string; value: string }[];
}

export interface PairViewModel {
  first: DocumentDetail;
  second: DocumentDetail;
  report: PairReport;
  channels: ChannelView[];
  firstSpans: Span[];
  secondSpans: Span[];
  /** formula indexes with math-channel evidence, per side */
  firstFormulaHits: Set<number>;
  secondFormulaHits: Set<number>;
  mathCategory: string | null;
  citeHighlighted: boolean;
  verdictHistory: Verdict[];
  activeVerdict: Verdict | null;
}

export function formatScore(value: number, available: boolean): string {
  return available ? value.toFixed(2) : "-";
}

export function buildPairViewModel(
  report: PairReport,
  first: DocumentDetail,
  second: DocumentDetail,
  allVerdicts: Verdict[],
): PairViewModel {
  const { text, math, cite } = report.channels;
  const channels: ChannelView[] = [
    {
      name: "text",
      available: text.available,
      level: report.flags.text,
      scores: [
        { label: "jaccard", value: formatScore(text.jaccard, text.available) },
        {
          label: "containment 1 in 2",
          value: formatScore(text.containment_first_in_second, text.available),
        },
        {
          label: "containment 2 in 1",
          value: formatScore(text.containment_second_in_first, text.available),
        },
      ],
    },
    {
      name: "math",
      available: math.available,
      level: report.flags.math,
      scores: [
        { label: "histogram", value: formatScore(math.histogram, math.available) },
        { label: "sequence", value: formatScore(math.sequence, math.available) },
      ],
    },
    {
      name: "cite",
      available: cite.available,
      level: report.flags.cite,
      scores: [
        { label: "coupling", value: formatScore(cite.coupling, cite.available) },
        { label: "order", value: formatScore(cite.sequence, cite.available) },
      ],
    },
  ];

  const history = allVerdicts.filter(
    (v) => v.first === report.pair.first && v.second === report.pair.second,
  );

  return {
    first,
    second,
    report,
    channels,
    firstSpans: text.matched_spans.map((s) => ({
      start: s.first_start,
      end: s.first_end,
    })),
    secondSpans: text.matched_spans.map((s) => ({
      start: s.second_start,
      end: s.second_end,
    })),
    firstFormulaHits: new Set(math.evidence.map(([i]) => i)),
    secondFormulaHits: new Set(math.evidence.map(([, j]) => j)),
    mathCategory: math.available ? math.category : null,
    citeHighlighted: cite.available && report.flags.cite !== "none",
    verdictHistory: history,
    // the log is append-only, so the latest entry is the active one
    activeVerdict: history[history.length - 1] ?? null,
  };
}
