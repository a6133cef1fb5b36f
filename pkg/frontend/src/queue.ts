/** Triage queue ordering and filtering over server pair summaries.
 * Order: combined flag level first, then the pair's best channel score,
 * then ids, so equal-level pairs rank by how strong the evidence is. */

import { FLAG_ORDER } from "./types.js";
import type { ChannelName, FlagLevel, PairSummary } from "./types.js";

export function bestScore(pair: PairSummary): number {
  const values = [pair.scores.text, pair.scores.math, pair.scores.cite];
  return values.reduce<number>((acc, v) => (v !== null && v > acc ? v : acc), 0);
}

export function sortPairs(pairs: PairSummary[]): PairSummary[] {
  return [...pairs].sort((a, b) => {
    const byLevel = FLAG_ORDER[b.flags.combined] - FLAG_ORDER[a.flags.combined];
    if (byLevel !== 0) return byLevel;
    const byScore = bestScore(b) - bestScore(a);
    if (byScore !== 0) return byScore;
    return a.first < b.first || (a.first === b.first && a.second < b.second)
      ? -1
      : 1;
  });
}

export interface QueueFilter {
  minLevel: FlagLevel;
  /** only pairs where this channel itself is flagged at minLevel+ */
  channel: ChannelName | "any";
}

export function filterPairs(
  pairs: PairSummary[],
  filter: QueueFilter,
): PairSummary[] {
  const floor = FLAG_ORDER[filter.minLevel];
  return pairs.filter((pair) => {
    if (filter.channel === "any") {
      return FLAG_ORDER[pair.flags.combined] >= floor;
    }
    return FLAG_ORDER[pair.flags[filter.channel]] >= floor;
  });
}

export function pairKey(first: string, second: string): string {
  return `${first}::${second}`;
}
