/** Turn server-provided char spans into renderable text segments.
 *
 * Offsets arrive as [start, end) into the raw document body. Overlapping
 * or touching spans merge; anything outside the text clamps. The
 * segments partition the input exactly, so joining them reproduces it.
 */

export interface Span {
  start: number;
  end: number;
}

export interface Segment {
  text: string;
  highlighted: boolean;
}

export function mergeSpans(spans: Span[], textLength: number): Span[] {
  const clamped = spans
    .map((s) => ({
      start: Math.max(0, Math.min(s.start, textLength)),
      end: Math.max(0, Math.min(s.end, textLength)),
    }))
    .filter((s) => s.end > s.start)
    .sort((a, b) => a.start - b.start || a.end - b.end);
  const merged: Span[] = [];
  for (const span of clamped) {
    const last = merged[merged.length - 1];
    if (last && span.start <= last.end) {
      last.end = Math.max(last.end, span.end);
    } else {
      merged.push({ ...span });
    }
  }
  return merged;
}

export function segmentText(text: string, spans: Span[]): Segment[] {
  const merged = mergeSpans(spans, text.length);
  const segments: Segment[] = [];
  let cursor = 0;
  for (const span of merged) {
    if (span.start > cursor) {
      segments.push({ text: text.slice(cursor, span.start), highlighted: false });
    }
    segments.push({ text: text.slice(span.start, span.end), highlighted: true });
    cursor = span.end;
  }
  if (cursor < text.length) {
    segments.push({ text: text.slice(cursor), highlighted: false });
  }
  return segments;
}

export function escapeHtml(raw: string): string {
  return raw
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

/** Render one side's body with its text-channel highlights. Each mark
 * keeps the ORIGINAL span-pair index in data-span so a click can find
 * the counterpart region in the other document; overlapping spans keep
 * only their non-overlapped tail rather than being merged away. */
export function renderHighlightedBody(
  text: string,
  spans: Span[],
  side: "first" | "second",
): string {
  const ordered = spans
    .map((span, index) => ({
      start: Math.max(0, Math.min(span.start, text.length)),
      end: Math.max(0, Math.min(span.end, text.length)),
      index,
    }))
    .filter((s) => s.end > s.start)
    .sort((a, b) => a.start - b.start || a.end - b.end);
  const parts: string[] = [];
  let cursor = 0;
  for (const span of ordered) {
    const start = Math.max(span.start, cursor);
    if (start >= span.end) continue;
    if (start > cursor) {
      parts.push(escapeHtml(text.slice(cursor, start)));
    }
    parts.push(
      `<mark class="hl-text" data-side="${side}" data-span="${span.index}">` +
        escapeHtml(text.slice(start, span.end)) +
        "</mark>",
    );
    cursor = span.end;
  }
  if (cursor < text.length) {
    parts.push(escapeHtml(text.slice(cursor)));
  }
  return parts.join("");
}
