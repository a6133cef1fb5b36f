/** HTML renderers for the workbench views. All pure string -> string so
 * they can be asserted on without a browser; app.ts owns the DOM. */

import { escapeHtml, renderHighlightedBody } from "./highlight.js";
import { bestScore } from "./queue.js";
import type { PairSummary, Thresholds } from "./types.js";
import type { PairViewModel } from "./viewmodel.js";
import { VERDICT_DECISIONS } from "./types.js";

export function renderQueue(pairs: PairSummary[], selectedKey: string | null): string {
  if (pairs.length === 0) {
    return '<p class="empty">No pairs at this flag level. Lower the thresholds or the filter to see more.</p>';
  }
  const rows = pairs
    .map((pair) => {
      const key = `${pair.first}::${pair.second}`;
      const selected = key === selectedKey ? " selected" : "";
      const score = bestScore(pair).toFixed(2);
      const channels = (["text", "math", "cite"] as const)
        .map((ch) => {
          const value = pair.scores[ch];
          const cell = value === null ? "-" : value.toFixed(2);
          return `<td class="score level-${pair.flags[ch]}">${cell}</td>`;
        })
        .join("");
      return (
        `<tr class="pair-row${selected}" data-first="${escapeHtml(pair.first)}" ` +
        `data-second="${escapeHtml(pair.second)}">` +
        `<td><span class="badge level-${pair.flags.combined}">${pair.flags.combined}</span></td>` +
        `<td class="ids">${escapeHtml(pair.first)} / ${escapeHtml(pair.second)}</td>` +
        channels +
        `<td class="score best">${score}</td></tr>`
      );
    })
    .join("");
  return (
    '<table class="queue"><thead><tr>' +
    "<th>flag</th><th>pair</th><th>text</th><th>math</th><th>cite</th><th>best</th>" +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

function renderFormulae(
  formulae: { raw: string }[],
  hits: Set<number>,
): string {
  if (formulae.length === 0) return '<p class="none">no formulae</p>';
  const items = formulae
    .map((f, i) => {
      const cls = hits.has(i) ? ' class="hl-math"' : "";
      return `<li${cls}><pre>${escapeHtml(f.raw)}</pre></li>`;
    })
    .join("");
  return `<ol class="formulae">${items}</ol>`;
}

function renderReferences(refs: { raw: string }[], highlighted: boolean): string {
  if (refs.length === 0) return '<p class="none">no references</p>';
  const cls = highlighted ? "references hl-cite" : "references";
  const items = refs.map((r) => `<li>${escapeHtml(r.raw)}</li>`).join("");
  return `<ol class="${cls}">${items}</ol>`;
}

function renderSide(vm: PairViewModel, side: "first" | "second"): string {
  const doc = side === "first" ? vm.first : vm.second;
  const spans = side === "first" ? vm.firstSpans : vm.secondSpans;
  const hits = side === "first" ? vm.firstFormulaHits : vm.secondFormulaHits;
  return (
    `<article class="doc" data-side="${side}">` +
    `<header><h3>${escapeHtml(doc.id)}</h3>` +
    `<p>${escapeHtml(doc.title)} (${doc.year}), ${escapeHtml(doc.authors.join(", "))}</p></header>` +
    `<div class="body-pane" data-side="${side}">` +
    renderHighlightedBody(doc.body, spans, side) +
    "</div>" +
    `<section class="math-pane"><h4>formulae</h4>${renderFormulae(doc.formulae, hits)}</section>` +
    `<section class="cite-pane"><h4>references</h4>` +
    renderReferences(doc.references, vm.citeHighlighted) +
    "</section></article>"
  );
}

export function renderComparison(vm: PairViewModel): string {
  const strip = vm.channels
    .map((ch) => {
      const cells = ch.scores
        .map((s) => `<span class="cell">${s.label} <b>${s.value}</b></span>`)
        .join("");
      return (
        `<div class="channel channel-${ch.name} level-${ch.level}">` +
        `<h4>${ch.name}</h4>${cells}</div>`
      );
    })
    .join("");
  const category = vm.mathCategory
    ? `<p class="category">formula reuse: <b>${escapeHtml(vm.mathCategory)}</b></p>`
    : "";
  return (
    `<header class="pair-header"><h2>${escapeHtml(vm.report.pair.first)} ` +
    `(${vm.report.pair.first_year}) vs ${escapeHtml(vm.report.pair.second)} ` +
    `(${vm.report.pair.second_year})</h2>` +
    `<span class="badge level-${vm.report.flags.combined}">${vm.report.flags.combined}</span>` +
    `</header><div class="channel-strip">${strip}</div>${category}` +
    `<div class="compare">${renderSide(vm, "first")}${renderSide(vm, "second")}</div>`
  );
}

export function renderVerdictPanel(vm: PairViewModel): string {
  const options = VERDICT_DECISIONS.map(
    (d) => `<option value="${d}">${d.replaceAll("_", " ")}</option>`,
  ).join("");
  const history =
    vm.verdictHistory.length === 0
      ? '<p class="none">no verdicts yet</p>'
      : "<ol class=\"verdict-history\">" +
        vm.verdictHistory
          .map(
            (v) =>
              `<li><b>${escapeHtml(v.decision)}</b> by ${escapeHtml(v.reviewer)} ` +
              `at ${escapeHtml(v.timestamp)}` +
              (v.note ? `: ${escapeHtml(v.note)}` : "") +
              "</li>",
          )
          .join("") +
        "</ol>";
  return (
    '<form class="verdict-form">' +
    `<label>decision <select name="decision">${options}</select></label>` +
    '<label>reviewer <input name="reviewer" required></label>' +
    '<label>rationale <textarea name="note" rows="2"></textarea></label>' +
    '<button type="submit">record verdict</button>' +
    '<div class="verdict-status" aria-live="polite"></div>' +
    "</form>" +
    `<section class="history"><h4>history</h4>${history}</section>`
  );
}

export function renderThresholdPanel(thresholds: Thresholds): string {
  const slider = (name: string, value: number) =>
    `<input type="range" step="0.01" min="0" max="1" ` +
    `name="${name}" value="${value}">` +
    `<output for="${name}">${value.toFixed(2)}</output>`;
  const rows = (["text", "math", "cite"] as const)
    .map(
      (ch) =>
        `<tr><th>${ch}</th>` +
        `<td>${slider(`${ch}.warning`, thresholds[ch].warning)}</td>` +
        `<td>${slider(`${ch}.suspicious`, thresholds[ch].suspicious)}</td></tr>`,
    )
    .join("");
  return (
    '<form class="threshold-form"><table>' +
    "<thead><tr><th></th><th>warning</th><th>suspicious</th></tr></thead>" +
    `<tbody>${rows}</tbody></table>` +
    '<button type="submit">apply thresholds</button>' +
    '<div class="threshold-status" aria-live="polite"></div></form>'
  );
}
