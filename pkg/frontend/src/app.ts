/** DOM wiring for the workbench. The service is the source of truth;
 * this file only moves server payloads into the renderers and user
 * input back to the service.
 *
 * The API base defaults to the service's default port on localhost and
 * can be overridden with ?api=http://host:port.
 */

import { ApiClient, ApiError, ServiceUnreachable } from "./api.js";
import { filterPairs, pairKey, sortPairs } from "./queue.js";
import {
  renderComparison,
  renderQueue,
  renderThresholdPanel,
  renderVerdictPanel,
} from "./render.js";
import type {
  ChannelName,
  FlagLevel,
  PairSummary,
  Thresholds,
} from "./types.js";
import { VerdictOutbox } from "./verdicts.js";
import { buildPairViewModel } from "./viewmodel.js";
import type { PairViewModel } from "./viewmodel.js";

interface AppState {
  pairs: PairSummary[];
  selected: { first: string; second: string } | null;
  vm: PairViewModel | null;
  thresholds: Thresholds | null;
  minLevel: FlagLevel;
  channel: ChannelName | "any";
  /** token of the active verdict we are knowingly replacing */
  supersedeToken: string | null;
}

function apiBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? "http://127.0.0.1:8722";
}

export function startApp(root: HTMLElement, client?: ApiClient): void {
  const api = client ?? new ApiClient(apiBase());
  const outbox = new VerdictOutbox(api);
  const state: AppState = {
    pairs: [],
    selected: null,
    vm: null,
    thresholds: null,
    minLevel: "warning",
    channel: "any",
    supersedeToken: null,
  };

  root.innerHTML = `
    <div class="banner" hidden></div>
    <div class="layout">
      <aside>
        <h2>triage queue</h2>
        <div class="filters">
          <label>min flag
            <select id="min-level">
              <option value="warning" selected>warning</option>
              <option value="suspicious">suspicious</option>
            </select>
          </label>
          <label>channel
            <select id="channel">
              <option value="any" selected>any</option>
              <option value="text">text</option>
              <option value="math">math</option>
              <option value="cite">cite</option>
            </select>
          </label>
        </div>
        <div id="queue"></div>
        <h2>thresholds</h2>
        <div id="thresholds"></div>
      </aside>
      <main>
        <div id="comparison"><p class="empty">Select a pair to review.</p></div>
        <div id="verdict"></div>
      </main>
    </div>`;

  const banner = root.querySelector<HTMLElement>(".banner")!;
  const queueEl = root.querySelector<HTMLElement>("#queue")!;
  const thresholdsEl = root.querySelector<HTMLElement>("#thresholds")!;
  const comparisonEl = root.querySelector<HTMLElement>("#comparison")!;
  const verdictEl = root.querySelector<HTMLElement>("#verdict")!;

  function showBanner(text: string): void {
    banner.hidden = false;
    banner.innerHTML = "";
    banner.append(text + " ");
    const retry = document.createElement("button");
    retry.textContent = "retry";
    retry.addEventListener("click", () => {
      banner.hidden = true;
      void refreshQueue();
    });
    banner.append(retry);
  }

  function visiblePairs(): PairSummary[] {
    return sortPairs(
      filterPairs(state.pairs, {
        minLevel: state.minLevel,
        channel: state.channel,
      }),
    );
  }

  function paintQueue(): void {
    const key = state.selected
      ? pairKey(state.selected.first, state.selected.second)
      : null;
    queueEl.innerHTML = renderQueue(visiblePairs(), key);
  }

  async function refreshQueue(): Promise<void> {
    try {
      // fetch at the loosest level; filtering stays client-side so the
      // filter dropdowns never refetch
      state.pairs = await api.pairs("warning");
      paintQueue();
    } catch (error) {
      if (error instanceof ServiceUnreachable) {
        showBanner("Service unreachable.");
        return;
      }
      throw error;
    }
  }

  async function refreshThresholds(): Promise<void> {
    try {
      state.thresholds = await api.thresholds();
      thresholdsEl.innerHTML = renderThresholdPanel(state.thresholds);
    } catch (error) {
      if (error instanceof ServiceUnreachable) return;
      throw error;
    }
  }

  async function openPair(first: string, second: string): Promise<void> {
    try {
      const report = await api.report(first, second);
      const [docFirst, docSecond, verdicts] = await Promise.all([
        api.document(report.pair.first),
        api.document(report.pair.second),
        api.verdicts(),
      ]);
      state.selected = { first: report.pair.first, second: report.pair.second };
      state.supersedeToken = null;
      state.vm = buildPairViewModel(report, docFirst, docSecond, verdicts);
      comparisonEl.innerHTML = renderComparison(state.vm);
      verdictEl.innerHTML = renderVerdictPanel(state.vm);
      paintQueue();
      wireSpanClicks();
      wireScrollSync();
    } catch (error) {
      if (error instanceof ServiceUnreachable) {
        showBanner("Service unreachable.");
      } else if (error instanceof ApiError) {
        comparisonEl.innerHTML = `<p class="error">${error.code}: ${error.detail}</p>`;
      } else {
        throw error;
      }
    }
  }

  function wireSpanClicks(): void {
    comparisonEl.querySelectorAll<HTMLElement>("mark.hl-text").forEach((mark) => {
      mark.addEventListener("click", () => {
        const side = mark.dataset.side === "first" ? "second" : "first";
        const twin = comparisonEl.querySelector<HTMLElement>(
          `mark.hl-text[data-side="${side}"][data-span="${mark.dataset.span}"]`,
        );
        if (twin) {
          twin.scrollIntoView({ block: "center", behavior: "smooth" });
          twin.classList.add("flash");
          setTimeout(() => twin.classList.remove("flash"), 900);
        }
      });
    });
  }

  function wireScrollSync(): void {
    const panes = comparisonEl.querySelectorAll<HTMLElement>(".body-pane");
    const a = panes[0];
    const b = panes[1];
    if (!a || !b) return;
    let driving = false;
    const follow = (from: HTMLElement, to: HTMLElement) => () => {
      if (driving) return;
      driving = true;
      const range = from.scrollHeight - from.clientHeight;
      const ratio = range > 0 ? from.scrollTop / range : 0;
      to.scrollTop = ratio * (to.scrollHeight - to.clientHeight);
      driving = false;
    };
    a.addEventListener("scroll", follow(a, b));
    b.addEventListener("scroll", follow(b, a));
  }

  queueEl.addEventListener("click", (event) => {
    const row = (event.target as HTMLElement).closest<HTMLElement>(".pair-row");
    if (row?.dataset.first && row.dataset.second) {
      void openPair(row.dataset.first, row.dataset.second);
    }
  });

  root.querySelector<HTMLSelectElement>("#min-level")!.addEventListener(
    "change",
    (event) => {
      state.minLevel = (event.target as HTMLSelectElement).value as FlagLevel;
      paintQueue();
    },
  );
  root.querySelector<HTMLSelectElement>("#channel")!.addEventListener(
    "change",
    (event) => {
      state.channel = (event.target as HTMLSelectElement).value as
        | ChannelName
        | "any";
      paintQueue();
    },
  );

  thresholdsEl.addEventListener("input", (event) => {
    const input = event.target as HTMLInputElement;
    if (input.type !== "range") return;
    const out = input.nextElementSibling;
    if (out && out.tagName === "OUTPUT") {
      out.textContent = Number(input.value).toFixed(2);
    }
  });

  thresholdsEl.addEventListener("submit", (event) => {
    event.preventDefault();
    const form = event.target as HTMLFormElement;
    const read = (name: string) =>
      Number(form.querySelector<HTMLInputElement>(`[name="${name}"]`)!.value);
    const next: Thresholds = {
      text: { warning: read("text.warning"), suspicious: read("text.suspicious") },
      math: { warning: read("math.warning"), suspicious: read("math.suspicious") },
      cite: { warning: read("cite.warning"), suspicious: read("cite.suspicious") },
    };
    const status = form.querySelector<HTMLElement>(".threshold-status")!;
    void (async () => {
      try {
        state.thresholds = await api.setThresholds(next);
        status.textContent = "applied";
        // flags may have moved; pull the queue again without a reload
        await refreshQueue();
        if (state.selected) {
          await openPair(state.selected.first, state.selected.second);
        }
      } catch (error) {
        if (error instanceof ApiError) {
          status.textContent = `${error.code}: ${error.detail}`;
        } else if (error instanceof ServiceUnreachable) {
          status.textContent = "service unreachable";
        } else {
          throw error;
        }
      }
    })();
  });

  verdictEl.addEventListener("submit", (event) => {
    event.preventDefault();
    if (!state.selected) return;
    const form = event.target as HTMLFormElement;
    const value = (name: string) =>
      (form.querySelector<HTMLInputElement | HTMLSelectElement | HTMLTextAreaElement>(
        `[name="${name}"]`,
      )?.value ?? "").trim();
    const status = form.querySelector<HTMLElement>(".verdict-status")!;
    const { first, second } = state.selected;
    void (async () => {
      const outcome = await outbox.submit(first, second, {
        reviewer: value("reviewer"),
        decision: value("decision"),
        note: value("note"),
        ...(state.supersedeToken ? { expected_token: state.supersedeToken } : {}),
      });
      switch (outcome.kind) {
        case "stored": {
          await openPair(first, second);
          await refreshQueue();
          const done = verdictEl.querySelector<HTMLElement>(".verdict-status");
          if (done) done.textContent = `recorded ${outcome.verdict.decision}`;
          break;
        }
        case "conflict": {
          // reload the latest verdict, then arm the next submit to replace it
          await openPair(first, second);
          state.supersedeToken = outcome.activeToken;
          const refreshed = verdictEl.querySelector<HTMLElement>(".verdict-status");
          if (refreshed) {
            refreshed.textContent =
              "pair already has a verdict; review the refreshed history, " +
              "then submit again to supersede it";
          }
          break;
        }
        case "queued":
          status.textContent = "service unreachable; verdict queued for retry";
          break;
        case "rejected":
          status.textContent = `${outcome.error.code}: ${outcome.error.detail}`;
          break;
      }
    })();
  });

  window.setInterval(() => {
    if (outbox.pending.length > 0) {
      void outbox.retryPending().then(({ stored }) => {
        if (stored.length > 0 && state.selected) {
          void openPair(state.selected.first, state.selected.second);
        }
      });
    }
  }, 5000);

  void refreshQueue();
  void refreshThresholds();
}

declare global {
  interface Window {
    __workbenchStarted?: boolean;
  }
}

// auto-start in a real page; tests call startApp themselves
if (typeof document !== "undefined" && document.getElementById("app")) {
  if (!window.__workbenchStarted) {
    window.__workbenchStarted = true;
    startApp(document.getElementById("app")!);
  }
}
