// DOM rendering: transcript word boxes, the per-word detail panel, and
// the error banner. One box per transcript token, always.

import { renderCorrelation, renderSpectra } from "./plots.js";
import { SessionState } from "./state.js";
import { WordPlots } from "./types.js";

export function renderReport(
  boxesRoot: HTMLElement,
  state: SessionState,
  onSelect: (index: number) => void,
): void {
  boxesRoot.textContent = "";
  if (!state.report) {
    return;
  }
  for (const word of state.report.words) {
    const box = document.createElement("button");
    box.type = "button";
    box.className = "word-box";
    if (word.label !== "none") {
      box.classList.add("highlighted", word.label);
    }
    if (state.selectedWord === word.index) {
      box.classList.add("selected");
    }
    box.dataset.index = String(word.index);
    box.dataset.label = word.label;

    const token = document.createElement("span");
    token.className = "token";
    token.textContent = word.token;
    box.appendChild(token);

    const verdict = document.createElement("span");
    verdict.className = "verdict";
    verdict.textContent = word.label === "none" ? "" : word.label;
    box.appendChild(verdict);

    box.addEventListener("click", () => onSelect(word.index));
    boxesRoot.appendChild(box);
  }
}

export function renderDetail(detailRoot: HTMLElement, state: SessionState): void {
  detailRoot.textContent = "";
  if (!state.report || state.selectedWord === null) {
    return;
  }
  const word = state.report.words[state.selectedWord];
  const plots: WordPlots | undefined = state.report.plots[state.selectedWord];
  if (!plots) {
    return;
  }

  const heading = document.createElement("h3");
  heading.className = "detail-heading";
  heading.textContent = `"${word.token}" — ${word.label}`;
  detailRoot.appendChild(heading);

  const spectra = document.createElement("div");
  spectra.className = "detail-spectra";
  const spectraTitle = document.createElement("p");
  spectraTitle.textContent = "word spectra (spoken vs reference)";
  spectra.appendChild(spectraTitle);
  renderSpectra(spectra, plots.query_spectrum, plots.reference_spectrum);
  detailRoot.appendChild(spectra);

  const corr = document.createElement("div");
  corr.className = "detail-correlation";
  const corrTitle = document.createElement("p");
  corrTitle.textContent = "cross-correlation over frequency lags";
  corr.appendChild(corrTitle);
  renderCorrelation(corr, plots.correlation, word.peak_lag_hz, word.peak_value);
  detailRoot.appendChild(corr);

  const evidence = document.createElement("p");
  evidence.className = "detail-evidence";
  const sign = word.peak_lag_hz >= 0 ? "+" : "";
  evidence.textContent =
    `correlation peak ${word.peak_value.toFixed(3)} at ` +
    `${sign}${word.peak_lag_hz.toFixed(1)} Hz`;
  detailRoot.appendChild(evidence);
}

export function renderError(banner: HTMLElement, message: string | null): void {
  if (message) {
    banner.textContent = message;
    banner.classList.remove("hidden");
  } else {
    banner.textContent = "";
    banner.classList.add("hidden");
  }
}

export function renderStatus(statusEl: HTMLElement, state: SessionState): void {
  if (state.busy) {
    statusEl.textContent = "analyzing…";
  } else if (state.report) {
    const flagged = state.report.words.filter((w) => w.label !== "none").length;
    const note = state.report.alignment_adjusted ? " (segment count reconciled)" : "";
    statusEl.textContent = `${state.report.words.length} words, ${flagged} emphasized${note}`;
  } else {
    statusEl.textContent = "";
  }
}
