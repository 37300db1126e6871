// Shared fixtures: DOM skeleton matching index.html and canned service
// responses.

import { AnalyzeResponse, Label, WordPlots } from "../src/types.js";

export function mountSkeleton(): void {
  document.body.innerHTML = `
    <div id="error-banner" class="hidden"></div>
    <input type="file" id="query-file">
    <button id="record-query">record</button>
    <input type="file" id="reference-file">
    <button id="record-reference">record</button>
    <input type="text" id="transcript">
    <input type="text" id="speaker">
    <input type="text" id="utterance">
    <button id="analyze-btn"></button>
    <span id="status"></span>
    <input type="range" id="pitch-threshold" min="1" max="400" value="40">
    <input type="range" id="corr-threshold" min="0.01" max="0.99" step="0.01" value="0.55">
    <strong id="pitch-threshold-value"></strong>
    <strong id="corr-threshold-value"></strong>
    <div id="word-boxes"></div>
    <div id="word-detail"></div>
  `;
}

function linspace(lo: number, hi: number, n: number): number[] {
  const out: number[] = [];
  for (let i = 0; i < n; i++) {
    out.push(lo + ((hi - lo) * i) / (n - 1));
  }
  return out;
}

export function makeResponse(
  tokens: string[],
  flagged: Partial<Record<number, { label: Label; lag: number; value: number }>>,
): AnalyzeResponse {
  const lagAxis = linspace(-500, 500, 101);
  const freqAxis = linspace(60, 4000, 128);
  const words = tokens.map((token, index) => {
    const mark = flagged[index];
    return {
      index,
      token,
      label: mark ? mark.label : ("none" as Label),
      peak_lag_hz: mark ? mark.lag : 0,
      peak_value: mark ? mark.value : 1.0,
      query_span: [index * 1000, index * 1000 + 800] as [number, number],
      reference_span: [index * 1000, index * 1000 + 800] as [number, number],
    };
  });
  const plots: WordPlots[] = tokens.map((_token, index) => ({
    index,
    query_spectrum: { frequency_hz: freqAxis, magnitude: freqAxis.map((f) => Math.exp(-f / 900)) },
    reference_spectrum: {
      frequency_hz: freqAxis,
      magnitude: freqAxis.map((f) => Math.exp(-f / 1000)),
    },
    correlation: {
      lag_hz: lagAxis,
      value: lagAxis.map((lag) => Math.exp(-Math.abs(lag - (flagged[index]?.lag ?? 0)) / 90)),
    },
  }));
  return {
    version: 1,
    transcript: tokens,
    alignment_adjusted: false,
    config_used: {},
    words,
    plots,
  };
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
