// Session state and its pure transitions. Keeping these as plain
// functions makes the interaction logic testable without a DOM.

import { AnalyzeResponse, Thresholds } from "./types.js";

export const THRESHOLD_BOUNDS = {
  pitch_threshold_hz: { min: 1, max: 400 },
  corr_threshold: { min: 0.01, max: 0.99 },
} as const;

export const DEFAULT_THRESHOLDS: Thresholds = {
  pitch_threshold_hz: 40,
  corr_threshold: 0.55,
};

export interface SessionState {
  queryAudio: Blob | null;
  referenceAudio: Blob | null;
  transcript: string;
  speakerId: string;
  report: AnalyzeResponse | null;
  selectedWord: number | null;
  thresholds: Thresholds;
  busy: boolean;
  error: string | null;
}

export function initialState(): SessionState {
  return {
    queryAudio: null,
    referenceAudio: null,
    transcript: "",
    speakerId: "",
    report: null,
    selectedWord: null,
    thresholds: { ...DEFAULT_THRESHOLDS },
    busy: false,
    error: null,
  };
}

export function withReport(state: SessionState, report: AnalyzeResponse): SessionState {
  const selected =
    state.selectedWord !== null && state.selectedWord < report.words.length
      ? state.selectedWord
      : null;
  return { ...state, report, selectedWord: selected, busy: false, error: null };
}

export function withSelection(state: SessionState, index: number | null): SessionState {
  if (index === null) {
    return { ...state, selectedWord: null };
  }
  if (!state.report || index < 0 || index >= state.report.words.length) {
    return state;
  }
  return { ...state, selectedWord: index };
}

function clamp(value: number, min: number, max: number): number {
  return Math.min(max, Math.max(min, value));
}

export function withThreshold(
  state: SessionState,
  key: keyof Thresholds,
  value: number,
): SessionState {
  const bounds = THRESHOLD_BOUNDS[key];
  const thresholds = { ...state.thresholds, [key]: clamp(value, bounds.min, bounds.max) };
  return { ...state, thresholds };
}

export function withError(state: SessionState, message: string): SessionState {
  return { ...state, error: message, busy: false };
}

export function canAnalyze(state: SessionState): boolean {
  if (!state.queryAudio) return false;
  return state.referenceAudio !== null || state.speakerId.trim() !== "";
}
