// Shapes of the /v1/analyze response; every number shown in the UI
// originates here, the client never recomputes any DSP.

export type Label = "none" | "pitch" | "skew";

export interface WordInfo {
  index: number;
  token: string;
  label: Label;
  peak_lag_hz: number;
  peak_value: number;
  query_span: [number, number];
  reference_span: [number, number];
}

export interface SpectrumSeries {
  frequency_hz: number[];
  magnitude: number[];
}

export interface CorrelationSeries {
  lag_hz: number[];
  value: number[];
}

export interface WordPlots {
  index: number;
  query_spectrum: SpectrumSeries;
  reference_spectrum: SpectrumSeries;
  correlation: CorrelationSeries;
}

export interface AnalyzeResponse {
  version: number;
  transcript: string[];
  alignment_adjusted: boolean;
  config_used: Record<string, Record<string, number>>;
  words: WordInfo[];
  plots: WordPlots[];
}

export interface Thresholds {
  pitch_threshold_hz: number;
  corr_threshold: number;
}

export interface ServiceError {
  error: string;
  reason: string;
}
