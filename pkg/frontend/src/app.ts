// Application wiring. initApp binds state to the DOM and the service;
// it returns a small handle the tests drive directly.

import { FetchLike, requestAnalysis } from "./api.js";
import {
  SessionState,
  canAnalyze,
  initialState,
  withError,
  withReport,
  withSelection,
  withThreshold,
} from "./state.js";
import { startRecording, Recorder } from "./record.js";
import { renderDetail, renderError, renderReport, renderStatus } from "./view.js";
import { Thresholds } from "./types.js";

export interface AppOptions {
  fetchImpl: FetchLike;
  debounceMs?: number;
}

export interface AppHandle {
  state(): SessionState;
  setQueryAudio(blob: Blob): void;
  setReferenceAudio(blob: Blob): void;
  setTranscript(text: string): void;
  setSpeaker(id: string): void;
  selectWord(index: number): void;
  setThreshold(key: keyof Thresholds, value: number): void;
  analyze(): Promise<void>;
  whenIdle(): Promise<void>;
}

function byId<T extends HTMLElement>(root: Document, id: string): T {
  const el = root.getElementById(id);
  if (!el) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

export function initApp(root: Document, options: AppOptions): AppHandle {
  const debounceMs = options.debounceMs ?? 300;
  let state = initialState();
  let requestSerial = 0;
  let inflight: Promise<void> | null = null;
  let debounceHandle: ReturnType<typeof setTimeout> | null = null;

  const boxes = byId<HTMLElement>(root, "word-boxes");
  const detail = byId<HTMLElement>(root, "word-detail");
  const banner = byId<HTMLElement>(root, "error-banner");
  const status = byId<HTMLElement>(root, "status");
  const queryFile = byId<HTMLInputElement>(root, "query-file");
  const referenceFile = byId<HTMLInputElement>(root, "reference-file");
  const transcriptInput = byId<HTMLInputElement>(root, "transcript");
  const speakerInput = byId<HTMLInputElement>(root, "speaker");
  const utteranceInput = byId<HTMLInputElement>(root, "utterance");
  const analyzeButton = byId<HTMLButtonElement>(root, "analyze-btn");
  const pitchSlider = byId<HTMLInputElement>(root, "pitch-threshold");
  const corrSlider = byId<HTMLInputElement>(root, "corr-threshold");
  const pitchLabel = byId<HTMLElement>(root, "pitch-threshold-value");
  const corrLabel = byId<HTMLElement>(root, "corr-threshold-value");
  const recordQueryBtn = byId<HTMLButtonElement>(root, "record-query");
  const recordReferenceBtn = byId<HTMLButtonElement>(root, "record-reference");

  function render(): void {
    renderReport(boxes, state, (index) => {
      state = withSelection(state, index);
      render();
    });
    renderDetail(detail, state);
    renderError(banner, state.error);
    renderStatus(status, state);
    analyzeButton.disabled = !canAnalyze(state) || state.busy;
    pitchLabel.textContent = `${state.thresholds.pitch_threshold_hz.toFixed(0)} Hz`;
    corrLabel.textContent = state.thresholds.corr_threshold.toFixed(2);
  }

  async function runAnalysis(): Promise<void> {
    if (!state.queryAudio || !canAnalyze(state)) {
      return;
    }
    const serial = ++requestSerial;
    state = { ...state, busy: true };
    render();
    const task = (async () => {
      try {
        const report = await requestAnalysis(
          {
            queryAudio: state.queryAudio as Blob,
            referenceAudio: state.referenceAudio,
            transcript: state.transcript,
            speakerId: state.speakerId,
            utteranceId: utteranceInput.value,
            thresholds: state.thresholds,
          },
          options.fetchImpl,
        );
        if (serial === requestSerial) {
          state = withReport(state, report);
        }
      } catch (err) {
        if (serial === requestSerial) {
          state = withError(state, err instanceof Error ? err.message : String(err));
        }
      }
      if (serial === requestSerial) {
        render();
      }
    })();
    inflight = task;
    await task;
  }

  function scheduleReanalysis(): void {
    if (!state.report || !canAnalyze(state)) {
      return;
    }
    if (debounceHandle !== null) {
      clearTimeout(debounceHandle);
    }
    debounceHandle = setTimeout(() => {
      debounceHandle = null;
      void runAnalysis();
    }, debounceMs);
  }

  function bindFileInput(input: HTMLInputElement, assign: (blob: Blob) => void): void {
    input.addEventListener("change", () => {
      const file = input.files && input.files[0];
      if (file) {
        assign(file);
        render();
      }
    });
  }

  bindFileInput(queryFile, (blob) => {
    state = { ...state, queryAudio: blob };
  });
  bindFileInput(referenceFile, (blob) => {
    state = { ...state, referenceAudio: blob };
  });

  transcriptInput.addEventListener("input", () => {
    state = { ...state, transcript: transcriptInput.value };
  });
  speakerInput.addEventListener("input", () => {
    state = { ...state, speakerId: speakerInput.value };
    render();
  });

  analyzeButton.addEventListener("click", () => {
    void runAnalysis();
  });

  pitchSlider.addEventListener("input", () => {
    state = withThreshold(state, "pitch_threshold_hz", Number(pitchSlider.value));
    render();
    scheduleReanalysis();
  });
  corrSlider.addEventListener("input", () => {
    state = withThreshold(state, "corr_threshold", Number(corrSlider.value));
    render();
    scheduleReanalysis();
  });

  function bindRecorder(button: HTMLButtonElement, assign: (blob: Blob) => void): void {
    let active: Recorder | null = null;
    const label = button.textContent ?? "record";
    button.addEventListener("click", async () => {
      try {
        if (active === null) {
          active = await startRecording();
          button.textContent = "stop";
        } else {
          const blob = await active.stop();
          active = null;
          button.textContent = label;
          assign(blob);
          render();
        }
      } catch (err) {
        state = withError(state, err instanceof Error ? err.message : String(err));
        render();
      }
    });
  }

  bindRecorder(recordQueryBtn, (blob) => {
    state = { ...state, queryAudio: blob };
  });
  bindRecorder(recordReferenceBtn, (blob) => {
    state = { ...state, referenceAudio: blob };
  });

  render();

  return {
    state: () => state,
    setQueryAudio(blob: Blob) {
      state = { ...state, queryAudio: blob };
      render();
    },
    setReferenceAudio(blob: Blob) {
      state = { ...state, referenceAudio: blob };
      render();
    },
    setTranscript(text: string) {
      state = { ...state, transcript: text };
      transcriptInput.value = text;
    },
    setSpeaker(id: string) {
      state = { ...state, speakerId: id };
      speakerInput.value = id;
      render();
    },
    selectWord(index: number) {
      state = withSelection(state, index);
      render();
    },
    setThreshold(key: keyof Thresholds, value: number) {
      state = withThreshold(state, key, value);
      render();
      scheduleReanalysis();
    },
    analyze: runAnalysis,
    async whenIdle() {
      while (inflight !== null) {
        const current = inflight;
        await current;
        if (inflight === current) {
          inflight = null;
        }
      }
    },
  };
}
