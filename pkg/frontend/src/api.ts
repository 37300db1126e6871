// Thin client for the analysis service's /v1 endpoints.

import { AnalyzeResponse, Thresholds } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface AnalyzeParams {
  queryAudio: Blob;
  referenceAudio?: Blob | null;
  transcript?: string;
  speakerId?: string;
  utteranceId?: string;
  thresholds?: Thresholds;
}

export async function requestAnalysis(
  params: AnalyzeParams,
  fetchImpl: FetchLike,
): Promise<AnalyzeResponse> {
  const form = new FormData();
  form.append("query_audio", params.queryAudio, "query.wav");
  if (params.referenceAudio) {
    form.append("reference_audio", params.referenceAudio, "reference.wav");
  }
  if (params.transcript && params.transcript.trim() !== "") {
    form.append("transcript", params.transcript.trim());
  }
  if (params.speakerId && params.speakerId.trim() !== "") {
    form.append("speaker_id", params.speakerId.trim());
  }
  if (params.utteranceId && params.utteranceId.trim() !== "") {
    form.append("utterance_id", params.utteranceId.trim());
  }
  if (params.thresholds) {
    form.append("overrides", JSON.stringify(params.thresholds));
  }

  const response = await fetchImpl("/v1/analyze", { method: "POST", body: form });
  if (!response.ok) {
    let reason = `${response.status}`;
    try {
      const body = await response.json();
      reason = body.reason ?? body.error ?? reason;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new Error(reason);
  }
  return (await response.json()) as AnalyzeResponse;
}

export async function fetchConfig(fetchImpl: FetchLike): Promise<unknown> {
  const response = await fetchImpl("/v1/config");
  if (!response.ok) {
    throw new Error(`config request failed: ${response.status}`);
  }
  return response.json();
}
