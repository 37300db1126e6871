"""Stateless HTTP analysis service.

POST /v1/analyze accepts a query recording plus either a reference
recording or a speaker id (remote synthesis), runs the pipeline, and
returns the report together with plot-ready per-word series so clients
never redo any DSP. GET /v1/health and GET /v1/config are trivial.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, File, Form, UploadFile
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import __version__
from .audio_io import condition, from_wav_bytes
from .comparator import ClassifierConfig
from .errors import (
    AlignmentFailed,
    CorruptHeader,
    EmphadetError,
    EmptyAfterTrim,
    MissingFixture,
    NoSpeech,
    ProviderError,
    ProviderTimeout,
    ProviderUnreachable,
    UnsupportedFormat,
    ZeroEnergy,
)
from .pipeline import ReferenceProvider, analyze_with_evidence, tokenize, transcribe, synthesize_reference
from .segmentation import SegmentationConfig
from .spectral import GridConfig

MAX_BODY_BYTES = 25 * 1024 * 1024

_OVERRIDE_FIELDS = {
    "pitch_threshold_hz": ("classifier", "pitch_threshold_hz"),
    "corr_threshold": ("classifier", "corr_threshold"),
    "max_lag_hz": ("classifier", "max_lag_hz"),
    "window_ms": ("segmentation", "window_ms"),
    "hop_ms": ("segmentation", "hop_ms"),
    "relative_threshold": ("segmentation", "relative_threshold"),
    "min_word_ms": ("segmentation", "min_word_ms"),
    "min_gap_ms": ("segmentation", "min_gap_ms"),
    "f_min_hz": ("grid", "f_min_hz"),
    "f_max_hz": ("grid", "f_max_hz"),
}


def _error(status: int, code: str, reason: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, "reason": reason})


def _parse_overrides(raw: str | None):
    sections = {"segmentation": {}, "classifier": {}, "grid": {}}
    if raw:
        doc = json.loads(raw)
        if not isinstance(doc, dict):
            raise ValueError("overrides must be a JSON object")
        for key, value in doc.items():
            if key not in _OVERRIDE_FIELDS:
                raise ValueError(f"unknown override '{key}'")
            section, field = _OVERRIDE_FIELDS[key]
            sections[section][field] = value
    return (SegmentationConfig(**sections["segmentation"]),
            ClassifierConfig(**sections["classifier"]),
            GridConfig(**sections["grid"]))


def create_app(provider: ReferenceProvider | None = None,
               static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="emphadet", version=__version__)

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/v1/config")
    def config():
        return {
            "version": 1,
            "segmentation": SegmentationConfig().__dict__,
            "classifier": ClassifierConfig().__dict__,
            "grid": GridConfig().__dict__,
            "provider": provider.mode.value if provider else None,
        }

    @app.post("/v1/analyze")
    async def analyze_endpoint(
        query_audio: UploadFile | None = File(None),
        reference_audio: UploadFile | None = File(None),
        transcript: str | None = Form(None),
        speaker_id: str | None = Form(None),
        utterance_id: str | None = Form(None),
        overrides: str | None = Form(None),
    ):
        if query_audio is None:
            return _error(400, "missing_field", "query_audio is required")
        if reference_audio is None and not speaker_id:
            return _error(400, "missing_field", "provide reference_audio or speaker_id")

        query_bytes = await query_audio.read()
        reference_bytes = await reference_audio.read() if reference_audio else b""
        if len(query_bytes) + len(reference_bytes) > MAX_BODY_BYTES:
            return _error(400, "payload_too_large", f"payload exceeds {MAX_BODY_BYTES} bytes")

        try:
            seg_cfg, cls_cfg, grid_cfg = _parse_overrides(overrides)
        except (ValueError, TypeError) as exc:
            return _error(400, "bad_overrides", str(exc))

        try:
            query = condition(from_wav_bytes(query_bytes, "query_audio"), seg_cfg)
            reference = None
            if reference_bytes:
                reference = condition(from_wav_bytes(reference_bytes, "reference_audio"), seg_cfg)
        except (CorruptHeader, UnsupportedFormat) as exc:
            return _error(400, "bad_audio", str(exc))
        except EmptyAfterTrim as exc:
            return _error(422, "no_speech", str(exc))

        try:
            if transcript:
                tokens = tokenize(transcript)
                if not tokens:
                    return _error(400, "bad_transcript", "transcript has no tokens")
            elif provider is not None:
                tokens = transcribe(query, provider, speaker_id=speaker_id,
                                    utterance_id=utterance_id)
            else:
                return _error(400, "missing_field",
                              "provide transcript or configure an STT provider")

            if reference is None:
                if provider is None:
                    return _error(400, "missing_field",
                                  "provide reference_audio or configure a TTS provider")
                reference = synthesize_reference(tokens, speaker_id, provider,
                                                 utterance_id=utterance_id)

            report, evidence = analyze_with_evidence(query, reference, tokens,
                                                     seg_cfg, cls_cfg, grid_cfg)
        except ProviderTimeout as exc:
            return _error(504, "provider_timeout", str(exc))
        except (ProviderUnreachable, ProviderError) as exc:
            return _error(502, "provider_failure", str(exc))
        except MissingFixture as exc:
            return _error(422, "missing_fixture", str(exc))
        except AlignmentFailed as exc:
            return _error(422, "alignment_failed", str(exc))
        except (NoSpeech, EmptyAfterTrim, ZeroEnergy) as exc:
            return _error(422, "no_speech", str(exc))

        plots = []
        for word, ev in zip(report.words, evidence):
            plots.append({
                "index": word.index,
                "query_spectrum": {
                    "frequency_hz": ev.query_spectrum.frequencies.tolist(),
                    "magnitude": ev.query_spectrum.magnitudes.tolist(),
                },
                "reference_spectrum": {
                    "frequency_hz": ev.reference_spectrum.frequencies.tolist(),
                    "magnitude": ev.reference_spectrum.magnitudes.tolist(),
                },
                "correlation": {
                    "lag_hz": ev.correlation.lags_hz.tolist(),
                    "value": ev.correlation.curve.tolist(),
                },
            })
        body = report.to_dict()
        body["plots"] = plots
        return JSONResponse(status_code=200, content=body)

    @app.exception_handler(EmphadetError)
    async def domain_error_handler(_request, exc):
        return _error(422, "analysis_error", str(exc))

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
