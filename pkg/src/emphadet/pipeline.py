"""End-to-end orchestration: transcript, reference, word-by-word verdicts.

The query utterance needs two companions before comparison can happen: a
transcript (to know how many words to expect) and an emphasis-devoid
reference rendition of the same text by the same speaker. Both can come
from on-disk fixtures or from remote STT/TTS services; `analyze` then
segments both waveforms, aligns them to the token count, and compares
corresponding words.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import asdict, dataclass
from pathlib import Path

import requests

from .audio_io import AudioBuffer, condition, from_wav_bytes, read_wav, to_wav_bytes
from .comparator import ClassifierConfig, CorrResult, EmphasisLabel, classify, cross_correlate
from .errors import (
    CorruptHeader,
    MissingFixture,
    NoSpeech,
    ProviderError,
    ProviderTimeout,
    ProviderUnreachable,
    UnsupportedFormat,
)
from .segmentation import SegmentationConfig, align_to_token_count, detect_segments, rms_envelope
from .spectral import GridConfig, Spectrum, magnitude_spectrum, normalize_energy, to_common_grid

REPORT_VERSION = 1

_TOKEN_JUNK = re.compile(r"[^\w']+")


def tokenize(text: str) -> list[str]:
    """Lowercase, split on whitespace, strip punctuation from each token."""
    tokens = []
    for raw in text.lower().split():
        tok = _TOKEN_JUNK.sub("", raw)
        if tok:
            tokens.append(tok)
    return tokens


class ProviderMode(enum.Enum):
    FIXTURE = "fixture"
    REMOTE = "remote"


@dataclass(frozen=True)
class ReferenceProvider:
    """Source of transcripts and reference renditions.

    Fixture mode reads `<root>/<speaker>/<utterance>.txt` and
    `<root>/<speaker>/<utterance>.ref.wav`; remote mode POSTs to the STT
    and TTS endpoints described in the service contract.
    """

    mode: ProviderMode
    fixture_root: Path | None = None
    stt_endpoint: str | None = None
    tts_endpoint: str | None = None
    timeout_ms: int = 10000

    def __post_init__(self):
        if self.timeout_ms <= 0:
            raise ValueError("timeout_ms must be positive")
        if self.mode is ProviderMode.FIXTURE:
            if self.fixture_root is None or self.stt_endpoint or self.tts_endpoint:
                raise ValueError("fixture mode takes fixture_root and no endpoints")
            object.__setattr__(self, "fixture_root", Path(self.fixture_root))
        else:
            if self.fixture_root is not None or not self.stt_endpoint or not self.tts_endpoint:
                raise ValueError("remote mode takes stt/tts endpoints and no fixture_root")

    @classmethod
    def fixture(cls, root) -> "ReferenceProvider":
        return cls(mode=ProviderMode.FIXTURE, fixture_root=Path(root))

    @classmethod
    def remote(cls, stt_endpoint: str, tts_endpoint: str, timeout_ms: int = 10000) -> "ReferenceProvider":
        return cls(mode=ProviderMode.REMOTE, stt_endpoint=stt_endpoint,
                   tts_endpoint=tts_endpoint, timeout_ms=timeout_ms)


def _post(url: str, timeout_ms: int, **kwargs) -> requests.Response:
    try:
        response = requests.post(url, timeout=timeout_ms / 1000.0, **kwargs)
    except requests.Timeout as exc:
        raise ProviderTimeout(f"{url}: timed out after {timeout_ms} ms") from exc
    except requests.RequestException as exc:
        raise ProviderUnreachable(f"{url}: {exc}") from exc
    if not 200 <= response.status_code < 300:
        body = response.text[:200]
        raise ProviderError(f"{url}: status {response.status_code}: {body}")
    return response


def transcribe(audio: AudioBuffer, provider: ReferenceProvider,
               speaker_id: str | None = None, utterance_id: str | None = None) -> list[str]:
    """Obtain the query's transcript as a normalized token list."""
    if provider.mode is ProviderMode.FIXTURE:
        if not speaker_id or not utterance_id:
            raise MissingFixture("fixture transcribe needs speaker_id and utterance_id")
        path = provider.fixture_root / speaker_id / f"{utterance_id}.txt"
        if not path.exists():
            raise MissingFixture(f"no transcript fixture at {path}")
        text = path.read_text(encoding="utf-8")
    else:
        response = _post(provider.stt_endpoint, provider.timeout_ms,
                         data=to_wav_bytes(audio),
                         headers={"Content-Type": "audio/wav"})
        try:
            text = response.json()["text"]
        except (ValueError, KeyError, TypeError) as exc:
            raise ProviderError(f"{provider.stt_endpoint}: malformed STT response") from exc
    tokens = tokenize(text)
    if not tokens:
        raise ProviderError("transcript is empty")
    return tokens


def synthesize_reference(tokens, speaker_id: str, provider: ReferenceProvider,
                         utterance_id: str | None = None) -> AudioBuffer:
    """Obtain the emphasis-devoid reference rendition, conditioned."""
    if provider.mode is ProviderMode.FIXTURE:
        if not speaker_id or not utterance_id:
            raise MissingFixture("fixture synthesis needs speaker_id and utterance_id")
        path = provider.fixture_root / speaker_id / f"{utterance_id}.ref.wav"
        if not path.exists():
            raise MissingFixture(f"no reference fixture at {path}")
        return condition(read_wav(path))
    response = _post(provider.tts_endpoint, provider.timeout_ms,
                     json={"text": " ".join(tokens), "speaker_id": speaker_id})
    try:
        buffer = from_wav_bytes(response.content, origin=provider.tts_endpoint)
    except (CorruptHeader, UnsupportedFormat) as exc:
        raise ProviderError(f"{provider.tts_endpoint}: invalid audio payload: {exc}") from exc
    return condition(buffer)


@dataclass(frozen=True)
class WordResult:
    index: int
    token: str
    label: EmphasisLabel
    peak_lag_hz: float
    peak_value: float
    query_span: tuple[int, int]
    reference_span: tuple[int, int]


@dataclass(frozen=True)
class WordEvidence:
    """Plot-ready per-word evidence: both gridded spectra and the curve."""

    query_spectrum: Spectrum
    reference_spectrum: Spectrum
    correlation: CorrResult


@dataclass(frozen=True)
class AnalysisReport:
    transcript: tuple[str, ...]
    words: tuple[WordResult, ...]
    config_used: dict
    alignment_adjusted: bool

    def to_dict(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "transcript": list(self.transcript),
            "alignment_adjusted": self.alignment_adjusted,
            "config_used": self.config_used,
            "words": [
                {
                    "index": w.index,
                    "token": w.token,
                    "label": w.label.value,
                    "peak_lag_hz": w.peak_lag_hz,
                    "peak_value": w.peak_value,
                    "query_span": list(w.query_span),
                    "reference_span": list(w.reference_span),
                }
                for w in self.words
            ],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)


def _segment_aligned(buffer: AudioBuffer, k: int, cfg: SegmentationConfig, side: str):
    envelope = rms_envelope(buffer, cfg)
    raw = detect_segments(envelope, cfg)
    if not raw:
        raise NoSpeech(f"{side} utterance contains no speech")
    return align_to_token_count(raw, envelope, k), len(raw)


def analyze_with_evidence(query: AudioBuffer, reference: AudioBuffer, tokens,
                          seg_config: SegmentationConfig | None = None,
                          classifier: ClassifierConfig | None = None,
                          grid: GridConfig | None = None,
                          ) -> tuple[AnalysisReport, list[WordEvidence]]:
    """Run the whole comparison and keep the per-word plot evidence."""
    tokens = list(tokens)
    if not tokens:
        raise ValueError("tokens must be non-empty")
    seg_cfg = seg_config if seg_config is not None else SegmentationConfig()
    cls_cfg = classifier if classifier is not None else ClassifierConfig()
    grid_cfg = grid if grid is not None else GridConfig()

    k = len(tokens)
    query_segments, query_raw_count = _segment_aligned(query, k, seg_cfg, "query")
    reference_segments, reference_raw_count = _segment_aligned(reference, k, seg_cfg, "reference")

    words = []
    evidence = []
    for i, token in enumerate(tokens):
        q_spec = normalize_energy(magnitude_spectrum(query, query_segments[i]))
        r_spec = normalize_energy(magnitude_spectrum(reference, reference_segments[i]))
        q_grid, r_grid = to_common_grid(q_spec, r_spec, grid_cfg)
        corr = cross_correlate(r_grid, q_grid, cls_cfg.max_lag_hz)
        label = classify(corr, cls_cfg)
        words.append(WordResult(
            index=i, token=token, label=label,
            peak_lag_hz=corr.peak_lag_hz, peak_value=corr.peak_value,
            query_span=(query_segments[i].start_sample, query_segments[i].end_sample),
            reference_span=(reference_segments[i].start_sample, reference_segments[i].end_sample)))
        evidence.append(WordEvidence(q_grid, r_grid, corr))

    report = AnalysisReport(
        transcript=tuple(tokens),
        words=tuple(words),
        config_used={
            "segmentation": asdict(seg_cfg),
            "classifier": asdict(cls_cfg),
            "grid": asdict(grid_cfg),
        },
        alignment_adjusted=(query_raw_count != k or reference_raw_count != k),
    )
    return report, evidence


def analyze(query: AudioBuffer, reference: AudioBuffer, tokens,
            seg_config: SegmentationConfig | None = None,
            classifier: ClassifierConfig | None = None,
            grid: GridConfig | None = None) -> AnalysisReport:
    """Compare a query against its reference, word by word."""
    return analyze_with_evidence(query, reference, tokens, seg_config, classifier, grid)[0]
