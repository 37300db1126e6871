"""Word-emphasis detection against an emphasis-devoid reference rendition.

A spoken utterance and a neutral rendition of the same text by the same
speaker are split into words on a sliding-RMS envelope; each word pair is
compared by cross-correlating unit-energy magnitude spectra over
frequency lags. A displaced correlation peak marks pitch emphasis, a
uniformly low correlation marks skew emphasis.
"""

__version__ = "0.1.0"

from .audio_io import WORKING_RATE, AudioBuffer, condition, read_wav, write_wav
from .comparator import (
    ClassifierConfig,
    CorrResult,
    EmphasisLabel,
    classify,
    compare_word,
    cross_correlate,
)
from .errors import EmphadetError
from .evalharness import (
    DatasetManifest,
    EvalMetrics,
    ManifestEntry,
    evaluate,
    load_manifest,
    metrics_from_confusion,
    save_manifest,
)
from .perturb import PerturbationSpec, PitchShift, Skew, make_labeled_pair, pitch_shift_word, skew_word
from .pipeline import (
    AnalysisReport,
    ReferenceProvider,
    WordResult,
    analyze,
    analyze_with_evidence,
    synthesize_reference,
    tokenize,
    transcribe,
)
from .segmentation import (
    RmsEnvelope,
    SegmentationConfig,
    WordSegment,
    align_to_token_count,
    detect_segments,
    rms_envelope,
)
from .spectral import GridConfig, Spectrum, magnitude_spectrum, normalize_energy, resample_to_grid
from .synth import synth_utterance, synth_word

__all__ = [
    "WORKING_RATE",
    "AudioBuffer",
    "AnalysisReport",
    "ClassifierConfig",
    "CorrResult",
    "DatasetManifest",
    "EmphadetError",
    "EmphasisLabel",
    "EvalMetrics",
    "GridConfig",
    "ManifestEntry",
    "PerturbationSpec",
    "PitchShift",
    "ReferenceProvider",
    "RmsEnvelope",
    "SegmentationConfig",
    "Skew",
    "Spectrum",
    "WordResult",
    "WordSegment",
    "align_to_token_count",
    "analyze",
    "analyze_with_evidence",
    "classify",
    "compare_word",
    "condition",
    "cross_correlate",
    "detect_segments",
    "evaluate",
    "load_manifest",
    "magnitude_spectrum",
    "make_labeled_pair",
    "metrics_from_confusion",
    "normalize_energy",
    "pitch_shift_word",
    "read_wav",
    "resample_to_grid",
    "rms_envelope",
    "save_manifest",
    "skew_word",
    "synth_utterance",
    "synth_word",
    "synthesize_reference",
    "tokenize",
    "transcribe",
    "write_wav",
]
