"""Synthetic-emphasis injection with known ground truth.

Two word-local edits stand in for how a speaker emphasizes:

* pitch shift - single-sideband frequency translation moves the word's
  whole spectrum rigidly by a chosen offset (analytic signal times a
  complex exponential, real part kept);
* skew - sinusoidal frequency modulation smears the word's energy into
  sidebands across a wider band without moving its center.

Both leave every sample outside the targeted segment bit-identical, so
perturbed utterances pair with their originals as labeled test data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import hilbert

from .audio_io import AudioBuffer
from .comparator import EmphasisLabel
from .errors import InvalidIndex, NoSpeech, SegmentOutOfBounds
from .segmentation import (
    SegmentationConfig,
    WordSegment,
    align_to_token_count,
    detect_segments,
    rms_envelope,
)


@dataclass(frozen=True)
class PitchShift:
    delta_hz: float

    def __post_init__(self):
        if self.delta_hz == 0:
            raise ValueError("delta_hz must be non-zero")
        if abs(self.delta_hz) >= 1000:
            raise ValueError("|delta_hz| must stay below 1000 Hz")


@dataclass(frozen=True)
class Skew:
    deviation_hz: float
    rate_hz: float

    def __post_init__(self):
        if self.deviation_hz <= 0 or self.rate_hz <= 0:
            raise ValueError("deviation_hz and rate_hz must be positive")


@dataclass(frozen=True)
class PerturbationSpec:
    word_index: int
    effect: PitchShift | Skew
    crossfade_ms: float = 10.0


def _check_segment(buffer: AudioBuffer, segment: WordSegment) -> None:
    if segment.end_sample > len(buffer.samples):
        raise SegmentOutOfBounds(
            f"segment [{segment.start_sample}, {segment.end_sample}) exceeds "
            f"buffer of {len(buffer.samples)} samples")


def _blend_edges(original: np.ndarray, replacement: np.ndarray, fade: int) -> np.ndarray:
    """Crossfade replacement into original at both ends to avoid clicks."""
    out = replacement.copy()
    fade = min(fade, len(original) // 2)
    if fade > 0:
        w = np.sin(0.5 * np.pi * (np.arange(fade) + 0.5) / fade) ** 2
        out[:fade] = (1 - w) * original[:fade] + w * replacement[:fade]
        out[-fade:] = w[::-1] * replacement[-fade:] + (1 - w[::-1]) * original[-fade:]
    return out


def pitch_shift_word(buffer: AudioBuffer, segment: WordSegment, delta_hz: float,
                     crossfade_ms: float = 10.0) -> AudioBuffer:
    """Translate one word's spectrum rigidly by delta_hz.

    The segment is replaced by Re(analytic(x) * exp(j*2*pi*delta*t)),
    crossfaded with the original near the segment edges; the rest of the
    buffer is untouched.
    """
    PitchShift(delta_hz)  # validates the range
    _check_segment(buffer, segment)
    x = buffer.samples.copy()
    seg = x[segment.start_sample:segment.end_sample]
    t = np.arange(len(seg)) / buffer.sample_rate
    shifted = np.real(hilbert(seg) * np.exp(2j * np.pi * delta_hz * t))
    fade = int(round(crossfade_ms * buffer.sample_rate / 1000.0))
    x[segment.start_sample:segment.end_sample] = _blend_edges(seg, shifted, fade)
    return AudioBuffer(x, buffer.sample_rate)


def skew_word(buffer: AudioBuffer, segment: WordSegment, deviation_hz: float,
              rate_hz: float, crossfade_ms: float = 10.0) -> AudioBuffer:
    """Frequency-modulate one word, spreading its energy into sidebands.

    The instantaneous frequency swings +-deviation_hz at rate_hz, i.e.
    the segment becomes Re(analytic(x) * exp(j*(deviation/rate) *
    sin(2*pi*rate*t))); the rest of the buffer is untouched.
    """
    Skew(deviation_hz, rate_hz)
    _check_segment(buffer, segment)
    x = buffer.samples.copy()
    seg = x[segment.start_sample:segment.end_sample]
    t = np.arange(len(seg)) / buffer.sample_rate
    phase = (deviation_hz / rate_hz) * np.sin(2 * np.pi * rate_hz * t)
    modulated = np.real(hilbert(seg) * np.exp(1j * phase))
    fade = int(round(crossfade_ms * buffer.sample_rate / 1000.0))
    x[segment.start_sample:segment.end_sample] = _blend_edges(seg, modulated, fade)
    return AudioBuffer(x, buffer.sample_rate)


def make_labeled_pair(reference: AudioBuffer, tokens, specs,
                      seg_config: SegmentationConfig | None = None,
                      ) -> tuple[AudioBuffer, list[EmphasisLabel]]:
    """Perturb chosen words of a clean utterance; return (query, labels).

    The reference is segmented and aligned to the token count, each spec
    is applied to its word's span, and labels mark perturbed words with
    the corresponding verdict (last writer wins on duplicate indices).
    """
    cfg = seg_config if seg_config is not None else SegmentationConfig()
    envelope = rms_envelope(reference, cfg)
    segments = detect_segments(envelope, cfg)
    if not segments:
        raise NoSpeech("reference utterance contains no speech")
    segments = align_to_token_count(segments, envelope, len(tokens))

    query = reference
    labels = [EmphasisLabel.NONE] * len(tokens)
    for spec in specs:
        if not 0 <= spec.word_index < len(tokens):
            raise InvalidIndex(f"word_index {spec.word_index} outside 0..{len(tokens) - 1}")
        segment = segments[spec.word_index]
        if isinstance(spec.effect, PitchShift):
            query = pitch_shift_word(query, segment, spec.effect.delta_hz, spec.crossfade_ms)
            labels[spec.word_index] = EmphasisLabel.PITCH
        else:
            query = skew_word(query, segment, spec.effect.deviation_hz,
                              spec.effect.rate_hz, spec.crossfade_ms)
            labels[spec.word_index] = EmphasisLabel.SKEW
    return query, labels
