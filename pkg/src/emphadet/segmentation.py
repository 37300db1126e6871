"""Word separation on a sliding-RMS envelope.

A conditioned waveform is framed into overlapping windows, each window is
reduced to its RMS level, and maximal runs of frames above a threshold
relative to the envelope peak become word candidates. A reconciliation
step then forces the candidate count to match the transcript token count
by merging across the smallest gaps or splitting at envelope minima.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio_io import AudioBuffer
from .errors import AlignmentFailed, BufferTooShort


@dataclass(frozen=True)
class SegmentationConfig:
    """Framing and thresholding knobs; durations are in milliseconds."""

    window_ms: float = 25.0
    hop_ms: float = 10.0
    relative_threshold: float = 0.05
    min_word_ms: float = 80.0
    min_gap_ms: float = 60.0

    def __post_init__(self):
        for name in ("window_ms", "hop_ms", "min_word_ms", "min_gap_ms"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 < self.relative_threshold < 1.0:
            raise ValueError("relative_threshold must lie in (0, 1)")

    def window_samples(self, sample_rate: int) -> int:
        return max(1, int(round(sample_rate * self.window_ms / 1000.0)))

    def hop_samples(self, sample_rate: int) -> int:
        return max(1, int(round(sample_rate * self.hop_ms / 1000.0)))

    def min_word_samples(self, sample_rate: int) -> int:
        return max(1, int(round(sample_rate * self.min_word_ms / 1000.0)))

    def min_gap_samples(self, sample_rate: int) -> int:
        return max(1, int(round(sample_rate * self.min_gap_ms / 1000.0)))


@dataclass(frozen=True)
class RmsEnvelope:
    """Sliding-window RMS track; hop/window are in samples."""

    values: np.ndarray
    hop: int
    window: int
    sample_rate: int

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("envelope values must be a non-empty 1-D array")
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise ValueError("envelope values must be finite and non-negative")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class WordSegment:
    """Half-open sample span [start_sample, end_sample) of one word."""

    start_sample: int
    end_sample: int
    peak_rms: float

    def __post_init__(self):
        if not 0 <= self.start_sample < self.end_sample:
            raise ValueError("segment must satisfy 0 <= start < end")
        if self.peak_rms < 0:
            raise ValueError("peak_rms must be non-negative")

    @property
    def length(self) -> int:
        return self.end_sample - self.start_sample


def rms_envelope(buffer: AudioBuffer, config: SegmentationConfig | None = None) -> RmsEnvelope:
    """Compute sqrt(mean(x^2)) over each sliding window.

    values[i] covers samples [i*hop, i*hop + window); the buffer must be
    at least one window long.
    """
    cfg = config if config is not None else SegmentationConfig()
    window = cfg.window_samples(buffer.sample_rate)
    hop = cfg.hop_samples(buffer.sample_rate)
    x = buffer.samples
    if len(x) < window:
        raise BufferTooShort(f"buffer of {len(x)} samples is shorter than one {window}-sample window")
    frames = np.lib.stride_tricks.sliding_window_view(x, window)[::hop]
    values = np.sqrt(np.mean(frames * frames, axis=1))
    return RmsEnvelope(values=values, hop=hop, window=window, sample_rate=buffer.sample_rate)


def _voiced_runs(mask: np.ndarray) -> list[tuple[int, int]]:
    """Maximal runs of True as inclusive (first_frame, last_frame) pairs."""
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks, [idx.size - 1]))
    return [(int(idx[s]), int(idx[e])) for s, e in zip(starts, ends)]


def detect_segments(envelope: RmsEnvelope, config: SegmentationConfig | None = None) -> list[WordSegment]:
    """Threshold the envelope at a fraction of its peak and emit word spans.

    Runs of frames at or above the threshold become candidates; candidates
    separated by less than min_gap merge; survivors shorter than min_word
    are dropped. Frame runs convert to sample spans as
    [first*hop, last*hop + window). Silent input yields an empty list.
    """
    cfg = config if config is not None else SegmentationConfig()
    values = envelope.values
    hop, window = envelope.hop, envelope.window
    peak = float(values.max())
    if peak <= 0.0:
        return []

    runs = _voiced_runs(values >= cfg.relative_threshold * peak)

    min_gap = cfg.min_gap_samples(envelope.sample_rate)
    merged: list[list[int]] = []
    for first, last in runs:
        if merged:
            gap = first * hop - (merged[-1][1] * hop + window)
            if gap < min_gap:
                merged[-1][1] = last
                continue
        merged.append([first, last])

    min_word = cfg.min_word_samples(envelope.sample_rate)
    segments = []
    for first, last in merged:
        start, end = first * hop, last * hop + window
        if end - start < min_word:
            continue
        segments.append(WordSegment(start, end, float(values[first:last + 1].max())))
    return segments


def _frames_within(envelope: RmsEnvelope, start: int, end: int) -> np.ndarray:
    """Indices of frames whose window lies entirely inside [start, end)."""
    hop, window = envelope.hop, envelope.window
    lo = -(-start // hop)  # ceil division
    hi = (end - window) // hop
    hi = min(hi, len(envelope.values) - 1)
    if hi < lo:
        return np.empty(0, dtype=int)
    return np.arange(lo, hi + 1)


def _peak_in_span(envelope: RmsEnvelope, start: int, end: int) -> float:
    frames = _frames_within(envelope, start, end)
    if frames.size == 0:
        # fall back to any frame overlapping the span
        hop, window = envelope.hop, envelope.window
        lo = max(0, (start - window) // hop + 1)
        hi = min(len(envelope.values) - 1, (end - 1) // hop)
        if hi < lo:
            return 0.0
        frames = np.arange(lo, hi + 1)
    return float(envelope.values[frames].max())


def _split_segment(envelope: RmsEnvelope, segment: WordSegment) -> tuple[WordSegment, WordSegment]:
    hop, window = envelope.hop, envelope.window
    frames = _frames_within(envelope, segment.start_sample, segment.end_sample)
    if frames.size >= 3:
        interior = frames[1:-1]
        quietest = int(interior[np.argmin(envelope.values[interior])])
        split = quietest * hop + window // 2
    else:
        split = (segment.start_sample + segment.end_sample) // 2
    split = min(max(split, segment.start_sample + 1), segment.end_sample - 1)
    left = WordSegment(segment.start_sample, split,
                       _peak_in_span(envelope, segment.start_sample, split))
    right = WordSegment(split, segment.end_sample,
                        _peak_in_span(envelope, split, segment.end_sample))
    return left, right


def align_to_token_count(segments: list[WordSegment], envelope: RmsEnvelope, k: int) -> list[WordSegment]:
    """Force the segment list to exactly k entries.

    Too many segments: repeatedly merge the adjacent pair separated by the
    smallest silence gap. Too few: repeatedly split the longest segment at
    its quietest interior frame (minimum-duration rule waived for these
    forced splits). Counts that disagree with k by more than
    max(2, count/2) abort with AlignmentFailed instead of force-fitting.
    """
    if k < 1:
        raise ValueError("token count k must be >= 1")
    count = len(segments)
    if count == 0 or abs(count - k) > max(2.0, count / 2.0):
        raise AlignmentFailed(f"detected {count} segments for {k} transcript tokens")

    segs = list(segments)
    while len(segs) > k:
        gaps = [segs[i + 1].start_sample - segs[i].end_sample for i in range(len(segs) - 1)]
        i = int(np.argmin(gaps))
        merged = WordSegment(segs[i].start_sample, segs[i + 1].end_sample,
                             max(segs[i].peak_rms, segs[i + 1].peak_rms))
        segs[i:i + 2] = [merged]
    while len(segs) < k:
        i = int(np.argmax([s.length for s in segs]))
        segs[i:i + 1] = list(_split_segment(envelope, segs[i]))
    return segs
