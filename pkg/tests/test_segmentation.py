import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emphadet import (
    AudioBuffer,
    RmsEnvelope,
    SegmentationConfig,
    WordSegment,
    align_to_token_count,
    detect_segments,
    rms_envelope,
)
from emphadet.errors import AlignmentFailed, BufferTooShort

from conftest import sine_buffer

RATE = 16000
HOP = 160
WINDOW = 400


def burst_signal(layout, amplitude=0.5, seed=0):
    """Concatenate (kind, n_samples) pieces; kind is 'burst' or 'gap'."""
    rng = np.random.default_rng(seed)
    pieces = []
    for kind, n in layout:
        if kind == "gap":
            pieces.append(np.zeros(n))
        else:
            # constant-magnitude random-sign burst: every straddling window
            # sees RMS far above the 5% threshold, so detection boundaries
            # are predictable from frame arithmetic alone
            pieces.append(amplitude * np.where(rng.random(n) < 0.5, -1.0, 1.0))
    return AudioBuffer(np.concatenate(pieces), RATE)


def test_envelope_all_zero():
    env = rms_envelope(AudioBuffer(np.zeros(8000), RATE))
    assert np.all(env.values == 0.0)


def test_envelope_constant():
    env = rms_envelope(AudioBuffer(np.full(8000, 0.3), RATE))
    assert np.allclose(env.values, 0.3, rtol=1e-12)


def test_envelope_sine_rms():
    # 440 Hz spans exactly 11 cycles per 25 ms window at 16 kHz
    amplitude = 0.6
    env = rms_envelope(sine_buffer(440.0, 1.0, amplitude=amplitude))
    expected = amplitude / math.sqrt(2)
    interior = env.values[1:-1]
    assert np.all(np.abs(interior - expected) < 0.01 * expected)


def test_envelope_length_invariant():
    for n in (400, 401, 999, 16000, 16001):
        env = rms_envelope(AudioBuffer(np.full(n, 0.1), RATE))
        assert len(env.values) == (n - WINDOW) // HOP + 1


def test_envelope_too_short():
    with pytest.raises(BufferTooShort):
        rms_envelope(AudioBuffer(np.ones(WINDOW - 1) * 0.1, RATE))


def test_detect_silent_buffer_empty():
    env = rms_envelope(AudioBuffer(np.zeros(8000), RATE))
    assert detect_segments(env) == []


def test_detect_two_bursts():
    # hop-aligned bursts: every window overlapping a burst does so by at
    # least 80 samples, hence the expected span of a burst [s, e) is
    # [s - 2*hop, e + 1.5*hop) by frame arithmetic (window = 2.5 hops)
    lead, b1, gap, b2, tail = 3200, 4800, 4800, 4800, 3200
    buf = burst_signal([("gap", lead), ("burst", b1), ("gap", gap), ("burst", b2), ("gap", tail)])
    segs = detect_segments(rms_envelope(buf))
    assert len(segs) == 2
    expected = [(lead - 2 * HOP, lead + b1 + int(1.5 * HOP)),
                (lead + b1 + gap - 2 * HOP, lead + b1 + gap + b2 + int(1.5 * HOP))]
    for seg, (s, e) in zip(segs, expected):
        assert abs(seg.start_sample - s) <= HOP
        assert abs(seg.end_sample - e) <= HOP


def test_detect_merges_short_gap():
    # 40 ms silence < 60 ms min_gap: one merged segment
    buf = burst_signal([("gap", 3200), ("burst", 4800), ("gap", 640), ("burst", 4800), ("gap", 3200)])
    segs = detect_segments(rms_envelope(buf))
    assert len(segs) == 1


def test_detect_drops_short_blip():
    # a 20 ms click spans ~55 ms after window-touch inflation, still under
    # the 80 ms minimum word duration: dropped entirely
    buf = burst_signal([("gap", 3200), ("burst", 320), ("gap", 6400)])
    segs = detect_segments(rms_envelope(buf))
    assert segs == []


def test_detect_segments_sorted_disjoint(corpus):
    for _speaker, _utt, _tokens, buf in corpus:
        segs = detect_segments(rms_envelope(buf))
        for a, b in zip(segs, segs[1:]):
            assert a.end_sample <= b.start_sample
        assert all(0 <= s.start_sample < s.end_sample <= len(buf.samples) for s in segs)


@given(scale=st.sampled_from([0.05, 0.3, 1.0, 3.0, 17.0]), seed=st.integers(0, 50))
@settings(max_examples=30, deadline=None)
def test_detect_amplitude_invariance(scale, seed):
    rng = np.random.default_rng(seed)
    layout = [("gap", 3200)]
    for _ in range(int(rng.integers(1, 4))):
        layout += [("burst", int(rng.integers(1600, 6400))), ("gap", int(rng.integers(1600, 6400)))]
    buf = burst_signal(layout, amplitude=0.04, seed=seed)
    scaled = AudioBuffer(buf.samples * scale, RATE)
    base = detect_segments(rms_envelope(buf))
    rescaled = detect_segments(rms_envelope(scaled))
    assert [(s.start_sample, s.end_sample) for s in base] == \
           [(s.start_sample, s.end_sample) for s in rescaled]


def naive_segments(samples, cfg=SegmentationConfig(), rate=RATE):
    """Per-sample reference implementation with plain Python loops."""
    window = cfg.window_samples(rate)
    hop = cfg.hop_samples(rate)
    values = []
    i = 0
    while i + window <= len(samples):
        acc = 0.0
        for x in samples[i:i + window]:
            acc += x * x
        values.append(math.sqrt(acc / window))
        i += hop
    peak = max(values)
    if peak <= 0:
        return []
    threshold = cfg.relative_threshold * peak
    runs = []
    current = None
    for f, v in enumerate(values):
        if v >= threshold:
            if current is None:
                current = [f, f]
            else:
                current[1] = f
        elif current is not None:
            runs.append(current)
            current = None
    if current is not None:
        runs.append(current)
    merged = []
    for first, last in runs:
        if merged and first * hop - (merged[-1][1] * hop + window) < cfg.min_gap_samples(rate):
            merged[-1][1] = last
        else:
            merged.append([first, last])
    out = []
    for first, last in merged:
        start, end = first * hop, last * hop + window
        if end - start >= cfg.min_word_samples(rate):
            out.append((start, end))
    return out


def test_brute_force_equivalence():
    rng = np.random.default_rng(7)
    for seed in range(5):
        layout = [("gap", int(rng.integers(800, 2400)))]
        for _ in range(int(rng.integers(1, 3))):
            layout += [("burst", int(rng.integers(1600, 4000))),
                       ("gap", int(rng.integers(1200, 3200)))]
        buf = burst_signal(layout, seed=seed)
        if len(buf.samples) > RATE:
            buf = AudioBuffer(buf.samples[:RATE], RATE)
        got = detect_segments(rms_envelope(buf))
        want = naive_segments(buf.samples.tolist())
        assert len(got) == len(want)
        for seg, (s, e) in zip(got, want):
            assert abs(seg.start_sample - s) <= HOP
            assert abs(seg.end_sample - e) <= HOP


def _manual_envelope(n_frames, quiet_frames=()):
    values = np.full(n_frames, 0.5)
    for f in quiet_frames:
        values[f] = 0.01
    return RmsEnvelope(values=values, hop=HOP, window=WINDOW, sample_rate=RATE)


def test_align_identity():
    segs = [WordSegment(i * 2000, i * 2000 + 1500, 0.5) for i in range(6)]
    env = _manual_envelope(100)
    assert align_to_token_count(segs, env, 6) == segs


def test_align_merges_smallest_gap():
    # seven segments; the gap between #2 and #3 is 30 ms, all others 200 ms
    starts = [0]
    segs = []
    pos = 0
    for i in range(7):
        end = pos + 2000
        segs.append(WordSegment(pos, end, 0.5))
        gap = 480 if i == 2 else 3200  # 30 ms vs 200 ms
        pos = end + gap
    env = _manual_envelope(pos // HOP)
    aligned = align_to_token_count(segs, env, 6)
    assert len(aligned) == 6
    assert aligned[2].start_sample == segs[2].start_sample
    assert aligned[2].end_sample == segs[3].end_sample


def test_align_splits_longest_at_envelope_minimum():
    # one long segment with a clear interior dip, plus a short one
    long_seg = WordSegment(0, 8000, 0.5)
    short_seg = WordSegment(9600, 12000, 0.5)
    dip_frame = 20  # samples 3200..3600
    env = _manual_envelope(80, quiet_frames=(dip_frame,))
    aligned = align_to_token_count([long_seg, short_seg], env, 3)
    assert len(aligned) == 3
    split = aligned[0].end_sample
    assert aligned[1].start_sample == split
    assert abs(split - (dip_frame * HOP + WINDOW // 2)) <= WINDOW


def test_align_guard_rejects_gross_mismatch():
    segs = [WordSegment(0, 2000, 0.5), WordSegment(4000, 6000, 0.5)]
    env = _manual_envelope(60)
    with pytest.raises(AlignmentFailed):
        align_to_token_count(segs, env, 6)


def test_align_empty_rejected():
    env = _manual_envelope(60)
    with pytest.raises(AlignmentFailed):
        align_to_token_count([], env, 1)


@given(k=st.integers(1, 9))
@settings(max_examples=20, deadline=None)
def test_align_count_or_error(k):
    segs = [WordSegment(i * 3000, i * 3000 + 2000, 0.4) for i in range(6)]
    env = _manual_envelope(200)
    try:
        aligned = align_to_token_count(segs, env, k)
    except AlignmentFailed:
        assert abs(6 - k) > max(2, 3)
        return
    assert len(aligned) == k
    for a, b in zip(aligned, aligned[1:]):
        assert a.end_sample <= b.start_sample
