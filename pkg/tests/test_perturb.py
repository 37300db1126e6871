import numpy as np
import pytest

from emphadet import (
    AudioBuffer,
    EmphasisLabel,
    WordSegment,
    compare_word,
    detect_segments,
    magnitude_spectrum,
    normalize_energy,
    rms_envelope,
)
from emphadet.errors import InvalidIndex, SegmentOutOfBounds
from emphadet.perturb import PerturbationSpec, PitchShift, Skew, make_labeled_pair, pitch_shift_word, skew_word

from conftest import sine_buffer

RATE = 16000


def tone_word_buffer(freq=1000.0, word_len=4000, pad=2000, amplitude=0.5):
    t = np.arange(word_len) / RATE
    word = amplitude * np.sin(2 * np.pi * freq * t)
    samples = np.concatenate([np.zeros(pad), word, np.zeros(pad)])
    return AudioBuffer(samples, RATE), WordSegment(pad, pad + word_len, amplitude)


def test_pitch_shift_moves_dominant_bin():
    buf, seg = tone_word_buffer(freq=1000.0)
    shifted = pitch_shift_word(buf, seg, 100.0)
    spec = magnitude_spectrum(shifted, seg)
    peak_hz = spec.frequencies[np.argmax(spec.magnitudes)]
    assert abs(peak_hz - 1100.0) <= 2 * spec.df_hz


def test_pitch_shift_rejects_zero_and_huge_delta():
    buf, seg = tone_word_buffer()
    with pytest.raises(ValueError):
        pitch_shift_word(buf, seg, 0.0)
    with pytest.raises(ValueError):
        pitch_shift_word(buf, seg, 1200.0)


def test_pitch_shift_locality():
    buf, seg = tone_word_buffer()
    shifted = pitch_shift_word(buf, seg, 150.0)
    assert np.array_equal(shifted.samples[:seg.start_sample], buf.samples[:seg.start_sample])
    assert np.array_equal(shifted.samples[seg.end_sample:], buf.samples[seg.end_sample:])


def test_pitch_shift_preserves_energy():
    buf, seg = tone_word_buffer()
    shifted = pitch_shift_word(buf, seg, 120.0)
    orig = buf.samples[seg.start_sample:seg.end_sample]
    new = shifted.samples[seg.start_sample:seg.end_sample]
    assert abs(np.dot(new, new) - np.dot(orig, orig)) <= 0.05 * np.dot(orig, orig)


def test_pitch_shift_round_trip(corpus):
    # +delta then -delta recovers the word within -30 dB away from crossfades
    _s, _u, _tokens, buf = corpus[0]
    seg = detect_segments(rms_envelope(buf))[1]
    fade = int(round(10.0 * RATE / 1000.0))
    once = pitch_shift_word(buf, seg, 90.0)
    back = pitch_shift_word(once, seg, -90.0)
    lo, hi = seg.start_sample + fade, seg.end_sample - fade
    orig = buf.samples[lo:hi]
    rec = back.samples[lo:hi]
    err = np.dot(rec - orig, rec - orig)
    ref = np.dot(orig, orig)
    assert err <= 1e-3 * ref


def test_pitch_shift_out_of_bounds():
    buf, _seg = tone_word_buffer()
    with pytest.raises(SegmentOutOfBounds):
        pitch_shift_word(buf, WordSegment(0, len(buf.samples) + 1, 0.1), 100.0)


def test_skew_spreads_energy_below_threshold(corpus):
    # run the comparator as the oracle: deviation 120 Hz at 6 Hz must push
    # the correlation peak under the default 0.55 skew threshold
    _s, _u, _tokens, buf = corpus[0]
    seg = detect_segments(rms_envelope(buf))[0]
    skewed = skew_word(buf, seg, 120.0, 6.0)
    q = normalize_energy(magnitude_spectrum(skewed, seg))
    r = normalize_energy(magnitude_spectrum(buf, seg))
    label, corr = compare_word(q, r)
    assert corr.peak_value < 0.55
    assert label is EmphasisLabel.SKEW


def test_skew_small_deviation_near_identity():
    buf, seg = tone_word_buffer()
    for deviation in (1.0, 0.1, 0.01):
        out = skew_word(buf, seg, deviation, 6.0)
        err = np.max(np.abs(out.samples - buf.samples))
        # error shrinks with the deviation and is already tiny at 1 Hz
        assert err <= 2.0 * deviation / 6.0
    finest = skew_word(buf, seg, 1e-6, 6.0)
    assert np.max(np.abs(finest.samples - buf.samples)) < 1e-6


def test_skew_locality():
    buf, seg = tone_word_buffer()
    out = skew_word(buf, seg, 120.0, 6.0)
    assert np.array_equal(out.samples[:seg.start_sample], buf.samples[:seg.start_sample])
    assert np.array_equal(out.samples[seg.end_sample:], buf.samples[seg.end_sample:])


def test_make_labeled_pair_empty_specs(corpus):
    _s, _u, tokens, buf = corpus[0]
    query, labels = make_labeled_pair(buf, tokens, [])
    assert np.array_equal(query.samples, buf.samples)
    assert labels == [EmphasisLabel.NONE] * len(tokens)


def test_make_labeled_pair_marks_perturbed_word(corpus):
    _s, _u, tokens, buf = corpus[0]
    assert len(tokens) == 6
    query, labels = make_labeled_pair(buf, tokens, [PerturbationSpec(3, PitchShift(80.0))])
    expected = [EmphasisLabel.NONE] * 6
    expected[3] = EmphasisLabel.PITCH
    assert labels == expected
    assert not np.array_equal(query.samples, buf.samples)


def test_make_labeled_pair_last_writer_wins(corpus):
    _s, _u, tokens, buf = corpus[0]
    specs = [PerturbationSpec(2, PitchShift(100.0)),
             PerturbationSpec(2, Skew(120.0, 6.0))]
    _query, labels = make_labeled_pair(buf, tokens, specs)
    assert labels[2] is EmphasisLabel.SKEW


def test_make_labeled_pair_bad_index(corpus):
    _s, _u, tokens, buf = corpus[0]
    with pytest.raises(InvalidIndex):
        make_labeled_pair(buf, tokens, [PerturbationSpec(len(tokens), PitchShift(80.0))])


def test_effect_validation():
    with pytest.raises(ValueError):
        PitchShift(0.0)
    with pytest.raises(ValueError):
        Skew(-1.0, 6.0)
    with pytest.raises(ValueError):
        Skew(120.0, 0.0)
