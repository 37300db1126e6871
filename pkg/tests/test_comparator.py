import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emphadet import (
    ClassifierConfig,
    CorrResult,
    EmphasisLabel,
    Spectrum,
    WordSegment,
    classify,
    compare_word,
    cross_correlate,
    magnitude_spectrum,
    normalize_energy,
)
from emphadet.errors import GridMismatch
from emphadet.perturb import pitch_shift_word
from emphadet.spectral import to_common_grid

from conftest import sine_buffer


def unit_spectrum(mags, df=10.0, f_lo=0.0):
    return normalize_energy(Spectrum(np.asarray(mags, dtype=float), df_hz=df, f_lo_hz=f_lo))


def random_unit_spectrum(rng, n=256, df=10.0):
    return unit_spectrum(rng.uniform(0.0, 1.0, n) + 1e-9, df=df)


def test_autocorrelation_identity():
    rng = np.random.default_rng(0)
    s = random_unit_spectrum(rng)
    result = cross_correlate(s, s, max_lag_hz=500.0)
    assert result.peak_lag_hz == 0.0
    assert abs(result.peak_value - 1.0) <= 1e-9


def test_delta_vs_flat_closed_form():
    n = 256
    delta = np.zeros(n)
    delta[40] = 1.0
    flat = np.full(n, 1.0)
    result = cross_correlate(unit_spectrum(delta), unit_spectrum(flat), max_lag_hz=500.0)
    assert abs(result.peak_value - 1.0 / np.sqrt(n)) <= 1e-12


def test_tone_pair_peak_lag():
    # tones at 1000 and 1080 Hz on a 20 Hz grid: peak at +80 Hz
    df = 20.0
    n = 400
    a = np.zeros(n)
    b = np.zeros(n)
    a[int(1000 / df)] = 1.0
    b[int(1080 / df)] = 1.0
    result = cross_correlate(unit_spectrum(a, df), unit_spectrum(b, df), max_lag_hz=500.0)
    assert abs(result.peak_lag_hz - 80.0) <= df


def test_grid_mismatch_rejected():
    a = unit_spectrum(np.ones(100), df=10.0)
    b = unit_spectrum(np.ones(100), df=20.0)
    with pytest.raises(GridMismatch):
        cross_correlate(a, b)
    c = unit_spectrum(np.ones(101), df=10.0)
    with pytest.raises(GridMismatch):
        cross_correlate(a, c)


def test_lags_symmetric_and_df_spaced():
    s = unit_spectrum(np.ones(64), df=25.0)
    result = cross_correlate(s, s, max_lag_hz=500.0)
    assert result.lags_hz[0] == -500.0
    assert result.lags_hz[-1] == 500.0
    assert np.allclose(np.diff(result.lags_hz), 25.0)
    assert result.peak_lag_hz in result.lags_hz
    rows = result.rows()
    assert len(rows) == len(result.lags_hz)
    assert rows[0] == (-500.0, result.curve[0])


@given(seed=st.integers(0, 500))
@settings(max_examples=60, deadline=None)
def test_swap_symmetry_and_bound(seed):
    rng = np.random.default_rng(seed)
    a = random_unit_spectrum(rng)
    b = random_unit_spectrum(rng)
    ab = cross_correlate(a, b, max_lag_hz=400.0)
    ba = cross_correlate(b, a, max_lag_hz=400.0)
    assert np.max(np.abs(ab.curve - ba.curve[::-1])) <= 1e-9
    assert ab.peak_value <= 1.0 + 1e-9
    assert abs(ab.peak_lag_hz + ba.peak_lag_hz) <= 1e-9


def _result(peak_lag, peak_value):
    lags = np.array([-100.0, 0.0, peak_lag])
    curve = np.array([0.0, 0.0, peak_value])
    return CorrResult(curve=curve, lags_hz=lags, peak_lag_hz=peak_lag, peak_value=peak_value)


def test_classify_pitch_when_peak_displaced():
    assert classify(_result(80.0, 0.95)) is EmphasisLabel.PITCH
    assert classify(_result(-80.0, 0.95)) is EmphasisLabel.PITCH


def test_classify_none_when_peak_near_zero():
    assert classify(_result(0.0, 0.95)) is EmphasisLabel.NONE
    assert classify(_result(20.0, 0.8)) is EmphasisLabel.NONE


def test_classify_skew_when_correlation_low():
    # low peak wins even when its lag is large: the location is noise
    assert classify(_result(0.0, 0.2)) is EmphasisLabel.SKEW
    assert classify(_result(300.0, 0.2)) is EmphasisLabel.SKEW


@given(lag=st.floats(-400, 400), value=st.floats(0.0, 1.0),
       pitch_thr=st.floats(5, 200), pitch_raise=st.floats(0, 200),
       corr_thr=st.floats(0.05, 0.95), corr_drop=st.floats(0, 0.9))
@settings(max_examples=200, deadline=None)
def test_threshold_monotonicity(lag, value, pitch_thr, pitch_raise, corr_thr, corr_drop):
    base_cfg = ClassifierConfig(pitch_threshold_hz=pitch_thr, corr_threshold=corr_thr)
    result = _result(lag, value)
    base = classify(result, base_cfg)

    raised = ClassifierConfig(pitch_threshold_hz=pitch_thr + pitch_raise, corr_threshold=corr_thr)
    after_raise = classify(result, raised)
    if base is not EmphasisLabel.PITCH:
        assert after_raise is not EmphasisLabel.PITCH

    lowered_corr = max(0.01, corr_thr - corr_drop)
    lowered = ClassifierConfig(pitch_threshold_hz=pitch_thr, corr_threshold=lowered_corr)
    after_lower = classify(result, lowered)
    if base is not EmphasisLabel.SKEW:
        assert after_lower is not EmphasisLabel.SKEW


def test_compare_word_identical():
    buf = sine_buffer(700.0, 0.4)
    spec = normalize_energy(magnitude_spectrum(buf, WordSegment(0, len(buf), 0.5)))
    label, corr = compare_word(spec, spec)
    assert label is EmphasisLabel.NONE
    assert corr.peak_lag_hz == 0.0
    assert abs(corr.peak_value - 1.0) <= 1e-9


def test_compare_word_detects_shift(corpus):
    # shift one real synthetic word by +100 Hz; the corr peak must move there
    _speaker, _utt, _tokens, buf = corpus[0]
    from emphadet import detect_segments, rms_envelope

    seg = detect_segments(rms_envelope(buf))[0]
    shifted = pitch_shift_word(buf, seg, 100.0)
    q = normalize_energy(magnitude_spectrum(shifted, seg))
    r = normalize_energy(magnitude_spectrum(buf, seg))
    label, corr = compare_word(q, r)
    assert label is EmphasisLabel.PITCH
    assert abs(corr.peak_lag_hz - 100.0) <= max(q.df_hz, 10.0)


def test_compare_word_white_noise_is_skew(corpus):
    # Monte-Carlo: a voiced word against unit-energy white-noise spectra
    # must classify as skew in >= 99% of trials
    _speaker, _utt, _tokens, buf = corpus[0]
    from emphadet import detect_segments, rms_envelope

    seg = detect_segments(rms_envelope(buf))[0]
    word = normalize_energy(magnitude_spectrum(buf, seg))
    gridded, _ = to_common_grid(word, word)
    n = len(gridded.magnitudes)
    assert n >= 512

    rng = np.random.default_rng(42)
    trials = 1000
    skew_count = 0
    for _ in range(trials):
        noise = normalize_energy(Spectrum(np.abs(rng.standard_normal(n)) + 1e-12,
                                          df_hz=gridded.df_hz, f_lo_hz=gridded.f_lo_hz))
        corr = cross_correlate(gridded, noise, max_lag_hz=500.0)
        if classify(corr) is EmphasisLabel.SKEW:
            skew_count += 1
    assert skew_count >= int(0.99 * trials)
