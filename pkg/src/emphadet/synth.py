"""Deterministic synthetic voiced utterances.

Stands in for recorded speech in tests, demos, and calibration runs:
each word is a harmonic series under a vowel-like formant envelope with
soft onset/offset ramps, and words are separated by true silence. The
same (tokens, seed) pair always yields the same waveform.
"""

from __future__ import annotations

import numpy as np

from .audio_io import WORKING_RATE, AudioBuffer

# rough F1/F2/F3 centers for a handful of vowel qualities
_FORMANT_TABLE = (
    (730.0, 1090.0, 2440.0),
    (270.0, 2290.0, 3010.0),
    (530.0, 1840.0, 2480.0),
    (570.0, 840.0, 2410.0),
    (440.0, 1020.0, 2240.0),
    (660.0, 1720.0, 2410.0),
)


def synth_word(duration_s: float, f0_hz: float, formants,
               sample_rate: int = WORKING_RATE, amplitude: float = 0.4,
               edge_ms: float = 15.0, rng: np.random.Generator | None = None) -> np.ndarray:
    """One voiced word: harmonics of f0 weighted by a formant envelope."""
    rng = rng if rng is not None else np.random.default_rng(0)
    n = int(round(duration_s * sample_rate))
    t = np.arange(n) / sample_rate
    x = np.zeros(n)
    k = 1
    while k * f0_hz < 0.45 * sample_rate:
        f = k * f0_hz
        weight = sum(np.exp(-0.5 * ((f - fc) / 180.0) ** 2) for fc in formants)
        weight += 0.004  # keep harmonics between formants from vanishing
        weight *= (f0_hz / f) ** 0.7  # glottal-source spectral tilt
        phase = rng.uniform(0, 2 * np.pi)
        x += weight * np.sin(2 * np.pi * f * t + phase)
        k += 1

    edge = min(int(round(edge_ms * sample_rate / 1000.0)), n // 2)
    if edge > 0:
        ramp = np.sin(0.5 * np.pi * np.arange(edge) / edge) ** 2
        x[:edge] *= ramp
        x[-edge:] *= ramp[::-1]

    peak = np.abs(x).max()
    if peak > 0:
        x *= amplitude / peak
    return x


def synth_utterance(tokens, f0_hz: float = 140.0, sample_rate: int = WORKING_RATE,
                    word_s: float = 0.32, gap_s: float = 0.18, amplitude: float = 0.4,
                    edge_pad_s: float = 0.0, seed: int = 0) -> AudioBuffer:
    """Concatenate one synthetic word per token, separated by silence.

    Word durations jitter slightly and each word gets its own vowel
    quality so spectra differ across positions. `edge_pad_s` of silence
    is prepended/appended when a trimmable input is wanted.
    """
    rng = np.random.default_rng(seed)
    gap = np.zeros(int(round(gap_s * sample_rate)))
    pieces = []
    if edge_pad_s > 0:
        pieces.append(np.zeros(int(round(edge_pad_s * sample_rate))))
    for i, _tok in enumerate(tokens):
        if i > 0:
            pieces.append(gap)
        duration = word_s * rng.uniform(0.9, 1.15)
        formants = _FORMANT_TABLE[(i + rng.integers(0, len(_FORMANT_TABLE))) % len(_FORMANT_TABLE)]
        pieces.append(synth_word(duration, f0_hz * rng.uniform(0.97, 1.03), formants,
                                 sample_rate, amplitude, rng=rng))
    if edge_pad_s > 0:
        pieces.append(np.zeros(int(round(edge_pad_s * sample_rate))))
    return AudioBuffer(np.concatenate(pieces), sample_rate)
