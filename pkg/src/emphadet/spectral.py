"""Per-word magnitude spectra on explicit frequency grids.

Each word is transformed whole (no tapering window, zero-padded to a
power of two), reduced to the non-negative-frequency magnitudes, scaled
to unit energy, and, for comparison, interpolated linearly onto a common
grid restricted to a configurable analysis band.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio_io import AudioBuffer
from .errors import BandOutOfRange, EmptySegment, ZeroEnergy
from .segmentation import WordSegment


@dataclass(frozen=True)
class Spectrum:
    """Magnitudes sampled at f_lo_hz + i * df_hz for i = 0..len-1."""

    magnitudes: np.ndarray
    df_hz: float
    f_lo_hz: float = 0.0

    def __post_init__(self):
        mags = np.array(self.magnitudes, dtype=np.float64)
        if mags.ndim != 1 or mags.size == 0:
            raise ValueError("magnitudes must be a non-empty 1-D array")
        if not np.all(np.isfinite(mags)) or np.any(mags < 0):
            raise ValueError("magnitudes must be finite and non-negative")
        if self.df_hz <= 0:
            raise ValueError("df_hz must be positive")
        mags.setflags(write=False)
        object.__setattr__(self, "magnitudes", mags)

    @property
    def frequencies(self) -> np.ndarray:
        return self.f_lo_hz + np.arange(len(self.magnitudes)) * self.df_hz

    @property
    def f_hi_hz(self) -> float:
        return self.f_lo_hz + (len(self.magnitudes) - 1) * self.df_hz

    def energy(self) -> float:
        m = self.magnitudes
        return float(np.dot(m, m))

    def rows(self) -> list[tuple[float, float]]:
        """(frequency_hz, magnitude) pairs, for export and plotting."""
        return list(zip(self.frequencies.tolist(), self.magnitudes.tolist()))


@dataclass(frozen=True)
class GridConfig:
    """Analysis band for cross-word comparison (Hz)."""

    f_min_hz: float = 60.0
    f_max_hz: float = 4000.0

    def __post_init__(self):
        if not 0 <= self.f_min_hz < self.f_max_hz:
            raise ValueError("band must satisfy 0 <= f_min < f_max")


def magnitude_spectrum(buffer: AudioBuffer, segment: WordSegment) -> Spectrum:
    """FFT magnitudes of one word segment.

    The segment's samples are zero-padded to the next power of two and
    transformed; the returned grid starts at DC with df = rate / fft_size.
    No tapering window is applied.
    """
    if segment.end_sample > len(buffer.samples):
        raise EmptySegment(
            f"segment [{segment.start_sample}, {segment.end_sample}) exceeds "
            f"buffer of {len(buffer.samples)} samples")
    x = buffer.samples[segment.start_sample:segment.end_sample]
    if x.size == 0:
        raise EmptySegment("segment selects no samples")
    fft_size = 1 << (len(x) - 1).bit_length()
    mags = np.abs(np.fft.rfft(x, fft_size))
    return Spectrum(mags, df_hz=buffer.sample_rate / fft_size, f_lo_hz=0.0)


def normalize_energy(spectrum: Spectrum) -> Spectrum:
    """Scale magnitudes so their squares sum to one."""
    energy = spectrum.energy()
    if energy <= 0.0:
        raise ZeroEnergy("spectrum carries no energy")
    return Spectrum(spectrum.magnitudes / np.sqrt(energy), spectrum.df_hz, spectrum.f_lo_hz)


def resample_to_grid(spectrum: Spectrum, target_df_hz: float,
                     band: tuple[float, float]) -> Spectrum:
    """Linearly interpolate onto f_min, f_min+df, ... <= f_max, then renormalize.

    The requested band must lie inside the source grid's coverage.
    """
    if target_df_hz <= 0:
        raise ValueError("target_df_hz must be positive")
    f_min, f_max = band
    if f_min > f_max or f_min < spectrum.f_lo_hz - 1e-9 or f_max > spectrum.f_hi_hz + 1e-9:
        raise BandOutOfRange(
            f"band [{f_min}, {f_max}] Hz outside source coverage "
            f"[{spectrum.f_lo_hz}, {spectrum.f_hi_hz}] Hz")
    n = int(np.floor((f_max - f_min) / target_df_hz + 1e-9)) + 1
    freqs = f_min + np.arange(n) * target_df_hz
    mags = np.interp(freqs, spectrum.frequencies, spectrum.magnitudes)
    return normalize_energy(Spectrum(mags, df_hz=target_df_hz, f_lo_hz=f_min))


def to_common_grid(a: Spectrum, b: Spectrum,
                   grid: GridConfig | None = None) -> tuple[Spectrum, Spectrum]:
    """Put two word spectra on one grid: the finer df of the two wins.

    The longer word has the finer native resolution, so its df is used
    for both; output is band-limited and unit-energy.
    """
    cfg = grid if grid is not None else GridConfig()
    target_df = min(a.df_hz, b.df_hz)
    band = (cfg.f_min_hz, cfg.f_max_hz)
    return resample_to_grid(a, target_df, band), resample_to_grid(b, target_df, band)
