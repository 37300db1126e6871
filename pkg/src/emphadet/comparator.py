"""Cross-correlation of word spectra over frequency lags, and the verdict.

Two unit-energy spectra on the same grid are slid against each other in
df-sized frequency steps. A high correlation peak near zero lag means the
word matches its reference; a high peak displaced in frequency means the
whole spectrum shifted (pitch emphasis); a peak that is low everywhere
means the spectral shape itself changed (skew emphasis).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import GridMismatch
from .spectral import GridConfig, Spectrum, to_common_grid


class EmphasisLabel(enum.Enum):
    NONE = "none"
    PITCH = "pitch"
    SKEW = "skew"


@dataclass(frozen=True)
class ClassifierConfig:
    """Decision thresholds. Defaults are calibrated on the synthetic
    benches in the evaluation harness, not measured ground truth."""

    pitch_threshold_hz: float = 40.0
    corr_threshold: float = 0.55
    max_lag_hz: float = 500.0

    def __post_init__(self):
        if self.pitch_threshold_hz <= 0 or self.max_lag_hz <= 0:
            raise ValueError("thresholds must be positive")
        if not 0.0 < self.corr_threshold < 1.0:
            raise ValueError("corr_threshold must lie in (0, 1)")


@dataclass(frozen=True)
class CorrResult:
    """Correlation curve over symmetric frequency lags, plus its peak."""

    curve: np.ndarray
    lags_hz: np.ndarray
    peak_lag_hz: float
    peak_value: float

    def __post_init__(self):
        curve = np.array(self.curve, dtype=np.float64)
        lags = np.array(self.lags_hz, dtype=np.float64)
        if curve.shape != lags.shape:
            raise ValueError("curve and lags_hz must have the same shape")
        curve.setflags(write=False)
        lags.setflags(write=False)
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "lags_hz", lags)

    def rows(self) -> list[tuple[float, float]]:
        """(lag_hz, value) pairs, for export and plotting."""
        return list(zip(self.lags_hz.tolist(), self.curve.tolist()))


def cross_correlate(a: Spectrum, b: Spectrum, max_lag_hz: float = 500.0) -> CorrResult:
    """Correlate two same-grid unit-energy spectra over +-max_lag_hz.

    curve[tau] = sum_f a(f) * b(f + tau), with bins outside the grid
    treated as zero; tau runs in df steps. Positive peak lag therefore
    means b's content sits above a's. Ties at the maximum resolve toward
    the smaller |lag|, then toward the negative lag.
    """
    if len(a.magnitudes) != len(b.magnitudes) \
            or not math.isclose(a.df_hz, b.df_hz, rel_tol=1e-12) \
            or not math.isclose(a.f_lo_hz, b.f_lo_hz, rel_tol=1e-12, abs_tol=1e-9):
        raise GridMismatch("spectra must share one frequency grid")

    df = a.df_hz
    n = len(a.magnitudes)
    n_lags = int(round(max_lag_hz / df))
    taus = np.arange(-n_lags, n_lags + 1)
    lags_hz = taus * df

    # np.correlate full mode: curve(tau) lives at index (n - 1 - tau)
    full = np.correlate(a.magnitudes, b.magnitudes, mode="full")
    curve = np.zeros(taus.size, dtype=np.float64)
    in_range = np.abs(taus) <= n - 1
    curve[in_range] = full[n - 1 - taus[in_range]]

    best = float(curve.max())
    candidates = np.flatnonzero(curve == best)
    order = sorted(candidates, key=lambda j: (abs(lags_hz[j]), lags_hz[j]))
    peak = int(order[0])
    return CorrResult(curve=curve, lags_hz=lags_hz,
                      peak_lag_hz=float(lags_hz[peak]), peak_value=best)


def classify(result: CorrResult, config: ClassifierConfig | None = None) -> EmphasisLabel:
    """Map a correlation result to a verdict.

    Skew is checked first: when the peak itself is low, its location is
    noise and must not trigger the pitch rule.
    """
    cfg = config if config is not None else ClassifierConfig()
    if result.peak_value < cfg.corr_threshold:
        return EmphasisLabel.SKEW
    if abs(result.peak_lag_hz) > cfg.pitch_threshold_hz:
        return EmphasisLabel.PITCH
    return EmphasisLabel.NONE


def compare_word(query: Spectrum, reference: Spectrum,
                 config: ClassifierConfig | None = None,
                 grid: GridConfig | None = None) -> tuple[EmphasisLabel, CorrResult]:
    """Full per-word comparison: common grid, correlation, verdict.

    The reference goes first into the correlation so that a positive peak
    lag reads as "the spoken word sits above the reference in frequency".
    """
    cfg = config if config is not None else ClassifierConfig()
    q, r = to_common_grid(query, reference, grid)
    corr = cross_correlate(r, q, cfg.max_lag_hz)
    return classify(corr, cfg), corr
