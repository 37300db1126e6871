"""WAV file I/O and waveform conditioning.

Everything downstream operates on mono float buffers at a fixed 16 kHz
working rate. `condition` is the one entry point that takes arbitrary PCM
input to that shape: resample by linear interpolation, then trim leading
and trailing silence with the same sliding-RMS framing the segmenter uses.
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    CorruptHeader,
    EmptyAfterTrim,
    IoFailure,
    MissingFile,
    UnsupportedFormat,
)

WORKING_RATE = 16000

_PCM_TAG = 1
_FLOAT_TAG = 3


@dataclass(frozen=True)
class AudioBuffer:
    """Mono waveform: float64 samples (nominally in [-1, 1]) plus a rate."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a non-empty 1-D array")
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        if int(self.sample_rate) <= 0:
            raise ValueError("sample_rate must be positive")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate


def mixdown(frames: np.ndarray) -> np.ndarray:
    """Average channels of an (n_frames, n_channels) array into mono."""
    frames = np.asarray(frames, dtype=np.float64)
    if frames.ndim == 1:
        return frames
    return frames.mean(axis=1)


def _decode_wav(data: bytes, origin: str) -> AudioBuffer:
    if len(data) < 12 or data[0:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise CorruptHeader(f"{origin}: not a RIFF/WAVE file")

    fmt = None
    payload = None
    pos = 12
    while pos + 8 <= len(data):
        cid = data[pos:pos + 4]
        (size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8:pos + 8 + size]
        if cid == b"fmt ":
            if len(body) < 16:
                raise CorruptHeader(f"{origin}: fmt chunk truncated")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif cid == b"data":
            if len(body) < size:
                raise CorruptHeader(f"{origin}: data chunk truncated")
            payload = body
        pos += 8 + size + (size & 1)  # chunks are word-aligned

    if fmt is None or payload is None:
        raise CorruptHeader(f"{origin}: missing fmt or data chunk")

    tag, channels, rate, _byte_rate, _block_align, bits = fmt
    if tag not in (_PCM_TAG, _FLOAT_TAG):
        raise UnsupportedFormat(f"{origin}: format tag {tag} (compressed codecs unsupported)")
    if channels not in (1, 2):
        raise UnsupportedFormat(f"{origin}: {channels} channels (mono/stereo only)")
    if rate <= 0:
        raise CorruptHeader(f"{origin}: nonsensical sample rate {rate}")

    if tag == _FLOAT_TAG:
        if bits != 32:
            raise UnsupportedFormat(f"{origin}: {bits}-bit float")
        raw = np.frombuffer(payload, dtype="<f4")
        scaled = np.clip(raw.astype(np.float64), -1.0, 1.0)
    elif bits == 16:
        scaled = np.frombuffer(payload, dtype="<i2").astype(np.float64) / 32768.0
    elif bits == 8:
        # 8-bit PCM is unsigned with a 128 midpoint
        scaled = (np.frombuffer(payload, dtype=np.uint8).astype(np.float64) - 128.0) / 128.0
    elif bits == 24:
        trimmed = payload[: len(payload) - (len(payload) % 3)]
        octets = np.frombuffer(trimmed, dtype=np.uint8).reshape(-1, 3).astype(np.int64)
        value = octets[:, 0] | (octets[:, 1] << 8) | (octets[:, 2] << 16)
        value = (value ^ 0x800000) - 0x800000  # sign-extend 24 -> 64
        scaled = value.astype(np.float64) / 8388608.0
    else:
        raise UnsupportedFormat(f"{origin}: {bits}-bit integer PCM")

    if scaled.size == 0:
        raise CorruptHeader(f"{origin}: empty data chunk")
    if channels == 2:
        scaled = mixdown(scaled[: 2 * (scaled.size // 2)].reshape(-1, 2))
    return AudioBuffer(scaled, rate)


def _encode_wav(buffer: AudioBuffer, bit_depth: int) -> bytes:
    if bit_depth == 16:
        full_scale = 32768.0
        ints = np.clip(np.rint(buffer.samples * full_scale), -32768, 32767).astype("<i2")
        payload = ints.tobytes()
    elif bit_depth == 24:
        full_scale = 8388608.0
        ints = np.clip(np.rint(buffer.samples * full_scale), -8388608, 8388607).astype(np.int64)
        octets = np.empty((ints.size, 3), dtype=np.uint8)
        octets[:, 0] = ints & 0xFF
        octets[:, 1] = (ints >> 8) & 0xFF
        octets[:, 2] = (ints >> 16) & 0xFF
        payload = octets.tobytes()
    else:
        raise UnsupportedFormat(f"cannot write {bit_depth}-bit PCM")

    block_align = bit_depth // 8
    out = io.BytesIO()
    out.write(b"RIFF")
    out.write(struct.pack("<I", 36 + len(payload)))
    out.write(b"WAVE")
    out.write(b"fmt ")
    out.write(struct.pack("<IHHIIHH", 16, _PCM_TAG, 1, buffer.sample_rate,
                          buffer.sample_rate * block_align, block_align, bit_depth))
    out.write(b"data")
    out.write(struct.pack("<I", len(payload)))
    out.write(payload)
    return out.getvalue()


def from_wav_bytes(data: bytes, origin: str = "<bytes>") -> AudioBuffer:
    """Decode in-memory WAV bytes (uploads, provider payloads)."""
    return _decode_wav(data, origin)


def to_wav_bytes(buffer: AudioBuffer, bit_depth: int = 16) -> bytes:
    """Encode a buffer as PCM WAV bytes (mono, little-endian)."""
    return _encode_wav(buffer, bit_depth)


def read_wav(path) -> AudioBuffer:
    """Load a PCM WAV file as a mono buffer scaled to [-1, 1].

    Accepts 8/16/24-bit integer or 32-bit float encodings, 1-2 channels;
    stereo is averaged down to mono.
    """
    path = Path(path)
    if not path.exists():
        raise MissingFile(f"no such file: {path}")
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    return _decode_wav(data, str(path))


def write_wav(buffer: AudioBuffer, path, bit_depth: int = 16) -> None:
    """Write a buffer as mono PCM WAV at the buffer's own rate.

    16-bit by default; 24-bit is available for high-resolution fixtures.
    Samples are clipped to [-1, 1] and rounded to the nearest code.
    """
    data = _encode_wav(buffer, bit_depth)
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def resample_linear(samples: np.ndarray, rate_in: int, rate_out: int) -> np.ndarray:
    """Resample by linear interpolation on the sample-time grid."""
    if rate_in == rate_out:
        return np.asarray(samples, dtype=np.float64)
    x = np.asarray(samples, dtype=np.float64)
    n_out = max(1, int(round(len(x) * rate_out / rate_in)))
    t_out = np.arange(n_out, dtype=np.float64) / rate_out
    t_in = np.arange(len(x), dtype=np.float64) / rate_in
    return np.interp(t_out, t_in, x)


def condition(buffer: AudioBuffer, seg_config=None) -> AudioBuffer:
    """Resample to the 16 kHz working rate and trim edge silence.

    Trimming removes, at each edge, the union of analysis windows whose
    RMS falls below the segmenter's relative silence threshold, and
    repeats until nothing more comes off. Iterating to that fixed point
    is what makes `condition` exactly idempotent. Buffers shorter than
    one analysis window are resampled but not trimmed.
    """
    from .segmentation import SegmentationConfig, rms_envelope

    cfg = seg_config if seg_config is not None else SegmentationConfig()

    if buffer.sample_rate != WORKING_RATE:
        buf = AudioBuffer(resample_linear(buffer.samples, buffer.sample_rate, WORKING_RATE),
                          WORKING_RATE)
    else:
        buf = buffer

    window = cfg.window_samples(WORKING_RATE)
    hop = cfg.hop_samples(WORKING_RATE)

    samples = buf.samples
    while len(samples) >= window:
        env = rms_envelope(AudioBuffer(samples, WORKING_RATE), cfg).values
        peak = float(env.max())
        if peak <= 0.0:
            raise EmptyAfterTrim("input is silent end to end")
        voiced = np.flatnonzero(env >= cfg.relative_threshold * peak)
        first, last = int(voiced[0]), int(voiced[-1])
        lo = 0 if first == 0 else (first - 1) * hop + window
        hi = len(samples) if last == len(env) - 1 else (last + 1) * hop
        if lo >= hi:
            raise EmptyAfterTrim("no samples survive silence trimming")
        if lo == 0 and hi == len(samples):
            break
        samples = samples[lo:hi]

    if samples is buffer.samples:
        return buffer
    return AudioBuffer(samples, WORKING_RATE)
