"""
Sliding-RMS word separation
===========================

Synthesize a six-word utterance, compute its RMS envelope, threshold it
at 5% of the envelope peak, and draw the detected word spans over the
waveform. Output lands in demos/output/01_segmentation.png.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from emphadet import SegmentationConfig, condition, detect_segments, rms_envelope, synth_utterance

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

tokens = "i did not take your bag".split()
buffer = condition(synth_utterance(tokens, seed=7))
config = SegmentationConfig()

envelope = rms_envelope(buffer, config)
segments = detect_segments(envelope, config)
print(f"{len(segments)} segments detected for {len(tokens)} tokens")
for i, seg in enumerate(segments):
    print(f"  word {i}: {seg.start_sample / 16000:.3f}s .. {seg.end_sample / 16000:.3f}s "
          f"(peak RMS {seg.peak_rms:.3f})")

t = np.arange(len(buffer)) / buffer.sample_rate
t_env = (np.arange(len(envelope.values)) * envelope.hop + envelope.window / 2) / 16000
threshold = config.relative_threshold * envelope.values.max()

fig, ax = plt.subplots(figsize=(11, 4))
ax.plot(t, buffer.samples, lw=0.4, alpha=0.6, label="waveform")
ax.plot(t_env, envelope.values, lw=1.6, color="C1", label="RMS envelope")
ax.axhline(threshold, color="C3", ls="--", lw=1, label="silence threshold")
for seg, token in zip(segments, tokens):
    ax.axvspan(seg.start_sample / 16000, seg.end_sample / 16000, alpha=0.12, color="C2")
    ax.text((seg.start_sample + seg.end_sample) / 32000, 0.45, token,
            ha="center", fontsize=9)
ax.set_xlabel("time (s)")
ax.set_ylabel("amplitude / RMS")
ax.legend(loc="lower right", fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "01_segmentation.png", dpi=120)
print(f"wrote {OUT / '01_segmentation.png'}")
