"""
End-to-end emphasis detection
=============================

Build a labeled query/reference pair with the perturbation generator
(pitch-shift one word, skew another), run the full analysis, and print
the per-word verdicts next to the ground truth.
"""

from emphadet import EmphasisLabel, analyze, condition, synth_utterance
from emphadet.perturb import PerturbationSpec, PitchShift, Skew, make_labeled_pair

tokens = "why did you give sarah the sandwich".split()
reference = condition(synth_utterance(tokens, f0_hz=150.0, seed=42))

specs = [
    PerturbationSpec(2, PitchShift(110.0)),   # "you" shifted up
    PerturbationSpec(4, Skew(140.0, 6.0)),    # "sarah" smeared
]
query, truth = make_labeled_pair(reference, tokens, specs)

report = analyze(query, reference, tokens)

print(f"{'word':<10} {'truth':<7} {'detected':<9} {'peak lag':>9} {'peak value':>11}")
for word, expected in zip(report.words, truth):
    mark = "" if word.label is expected else "   <-- mismatch"
    print(f"{word.token:<10} {expected.value:<7} {word.label.value:<9} "
          f"{word.peak_lag_hz:>+8.1f}Hz {word.peak_value:>11.3f}{mark}")

detected = [w.label for w in report.words]
agreement = sum(d is e for d, e in zip(detected, truth)) / len(truth)
print(f"\nper-word agreement with ground truth: {100 * agreement:.0f}%")
highlighted = " ".join(
    f"[{w.token.upper()}]" if w.label is not EmphasisLabel.NONE else w.token
    for w in report.words)
print(f"rendered: {highlighted}")
