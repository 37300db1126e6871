"""Command-line frontend: analyze / segment / synth / eval / serve.

Configuration merges in three layers, last one winning: module defaults,
a JSON config file (--config or the EMPHADET_CONFIG environment
variable), then individual flags. Exit codes: 0 success, 1 usage error,
2 data or provider error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .audio_io import condition, read_wav, write_wav
from .comparator import ClassifierConfig, EmphasisLabel
from .errors import EmphadetError
from .evalharness import (
    DatasetManifest,
    ManifestEntry,
    evaluate,
    load_manifest,
    save_manifest,
)
from .perturb import PerturbationSpec, PitchShift, Skew, make_labeled_pair
from .pipeline import ReferenceProvider, analyze, tokenize, transcribe, synthesize_reference
from .segmentation import SegmentationConfig, detect_segments, rms_envelope
from .spectral import GridConfig

ENV_CONFIG = "EMPHADET_CONFIG"

_SECTIONS = {
    "segmentation": SegmentationConfig,
    "classifier": ClassifierConfig,
    "grid": GridConfig,
}

# flag name -> (section, field)
_FLAG_MAP = {
    "window_ms": ("segmentation", "window_ms"),
    "hop_ms": ("segmentation", "hop_ms"),
    "silence_threshold": ("segmentation", "relative_threshold"),
    "min_word_ms": ("segmentation", "min_word_ms"),
    "min_gap_ms": ("segmentation", "min_gap_ms"),
    "pitch_threshold_hz": ("classifier", "pitch_threshold_hz"),
    "corr_threshold": ("classifier", "corr_threshold"),
    "max_lag_hz": ("classifier", "max_lag_hz"),
    "band_low_hz": ("grid", "f_min_hz"),
    "band_high_hz": ("grid", "f_max_hz"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_config_flags(parser):
    parser.add_argument("--config", help="JSON config file (also via $EMPHADET_CONFIG)")
    parser.add_argument("--show-config", action="store_true",
                        help="print the merged configuration and exit")
    for flag in _FLAG_MAP:
        parser.add_argument("--" + flag.replace("_", "-"), type=float, default=None)


def _load_config_file(path: str | None) -> dict:
    if path is None:
        path = os.environ.get(ENV_CONFIG)
    if not path:
        return {}
    p = Path(path)
    if not p.exists():
        raise UsageError(f"config file not found: {p}")
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise UsageError(f"config file {p} is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise UsageError(f"config file {p} must hold a JSON object")
    for section, fields in doc.items():
        if section not in _SECTIONS:
            raise UsageError(f"config file {p}: unknown section '{section}'")
        known = set(asdict(_SECTIONS[section]()))
        for field in fields:
            if field not in known:
                raise UsageError(f"config file {p}: unknown field '{section}.{field}'")
    return doc


def _merge_config(args) -> tuple[SegmentationConfig, ClassifierConfig, GridConfig, dict]:
    defaults = {name: asdict(cls()) for name, cls in _SECTIONS.items()}
    file_layer = _load_config_file(getattr(args, "config", None))
    flag_layer: dict = {}
    for flag, (section, field) in _FLAG_MAP.items():
        value = getattr(args, flag, None)
        if value is not None:
            flag_layer.setdefault(section, {})[field] = value

    effective = {s: dict(v) for s, v in defaults.items()}
    for layer in (file_layer, flag_layer):
        for section, fields in layer.items():
            effective[section].update(fields)

    try:
        seg = SegmentationConfig(**effective["segmentation"])
        cls = ClassifierConfig(**effective["classifier"])
        grid = GridConfig(**effective["grid"])
    except ValueError as exc:
        raise UsageError(f"invalid configuration: {exc}")
    provenance = {"defaults": defaults, "config_file": file_layer,
                  "flags": flag_layer, "effective": effective}
    return seg, cls, grid, provenance


def _maybe_show_config(args, provenance) -> bool:
    if getattr(args, "show_config", False):
        print(json.dumps(provenance, indent=2))
        return True
    return False


def _pretty_report(report) -> str:
    marked = []
    for w in report.words:
        if w.label is EmphasisLabel.NONE:
            marked.append(w.token)
        else:
            marked.append(f"[{w.token}:{w.label.value.upper()}]")
    lines = [" ".join(marked), ""]
    lines.append(f"{'idx':>3}  {'token':<14} {'verdict':<7} {'peak_lag_hz':>11} {'peak_value':>10}")
    for w in report.words:
        lines.append(f"{w.index:>3}  {w.token:<14} {w.label.value:<7} "
                     f"{w.peak_lag_hz:>+11.1f} {w.peak_value:>10.3f}")
    if report.alignment_adjusted:
        lines.append("")
        lines.append("note: segment count was reconciled with the transcript")
    return "\n".join(lines)


def _cmd_analyze(args) -> int:
    seg_cfg, cls_cfg, grid_cfg, provenance = _merge_config(args)
    if _maybe_show_config(args, provenance):
        return 0
    if not args.query:
        raise UsageError("analyze requires --query")
    if bool(args.reference) == bool(args.speaker):
        raise UsageError("analyze requires exactly one of --reference or --speaker")

    query = condition(read_wav(args.query), seg_cfg)

    provider = None
    utterance_id = args.utterance
    if args.speaker:
        if args.fixture_root:
            provider = ReferenceProvider.fixture(args.fixture_root)
            if utterance_id is None:
                utterance_id = Path(args.query).stem.removesuffix(".query")
        elif args.tts_url:
            provider = ReferenceProvider.remote(args.stt_url or args.tts_url, args.tts_url,
                                                timeout_ms=args.timeout_ms)
        else:
            raise UsageError("--speaker needs --fixture-root or --tts-url")

    if args.transcript:
        tokens = tokenize(args.transcript)
    elif provider is not None:
        tokens = transcribe(query, provider, speaker_id=args.speaker, utterance_id=utterance_id)
    else:
        raise UsageError("analyze requires --transcript when no provider is configured")

    if args.reference:
        reference = condition(read_wav(args.reference), seg_cfg)
    else:
        reference = synthesize_reference(tokens, args.speaker, provider, utterance_id=utterance_id)

    report = analyze(query, reference, tokens, seg_cfg, cls_cfg, grid_cfg)
    if args.json:
        print(report.to_json())
    else:
        print(_pretty_report(report))
    return 0


def _cmd_segment(args) -> int:
    seg_cfg, _cls, _grid, provenance = _merge_config(args)
    if _maybe_show_config(args, provenance):
        return 0
    if not args.input:
        raise UsageError("segment requires --input")
    buffer = condition(read_wav(args.input), seg_cfg)
    segments = detect_segments(rms_envelope(buffer, seg_cfg), seg_cfg)
    rate = buffer.sample_rate
    print("index,start_s,end_s,peak_rms")
    for i, seg in enumerate(segments):
        print(f"{i},{seg.start_sample / rate:.4f},{seg.end_sample / rate:.4f},{seg.peak_rms:.6f}")
    return 0


def _parse_skew(text: str) -> Skew:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("--skew takes DEVIATION_HZ,RATE_HZ")
    try:
        return Skew(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise UsageError(f"bad --skew value: {exc}")


def _cmd_synth(args) -> int:
    seg_cfg, _cls, _grid, provenance = _merge_config(args)
    if _maybe_show_config(args, provenance):
        return 0
    for name in ("input", "transcript", "out"):
        if not getattr(args, name):
            raise UsageError(f"synth requires --{name}")
    if args.word_index is None:
        raise UsageError("synth requires --word-index")
    if bool(args.pitch_hz) == bool(args.skew):
        raise UsageError("synth requires exactly one of --pitch-hz or --skew")

    effect = PitchShift(args.pitch_hz) if args.pitch_hz else _parse_skew(args.skew)
    reference = condition(read_wav(args.input), seg_cfg)
    tokens = tokenize(args.transcript)
    spec = PerturbationSpec(word_index=args.word_index, effect=effect)
    query, labels = make_labeled_pair(reference, tokens, [spec], seg_cfg)
    write_wav(query, args.out)

    entry = ManifestEntry(
        speaker_id=args.speaker or "synth",
        utterance_id=args.utterance or Path(args.out).stem,
        query_path=Path(args.out).resolve(),
        reference_path=Path(args.input).resolve(),
        transcript=args.transcript,
        emphasized_indices=frozenset(
            i for i, lab in enumerate(labels) if lab is not EmphasisLabel.NONE),
    )
    if args.manifest:
        existing = load_manifest(args.manifest).entries if Path(args.manifest).exists() else ()
        save_manifest(DatasetManifest(entries=existing + (entry,)), args.manifest)
    print(json.dumps({
        "speaker_id": entry.speaker_id,
        "utterance_id": entry.utterance_id,
        "query_path": str(entry.query_path),
        "reference_path": str(entry.reference_path),
        "transcript": entry.transcript,
        "emphasized_indices": sorted(entry.emphasized_indices),
    }))
    return 0


def _cmd_eval(args) -> int:
    seg_cfg, cls_cfg, grid_cfg, provenance = _merge_config(args)
    if _maybe_show_config(args, provenance):
        return 0
    if not args.manifest:
        raise UsageError("eval requires --manifest")
    manifest = load_manifest(args.manifest)
    metrics = evaluate(manifest, seg_cfg, cls_cfg, grid_cfg)
    if args.json:
        print(json.dumps({
            "accuracy": metrics.accuracy,
            "precision": metrics.precision,
            "recall": metrics.recall,
            "f1": metrics.f1,
            "confusion": metrics.confusion,
            "skipped": metrics.skipped,
            "entries": len(manifest.entries),
        }))
    else:
        c = metrics.confusion
        print(f"entries: {len(manifest.entries)} (skipped: {metrics.skipped})")
        print(f"confusion: tp={c['tp']} fp={c['fp']} fn={c['fn']} tn={c['tn']}")
        print(f"accuracy:  {metrics.accuracy:6.2f}")
        print(f"precision: {metrics.precision:6.2f}")
        print(f"recall:    {metrics.recall:6.2f}")
        print(f"f1:        {metrics.f1:6.2f}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    provider = None
    if args.fixture_root:
        provider = ReferenceProvider.fixture(args.fixture_root)
    elif args.tts_url:
        provider = ReferenceProvider.remote(args.stt_url or args.tts_url, args.tts_url,
                                            timeout_ms=args.timeout_ms)
    app = create_app(provider=provider, static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="emphadet", description=__doc__)
    parser.add_argument("--version", action="version", version=f"emphadet {__version__}")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("analyze", help="classify each word of a query utterance")
    p.add_argument("--query")
    p.add_argument("--reference")
    p.add_argument("--speaker")
    p.add_argument("--utterance")
    p.add_argument("--fixture-root")
    p.add_argument("--stt-url")
    p.add_argument("--tts-url")
    p.add_argument("--timeout-ms", type=int, default=10000)
    p.add_argument("--transcript")
    p.add_argument("--json", action="store_true")
    _add_config_flags(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("segment", help="emit detected word segments as CSV rows")
    p.add_argument("--input")
    _add_config_flags(p)
    p.set_defaults(func=_cmd_segment)

    p = sub.add_parser("synth", help="perturb one word of a clean utterance")
    p.add_argument("--input")
    p.add_argument("--transcript")
    p.add_argument("--word-index", type=int)
    p.add_argument("--pitch-hz", type=float)
    p.add_argument("--skew")
    p.add_argument("--out")
    p.add_argument("--manifest")
    p.add_argument("--speaker")
    p.add_argument("--utterance")
    _add_config_flags(p)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("eval", help="score the detector against a labeled manifest")
    p.add_argument("--manifest")
    p.add_argument("--json", action="store_true")
    _add_config_flags(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("serve", help="run the analysis service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--fixture-root")
    p.add_argument("--stt-url")
    p.add_argument("--tts-url")
    p.add_argument("--timeout-ms", type=int, default=10000)
    p.add_argument("--static", help="directory of web UI assets to serve")
    _add_config_flags(p)
    p.set_defaults(func=_cmd_serve)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_usage(sys.stderr)
            return 1
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EmphadetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
