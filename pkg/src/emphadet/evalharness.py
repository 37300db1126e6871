"""Dataset loading and detector scoring.

A manifest lists labeled utterance pairs; evaluation runs the pipeline on
each pair and scores per word, binary: a word counts as positive when the
detector (or the label set) marks it emphasized, whichever the side.
Entries whose segmentation cannot be reconciled with the transcript are
skipped and reported rather than counted wrong.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .audio_io import condition, read_wav
from .comparator import ClassifierConfig, EmphasisLabel
from .errors import (
    AlignmentFailed,
    DatasetUnusable,
    EmptyAfterTrim,
    InvalidIndex,
    MissingFile,
    NoSpeech,
    ParseError,
)
from .pipeline import analyze, tokenize
from .segmentation import SegmentationConfig
from .spectral import GridConfig

MANIFEST_VERSION = 1


@dataclass(frozen=True)
class ManifestEntry:
    speaker_id: str
    utterance_id: str
    query_path: Path
    reference_path: Path
    transcript: str
    emphasized_indices: frozenset[int]


@dataclass(frozen=True)
class DatasetManifest:
    entries: tuple[ManifestEntry, ...]


@dataclass(frozen=True)
class EvalMetrics:
    """Percent metrics plus the word-level confusion counts behind them."""

    accuracy: float
    precision: float
    recall: float
    f1: float
    confusion: dict
    skipped: int = 0


def metrics_from_confusion(tp: int, fp: int, fn: int, tn: int, skipped: int = 0) -> EvalMetrics:
    total = tp + fp + fn + tn
    accuracy = 100.0 * (tp + tn) / total if total else 0.0
    precision = 100.0 * tp / (tp + fp) if (tp + fp) else 0.0
    recall = 100.0 * tp / (tp + fn) if (tp + fn) else 0.0
    f1 = 2 * precision * recall / (precision + recall) if (precision + recall) else 0.0
    return EvalMetrics(accuracy=accuracy, precision=precision, recall=recall, f1=f1,
                       confusion={"tp": tp, "fp": fp, "fn": fn, "tn": tn}, skipped=skipped)


def _require(entry: dict, field: str, where: str):
    if field not in entry:
        raise ParseError(f"{where}: missing field '{field}'")
    return entry[field]


def load_manifest(path) -> DatasetManifest:
    """Load and validate a JSON dataset manifest.

    Relative audio paths resolve against the manifest's directory; every
    referenced file must exist and every emphasized index must fall
    inside its transcript's token range.
    """
    path = Path(path)
    if not path.exists():
        raise MissingFile(f"no such manifest: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise ParseError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("version") != MANIFEST_VERSION:
        raise ParseError(f"{path}: expected manifest version {MANIFEST_VERSION}")
    if not isinstance(doc.get("entries"), list):
        raise ParseError(f"{path}: 'entries' must be a list")

    base = path.parent
    entries = []
    seen = set()
    for i, raw in enumerate(doc["entries"]):
        where = f"{path}: entry {i}"
        speaker = str(_require(raw, "speaker_id", where))
        utterance = str(_require(raw, "utterance_id", where))
        if (speaker, utterance) in seen:
            raise ParseError(f"{where}: duplicate utterance '{utterance}' for speaker '{speaker}'")
        seen.add((speaker, utterance))

        query_path = (base / _require(raw, "query_path", where)).resolve()
        reference_path = (base / _require(raw, "reference_path", where)).resolve()
        for p in (query_path, reference_path):
            if not p.exists():
                raise MissingFile(f"{where}: audio file not found: {p}")

        transcript = str(_require(raw, "transcript", where))
        tokens = tokenize(transcript)
        indices = _require(raw, "emphasized_indices", where)
        if not isinstance(indices, list):
            raise ParseError(f"{where}: emphasized_indices must be a list")
        for idx in indices:
            if not isinstance(idx, int) or not 0 <= idx < len(tokens):
                raise InvalidIndex(
                    f"{where} ('{utterance}'): index {idx} outside the "
                    f"{len(tokens)}-token transcript")
        entries.append(ManifestEntry(speaker, utterance, query_path, reference_path,
                                     transcript, frozenset(indices)))
    return DatasetManifest(entries=tuple(entries))


def save_manifest(manifest: DatasetManifest, path) -> None:
    """Write a manifest back out as JSON (paths stored as given)."""
    doc = {
        "version": MANIFEST_VERSION,
        "entries": [
            {
                "speaker_id": e.speaker_id,
                "utterance_id": e.utterance_id,
                "query_path": str(e.query_path),
                "reference_path": str(e.reference_path),
                "transcript": e.transcript,
                "emphasized_indices": sorted(e.emphasized_indices),
            }
            for e in manifest.entries
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def evaluate(manifest: DatasetManifest,
             seg_config: SegmentationConfig | None = None,
             classifier: ClassifierConfig | None = None,
             grid: GridConfig | None = None) -> EvalMetrics:
    """Run the detector over a manifest and score it word by word.

    Alignment failures and no-speech entries count as skipped; more than
    half skipped makes the run meaningless and raises DatasetUnusable.
    """
    tp = fp = fn = tn = 0
    skipped = 0
    for entry in manifest.entries:
        tokens = tokenize(entry.transcript)
        try:
            query = condition(read_wav(entry.query_path))
            reference = condition(read_wav(entry.reference_path))
            report = analyze(query, reference, tokens, seg_config, classifier, grid)
        except (AlignmentFailed, NoSpeech, EmptyAfterTrim):
            skipped += 1
            continue
        for word in report.words:
            predicted = word.label is not EmphasisLabel.NONE
            actual = word.index in entry.emphasized_indices
            if predicted and actual:
                tp += 1
            elif predicted:
                fp += 1
            elif actual:
                fn += 1
            else:
                tn += 1
    if manifest.entries and skipped / len(manifest.entries) > 0.5:
        raise DatasetUnusable(f"{skipped} of {len(manifest.entries)} entries skipped")
    return metrics_from_confusion(tp, fp, fn, tn, skipped=skipped)
