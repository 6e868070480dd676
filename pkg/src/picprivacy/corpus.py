"""Data model and on-disk formats for the image corpus.

All table files are line-delimited text so they stream and diff well:

* feature table -- one JSON object per line: ``{"id": "...", "values": [...]}``.
  The layer name ("fc6", "fc7", "fc8", "prob", "gist", "tags") is supplied
  externally, not stored per line.
* tag table -- one JSON object per line: ``{"id": "...", "tags": [...]}``.
* label file -- CSV with header ``id,label``; label is ``public`` or
  ``private``, case-insensitive.
* category lexicon -- plain text, one category name per line; category index
  equals line number minus one.

Lines starting with ``#`` are metadata/comment lines and are skipped by every
reader; writers emit one as the first line when a header string is given.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from . import LABELS, PRIVATE, PUBLIC
from .errors import DataFormatError

KNOWN_LAYERS = ("fc6", "fc7", "fc8", "prob", "gist", "tags")


def as_feature_vector(values: Iterable[float], where: str = "feature vector") -> np.ndarray:
    """Validate and convert a value sequence into a 1-D float64 array."""
    vec = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
                     dtype=np.float64)
    if vec.ndim != 1 or vec.size == 0:
        raise DataFormatError(f"{where}: expected a non-empty 1-D vector")
    if not np.all(np.isfinite(vec)):
        raise DataFormatError(f"{where}: non-finite value")
    return vec


@dataclass(frozen=True)
class ImageRecord:
    """One image: feature vectors per layer, tag sets, and an optional label."""

    id: str
    features: dict[str, np.ndarray] = field(default_factory=dict)
    user_tags: frozenset[str] = frozenset()
    deep_tags: frozenset[str] = frozenset()
    label: str | None = None

    def tags(self, source: str = "combined") -> frozenset[str]:
        """Tag set for a source selector: ``user``, ``deep``, or ``combined``."""
        if source == "user":
            return self.user_tags
        if source == "deep":
            return self.deep_tags
        if source == "combined":
            return self.user_tags | self.deep_tags
        raise ValueError(f"unknown tag source {source!r}")


@dataclass(frozen=True)
class CategoryLexicon:
    """Ordered names of the object categories a feature source predicts over."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if any(not name for name in self.labels):
            raise DataFormatError("lexicon contains an empty category name")

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, index: int) -> str:
        return self.labels[index]


@dataclass
class Dataset:
    """An ordered collection of image records with consistent layer dimensions."""

    records: list[ImageRecord]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        dims: dict[str, int] = {}
        for rec in self.records:
            if not rec.id:
                raise DataFormatError("record with empty id")
            if rec.id in seen:
                raise DataFormatError(f"duplicate record id {rec.id!r}")
            seen.add(rec.id)
            for layer, vec in rec.features.items():
                dim = int(vec.shape[0])
                if dims.setdefault(layer, dim) != dim:
                    raise DataFormatError(
                        f"layer {layer!r}: dimension {dim} of record {rec.id!r} "
                        f"does not match established dimension {dims[layer]}"
                    )
            if rec.label is not None and rec.label not in LABELS:
                raise DataFormatError(f"record {rec.id!r}: unknown label {rec.label!r}")
        self._dims = dims

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def by_id(self) -> dict[str, ImageRecord]:
        return {rec.id: rec for rec in self.records}

    @property
    def class_counts(self) -> tuple[int, int]:
        """(public, private) counts over labeled records."""
        n_pub = sum(1 for r in self.records if r.label == PUBLIC)
        n_priv = sum(1 for r in self.records if r.label == PRIVATE)
        return n_pub, n_priv

    def layer_dim(self, layer: str) -> int:
        if layer not in self._dims:
            raise KeyError(f"no records carry layer {layer!r}")
        return self._dims[layer]

    def labeled(self) -> list[ImageRecord]:
        return [r for r in self.records if r.label is not None]


def _iter_data_lines(path: Path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if line.startswith("#"):
                continue
            yield lineno, line.rstrip("\n")


def load_feature_table(path: str | Path, layer: str) -> Dataset:
    """Load a feature table file into a Dataset with only `layer` populated.

    Record order follows file line order.  Raises DataFormatError naming the
    offending line for malformed JSON, the offending id for a dimension
    mismatch, and on duplicate ids.
    """
    path = Path(path)
    records: list[ImageRecord] = []
    dim: int | None = None
    seen: set[str] = set()
    for lineno, line in _iter_data_lines(path):
        try:
            obj = json.loads(line)
            rec_id = obj["id"]
            values = obj["values"]
        except (json.JSONDecodeError, KeyError, TypeError):
            raise DataFormatError(f"{path}:{lineno}: malformed feature record") from None
        if not isinstance(rec_id, str) or not rec_id:
            raise DataFormatError(f"{path}:{lineno}: record id must be a non-empty string")
        if rec_id in seen:
            raise DataFormatError(f"{path}:{lineno}: duplicate id {rec_id!r}")
        seen.add(rec_id)
        vec = as_feature_vector(values, where=f"{path}:{lineno} (id {rec_id!r})")
        if dim is None:
            dim = vec.shape[0]
        elif vec.shape[0] != dim:
            raise DataFormatError(
                f"{path}:{lineno}: id {rec_id!r} has dimension {vec.shape[0]}, expected {dim}"
            )
        records.append(ImageRecord(id=rec_id, features={layer: vec}))
    return Dataset(records)


def write_feature_table(path: str | Path, records: Iterable[tuple[str, np.ndarray]],
                        header: str | None = None) -> None:
    """Write (id, vector) pairs as a feature table. Floats round-trip exactly."""
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(f"# {header}\n")
        for rec_id, vec in records:
            obj = {"id": rec_id, "values": [float(v) for v in vec]}
            fh.write(json.dumps(obj) + "\n")


def load_tag_table(path: str | Path) -> dict[str, list[str]]:
    """Load a tag table into an id -> raw tag list map, tags kept verbatim."""
    path = Path(path)
    tags: dict[str, list[str]] = {}
    for lineno, line in _iter_data_lines(path):
        try:
            obj = json.loads(line)
            rec_id = obj["id"]
            raw = obj["tags"]
        except (json.JSONDecodeError, KeyError, TypeError):
            raise DataFormatError(f"{path}:{lineno}: malformed tag record") from None
        if not isinstance(rec_id, str) or not rec_id:
            raise DataFormatError(f"{path}:{lineno}: record id must be a non-empty string")
        if not isinstance(raw, list) or any(not isinstance(t, str) for t in raw):
            raise DataFormatError(f"{path}:{lineno}: tags must be a list of strings")
        if rec_id in tags:
            raise DataFormatError(f"{path}:{lineno}: duplicate id {rec_id!r}")
        tags[rec_id] = raw
    return tags


def write_tag_table(path: str | Path, tags: Mapping[str, Iterable[str]],
                    header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(f"# {header}\n")
        for rec_id, tagset in tags.items():
            fh.write(json.dumps({"id": rec_id, "tags": sorted(tagset)}) + "\n")


def load_labels(path: str | Path) -> dict[str, str]:
    """Load an id -> privacy label map from a CSV file with header ``id,label``."""
    path = Path(path)
    labels: dict[str, str] = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = csv.reader(line for line in fh if not line.startswith("#"))
        try:
            head = next(rows)
        except StopIteration:
            raise DataFormatError(f"{path}: empty label file") from None
        if [h.strip().lower() for h in head] != ["id", "label"]:
            raise DataFormatError(f"{path}: expected header 'id,label'")
        for row in rows:
            if len(row) != 2:
                raise DataFormatError(f"{path}: malformed row {row!r}")
            rec_id, raw = row[0], row[1].strip().lower()
            if raw not in LABELS:
                raise DataFormatError(f"{path}: unknown label {row[1]!r} for id {rec_id!r}")
            if rec_id in labels:
                raise DataFormatError(f"{path}: duplicate id {rec_id!r}")
            labels[rec_id] = raw
    return labels


def count_labels(labels: Mapping[str, str]) -> tuple[int, int]:
    """(public, private) counts for a label map."""
    n_pub = sum(1 for v in labels.values() if v == PUBLIC)
    n_priv = sum(1 for v in labels.values() if v == PRIVATE)
    return n_pub, n_priv


def load_lexicon(path: str | Path, expected_count: int = 1000) -> CategoryLexicon:
    """Load a category lexicon; category index = line number - 1."""
    path = Path(path)
    names: list[str] = []
    for lineno, line in _iter_data_lines(path):
        name = line.strip()
        if not name:
            raise DataFormatError(f"{path}:{lineno}: blank category name")
        names.append(name)
    if len(names) != expected_count:
        raise DataFormatError(
            f"{path}: expected {expected_count} categories, found {len(names)}"
        )
    return CategoryLexicon(tuple(names))


def assemble(
    feature_datasets: Mapping[str, Dataset] | None = None,
    user_tags: Mapping[str, Iterable[str]] | None = None,
    deep_tags: Mapping[str, Iterable[str]] | None = None,
    labels: Mapping[str, str] | None = None,
) -> Dataset:
    """Merge per-layer feature datasets, tag sets, and labels into one Dataset.

    The id universe is the union of all sources; ids keep first-seen order.
    Records missing a source simply lack that field.
    """
    order: list[str] = []
    seen: set[str] = set()

    def note(rec_id: str) -> None:
        if rec_id not in seen:
            seen.add(rec_id)
            order.append(rec_id)

    feature_datasets = feature_datasets or {}
    for layer_ds in feature_datasets.values():
        for rec in layer_ds:
            note(rec.id)
    for src in (user_tags, deep_tags, labels):
        if src:
            for rec_id in src:
                note(rec_id)

    by_layer = {layer: ds.by_id for layer, ds in feature_datasets.items()}
    records = []
    for rec_id in order:
        features = {
            layer: idx[rec_id].features[layer]
            for layer, idx in by_layer.items()
            if rec_id in idx
        }
        records.append(
            ImageRecord(
                id=rec_id,
                features=features,
                user_tags=frozenset(user_tags.get(rec_id, ())) if user_tags else frozenset(),
                deep_tags=frozenset(deep_tags.get(rec_id, ())) if deep_tags else frozenset(),
                label=labels.get(rec_id) if labels else None,
            )
        )
    return Dataset(records)


def with_deep_tags(dataset: Dataset, deep_tags: Mapping[str, Iterable[str]]) -> Dataset:
    """Return a copy of `dataset` with deep tags replaced from the given map."""
    return Dataset([
        replace(rec, deep_tags=frozenset(deep_tags.get(rec.id, ())))
        for rec in dataset
    ])
