"""Bag-of-tags features and feature selection for training.

The tag vocabulary is always built from training records only; tags unseen
at vectorization time are ignored.  Featurizers share a small fit/transform
protocol so the evaluation protocol can re-fit them inside every
cross-validation fold without leaking test information.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .corpus import ImageRecord
from .errors import ComputationError

__all__ = [
    "SparseVector",
    "TagVocabulary",
    "build_vocabulary",
    "vectorize",
    "combine_tagsets",
    "LayerFeaturizer",
    "TagFeaturizer",
    "write_vocabulary_csv",
]


@dataclass(frozen=True)
class SparseVector:
    """Sparse vector as parallel index/value arrays with a fixed dimension."""

    indices: np.ndarray  # int64, strictly increasing
    values: np.ndarray  # float64, finite and nonzero
    dim: int

    def __post_init__(self) -> None:
        if self.indices.shape != self.values.shape:
            raise ValueError("indices and values must have equal length")
        if self.indices.size:
            if not np.all(np.diff(self.indices) > 0):
                raise ValueError("sparse indices must be strictly increasing")
            if self.indices[0] < 0 or self.indices[-1] >= self.dim:
                raise ValueError("sparse index out of range")
            if not np.all(np.isfinite(self.values)) or np.any(self.values == 0.0):
                raise ValueError("sparse values must be finite and nonzero")

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.dim, dtype=np.float64)
        dense[self.indices] = self.values
        return dense


def sparse_from_pairs(pairs: Iterable[tuple[int, float]], dim: int) -> SparseVector:
    items = sorted(pairs)
    idx = np.array([i for i, _ in items], dtype=np.int64)
    val = np.array([v for _, v in items], dtype=np.float64)
    return SparseVector(idx, val, dim)


@dataclass(frozen=True)
class TagVocabulary:
    """Tag -> column index map fit on training tag sets."""

    index: dict[str, int]
    min_df: int = 1

    @property
    def size(self) -> int:
        return len(self.index)


def build_vocabulary(train_tagsets: Sequence[Iterable[str]], min_df: int = 1) -> TagVocabulary:
    """Build the tag vocabulary from training tag sets.

    Keeps every tag whose document frequency is at least `min_df`; column
    indices are assigned in lexicographic tag order, so the result does not
    depend on corpus order.
    """
    if not train_tagsets:
        raise ComputationError("cannot build a vocabulary from an empty corpus")
    df: dict[str, int] = {}
    for tagset in train_tagsets:
        for tag in set(tagset):
            df[tag] = df.get(tag, 0) + 1
    kept = sorted(tag for tag, n in df.items() if n >= min_df)
    return TagVocabulary(index={tag: i for i, tag in enumerate(kept)}, min_df=min_df)


def vectorize(tags: Iterable[str], vocab: TagVocabulary, mode: str = "binary") -> SparseVector:
    """Encode tags over the vocabulary; out-of-vocabulary tags are ignored.

    ``binary`` records presence as 1.0; ``count`` records occurrence counts
    (these differ only when `tags` is a list with repeats).
    """
    if mode not in ("binary", "count"):
        raise ValueError(f"unknown vectorize mode {mode!r}")
    counts: dict[int, float] = {}
    for tag in tags:
        col = vocab.index.get(tag)
        if col is None:
            continue
        if mode == "binary":
            counts[col] = 1.0
        else:
            counts[col] = counts.get(col, 0.0) + 1.0
    return sparse_from_pairs(counts.items(), dim=vocab.size)


def combine_tagsets(user: frozenset[str], deep: frozenset[str]) -> frozenset[str]:
    """Combined user+deep tag set (plain union)."""
    return user | deep


def write_vocabulary_csv(path: str | Path, vocab: TagVocabulary,
                         header: str | None = None) -> None:
    """Export the vocabulary as ``tag,index`` CSV for reproducibility audits."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if header:
            fh.write(f"# {header}\n")
        writer = csv.writer(fh)
        writer.writerow(["tag", "index"])
        for tag, idx in sorted(vocab.index.items(), key=lambda kv: kv[1]):
            writer.writerow([tag, idx])


class LayerFeaturizer:
    """Selects a named feature layer, with optional per-column standardization.

    Standardization statistics are fit on the training records passed to
    ``fit`` and then applied unchanged to later records.
    """

    def __init__(self, layer: str, standardize: bool = False):
        self.layer = layer
        self.standardize = standardize
        self._mean: np.ndarray | None = None
        self._scale: np.ndarray | None = None

    def fit(self, records: Sequence[ImageRecord]) -> "LayerFeaturizer":
        fitted = LayerFeaturizer(self.layer, self.standardize)
        if self.standardize:
            matrix = np.stack([rec.features[self.layer] for rec in records])
            fitted._mean = matrix.mean(axis=0)
            scale = matrix.std(axis=0)
            scale[scale == 0.0] = 1.0
            fitted._scale = scale
        return fitted

    def transform(self, record: ImageRecord) -> np.ndarray:
        vec = record.features[self.layer]
        if self.standardize:
            if self._mean is None:
                raise RuntimeError("featurizer used before fit")
            vec = (vec - self._mean) / self._scale
        return vec

    def describe(self) -> str:
        return f"layer:{self.layer}" + (" (standardized)" if self.standardize else "")


class TagFeaturizer:
    """Bag-of-tags featurizer; the vocabulary is rebuilt on every fit."""

    def __init__(self, source: str = "combined", min_df: int = 1, mode: str = "binary"):
        self.source = source
        self.min_df = min_df
        self.mode = mode
        self.vocabulary: TagVocabulary | None = None

    def fit(self, records: Sequence[ImageRecord]) -> "TagFeaturizer":
        fitted = TagFeaturizer(self.source, self.min_df, self.mode)
        fitted.vocabulary = build_vocabulary(
            [rec.tags(self.source) for rec in records], min_df=self.min_df
        )
        return fitted

    def transform(self, record: ImageRecord) -> SparseVector:
        if self.vocabulary is None:
            raise RuntimeError("featurizer used before fit")
        return vectorize(record.tags(self.source), self.vocabulary, mode=self.mode)

    def describe(self) -> str:
        return f"tags:{self.source}"


def make_featurizer(representation: str, tag_source: str = "combined",
                    min_df: int = 1, mode: str = "binary",
                    standardize: bool = False) -> LayerFeaturizer | TagFeaturizer:
    """Featurizer for a representation name: a layer name or ``tags``."""
    if representation == "tags":
        return TagFeaturizer(source=tag_source, min_df=min_df, mode=mode)
    return LayerFeaturizer(representation, standardize=standardize)
