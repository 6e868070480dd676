"""Auto-annotation and tag cleaning.

Turns final-layer logits into a probability distribution over object
categories, reads off the top-K category names as "deep tags", and
normalizes free-form user tags (lowercase, drop URLs/numbers/stopwords,
drop tags longer than the token limit).
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .corpus import CategoryLexicon
from .errors import DataFormatError

_URL_RE = re.compile(r"^(?:[a-z][a-z0-9+.-]*://|www\.)")
_PUNCT_TABLE = str.maketrans("", "", string.punctuation)


@dataclass(frozen=True)
class AnnotationConfig:
    """Knobs for deep-tag generation and user-tag cleaning."""

    k: int = 10
    stopwords: frozenset[str] = field(default_factory=frozenset)
    max_tokens: int = 4

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.max_tokens < 1:
            raise ValueError("max_tokens must be >= 1")


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stopword file: plain text, one token per line."""
    words = set()
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#"):
                continue
            word = line.strip().lower()
            if word:
                words.add(word)
    return frozenset(words)


def softmax(logits: np.ndarray) -> np.ndarray:
    """Probability distribution over categories from final-layer logits.

    Computed max-shifted for overflow safety; entries sum to 1 within 1e-9
    and the argmax of the input is preserved.
    """
    logits = np.asarray(logits, dtype=np.float64)
    if logits.ndim != 1 or logits.size == 0:
        raise ValueError("softmax requires a non-empty 1-D vector")
    if not np.all(np.isfinite(logits)):
        raise ValueError("softmax input contains non-finite values")
    shifted = logits - np.max(logits)
    expd = np.exp(shifted)
    return expd / np.sum(expd)


def top_k_tags(dist: np.ndarray, lexicon: CategoryLexicon,
               cfg: AnnotationConfig) -> frozenset[str]:
    """Names of the k most probable categories, lowercased.

    Ties are broken toward the lower category index.
    """
    dist = np.asarray(dist, dtype=np.float64)
    if dist.shape[0] != len(lexicon):
        raise ValueError(
            f"distribution has {dist.shape[0]} entries but lexicon has {len(lexicon)}"
        )
    if cfg.k > len(lexicon):
        raise ValueError(f"k={cfg.k} exceeds lexicon size {len(lexicon)}")
    # stable sort on negated probabilities -> descending with index tie-break
    order = np.argsort(-dist, kind="stable")[: cfg.k]
    return frozenset(lexicon[int(i)].lower() for i in order)


def _is_numeric(tag: str) -> bool:
    stripped = tag.translate(_PUNCT_TABLE).replace(" ", "")
    return bool(stripped) and stripped.isdigit()


def normalize_tag(raw: str, cfg: AnnotationConfig) -> str | None:
    """Normalize one raw tag; None means the tag is dropped.

    Pipeline: trim and lowercase; drop URLs (scheme or ``www.`` prefix);
    drop purely numeric tags (ignoring punctuation); drop single-token
    stopwords; drop tags with more than ``cfg.max_tokens`` tokens.
    """
    tokens = raw.strip().lower().split()
    if not tokens:
        return None
    tag = " ".join(tokens)
    if _URL_RE.match(tag):
        return None
    if _is_numeric(tag):
        return None
    if len(tokens) == 1 and tag in cfg.stopwords:
        return None
    if len(tokens) > cfg.max_tokens:
        return None
    return tag


def normalize_user_tags(raw_tags: Iterable[str], cfg: AnnotationConfig) -> frozenset[str]:
    """Clean a raw tag list into a normalized, deduplicated tag set."""
    out = set()
    for raw in raw_tags:
        tag = normalize_tag(raw, cfg)
        if tag is not None:
            out.add(tag)
    return frozenset(out)


def deep_tag_records(fc8_vectors: Iterable[tuple[str, np.ndarray]],
                     lexicon: CategoryLexicon,
                     cfg: AnnotationConfig) -> dict[str, frozenset[str]]:
    """Deep tags for every (id, fc8 logits) pair via softmax + top-K."""
    out: dict[str, frozenset[str]] = {}
    for rec_id, logits in fc8_vectors:
        try:
            dist = softmax(logits)
        except ValueError as exc:
            raise DataFormatError(f"record {rec_id!r}: {exc}") from None
        out[rec_id] = top_k_tags(dist, lexicon, cfg)
    return out
