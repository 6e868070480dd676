"""Shared fixtures: tiny corpus files, a miniature WordNet database, and
synthetic corpora for end-to-end runs."""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from picprivacy import PRIVATE, PUBLIC
from picprivacy.corpus import ImageRecord


def write_lines(path: Path, lines: list[str]) -> Path:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_feature_jsonl(path: Path, rows: list[tuple[str, list[float]]]) -> Path:
    return write_lines(path, [json.dumps({"id": i, "values": v}) for i, v in rows])


def write_tags_jsonl(path: Path, rows: dict[str, list[str]]) -> Path:
    return write_lines(path, [json.dumps({"id": i, "tags": t}) for i, t in rows.items()])


def write_labels_csv(path: Path, rows: dict[str, str]) -> Path:
    return write_lines(path, ["id,label"] + [f"{i},{lab}" for i, lab in rows.items()])


@pytest.fixture
def marker_corpus():
    """1000 labeled records (3:1 public:private); private ones carry the tag
    'p_marker' with probability 0.95, public ones with probability 0.05."""
    return build_marker_records(1000, seed=99)


def build_marker_records(n: int, seed: int, background_tags: int = 50) -> list[ImageRecord]:
    rng = random.Random(seed)
    pool = [f"bg{i}" for i in range(background_tags)]
    records = []
    for i in range(n):
        label = PRIVATE if i % 4 == 0 else PUBLIC
        tags = set(rng.sample(pool, 3))
        if rng.random() < (0.95 if label == PRIVATE else 0.05):
            tags.add("p_marker")
        records.append(ImageRecord(id=f"img{i:05d}", user_tags=frozenset(tags), label=label))
    return records


# --- miniature WordNet -------------------------------------------------------

MINI_WORDNET_DATA = [
    "  1 This synthetic database follows the WordNet 3.x file grammar.",
    "  2 Header lines begin with two spaces and must be skipped.",
    "00001000 03 n 01 garment 0 002 ~ 00002000 n 0000 ~ 00003000 n 0000 | an article of clothing",
    "00002000 03 n 02 swimsuit 0 bathing_suit 0 003 @ 00001000 n 0000 ~ 00004000 n 0000 + 00001000 n 0101 | a garment worn for swimming",
    "00003000 03 n 01 neckwear 0 001 @ 00001000 n 0000 | clothing worn around the neck",
    "00004000 03 n 02 bikini 0 two-piece 0 002 @ 00002000 n 0000 ; 00005000 v 0000 | a woman's very brief bathing suit",
    "00005000 03 n 01 beach 0 000 | an area of sand by water",
]

MINI_WORDNET_INDEX = [
    "  1 Synthetic index file with the same header convention.",
    "garment n 1 1 @ 1 0 00001000",
    "swimsuit n 1 2 @ ~ 1 0 00002000",
    "bathing_suit n 1 0 1 0 00002000",
    "neckwear n 1 1 @ 1 0 00003000",
    "bikini n 1 1 @ 1 1 00004000",
    "two-piece n 1 0 1 0 00004000",
    "beach n 1 0 1 0 00005000",
]


@pytest.fixture
def mini_wordnet(tmp_path):
    """A 5-synset noun database exercising headers, multiword lemmas,
    hex word counts, unknown pointer symbols, and a cross-POS pointer."""
    wn_dir = tmp_path / "wordnet"
    wn_dir.mkdir()
    write_lines(wn_dir / "data.noun", MINI_WORDNET_DATA)
    write_lines(wn_dir / "index.noun", MINI_WORDNET_INDEX)
    return wn_dir


def generate_big_wordnet(directory: Path, n_synsets: int = 4000, seed: int = 7) -> Path:
    """Procedurally generate a large noun database in WordNet grammar.

    Synsets form a forest: each non-root points @ at an earlier synset and
    receives the mirror ~ pointer.  A fraction carries multiword lemmas,
    extra co-lemmas, unknown pointer symbols, and cross-POS pointers.
    """
    rng = random.Random(seed)
    directory.mkdir(parents=True, exist_ok=True)
    offsets = [f"{1000 + 10 * i:08d}" for i in range(n_synsets)]
    parents: dict[int, int] = {}
    children: dict[int, list[int]] = {i: [] for i in range(n_synsets)}
    for i in range(1, n_synsets):
        parent = rng.randrange(0, i)
        parents[i] = parent
        children[parent].append(i)

    lemma_index: dict[str, list[str]] = {}
    data_lines = ["  1 Generated noun database for parser stress testing."]
    for i in range(n_synsets):
        lemmas = [f"term_{i}"]
        if rng.random() < 0.25:
            lemmas.append(f"term_{i}_variant")
        if rng.random() < 0.10:
            lemmas.append(f"compound_term_{i}_of_kind")
        for lemma in lemmas:
            lemma_index.setdefault(lemma, []).append(offsets[i])
        pointers = []
        if i in parents:
            pointers.append(("@", offsets[parents[i]], "n"))
        for child in children[i]:
            pointers.append(("~", offsets[child], "n"))
        if rng.random() < 0.15:
            pointers.append((";c", offsets[rng.randrange(n_synsets)], "n"))
        if rng.random() < 0.10:
            pointers.append(("=", f"{90000000 + i:08d}", "a"))  # cross-POS target
        words = " ".join(f"{lemma} 0" for lemma in lemmas)
        ptrs = " ".join(f"{sym} {off} {pos} 0000" for sym, off, pos in pointers)
        data_lines.append(
            f"{offsets[i]} 03 n {len(lemmas):02x} {words} {len(pointers):03d}"
            + (f" {ptrs}" if pointers else "")
            + f" | generated gloss {i}"
        )

    index_lines = ["  1 Generated index."]
    for lemma in sorted(lemma_index):
        offs = lemma_index[lemma]
        index_lines.append(f"{lemma} n {len(offs)} 0 {len(offs)} 0 " + " ".join(offs))

    write_lines(directory / "data.noun", data_lines)
    write_lines(directory / "index.noun", index_lines)
    return directory


def write_pgm(path: Path, pixels: np.ndarray, maxval: int = 255) -> Path:
    """Write a uint8 image as binary PGM."""
    h, w = pixels.shape
    header = f"P5\n# test image\n{w} {h}\n{maxval}\n".encode()
    path.write_bytes(header + pixels.astype(np.uint8).tobytes())
    return path
