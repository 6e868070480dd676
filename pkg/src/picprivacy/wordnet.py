"""WordNet 3.x database parsing and tag-set expansion.

Reads the standard ``index.<pos>`` / ``data.<pos>`` file pair (noun database
by default) and expands tag sets with synonyms, hypernyms, or hyponyms.
Every sense of a lemma is expanded; no word-sense disambiguation is
attempted.  Multiword lemmas come back with underscores turned into spaces
and are re-filtered through the standard tag normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .annotate import AnnotationConfig, normalize_tag
from .errors import DataFormatError

HYPERNYM_SYMBOL = "@"
HYPONYM_SYMBOL = "~"
RELATIONS = ("synonym", "hypernym", "hyponym")


@dataclass(frozen=True)
class Synset:
    offset: str
    lemmas: tuple[str, ...]
    hypernyms: tuple[str, ...]
    hyponyms: tuple[str, ...]


@dataclass(frozen=True)
class Lexicon:
    """Parsed synsets plus the (lemma, pos) -> sense offsets index."""

    pos: str
    synsets: dict[str, Synset]
    index: dict[tuple[str, str], tuple[str, ...]]

    def senses(self, lemma: str) -> tuple[str, ...]:
        return self.index.get((lemma.lower().replace(" ", "_"), self.pos), ())


@dataclass(frozen=True)
class ExpansionSpec:
    relation: str
    depth: int = 1

    def __post_init__(self) -> None:
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")


def _data_lines(path: Path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if line.startswith("  ") or not line.strip():
                continue  # license header / padding lines
            yield lineno, line.rstrip("\n")


def _parse_data_line(tokens: list[str], pos: str) -> Synset:
    offset = tokens[0]
    ss_type = tokens[2]
    if ss_type not in ("n", "v", "a", "s", "r"):
        raise ValueError("bad synset type")
    w_cnt = int(tokens[3], 16)
    if w_cnt < 1:
        raise ValueError("synset without words")
    lemmas = tuple(tokens[4 + 2 * i].lower() for i in range(w_cnt))
    p_base = 4 + 2 * w_cnt
    p_cnt = int(tokens[p_base])
    hypernyms, hyponyms = [], []
    for i in range(p_cnt):
        symbol = tokens[p_base + 1 + 4 * i]
        target = tokens[p_base + 2 + 4 * i]
        target_pos = tokens[p_base + 3 + 4 * i]
        if target_pos != pos:
            continue  # cross-part-of-speech pointer
        if symbol == HYPERNYM_SYMBOL:
            hypernyms.append(target)
        elif symbol == HYPONYM_SYMBOL:
            hyponyms.append(target)
        # any other pointer symbol is tolerated and ignored
    return Synset(offset, lemmas, tuple(hypernyms), tuple(hyponyms))


def parse_wordnet(index_path: str | Path, data_path: str | Path,
                  pos: str = "n") -> Lexicon:
    """Parse an ``index.<pos>`` / ``data.<pos>`` pair into a Lexicon.

    Raises DataFormatError naming file and line for malformed lines and for
    hypernym/hyponym or index pointers to offsets that do not exist.
    """
    index_path, data_path = Path(index_path), Path(data_path)

    synsets: dict[str, Synset] = {}
    for lineno, line in _data_lines(data_path):
        body = line.split("|", 1)[0]
        tokens = body.split()
        try:
            synset = _parse_data_line(tokens, pos)
        except (IndexError, ValueError):
            raise DataFormatError(f"{data_path}:{lineno}: malformed synset line") from None
        synsets[synset.offset] = synset

    for synset in synsets.values():
        for target in synset.hypernyms + synset.hyponyms:
            if target not in synsets:
                raise DataFormatError(
                    f"{data_path}: synset {synset.offset} points to missing offset {target}"
                )

    index: dict[tuple[str, str], tuple[str, ...]] = {}
    for lineno, line in _data_lines(index_path):
        tokens = line.split()
        try:
            lemma = tokens[0].lower()
            lemma_pos = tokens[1]
            synset_cnt = int(tokens[2])
            p_cnt = int(tokens[3])
            offsets = tuple(tokens[4 + p_cnt + 2: 4 + p_cnt + 2 + synset_cnt])
            if len(offsets) != synset_cnt:
                raise ValueError("offset count mismatch")
        except (IndexError, ValueError):
            raise DataFormatError(f"{index_path}:{lineno}: malformed index line") from None
        if lemma_pos != pos:
            continue
        for offset in offsets:
            if offset not in synsets:
                raise DataFormatError(
                    f"{index_path}:{lineno}: lemma {lemma!r} points to missing offset {offset}"
                )
        index[(lemma, pos)] = offsets

    return Lexicon(pos=pos, synsets=synsets, index=index)


def load_noun_lexicon(directory: str | Path) -> Lexicon:
    """Load ``index.noun`` and ``data.noun`` from a WordNet database directory."""
    directory = Path(directory)
    return parse_wordnet(directory / "index.noun", directory / "data.noun", pos="n")


def related_synsets(lex: Lexicon, offset: str, relation: str, depth: int) -> set[str]:
    """Offsets reachable from a synset by 1..depth hops of one relation."""
    frontier = {offset}
    reached: set[str] = set()
    for _ in range(depth):
        step: set[str] = set()
        for off in frontier:
            synset = lex.synsets[off]
            targets = synset.hypernyms if relation == "hypernym" else synset.hyponyms
            step.update(targets)
        step -= reached
        if not step:
            break
        reached.update(step)
        frontier = step
    return reached


def expand_tagset(tags: Iterable[str], lex: Lexicon, spec: ExpansionSpec,
                  cfg: AnnotationConfig | None = None) -> frozenset[str]:
    """Original tags plus related lemmas; unknown tags pass through unchanged.

    Synonyms are the co-lemmas of every sense's synset; hypernyms/hyponyms
    are the lemmas of synsets reachable within ``spec.depth`` pointer hops
    over all senses.  New lemmas are normalized like user tags before they
    join the set, so the output is always a superset of the input.
    """
    cfg = cfg or AnnotationConfig()
    tags = frozenset(tags)
    additions: set[str] = set()
    for tag in tags:
        senses = lex.senses(tag)
        lemmas: set[str] = set()
        for offset in senses:
            if spec.relation == "synonym":
                lemmas.update(lex.synsets[offset].lemmas)
            else:
                for reached in related_synsets(lex, offset, spec.relation, spec.depth):
                    lemmas.update(lex.synsets[reached].lemmas)
        for lemma in lemmas:
            normalized = normalize_tag(lemma.replace("_", " "), cfg)
            if normalized is not None:
                additions.add(normalized)
    return tags | frozenset(additions)


def dump_index(lex: Lexicon) -> str:
    """Serialize the lemma index back into index-file grammar.

    Re-parsing the dump against the same data file reproduces the index
    exactly, which pins the subset of the grammar this parser retains.
    """
    lines = []
    for (lemma, pos), offsets in sorted(lex.index.items()):
        n = len(offsets)
        lines.append(f"{lemma} {pos} {n} 0 {n} 0 " + " ".join(offsets))
    return "\n".join(lines) + "\n"
