"""Tag informativeness analytics.

Ranks tags by the information gain their presence gives about the privacy
class, counts per-class tag frequencies for cloud exports, and builds
per-class tag co-occurrence graphs with thresholded edges and ego-subgraph
extraction around focus tags.
"""

from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from . import PRIVATE, PUBLIC
from .corpus import ImageRecord
from .errors import ComputationError


@dataclass(frozen=True)
class TagStat:
    tag: str
    ig: float  # bits
    freq_public: int
    freq_private: int


@dataclass(frozen=True)
class CooccurrenceGraph:
    """Per-class tag graph; an edge weight counts images carrying both tags."""

    cls: str
    nodes: frozenset[str]
    edges: dict[tuple[str, str], int]
    threshold: int


def _entropy(counts: Sequence[int]) -> float:
    """Shannon entropy in bits; zero-count outcomes contribute nothing."""
    total = sum(counts)
    if total == 0:
        return 0.0
    h = 0.0
    for n in counts:
        if n:
            p = n / total
            h -= p * math.log2(p)
    return h


def information_gain(records: Sequence[ImageRecord], source: str = "combined") -> list[TagStat]:
    """Rank every tag by the class-entropy reduction of its binary presence.

    IG(T) = H(C) - [P(T=1) H(C|T=1) + P(T=0) H(C|T=0)], base-2 entropies.
    Sorted descending by IG, ties broken lexicographically.
    """
    labeled = [r for r in records if r.label is not None]
    n_pub = sum(1 for r in labeled if r.label == PUBLIC)
    n_priv = len(labeled) - n_pub
    if n_pub == 0 or n_priv == 0:
        raise ComputationError("information gain needs records from both classes")
    total = len(labeled)
    h_class = _entropy([n_pub, n_priv])

    with_pub: Counter[str] = Counter()
    with_priv: Counter[str] = Counter()
    for rec in labeled:
        target = with_pub if rec.label == PUBLIC else with_priv
        for tag in rec.tags(source):
            target[tag] += 1

    stats = []
    for tag in set(with_pub) | set(with_priv):
        a_pub, a_priv = with_pub[tag], with_priv[tag]
        present = a_pub + a_priv
        absent = total - present
        h_present = _entropy([a_pub, a_priv])
        h_absent = _entropy([n_pub - a_pub, n_priv - a_priv])
        ig = h_class - (present / total * h_present + absent / total * h_absent)
        stats.append(TagStat(tag=tag, ig=ig, freq_public=a_pub, freq_private=a_priv))
    stats.sort(key=lambda s: (-s.ig, s.tag))
    return stats


def mean_information_gain(fold_record_lists: Sequence[Sequence[ImageRecord]],
                          source: str = "combined") -> list[TagStat]:
    """Average per-tag IG over several record subsets (e.g. CV training parts).

    A tag absent from a subset contributes zero gain for that subset; the
    reported frequencies are summed across subsets.
    """
    if not fold_record_lists:
        raise ComputationError("no folds given")
    sums: dict[str, float] = {}
    freq_pub: Counter[str] = Counter()
    freq_priv: Counter[str] = Counter()
    for fold_records in fold_record_lists:
        for stat in information_gain(fold_records, source=source):
            sums[stat.tag] = sums.get(stat.tag, 0.0) + stat.ig
            freq_pub[stat.tag] += stat.freq_public
            freq_priv[stat.tag] += stat.freq_private
    n = len(fold_record_lists)
    stats = [TagStat(tag, total / n, freq_pub[tag], freq_priv[tag])
             for tag, total in sums.items()]
    stats.sort(key=lambda s: (-s.ig, s.tag))
    return stats


def frequency_cloud(records: Sequence[ImageRecord], cls: str, top_n: int = 100,
                    source: str = "combined") -> list[tuple[str, int]]:
    """Most frequent tags among records of one class, count-descending."""
    counts: Counter[str] = Counter()
    for rec in records:
        if rec.label == cls:
            for tag in rec.tags(source):
                counts[tag] += 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:top_n]


def cooccurrence_graph(records: Sequence[ImageRecord], cls: str, threshold: int = 2,
                       source: str = "combined") -> CooccurrenceGraph:
    """Tag co-occurrence graph over one class's records.

    Every unordered pair of tags appearing together on a record adds one to
    the pair's edge weight; edges below the threshold and then isolated
    nodes are dropped.  Self-loops cannot arise because tags are sets.
    """
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    weights: Counter[tuple[str, str]] = Counter()
    for rec in records:
        if rec.label != cls:
            continue
        tags = sorted(rec.tags(source))
        for i, a in enumerate(tags):
            for b in tags[i + 1:]:
                weights[(a, b)] += 1
    edges = {pair: w for pair, w in weights.items() if w >= threshold}
    nodes = frozenset(t for pair in edges for t in pair)
    return CooccurrenceGraph(cls=cls, nodes=nodes, edges=edges, threshold=threshold)


def ego_subgraph(graph: CooccurrenceGraph, focus: Iterable[str]) -> CooccurrenceGraph:
    """Restriction of a graph to edges touching any focus tag."""
    focus = set(focus)
    edges = {pair: w for pair, w in graph.edges.items()
             if pair[0] in focus or pair[1] in focus}
    nodes = frozenset(t for pair in edges for t in pair)
    return CooccurrenceGraph(cls=graph.cls, nodes=nodes, edges=edges,
                             threshold=graph.threshold)


def write_ig_csv(path: str | Path, stats: Sequence[TagStat],
                 user_tags_seen: Iterable[str], header: str | None = None) -> None:
    """CSV export ``rank,tag,ig_bits,source``; source is user or deep.

    A tag counts as ``user`` if any record carries it as a user tag,
    otherwise ``deep``.
    """
    user_seen = set(user_tags_seen)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if header:
            fh.write(f"# {header}\n")
        writer = csv.writer(fh)
        writer.writerow(["rank", "tag", "ig_bits", "source"])
        for rank, stat in enumerate(stats, start=1):
            source = "user" if stat.tag in user_seen else "deep"
            writer.writerow([rank, stat.tag, repr(stat.ig), source])


def write_cloud_csv(path: str | Path, ranked: Sequence[tuple[str, int]], cls: str,
                    header: str | None = None) -> None:
    """CSV export ``tag,count,class``."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if header:
            fh.write(f"# {header}\n")
        writer = csv.writer(fh)
        writer.writerow(["tag", "count", "class"])
        for tag, count in ranked:
            writer.writerow([tag, count, cls])


def write_graph_adjacency(path: str | Path, graph: CooccurrenceGraph,
                          header: str | None = None) -> None:
    """Adjacency text export: one ``tag<TAB>neighbor:weight;...`` line per node."""
    adj: dict[str, list[tuple[str, int]]] = {}
    for (a, b), w in graph.edges.items():
        adj.setdefault(a, []).append((b, w))
        adj.setdefault(b, []).append((a, w))
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(f"# {header}\n")
        for node in sorted(adj):
            row = ";".join(f"{nbr}:{w}" for nbr, w in sorted(adj[node]))
            fh.write(f"{node}\t{row}\n")


def write_graph_dot(path: str | Path, graph: CooccurrenceGraph,
                    header: str | None = None) -> None:
    """Graph-description export: ``graph { "a" -- "b" [weight=N]; }``."""
    def quote(tag: str) -> str:
        return '"' + tag.replace("\\", "\\\\").replace('"', '\\"') + '"'

    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(f"// {header}\n")
        fh.write("graph {\n")
        for node in sorted(graph.nodes):
            fh.write(f"  {quote(node)};\n")
        for (a, b), w in sorted(graph.edges.items()):
            fh.write(f"  {quote(a)} -- {quote(b)} [weight={w}];\n")
        fh.write("}\n")


def user_tag_universe(records: Sequence[ImageRecord]) -> set[str]:
    """All tags that occur as user tags anywhere in the corpus."""
    seen: set[str] = set()
    for rec in records:
        seen.update(rec.user_tags)
    return seen
