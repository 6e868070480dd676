"""Command-line driver for the privacy-prediction experiments.

Subcommands: ``annotate``, ``featurize``, ``experiment``, ``tags ig|cloud|graph``,
``wordnet expand``, and ``gist``.  A JSON run-configuration file provides
paths and protocol parameters; command-line flags override config fields.
All randomness flows from the single configured seed, so any command rerun
with identical inputs writes byte-identical outputs.  Every text output file
starts with a metadata comment recording the tool version, seed, and a hash
of the effective configuration.

Exit codes: 0 success, 1 computation failure, 2 input/config error.
"""

from __future__ import annotations

import dataclasses
import functools
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import click

from . import LABELS, PRIVATE, PUBLIC, __version__
from .annotate import AnnotationConfig, deep_tag_records, load_stopwords, normalize_user_tags, softmax
from .corpus import (
    Dataset,
    assemble,
    load_feature_table,
    load_labels,
    load_lexicon,
    load_tag_table,
    write_feature_table,
    write_tag_table,
)
from .errors import ComputationError, DataFormatError
from .evaluation import (
    GridSpec,
    evaluate,
    grid_search_cv,
    stratified_folds,
    write_cv_table,
    write_pr_curve,
    write_report,
)
from .featurize import make_featurizer, write_vocabulary_csv
from .figures import save_cv_table_figure, save_pr_curve_figure
from .gist import GistConfig, gist_descriptor, load_pgm
from .svm import KernelSpec, TrainConfig, label_to_y, save_model, train
from .taganalysis import (
    cooccurrence_graph,
    ego_subgraph,
    frequency_cloud,
    information_gain,
    mean_information_gain,
    user_tag_universe,
    write_cloud_csv,
    write_graph_adjacency,
    write_graph_dot,
    write_ig_csv,
)
from .wordnet import ExpansionSpec, expand_tagset, load_noun_lexicon

WORDNET_ENV_VAR = "WORDNET_DIR"

# fixed offsets splitting the run seed into independent per-purpose seeds
SEED_OFFSET_OUTER_SPLIT = 0
SEED_OFFSET_CV = 1
SEED_OFFSET_SVM = 2

DEFAULT_C_VALUES = (0.1, 0.5, 1.0, 5.0, 10.0, 50.0)


@dataclass
class RunConfig:
    features: dict[str, str] = field(default_factory=dict)
    tags: str | None = None
    deep_tags: str | None = None
    labels: str | None = None
    lexicon: str | None = None
    stopwords: str | None = None
    wordnet: str | None = None
    out: str = "out"
    seed: int = 0
    k: int = 10
    max_tokens: int = 4
    outer_folds: int = 6
    cv_folds: int = 5
    test_fold: int | None = None
    tag_source: str = "combined"
    enrichment: str = "off"
    enrichment_depth: int = 1
    category_count: int = 1000
    min_df: int = 1
    vector_mode: str = "binary"
    standardize: bool = False
    tol: float = 1e-3
    c_values: tuple[float, ...] = DEFAULT_C_VALUES
    kernels: tuple[dict, ...] = ({"kind": "linear"}, {"kind": "rbf"})

    def __post_init__(self) -> None:
        if self.outer_folds < 2 or self.cv_folds < 2:
            raise DataFormatError("fold counts must be >= 2")
        if self.tag_source not in ("user", "deep", "combined"):
            raise DataFormatError(f"unknown tag source {self.tag_source!r}")
        if self.enrichment not in ("off", "synonym", "hypernym", "hyponym"):
            raise DataFormatError(f"unknown enrichment {self.enrichment!r}")

    def grid(self) -> GridSpec:
        kernels = tuple(KernelSpec(k["kind"], k.get("gamma")) for k in self.kernels)
        return GridSpec(c_values=tuple(self.c_values), kernels=kernels)

    def annotation(self) -> AnnotationConfig:
        stop = load_stopwords(self.stopwords) if self.stopwords else frozenset()
        return AnnotationConfig(k=self.k, stopwords=stop, max_tokens=self.max_tokens)

    def config_hash(self) -> str:
        doc = dataclasses.asdict(self)
        canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"), default=list)
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]

    def header(self) -> str:
        return f"picprivacy={__version__} seed={self.seed} config={self.config_hash()}"


def load_config(path: str | Path | None, overrides: dict) -> RunConfig:
    """Merge a JSON config file (when given) with non-None CLI overrides."""
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    values: dict = {}
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise DataFormatError(f"{path}: invalid config JSON ({exc})") from None
        paths = doc.pop("paths", {})
        grid = doc.pop("grid", {})
        flat = {**paths, **doc}
        if "c_values" in grid:
            flat["c_values"] = tuple(grid["c_values"])
        if "kernels" in grid:
            flat["kernels"] = tuple(grid["kernels"])
        unknown = set(flat) - fields
        if unknown:
            raise DataFormatError(f"{path}: unknown config fields {sorted(unknown)}")
        values.update(flat)
    values.update({k: v for k, v in overrides.items() if v is not None})
    if "kernels" in values:
        values["kernels"] = tuple(
            {"kind": k} if isinstance(k, str) else k for k in values["kernels"]
        )
    if "c_values" in values:
        values["c_values"] = tuple(float(c) for c in values["c_values"])
    if "features" in values:
        values["features"] = dict(values["features"])
    return RunConfig(**values)


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (DataFormatError, FileNotFoundError, NotADirectoryError) as exc:
            _fail(2, str(exc))
        except (ComputationError, ValueError) as exc:
            _fail(1, str(exc))

    return wrapper


def _require(cfg: RunConfig, what: str, value) -> None:
    if not value:
        raise DataFormatError(f"missing required input: {what}")


def _out_dir(cfg: RunConfig) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _wordnet_dir(cfg: RunConfig) -> Path:
    directory = cfg.wordnet or os.environ.get(WORDNET_ENV_VAR)
    if not directory:
        raise DataFormatError(
            f"WordNet directory not configured (set paths.wordnet or ${WORDNET_ENV_VAR})"
        )
    return Path(directory)


def _deep_tag_map(cfg: RunConfig, ann: AnnotationConfig) -> dict[str, frozenset[str]]:
    """Deep tags from the configured table, else computed from FC8 + lexicon."""
    if cfg.deep_tags:
        raw = load_tag_table(cfg.deep_tags)
        return {rec_id: frozenset(t for t in tags if t) for rec_id, tags in raw.items()}
    _require(cfg, "fc8 feature table (for deep-tag annotation)", cfg.features.get("fc8"))
    _require(cfg, "category lexicon", cfg.lexicon)
    fc8 = load_feature_table(cfg.features["fc8"], "fc8")
    lexicon = load_lexicon(cfg.lexicon, expected_count=cfg.category_count)
    return deep_tag_records(
        ((rec.id, rec.features["fc8"]) for rec in fc8), lexicon, ann
    )


def _load_corpus(cfg: RunConfig, layers: tuple[str, ...] = (), want_tags: bool = False,
                 want_labels: bool = False) -> Dataset:
    """Assemble the dataset pieces a command needs, with tag normalization."""
    ann = cfg.annotation()
    feature_sets = {}
    for layer in layers:
        if layer == "prob" and not cfg.features.get("prob") and cfg.features.get("fc8"):
            fc8 = load_feature_table(cfg.features["fc8"], "fc8")
            feature_sets["prob"] = Dataset([
                replace(rec, features={"prob": softmax(rec.features["fc8"])})
                for rec in fc8
            ])
            continue
        _require(cfg, f"feature table for layer {layer!r}", cfg.features.get(layer))
        feature_sets[layer] = load_feature_table(cfg.features[layer], layer)

    user_tags = deep_tags = None
    if want_tags:
        if cfg.tag_source in ("user", "combined"):
            _require(cfg, "tag table", cfg.tags)
        user_tags = {}
        if cfg.tags:
            raw = load_tag_table(cfg.tags)
            user_tags = {rec_id: normalize_user_tags(tags, ann) for rec_id, tags in raw.items()}
        if cfg.tag_source in ("deep", "combined"):
            deep_tags = _deep_tag_map(cfg, ann)

    labels = None
    if want_labels:
        _require(cfg, "label file", cfg.labels)
        labels = load_labels(cfg.labels)

    dataset = assemble(feature_sets, user_tags, deep_tags, labels)
    if cfg.enrichment != "off":
        dataset = _enrich(dataset, cfg, ann)
    return dataset


def _enrich(dataset: Dataset, cfg: RunConfig, ann: AnnotationConfig) -> Dataset:
    lexicon = load_noun_lexicon(_wordnet_dir(cfg))
    spec = ExpansionSpec(relation=cfg.enrichment, depth=cfg.enrichment_depth)
    return Dataset([
        replace(
            rec,
            user_tags=expand_tagset(rec.user_tags, lexicon, spec, ann),
            deep_tags=expand_tagset(rec.deep_tags, lexicon, spec, ann),
        )
        for rec in dataset
    ])


@click.group()
@click.version_option(__version__)
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="JSON run-configuration file.")
@click.option("--seed", type=int, default=None, help="Master seed (overrides config).")
@click.option("--out", type=click.Path(), default=None, help="Output directory.")
@click.pass_context
def main(ctx, config_path, seed, out):
    """Image privacy prediction toolkit."""
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path
    ctx.obj["overrides"] = {"seed": seed, "out": out}


def _config(ctx, **extra) -> RunConfig:
    overrides = {**ctx.obj["overrides"], **extra}
    return load_config(ctx.obj["config_path"], overrides)


@main.command()
@click.option("--features", "fc8_path", type=click.Path(), default=None,
              help="FC8 logit feature table.")
@click.option("--lexicon", "lexicon_path", type=click.Path(), default=None)
@click.option("--k", type=int, default=None, help="Deep tags per image.")
@click.pass_context
@_guarded
def annotate(ctx, fc8_path, lexicon_path, k):
    """Write top-K deep tags for every image in the FC8 feature table."""
    extra = {"k": k}
    if fc8_path:
        extra["features"] = {"fc8": fc8_path}
    if lexicon_path:
        extra["lexicon"] = lexicon_path
    cfg = _config(ctx, **extra)
    deep = _deep_tag_map(replace(cfg, deep_tags=None), cfg.annotation())
    out = _out_dir(cfg) / "deep_tags.jsonl"
    write_tag_table(out, deep, header=cfg.header())
    click.echo(f"wrote {len(deep)} deep-tag records to {out}")


@main.command()
@click.option("--tags", "tags_path", type=click.Path(), default=None)
@click.option("--deep-tags", "deep_tags_path", type=click.Path(), default=None)
@click.option("--tag-source", type=click.Choice(["user", "deep", "combined"]), default=None)
@click.option("--min-df", type=int, default=None)
@click.pass_context
@_guarded
def featurize(ctx, tags_path, deep_tags_path, tag_source, min_df):
    """Build the bag-of-tags vocabulary and export it as CSV."""
    cfg = _config(ctx, tags=tags_path, deep_tags=deep_tags_path,
                  tag_source=tag_source, min_df=min_df)
    dataset = _load_corpus(cfg, want_tags=True)
    from .featurize import build_vocabulary

    vocab = build_vocabulary([rec.tags(cfg.tag_source) for rec in dataset],
                             min_df=cfg.min_df)
    out = _out_dir(cfg) / "vocabulary.csv"
    write_vocabulary_csv(out, vocab, header=cfg.header())
    click.echo(f"wrote vocabulary of {vocab.size} tags to {out}")


def _run_experiment(cfg: RunConfig, representation: str, out_dir: Path) -> dict:
    """Split, grid-search, retrain, evaluate; write all report artifacts."""
    layers = () if representation == "tags" else (representation,)
    dataset = _load_corpus(cfg, layers=layers, want_tags=representation == "tags",
                           want_labels=True)
    records = [rec for rec in dataset.labeled()
               if representation == "tags" or representation in rec.features]
    if not records:
        raise ComputationError("no labeled records carry the requested representation")

    labels = {rec.id: rec.label for rec in records}
    split = stratified_folds(labels, cfg.outer_folds, cfg.seed + SEED_OFFSET_OUTER_SPLIT)
    test_fold = cfg.test_fold if cfg.test_fold is not None else cfg.outer_folds - 1
    train_ids, test_ids = split.split(test_fold)
    by_id = {rec.id: rec for rec in records}
    train_records = [by_id[i] for i in train_ids]
    test_records = [by_id[i] for i in test_ids]

    featurizer = make_featurizer(representation, tag_source=cfg.tag_source,
                                 min_df=cfg.min_df, mode=cfg.vector_mode,
                                 standardize=cfg.standardize)
    best, table = grid_search_cv(train_records, featurizer, cfg.grid(),
                                 cv_k=cfg.cv_folds, seed=cfg.seed + SEED_OFFSET_CV,
                                 tol=cfg.tol)
    click.echo(
        f"selected C={best.c:g} kernel={best.kernel.kind}"
        + (f" gamma={best.kernel.gamma:g}" if best.kernel.gamma else "")
        + f" by {cfg.cv_folds}-fold cross-validation"
    )

    fitted = featurizer.fit(train_records)
    xs = [fitted.transform(rec) for rec in train_records]
    ys = [label_to_y(rec.label) for rec in train_records]
    final_cfg = TrainConfig(c=best.c, kernel=best.kernel, tol=cfg.tol,
                            seed=cfg.seed + SEED_OFFSET_SVM)
    model = train(xs, ys, final_cfg)
    report = evaluate(model, test_records, fitted)

    header = cfg.header()
    label = representation if representation != "tags" else f"tags:{cfg.tag_source}"
    if cfg.enrichment != "off":
        label += f"+{cfg.enrichment}"
    extra = {
        "representation": label,
        "train_size": len(train_records),
        "test_size": len(test_records),
        "chosen": {"c": best.c, "kernel": best.kernel.kind, "gamma": best.kernel.gamma},
        "enrichment": cfg.enrichment,
        "seed": cfg.seed,
    }
    write_report(out_dir / "report.json", report, extra=extra, header=header)
    write_cv_table(out_dir / "cv_table.csv", table, header=header)
    save_cv_table_figure(table, out_dir / "cv_table.png")
    if report.pr_curve:
        write_pr_curve(out_dir / "pr_curve.csv", report.pr_curve, header=header)
        save_pr_curve_figure({label: report.pr_curve}, out_dir / "pr_curve.png")
    save_model(out_dir / "model.json", model, header=header)
    click.echo(
        f"{label}: test accuracy {report.accuracy:.4f}, "
        f"weighted F1 {report.weighted.f1:.4f} "
        f"({len(train_records)} train / {len(test_records)} test)"
    )
    return {"label": label, "report": report}


@main.command()
@click.option("--representation", default="tags",
              help="Feature representation: a layer name (fc6/fc7/fc8/prob/gist) or 'tags'.")
@click.option("--tag-source", type=click.Choice(["user", "deep", "combined"]), default=None)
@click.option("--enrichment", type=click.Choice(["off", "synonym", "hypernym", "hyponym"]),
              default=None)
@click.option("--ab-enrichment", type=click.Choice(["synonym", "hypernym", "hyponym"]),
              default=None,
              help="Run the experiment twice, without and with tag enrichment, "
                   "and write a two-row comparison table.")
@click.option("--tags", "tags_path", type=click.Path(), default=None)
@click.option("--deep-tags", "deep_tags_path", type=click.Path(), default=None)
@click.option("--labels", "labels_path", type=click.Path(), default=None)
@click.pass_context
@_guarded
def experiment(ctx, representation, tag_source, enrichment, ab_enrichment,
               tags_path, deep_tags_path, labels_path):
    """Run the full protocol: split, grid-search CV, retrain, evaluate."""
    cfg = _config(ctx, tag_source=tag_source, enrichment=enrichment, tags=tags_path,
                  deep_tags=deep_tags_path, labels=labels_path)
    out = _out_dir(cfg)
    if ab_enrichment is None:
        _run_experiment(cfg, representation, out)
        return

    base_dir = out / "baseline"
    enriched_dir = out / "enriched"
    base_dir.mkdir(exist_ok=True)
    enriched_dir.mkdir(exist_ok=True)
    base = _run_experiment(replace(cfg, enrichment="off"), representation, base_dir)
    enriched = _run_experiment(replace(cfg, enrichment=ab_enrichment),
                               representation, enriched_dir)
    comparison = out / "enrichment_comparison.csv"
    with open(comparison, "w", encoding="utf-8") as fh:
        fh.write(f"# {cfg.header()}\n")
        fh.write("features,accuracy,weighted_f1,weighted_precision,weighted_recall\n")
        for run in (base, enriched):
            rep = run["report"]
            fh.write(f"{run['label']},{rep.accuracy!r},{rep.weighted.f1!r},"
                     f"{rep.weighted.precision!r},{rep.weighted.recall!r}\n")
    click.echo(f"wrote enrichment comparison to {comparison}")


@main.group()
def tags():
    """Tag analytics: information gain, frequency clouds, co-occurrence graphs."""


def _analysis_corpus(ctx, tags_path, deep_tags_path, labels_path, tag_source, **extra):
    cfg = _config(ctx, tags=tags_path, deep_tags=deep_tags_path, labels=labels_path,
                  tag_source=tag_source, **extra)
    dataset = _load_corpus(cfg, want_tags=True, want_labels=True)
    labeled = dataset.labeled()
    if not labeled:
        raise DataFormatError("no labeled records to analyze")
    return cfg, labeled


_tag_input_options = [
    click.option("--tags", "tags_path", type=click.Path(), default=None),
    click.option("--deep-tags", "deep_tags_path", type=click.Path(), default=None),
    click.option("--labels", "labels_path", type=click.Path(), default=None),
    click.option("--tag-source", type=click.Choice(["user", "deep", "combined"]),
                 default=None),
]


def _with_tag_inputs(fn):
    for opt in reversed(_tag_input_options):
        fn = opt(fn)
    return fn


@tags.command()
@_with_tag_inputs
@click.option("--top", type=int, default=None, help="Keep only the top N tags.")
@click.option("--no-cv", is_flag=True,
              help="Rank on the whole labeled corpus instead of averaging over "
                   "cross-validation training folds of the Train split.")
@click.pass_context
@_guarded
def ig(ctx, tags_path, deep_tags_path, labels_path, tag_source, top, no_cv):
    """Rank tags by information gain about the privacy class."""
    cfg, records = _analysis_corpus(ctx, tags_path, deep_tags_path, labels_path, tag_source)
    if no_cv:
        stats = information_gain(records, source=cfg.tag_source)
    else:
        labels = {rec.id: rec.label for rec in records}
        outer = stratified_folds(labels, cfg.outer_folds, cfg.seed + SEED_OFFSET_OUTER_SPLIT)
        test_fold = cfg.test_fold if cfg.test_fold is not None else cfg.outer_folds - 1
        train_ids, _ = outer.split(test_fold)
        by_id = {rec.id: rec for rec in records}
        train_labels = {i: by_id[i].label for i in train_ids}
        inner = stratified_folds(train_labels, cfg.cv_folds, cfg.seed + SEED_OFFSET_CV)
        fold_parts = []
        for fold in range(cfg.cv_folds):
            part_ids, _ = inner.split(fold)
            fold_parts.append([by_id[i] for i in part_ids])
        stats = mean_information_gain(fold_parts, source=cfg.tag_source)
    if top is not None:
        stats = stats[:top]
    out = _out_dir(cfg) / "ig.csv"
    write_ig_csv(out, stats, user_tag_universe(records), header=cfg.header())
    click.echo(f"wrote {len(stats)} ranked tags to {out}")


@tags.command()
@_with_tag_inputs
@click.option("--label", "cls", type=click.Choice(list(LABELS)), required=True)
@click.option("--top", type=int, default=100, show_default=True)
@click.pass_context
@_guarded
def cloud(ctx, tags_path, deep_tags_path, labels_path, tag_source, cls, top):
    """Export the most frequent tags for one privacy class."""
    cfg, records = _analysis_corpus(ctx, tags_path, deep_tags_path, labels_path, tag_source)
    ranked = frequency_cloud(records, cls, top_n=top, source=cfg.tag_source)
    out = _out_dir(cfg) / f"cloud_{cls}.csv"
    write_cloud_csv(out, ranked, cls, header=cfg.header())
    click.echo(f"wrote {len(ranked)} tags to {out}")


@tags.command()
@_with_tag_inputs
@click.option("--label", "cls", type=click.Choice(list(LABELS)), required=True)
@click.option("--threshold", type=int, default=2, show_default=True,
              help="Minimum co-occurrence count for an edge to be kept.")
@click.option("--focus", multiple=True,
              help="Restrict to edges touching these tags (may repeat).")
@click.pass_context
@_guarded
def graph(ctx, tags_path, deep_tags_path, labels_path, tag_source, cls, threshold, focus):
    """Export the tag co-occurrence graph for one privacy class."""
    cfg, records = _analysis_corpus(ctx, tags_path, deep_tags_path, labels_path, tag_source)
    built = cooccurrence_graph(records, cls, threshold=threshold, source=cfg.tag_source)
    if focus:
        built = ego_subgraph(built, focus)
    out_dir = _out_dir(cfg)
    stem = f"graph_{cls}" + ("_ego" if focus else "")
    write_graph_dot(out_dir / f"{stem}.dot", built, header=cfg.header())
    write_graph_adjacency(out_dir / f"{stem}.adj", built, header=cfg.header())
    click.echo(f"wrote graph with {len(built.nodes)} nodes / {len(built.edges)} edges "
               f"to {out_dir / (stem + '.dot')}")


@main.group()
def wordnet():
    """WordNet-based tag enrichment."""


@wordnet.command()
@click.option("--tags", "tags_path", type=click.Path(), default=None)
@click.option("--relation", type=click.Choice(["synonym", "hypernym", "hyponym"]),
              required=True)
@click.option("--depth", type=int, default=None)
@click.option("--wordnet", "wordnet_dir", type=click.Path(), default=None,
              help=f"WordNet database directory (falls back to ${WORDNET_ENV_VAR}).")
@click.pass_context
@_guarded
def expand(ctx, tags_path, relation, depth, wordnet_dir):
    """Expand a tag table with related WordNet lemmas."""
    cfg = _config(ctx, tags=tags_path, wordnet=wordnet_dir,
                  enrichment_depth=depth)
    _require(cfg, "tag table", cfg.tags)
    ann = cfg.annotation()
    raw = load_tag_table(cfg.tags)
    lexicon = load_noun_lexicon(_wordnet_dir(cfg))
    spec = ExpansionSpec(relation=relation, depth=cfg.enrichment_depth)
    expanded = {
        rec_id: expand_tagset(normalize_user_tags(tag_list, ann), lexicon, spec, ann)
        for rec_id, tag_list in raw.items()
    }
    out = _out_dir(cfg) / f"tags_{relation}.jsonl"
    write_tag_table(out, expanded, header=cfg.header())
    click.echo(f"wrote {len(expanded)} expanded tag records to {out}")


@main.command()
@click.option("--images", "image_dir", type=click.Path(), required=True,
              help="Directory of binary PGM images.")
@click.pass_context
@_guarded
def gist(ctx, image_dir):
    """Extract 512-dim scene descriptors from a directory of PGM images."""
    cfg = _config(ctx)
    image_dir = Path(image_dir)
    if not image_dir.is_dir():
        raise DataFormatError(f"{image_dir}: not a directory")
    paths = sorted(image_dir.glob("*.pgm"))
    if not paths:
        raise DataFormatError(f"{image_dir}: no PGM images found")
    gist_cfg = GistConfig()
    rows = []
    skipped = 0
    for path in paths:
        try:
            img = load_pgm(path)
            rows.append((path.stem, gist_descriptor(img, gist_cfg)))
        except (DataFormatError, ValueError) as exc:
            skipped += 1
            click.echo(f"warning: skipping {path.name}: {exc}", err=True)
    if not rows:
        raise ComputationError("no readable PGM images")
    out = _out_dir(cfg) / "gist_features.jsonl"
    write_feature_table(out, rows, header=cfg.header())
    click.echo(f"wrote {len(rows)} descriptors to {out}"
               + (f" ({skipped} skipped)" if skipped else ""))


if __name__ == "__main__":
    main()
