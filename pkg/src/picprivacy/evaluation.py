"""Experimental protocol: stratified splits, grid-search CV, and metrics.

The outer protocol mirrors the intended experiment design: a 6-fold
stratified split provides Train (five folds) and Test (the last fold);
hyperparameters are chosen by 5-fold cross-validation on Train only, the
winning configuration is retrained on all of Train and scored on Test.
Precision-recall curves are computed for the private class by sweeping the
decision threshold.
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from . import LABELS, PRIVATE, PUBLIC
from .corpus import ImageRecord
from .errors import ComputationError
from .svm import KernelSpec, SvmModel, TrainConfig, decision_values, label_to_y, train


@dataclass(frozen=True)
class FoldAssignment:
    """Stratified id -> fold map; folds preserve the global class ratio."""

    fold_of: dict[str, int]
    k: int
    seed: int

    def fold_ids(self, fold: int) -> list[str]:
        return [i for i, f in self.fold_of.items() if f == fold]

    def split(self, test_fold: int) -> tuple[list[str], list[str]]:
        """(train ids, test ids) with the given fold held out."""
        train, test = [], []
        for rec_id, f in self.fold_of.items():
            (test if f == test_fold else train).append(rec_id)
        return train, test


def stratified_folds(labels: Mapping[str, str], k: int, seed: int) -> FoldAssignment:
    """Assign ids to k folds, stratified by class.

    Ids are shuffled within each class with the given seed and dealt
    round-robin with a cursor that continues across classes, so fold sizes
    differ by at most one and every fold's class ratio stays within one
    record of the global ratio.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    rng = random.Random(seed)
    by_class = {lab: sorted(i for i, l in labels.items() if l == lab) for lab in LABELS}
    for lab, ids in by_class.items():
        if 0 < len(ids) < k:
            raise ComputationError(f"class {lab!r} has {len(ids)} members, fewer than k={k}")
    fold_of: dict[str, int] = {}
    cursor = 0
    for lab in LABELS:
        ids = by_class[lab]
        rng.shuffle(ids)
        for rec_id in ids:
            fold_of[rec_id] = cursor % k
            cursor += 1
    return FoldAssignment(fold_of=fold_of, k=k, seed=seed)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class EvalReport:
    """Confusion-matrix metrics plus the private-class PR curve.

    The confusion matrix is rows = truth, columns = prediction, ordered
    (public, private).  Weighted metrics are class-support-weighted; when
    every instance receives a prediction the weighted recall equals the
    accuracy by construction.
    """

    confusion: tuple[tuple[int, int], tuple[int, int]]
    accuracy: float
    per_class: dict[str, ClassMetrics]
    weighted: ClassMetrics
    pr_curve: list[tuple[float, float, float]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.confusion)


def _prf(tp: int, fp: int, fn: int) -> ClassMetrics:
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return ClassMetrics(precision, recall, f1)


def metrics_from_pairs(pairs: Sequence[tuple[str, str]],
                       pr_curve: list[tuple[float, float, float]] | None = None) -> EvalReport:
    """EvalReport from (truth, prediction) label pairs."""
    if not pairs:
        raise ComputationError("cannot evaluate an empty prediction set")
    idx = {PUBLIC: 0, PRIVATE: 1}
    conf = [[0, 0], [0, 0]]
    for truth, pred in pairs:
        conf[idx[truth]][idx[pred]] += 1
    total = len(pairs)
    correct = conf[0][0] + conf[1][1]
    accuracy = correct / total
    per_class = {}
    for lab, i in idx.items():
        tp = conf[i][i]
        fp = conf[1 - i][i]
        fn = conf[i][1 - i]
        per_class[lab] = _prf(tp, fp, fn)
    supports = {lab: conf[i][0] + conf[i][1] for lab, i in idx.items()}
    w_precision = sum(per_class[lab].precision * supports[lab] for lab in idx) / total
    # weighted recall reduces to correct/total when every instance is predicted
    w_recall = correct / total
    w_f1 = sum(per_class[lab].f1 * supports[lab] for lab in idx) / total
    return EvalReport(
        confusion=(tuple(conf[0]), tuple(conf[1])),
        accuracy=accuracy,
        per_class=per_class,
        weighted=ClassMetrics(w_precision, w_recall, w_f1),
        pr_curve=pr_curve or [],
    )


def pr_curve(scores: Sequence[tuple[float, str]]) -> list[tuple[float, float, float]]:
    """Precision-recall sweep for the private class.

    One point per distinct decision value, sorted descending; at each
    threshold t an item is predicted private iff its score >= t.  Recall is
    non-decreasing along the sweep and reaches 1.0 at the final point.
    """
    n_pos = sum(1 for _, truth in scores if truth == PRIVATE)
    if n_pos == 0:
        raise ComputationError("PR curve requires at least one private item")
    ordered = sorted(scores, key=lambda st: -st[0])
    points = []
    tp = fp = 0
    for i, (score, truth) in enumerate(ordered):
        if truth == PRIVATE:
            tp += 1
        else:
            fp += 1
        if i + 1 < len(ordered) and ordered[i + 1][0] == score:
            continue  # emit one point per distinct threshold
        points.append((score, tp / (tp + fp), tp / n_pos))
    return points


def evaluate(model: SvmModel, test_records: Sequence[ImageRecord], featurizer) -> EvalReport:
    """Score a trained model on labeled test records."""
    if not test_records:
        raise ComputationError("cannot evaluate on an empty test set")
    xs = [featurizer.transform(rec) for rec in test_records]
    scores = decision_values(model, xs)
    truths = [rec.label for rec in test_records]
    preds = [PRIVATE if f > 0.0 else PUBLIC for f in scores]
    curve = []
    if any(t == PRIVATE for t in truths):
        curve = pr_curve(list(zip(scores.tolist(), truths)))
    return metrics_from_pairs(list(zip(truths, preds)), pr_curve=curve)


@dataclass(frozen=True)
class GridSpec:
    c_values: tuple[float, ...] = (0.1, 0.5, 1.0, 5.0, 10.0, 50.0)
    kernels: tuple[KernelSpec, ...] = (KernelSpec("linear"), KernelSpec("rbf"))

    def __post_init__(self) -> None:
        if not self.c_values or not self.kernels:
            raise ValueError("grid must contain at least one C and one kernel")

    def points(self) -> list[tuple[float, KernelSpec]]:
        return [(c, k) for c in self.c_values for k in self.kernels]


@dataclass(frozen=True)
class CvCell:
    c: float
    kernel: KernelSpec
    mean_accuracy: float
    std_accuracy: float
    fold_accuracies: tuple[float, ...]
    error: str | None = None


def _kernel_order(kernel: KernelSpec) -> int:
    return 0 if kernel.kind == "linear" else 1


def grid_search_cv(
    train_records: Sequence[ImageRecord],
    featurizer,
    grid: GridSpec,
    cv_k: int = 5,
    seed: int = 0,
    tol: float = 1e-3,
) -> tuple[TrainConfig, list[CvCell]]:
    """Pick (C, kernel) by mean accuracy over stratified CV folds.

    Featurizers are re-fit on each fold's training part, so nothing fit on
    held-out data leaks into model selection.  Ties prefer the smaller C,
    then the linear kernel.  A grid point whose training fails on any fold
    is marked failed and skipped in the selection.
    """
    labeled = [rec for rec in train_records if rec.label is not None]
    if not labeled:
        raise ComputationError("grid search requires labeled training records")
    labels = {rec.id: rec.label for rec in labeled}
    folds = stratified_folds(labels, cv_k, seed)
    by_id = {rec.id: rec for rec in labeled}
    split_cache = [folds.split(f) for f in range(cv_k)]

    table: list[CvCell] = []
    for grid_idx, (c, kernel) in enumerate(grid.points()):
        accs: list[float] = []
        error: str | None = None
        for fold_idx, (fit_ids, val_ids) in enumerate(split_cache):
            fit_recs = [by_id[i] for i in fit_ids]
            val_recs = [by_id[i] for i in val_ids]
            cfg = TrainConfig(c=c, kernel=kernel, tol=tol,
                              seed=seed + 7919 * (grid_idx * cv_k + fold_idx + 1))
            try:
                fitted = featurizer.fit(fit_recs)
                xs = [fitted.transform(r) for r in fit_recs]
                ys = [label_to_y(r.label) for r in fit_recs]
                model = train(xs, ys, cfg)
                report = evaluate(model, val_recs, fitted)
            except ComputationError as exc:
                error = f"fold {fold_idx}: {exc}"
                break
            accs.append(report.accuracy)
        if error is not None:
            table.append(CvCell(c, kernel, float("nan"), float("nan"), tuple(accs), error))
        else:
            arr = np.array(accs)
            table.append(CvCell(c, kernel, float(arr.mean()), float(arr.std()), tuple(accs)))

    viable = [cell for cell in table if cell.error is None]
    if not viable:
        raise ComputationError("every grid point failed during cross-validation")
    best = max(viable, key=lambda cell: (cell.mean_accuracy, -cell.c, -_kernel_order(cell.kernel)))
    return TrainConfig(c=best.c, kernel=best.kernel, tol=tol, seed=seed), table


def write_cv_table(path: str | Path, table: Sequence[CvCell],
                   header: str | None = None) -> None:
    """CSV export: ``c,kernel,gamma,mean_accuracy,std_accuracy``."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if header:
            fh.write(f"# {header}\n")
        writer = csv.writer(fh)
        writer.writerow(["c", "kernel", "gamma", "mean_accuracy", "std_accuracy"])
        for cell in table:
            gamma = "" if cell.kernel.gamma is None else repr(cell.kernel.gamma)
            if cell.error is not None:
                writer.writerow([repr(cell.c), cell.kernel.kind, gamma, "failed", "failed"])
            else:
                writer.writerow([repr(cell.c), cell.kernel.kind, gamma,
                                 repr(cell.mean_accuracy), repr(cell.std_accuracy)])


def write_pr_curve(path: str | Path, points: Sequence[tuple[float, float, float]],
                   header: str | None = None) -> None:
    """CSV export: ``threshold,precision,recall``."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if header:
            fh.write(f"# {header}\n")
        writer = csv.writer(fh)
        writer.writerow(["threshold", "precision", "recall"])
        for threshold, precision, recall in points:
            writer.writerow([repr(threshold), repr(precision), repr(recall)])


def report_to_dict(report: EvalReport) -> dict:
    return {
        "confusion": [list(report.confusion[0]), list(report.confusion[1])],
        "confusion_order": list(LABELS),
        "accuracy": report.accuracy,
        "per_class": {
            lab: {"precision": m.precision, "recall": m.recall, "f1": m.f1}
            for lab, m in report.per_class.items()
        },
        "weighted": {
            "precision": report.weighted.precision,
            "recall": report.weighted.recall,
            "f1": report.weighted.f1,
        },
        "pr_curve": [list(p) for p in report.pr_curve],
    }


def write_report(path: str | Path, report: EvalReport, extra: dict | None = None,
                 header: str | None = None) -> None:
    """Write an EvalReport (plus run details) as a commented JSON document."""
    doc = report_to_dict(report)
    if extra:
        doc.update(extra)
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(f"# {header}\n")
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_report(path: str | Path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.loads("".join(line for line in fh if not line.startswith("#")))
